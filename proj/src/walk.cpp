#include "vaqw/walk.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace vaqw {

TransitionFamily::TransitionFamily(const Alphabet& alphabet, std::size_t coin_dim, std::vector<ComplexMatrix> matrices)
    : alphabet_(alphabet), coin_dim_(coin_dim), matrices_(std::move(matrices)) {
  if (coin_dim_ == 0) throw std::invalid_argument("transitions: coin dimension must be positive");
  if (matrices_.size() != alphabet.size()) {
    throw std::invalid_argument("transitions: expected " + std::to_string(alphabet.size()) + " matrices, got " +
                                std::to_string(matrices_.size()));
  }
  for (auto g : alphabet.all()) {
    const auto& m = matrices_[index_of(g)];
    if (m.rows() != coin_dim_ || m.cols() != coin_dim_) {
      throw DimensionError("transitions: matrix for " + alphabet.name(g) + " is not " + std::to_string(coin_dim_) +
                           "x" + std::to_string(coin_dim_));
    }
  }
}

TransitionFamily TransitionFamily::from_named(const Alphabet& alphabet, std::size_t coin_dim,
                                              const std::vector<std::pair<std::string, ComplexMatrix>>& named) {
  std::vector<ComplexMatrix> by_id(alphabet.size());
  std::vector<bool> seen(alphabet.size(), false);
  for (const auto& [name, m] : named) {
    const GeneratorId g = alphabet.id(name);
    if (seen[index_of(g)]) throw std::invalid_argument("transitions: duplicate matrix for " + name);
    seen[index_of(g)] = true;
    by_id[index_of(g)] = m;
  }
  for (auto g : alphabet.all()) {
    if (!seen[index_of(g)]) throw std::invalid_argument("transitions: no matrix for " + alphabet.name(g));
  }
  return TransitionFamily(alphabet, coin_dim, std::move(by_id));
}

WalkSpec::WalkSpec(GroupPresentation presentation, TilingData tiling, TransitionFamily transitions)
    : presentation_(std::move(presentation)), tiling_(std::move(tiling)), transitions_(std::move(transitions)) {
  if (!(presentation_.alphabet == tiling_.alphabet())) {
    throw std::invalid_argument("walk: presentation and tiling use different generator sets");
  }
  if (!(transitions_.alphabet() == tiling_.alphabet())) {
    throw std::invalid_argument("walk: transition family uses a different generator set");
  }
}

WalkSpec WalkSpec::with_transitions(TransitionFamily transitions) const {
  return WalkSpec(presentation_, tiling_, std::move(transitions));
}

WalkSpec WalkSpec::with_tiling(TilingData tiling) const { return WalkSpec(presentation_, std::move(tiling), transitions_); }

std::vector<GeneratorId> null_transitions(const WalkSpec& w) {
  std::vector<GeneratorId> out;
  for (auto g : w.alphabet().all()) {
    if (w.matrix(g).is_zero()) out.push_back(g);
  }
  return out;
}

UnitarityReport unitarity_residual(const WalkSpec& w) {
  const auto& t = w.tiling();
  const auto& a = w.alphabet();
  const std::size_t s = w.coin_dim();
  const GroupElement e = identity_element(t);

  struct Accumulator {
    ComplexMatrix sum;
    std::vector<std::pair<GeneratorId, GeneratorId>> pairs;
  };
  std::map<GroupElement, Accumulator> forward;
  std::map<GroupElement, Accumulator> backward;

  for (auto g : a.all()) {
    for (auto h : a.all()) {
      const GroupElement f_fwd = right_multiply(evaluate_word({g}, t), a.inverse(h), t);
      auto& fwd = forward[f_fwd];
      if (fwd.sum.rows() == 0) fwd.sum = ComplexMatrix(s, s);
      fwd.sum += w.matrix(g) * w.matrix(h).adjoint();
      fwd.pairs.emplace_back(g, h);

      const GroupElement f_bwd = right_multiply(evaluate_word({a.inverse(g)}, t), h, t);
      auto& bwd = backward[f_bwd];
      if (bwd.sum.rows() == 0) bwd.sum = ComplexMatrix(s, s);
      bwd.sum += w.matrix(g).adjoint() * w.matrix(h);
      bwd.pairs.emplace_back(g, h);
    }
  }

  UnitarityReport report;
  const auto collect = [&](std::map<GroupElement, Accumulator>& buckets, BucketSide side) {
    for (auto& [f, acc] : buckets) {
      if (f == e) acc.sum -= ComplexMatrix::identity(s);
      const double dev = operator_norm(acc.sum);
      report.residual = std::max(report.residual, dev);
      report.buckets.push_back({side, f, dev, std::move(acc.pairs)});
    }
  };
  collect(forward, BucketSide::forward);
  collect(backward, BucketSide::backward);
  return report;
}

std::string UnitarityReport::summary(const Alphabet& alphabet) const {
  std::ostringstream os;
  os.precision(3);
  os << "unitarity residual: " << std::scientific << residual << '\n';
  for (const auto& b : buckets) {
    os << "  " << (b.side == BucketSide::forward ? "A A^+ " : "A^+ A ") << format_element(b.f) << "  dev "
       << b.deviation << "  pairs";
    for (const auto& [g, h] : b.pairs) os << " (" << alphabet.name(g) << "," << alphabet.name(h) << ")";
    os << '\n';
  }
  return os.str();
}

IsotropySpec IsotropySpec::from_names(const Alphabet& alphabet, const std::map<std::string, std::string>& mapping,
                                      ComplexMatrix coin_unitary) {
  IsotropySpec iso;
  iso.coin_unitary = std::move(coin_unitary);
  std::vector<std::optional<GeneratorId>> image(alphabet.size());
  const auto assign = [&](GeneratorId from, GeneratorId to) {
    auto& slot = image[index_of(from)];
    if (slot && *slot != to) {
      throw std::invalid_argument("isotropy: conflicting images for " + alphabet.name(from));
    }
    slot = to;
  };
  for (const auto& [from, to] : mapping) {
    const GeneratorId f = alphabet.id(from);
    const GeneratorId g = alphabet.id(to);
    assign(f, g);
    assign(alphabet.inverse(f), alphabet.inverse(g));
  }
  iso.permutation.reserve(alphabet.size());
  for (auto g : alphabet.all()) {
    if (!image[index_of(g)]) throw std::invalid_argument("isotropy: no image for " + alphabet.name(g));
    iso.permutation.push_back(*image[index_of(g)]);
  }
  return iso;
}

double check_isotropy(const WalkSpec& w, const IsotropySpec& iso, double unitary_tolerance) {
  const auto& a = w.alphabet();
  const std::size_t s = w.coin_dim();
  if (iso.coin_unitary.rows() != s || iso.coin_unitary.cols() != s) {
    throw DimensionError("isotropy: coin unitary is " + std::to_string(iso.coin_unitary.rows()) + "x" +
                         std::to_string(iso.coin_unitary.cols()) + ", coin dimension is " + std::to_string(s));
  }
  if (iso.permutation.size() != a.size()) throw std::invalid_argument("isotropy: permutation must cover all of S");
  std::vector<bool> hit(a.size(), false);
  for (auto g : a.all()) {
    const GeneratorId fg = iso.permutation[index_of(g)];
    if (index_of(fg) >= a.size()) throw std::invalid_argument("isotropy: permutation image out of range");
    hit[index_of(fg)] = true;
    if (iso.permutation[index_of(a.inverse(g))] != a.inverse(fg)) {
      throw std::invalid_argument("isotropy: permutation does not commute with inversion at " + a.name(g));
    }
  }
  if (!std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) {
    throw std::invalid_argument("isotropy: map on S is not a bijection");
  }
  if (unitarity_deviation(iso.coin_unitary) > unitary_tolerance) {
    throw std::invalid_argument("isotropy: coin representation is not unitary");
  }

  const ComplexMatrix& u = iso.coin_unitary;
  const ComplexMatrix u_dag = u.adjoint();
  double worst = 0.0;
  for (auto g : a.all()) {
    const ComplexMatrix diff = w.matrix(iso.permutation[index_of(g)]) - u * w.matrix(g) * u_dag;
    worst = std::max(worst, operator_norm(diff));
  }
  return worst;
}

double isotropy_normalization_residual(const WalkSpec& w) {
  ComplexMatrix sum = ComplexMatrix(w.coin_dim(), w.coin_dim());
  for (const auto& m : w.transitions().matrices()) sum += m;
  return operator_norm(sum - ComplexMatrix::identity(w.coin_dim()));
}

}  // namespace vaqw
