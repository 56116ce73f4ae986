#include "vaqw/coarse_grain.hpp"

#include <cmath>

namespace vaqw {

WaveVector::WaveVector(std::vector<double> k) : components(std::move(k)) {
  for (auto& x : components) x = wrap_phase(x);
}

WaveVector WaveVector::operator-() const {
  std::vector<double> neg(components);
  for (auto& x : neg) x = -x;
  return WaveVector(std::move(neg));
}

KSpaceOperator::KSpaceOperator(const WalkSpec& w)
    : matrices_(w.transitions().matrices()),
      coin_dim_(w.coin_dim()),
      index_(w.index()),
      dimension_(w.dimension()) {
  const auto& t = w.tiling();
  for (auto g : w.alphabet().all()) {
    for (std::size_t j = 0; j < index_; ++j) {
      const auto& e = t.entry(g, j);
      std::vector<double> shift(e.shift.begin(), e.shift.end());
      terms_.push_back({e.target, j, std::move(shift), index_of(g)});
    }
  }
}

ComplexMatrix KSpaceOperator::at(std::span<const double> k) const {
  if (k.size() != dimension_) {
    throw DimensionError("k-space operator: wave vector has " + std::to_string(k.size()) + " components, expected " +
                         std::to_string(dimension_));
  }
  ComplexMatrix out(dim(), dim());
  for (const auto& term : terms_) {
    double phase = 0.0;
    for (std::size_t i = 0; i < dimension_; ++i) phase += k[i] * term.shift[i];
    out.add_block(term.row_block * coin_dim_, term.col_block * coin_dim_, matrices_[term.generator],
                  std::polar(1.0, -phase));
  }
  return out;
}

ComplexMatrix build_kspace_operator(const WalkSpec& w, std::span<const double> k) { return KSpaceOperator(w).at(k); }

TilingData retile(const TilingData& t, const GroupPresentation& p, const std::vector<Word>& new_rep_words) {
  const std::size_t l = t.index();
  if (new_rep_words.size() != l) {
    throw TilingError("retile: expected " + std::to_string(l) + " representatives, got " +
                      std::to_string(new_rep_words.size()));
  }
  if (!new_rep_words.front().empty()) throw TilingError("retile: the first representative must be the empty word");

  // New label i sits in old coset sigma[i] and equals translation[i] * c_sigma[i].
  std::vector<std::size_t> sigma(l);
  std::vector<LatticeVector> translation(l);
  std::vector<long> label_of_old(l, -1);
  std::string problems;
  for (std::size_t i = 0; i < l; ++i) {
    const GroupElement e = evaluate_word(new_rep_words[i], t);
    sigma[i] = e.coset;
    translation[i] = e.v;
    if (label_of_old[e.coset] >= 0) {
      problems += "tiling: " + std::string(to_string(TilingIssueKind::duplicate_representative)) +
                  ": representatives " + std::to_string(label_of_old[e.coset]) + " and " + std::to_string(i) +
                  " lie in the same coset\n";
    } else {
      label_of_old[e.coset] = static_cast<long>(i);
    }
  }
  if (!problems.empty()) throw TilingError("retile: new words are not a transversal\n" + problems);

  std::vector<TableRow> rows;
  rows.reserve(t.alphabet().size() * l);
  for (auto g : t.alphabet().all()) {
    for (std::size_t i = 0; i < l; ++i) {
      const auto& old = t.entry(g, sigma[i]);
      const auto target = static_cast<std::size_t>(label_of_old[old.target]);
      LatticeVector shift(old.shift);
      for (std::size_t c = 0; c < shift.size(); ++c) shift[c] += translation[target][c] - translation[i][c];
      rows.push_back({g, i, target, std::move(shift)});
    }
  }
  TilingData out(t.alphabet(), t.dimension(), new_rep_words, rows, t.basis_words());
  const ValidationReport report = validate_tiling(out, p);
  if (!report.ok()) throw TilingError("retile: rebuilt tiling is invalid\n" + report.summary());
  return out;
}

WalkSpec retile(const WalkSpec& w, const std::vector<Word>& new_rep_words) {
  return w.with_tiling(retile(w.tiling(), w.presentation(), new_rep_words));
}

}  // namespace vaqw
