#include "vaqw/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

namespace vaqw {

Alphabet::Alphabet(const std::vector<std::pair<std::string, std::string>>& generators) {
  std::set<std::string> seen;
  labels_.reserve(2 * generators.size());
  for (const auto& [name, inverse_name] : generators) {
    if (name.empty() || inverse_name.empty()) throw std::invalid_argument("Alphabet: empty generator name");
    if (name == inverse_name) throw std::invalid_argument("Alphabet: involutions need distinct inverse names: " + name);
    if (!seen.insert(name).second || !seen.insert(inverse_name).second) {
      throw std::invalid_argument("Alphabet: duplicate generator name " + name + "/" + inverse_name);
    }
    labels_.push_back({name, false, name});
    labels_.push_back({inverse_name, true, name});
  }
}

void Alphabet::check(GeneratorId g) const {
  if (index_of(g) >= labels_.size()) {
    throw UnknownGeneratorError("unknown generator id " + std::to_string(index_of(g)));
  }
}

const GeneratorLabel& Alphabet::label(GeneratorId g) const {
  check(g);
  return labels_[index_of(g)];
}

GeneratorId Alphabet::inverse(GeneratorId g) const {
  check(g);
  return GeneratorId{static_cast<std::uint32_t>(index_of(g) ^ 1U)};
}

std::optional<GeneratorId> Alphabet::find(std::string_view name) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].name == name) return GeneratorId{static_cast<std::uint32_t>(i)};
  }
  return std::nullopt;
}

GeneratorId Alphabet::id(std::string_view name) const {
  if (auto g = find(name)) return *g;
  throw UnknownGeneratorError("unknown generator '" + std::string(name) + "'");
}

std::vector<GeneratorId> Alphabet::all() const {
  std::vector<GeneratorId> out;
  out.reserve(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) out.push_back(GeneratorId{static_cast<std::uint32_t>(i)});
  return out;
}

std::vector<GeneratorId> Alphabet::positive() const {
  std::vector<GeneratorId> out;
  for (std::size_t i = 0; i < labels_.size(); i += 2) out.push_back(GeneratorId{static_cast<std::uint32_t>(i)});
  return out;
}

Word Alphabet::word(std::initializer_list<std::string_view> letters) const {
  Word w;
  w.reserve(letters.size());
  for (auto l : letters) w.push_back(id(l));
  return w;
}

Word Alphabet::word(const std::vector<std::string>& letters) const {
  Word w;
  w.reserve(letters.size());
  for (const auto& l : letters) w.push_back(id(l));
  return w;
}

std::vector<std::string> Alphabet::spell(const Word& w) const {
  std::vector<std::string> out;
  out.reserve(w.size());
  for (auto g : w) out.push_back(name(g));
  return out;
}

std::string Alphabet::format(const Word& w) const {
  if (w.empty()) return "e";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += name(w[i]);
  }
  return s;
}

Word inverse_word(const Word& w, const Alphabet& alphabet) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(alphabet.inverse(*it));
  return out;
}

Word concat(Word a, const Word& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Word power(const Word& w, int exponent, const Alphabet& alphabet) {
  const Word base = exponent < 0 ? inverse_word(w, alphabet) : w;
  Word out;
  for (int i = 0; i < std::abs(exponent); ++i) out.insert(out.end(), base.begin(), base.end());
  return out;
}

TilingData::TilingData(Alphabet alphabet, std::size_t dimension, std::vector<Word> rep_words,
                       const std::vector<TableRow>& rows, std::vector<Word> basis_words)
    : alphabet_(std::move(alphabet)),
      dimension_(dimension),
      rep_words_(std::move(rep_words)),
      basis_words_(std::move(basis_words)) {
  if (dimension_ == 0) throw TilingError("tiling: dimension must be positive");
  if (rep_words_.empty()) throw TilingError("tiling: index must be positive (no representatives)");
  if (!basis_words_.empty() && basis_words_.size() != dimension_) {
    throw TilingError("tiling: expected " + std::to_string(dimension_) + " basis words, got " +
                      std::to_string(basis_words_.size()));
  }
  const std::size_t l = index();
  const auto check_word = [&](const Word& w, const char* what) {
    for (auto g : w) {
      if (index_of(g) >= alphabet_.size()) throw TilingError(std::string("tiling: ") + what + " uses unknown letter");
    }
  };
  for (const auto& w : rep_words_) check_word(w, "representative word");
  for (const auto& w : basis_words_) check_word(w, "basis word");

  table_.assign(alphabet_.size() * l, TableEntry{});
  std::vector<bool> filled(table_.size(), false);
  for (const auto& row : rows) {
    if (index_of(row.generator) >= alphabet_.size()) throw TilingError("tiling: table row with unknown generator");
    const std::string where = "(" + alphabet_.name(row.generator) + ", " + std::to_string(row.coset) + ")";
    if (row.coset >= l) throw TilingError("tiling: coset index out of range in row " + where);
    if (row.target >= l) throw TilingError("tiling: target coset out of range in row " + where);
    if (row.shift.size() != dimension_) throw TilingError("tiling: shift has wrong length in row " + where);
    const std::size_t slot = index_of(row.generator) * l + row.coset;
    if (filled[slot]) throw TilingError("tiling: duplicate table row " + where);
    filled[slot] = true;
    table_[slot] = TableEntry{row.target, row.shift};
  }
  for (std::size_t slot = 0; slot < filled.size(); ++slot) {
    if (!filled[slot]) {
      const GeneratorId g{static_cast<std::uint32_t>(slot / l)};
      throw TilingError("tiling: missing table row (" + alphabet_.name(g) + ", " + std::to_string(slot % l) + ")");
    }
  }
}

const TableEntry& TilingData::entry(GeneratorId g, std::size_t coset) const {
  if (index_of(g) >= alphabet_.size()) throw UnknownGeneratorError("tiling: unknown generator id");
  if (coset >= index()) throw TilingError("tiling: coset index " + std::to_string(coset) + " out of range");
  return table_[index_of(g) * index() + coset];
}

std::vector<TableRow> TilingData::rows() const {
  std::vector<TableRow> out;
  out.reserve(table_.size());
  for (auto g : alphabet_.all()) {
    for (std::size_t j = 0; j < index(); ++j) {
      const auto& e = entry(g, j);
      out.push_back({g, j, e.target, e.shift});
    }
  }
  return out;
}

std::int64_t TilingData::max_shift() const {
  std::int64_t m = 0;
  for (const auto& e : table_) {
    for (auto x : e.shift) m = std::max(m, std::abs(x));
  }
  return m;
}

GroupElement identity_element(const TilingData& t) { return {LatticeVector(t.dimension(), 0), 0}; }

GroupElement right_multiply(const GroupElement& e, GeneratorId g, const TilingData& t) {
  if (e.coset >= t.index()) throw TilingError("right_multiply: coset index out of range");
  if (e.v.size() != t.dimension()) throw TilingError("right_multiply: lattice vector has wrong length");
  const auto& row = t.entry(t.alphabet().inverse(g), e.coset);
  GroupElement out{e.v, row.target};
  for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] -= row.shift[i];
  return out;
}

GroupElement apply_word(GroupElement e, const Word& w, const TilingData& t) {
  for (auto g : w) e = right_multiply(e, g, t);
  return e;
}

GroupElement evaluate_word(const Word& w, const TilingData& t) { return apply_word(identity_element(t), w, t); }

Word translation_word(const LatticeVector& v, const TilingData& t) {
  if (v.size() != t.dimension()) throw TilingError("translation_word: lattice vector has wrong length");
  Word out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (!t.has_basis_words()) throw TilingError("translation_word: tiling has no basis words for H");
    const Word piece = power(t.basis_words()[i], static_cast<int>(v[i]), t.alphabet());
    out.insert(out.end(), piece.begin(), piece.end());
  }
  return out;
}

GroupElement multiply(const GroupElement& a, const GroupElement& b, const TilingData& t) {
  if (b.coset >= t.index()) throw TilingError("multiply: coset index out of range");
  // a * (v c_j) = ((a * v) * c_j)
  return apply_word(apply_word(a, translation_word(b.v, t), t), t.rep_words()[b.coset], t);
}

GroupElement invert_element(const GroupElement& e, const TilingData& t) {
  if (e.coset >= t.index()) throw TilingError("invert_element: coset index out of range");
  // (v c_j)^{-1} = c_j^{-1} (-v)
  LatticeVector minus_v(e.v);
  for (auto& x : minus_v) x = -x;
  const GroupElement c_inv = evaluate_word(inverse_word(t.rep_words()[e.coset], t.alphabet()), t);
  return apply_word(c_inv, translation_word(minus_v, t), t);
}

std::string_view to_string(TilingIssueKind kind) {
  switch (kind) {
    case TilingIssueKind::alphabet_mismatch: return "alphabet-mismatch";
    case TilingIssueKind::identity_representative: return "identity-representative";
    case TilingIssueKind::not_permutation: return "not-permutation";
    case TilingIssueKind::inverse_inconsistent: return "inverse-inconsistent";
    case TilingIssueKind::representative_mismatch: return "representative-mismatch";
    case TilingIssueKind::duplicate_representative: return "duplicate-representative";
    case TilingIssueKind::basis_mismatch: return "basis-mismatch";
    case TilingIssueKind::relator_not_closed: return "relator-not-closed";
  }
  return "unknown";
}

bool ValidationReport::has(TilingIssueKind kind) const {
  return std::any_of(issues.begin(), issues.end(), [kind](const TilingIssue& i) { return i.kind == kind; });
}

std::string ValidationReport::summary() const {
  if (issues.empty()) return "tiling: ok\n";
  std::ostringstream os;
  for (const auto& i : issues) os << "tiling: " << to_string(i.kind) << ": " << i.message << '\n';
  return os.str();
}

std::string format_vector(const LatticeVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

std::string format_element(const GroupElement& e) {
  return "[" + format_vector(e.v) + ", c" + std::to_string(e.coset) + "]";
}

ValidationReport validate_tiling(const TilingData& t, const GroupPresentation& p) {
  ValidationReport report;
  const auto issue = [&](TilingIssueKind k, std::string msg) { report.issues.push_back({k, std::move(msg)}); };
  const Alphabet& a = t.alphabet();
  const std::size_t l = t.index();

  if (!(p.alphabet == a)) {
    issue(TilingIssueKind::alphabet_mismatch, "presentation and tiling use different generator sets");
    return report;
  }

  if (!t.rep_words().front().empty()) {
    issue(TilingIssueKind::identity_representative,
          "first representative must be the empty word, got " + a.format(t.rep_words().front()));
  }

  for (auto g : a.all()) {
    std::vector<bool> hit(l, false);
    for (std::size_t j = 0; j < l; ++j) hit[t.entry(g, j).target] = true;
    if (!std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) {
      issue(TilingIssueKind::not_permutation, "row of " + a.name(g) + " is not a permutation of the cosets");
    }
  }

  for (auto g : a.all()) {
    const GeneratorId gi = a.inverse(g);
    for (std::size_t j = 0; j < l; ++j) {
      const auto& fwd = t.entry(g, j);
      const auto& back = t.entry(gi, fwd.target);
      bool shifts_cancel = true;
      for (std::size_t i = 0; i < t.dimension(); ++i) shifts_cancel &= (fwd.shift[i] + back.shift[i] == 0);
      if (back.target != j || !shifts_cancel) {
        issue(TilingIssueKind::inverse_inconsistent,
              "(" + a.name(g) + ", " + std::to_string(j) + ") -> " + std::to_string(fwd.target) + " shift " +
                  format_vector(fwd.shift) + " is not undone by (" + a.name(gi) + ", " + std::to_string(fwd.target) +
                  ") -> " + std::to_string(back.target) + " shift " + format_vector(back.shift));
      }
    }
  }

  std::vector<int> owner(l, -1);
  for (std::size_t j = 0; j < l; ++j) {
    const GroupElement e = evaluate_word(t.rep_words()[j], t);
    if (owner[e.coset] >= 0) {
      issue(TilingIssueKind::duplicate_representative, "representatives " + std::to_string(owner[e.coset]) + " and " +
                                                           std::to_string(j) + " lie in the same coset " +
                                                           std::to_string(e.coset));
    } else {
      owner[e.coset] = static_cast<int>(j);
    }
    const GroupElement expected{LatticeVector(t.dimension(), 0), j};
    if (e != expected) {
      issue(TilingIssueKind::representative_mismatch, "representative " + std::to_string(j) + " (" +
                                                          a.format(t.rep_words()[j]) + ") evaluates to " +
                                                          format_element(e) + ", expected " + format_element(expected));
    }
  }

  for (std::size_t i = 0; i < t.basis_words().size(); ++i) {
    GroupElement expected = identity_element(t);
    expected.v[i] = 1;
    const GroupElement e = evaluate_word(t.basis_words()[i], t);
    if (e != expected) {
      issue(TilingIssueKind::basis_mismatch, "basis word " + std::to_string(i) + " (" + a.format(t.basis_words()[i]) +
                                                 ") evaluates to " + format_element(e) + ", expected " +
                                                 format_element(expected));
    }
  }

  // x r = x must hold from every coset, not only from the identity. Right
  // multiplication by g reads the rows of g^-1, so r^-1 is checked as well.
  std::vector<Word> closed;
  for (const auto& r : p.relators) {
    closed.push_back(r);
    closed.push_back(inverse_word(r, a));
  }
  for (const auto& r : closed) {
    for (std::size_t j = 0; j < l; ++j) {
      const GroupElement start{LatticeVector(t.dimension(), 0), j};
      const GroupElement e = apply_word(start, r, t);
      if (e != start) {
        issue(TilingIssueKind::relator_not_closed, "relator " + a.format(r) + " moves " + format_element(start) +
                                                       " to " + format_element(e));
      }
    }
  }
  return report;
}

}  // namespace vaqw
