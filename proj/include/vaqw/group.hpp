// Words, presentations and exact arithmetic in a virtually Abelian group.
//
// An element is stored in its canonical coset form x = v c_j, where v is a
// lattice vector of the finite-index subgroup H = Z^d (coordinates in the
// basis fixed by the tiling author) and c_j is the j-th coset representative.
// The tiling table supplies, for each generator g and coset j, the target
// coset j'(g, j) and the displacement h_{j,g} = c_{j'} g c_j^{-1} in H, so
// that v c_j g^{-1} = (v - h_{j,g}) c_{j'(g,j)}.
#ifndef VAQW_GROUP_HPP
#define VAQW_GROUP_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vaqw {

enum class GeneratorId : std::uint32_t {};

constexpr std::size_t index_of(GeneratorId g) noexcept { return static_cast<std::size_t>(g); }

struct GeneratorLabel {
  std::string name;
  bool is_inverse = false;
  std::string base;  // the positive generator this letter belongs to

  friend bool operator==(const GeneratorLabel&, const GeneratorLabel&) = default;
};

class UnknownGeneratorError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class TilingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Word = std::vector<GeneratorId>;
using LatticeVector = std::vector<std::int64_t>;

/// The generator alphabet S = S+ u S-. Positive generator i has id 2i and
/// its inverse has id 2i + 1.
class Alphabet {
 public:
  Alphabet() = default;
  /// Each pair is (generator name, inverse name).
  explicit Alphabet(const std::vector<std::pair<std::string, std::string>>& generators);
  Alphabet(std::initializer_list<std::pair<std::string, std::string>> generators)
      : Alphabet(std::vector<std::pair<std::string, std::string>>(generators)) {}

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t positive_count() const noexcept { return labels_.size() / 2; }

  const GeneratorLabel& label(GeneratorId g) const;
  const std::string& name(GeneratorId g) const { return label(g).name; }
  GeneratorId inverse(GeneratorId g) const;

  std::optional<GeneratorId> find(std::string_view name) const;
  GeneratorId id(std::string_view name) const;  // throws UnknownGeneratorError

  std::vector<GeneratorId> all() const;
  std::vector<GeneratorId> positive() const;

  Word word(std::initializer_list<std::string_view> letters) const;
  Word word(const std::vector<std::string>& letters) const;
  std::vector<std::string> spell(const Word& w) const;
  std::string format(const Word& w) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  void check(GeneratorId g) const;
  std::vector<GeneratorLabel> labels_;
};

Word inverse_word(const Word& w, const Alphabet& alphabet);
Word concat(Word a, const Word& b);
Word power(const Word& w, int exponent, const Alphabet& alphabet);

struct GroupPresentation {
  Alphabet alphabet;
  std::vector<Word> relators;
};

struct GroupElement {
  LatticeVector v;
  std::size_t coset = 0;

  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

struct TableRow {
  GeneratorId generator;
  std::size_t coset;
  std::size_t target;
  LatticeVector shift;

  friend bool operator==(const TableRow&, const TableRow&) = default;
};

struct TableEntry {
  std::size_t target = 0;
  LatticeVector shift;

  friend bool operator==(const TableEntry&, const TableEntry&) = default;
};

/// A regular tiling of order l: coset representatives (c_0 = e) and the
/// complete generator/coset table.
class TilingData {
 public:
  TilingData() = default;
  /// Throws TilingError unless the table is total over S x {0..l-1}, each
  /// row appears once, targets are in range and shifts have length d.
  TilingData(Alphabet alphabet, std::size_t dimension, std::vector<Word> rep_words, const std::vector<TableRow>& rows,
             std::vector<Word> basis_words = {});

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t index() const noexcept { return rep_words_.size(); }
  const std::vector<Word>& rep_words() const noexcept { return rep_words_; }
  /// Words for the H basis vectors h_1..h_d; may be empty.
  const std::vector<Word>& basis_words() const noexcept { return basis_words_; }
  bool has_basis_words() const noexcept { return !basis_words_.empty(); }

  const TableEntry& entry(GeneratorId g, std::size_t coset) const;
  std::vector<TableRow> rows() const;

  /// max over the table of |h_{j,g}|_inf.
  std::int64_t max_shift() const;

  friend bool operator==(const TilingData&, const TilingData&) = default;

 private:
  Alphabet alphabet_;
  std::size_t dimension_ = 0;
  std::vector<Word> rep_words_;
  std::vector<Word> basis_words_;
  std::vector<TableEntry> table_;  // [generator * l + coset]
};

GroupElement identity_element(const TilingData& t);

/// Canonical form of e * g: (v - h_{j,g^-1}, j'(g^-1, j)).
GroupElement right_multiply(const GroupElement& e, GeneratorId g, const TilingData& t);

/// Left-to-right fold of right_multiply from the identity.
GroupElement evaluate_word(const Word& w, const TilingData& t);

/// Folds the letters of w onto e.
GroupElement apply_word(GroupElement e, const Word& w, const TilingData& t);

/// A word for the translation v in H, built from the basis words.
/// Throws TilingError when the tiling carries no basis words.
Word translation_word(const LatticeVector& v, const TilingData& t);

GroupElement multiply(const GroupElement& a, const GroupElement& b, const TilingData& t);
GroupElement invert_element(const GroupElement& e, const TilingData& t);

enum class TilingIssueKind {
  alphabet_mismatch,
  identity_representative,
  not_permutation,
  inverse_inconsistent,
  representative_mismatch,
  duplicate_representative,
  basis_mismatch,
  relator_not_closed,
};

std::string_view to_string(TilingIssueKind kind);

struct TilingIssue {
  TilingIssueKind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<TilingIssue> issues;

  bool ok() const noexcept { return issues.empty(); }
  bool has(TilingIssueKind kind) const;
  std::string summary() const;
};

ValidationReport validate_tiling(const TilingData& t, const GroupPresentation& p);

std::string format_vector(const LatticeVector& v);
std::string format_element(const GroupElement& e);

}  // namespace vaqw

#endif  // VAQW_GROUP_HPP
