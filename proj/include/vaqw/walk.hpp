// Quantum walks A = sum_g T_g (x) A_g on a tiled Cayley graph, and the
// unitarity / isotropy constraint checks on their transition matrices.
#ifndef VAQW_WALK_HPP
#define VAQW_WALK_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vaqw/group.hpp"
#include "vaqw/numerics.hpp"

namespace vaqw {

inline constexpr double kDefaultTolerance = 1e-10;

/// One s x s transition matrix per letter of S, indexed by GeneratorId.
class TransitionFamily {
 public:
  TransitionFamily() = default;
  TransitionFamily(const Alphabet& alphabet, std::size_t coin_dim, std::vector<ComplexMatrix> matrices);
  static TransitionFamily from_named(const Alphabet& alphabet, std::size_t coin_dim,
                                     const std::vector<std::pair<std::string, ComplexMatrix>>& named);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t coin_dim() const noexcept { return coin_dim_; }
  std::size_t size() const noexcept { return matrices_.size(); }
  const ComplexMatrix& operator[](GeneratorId g) const { return matrices_.at(index_of(g)); }
  ComplexMatrix& operator[](GeneratorId g) { return matrices_.at(index_of(g)); }
  const std::vector<ComplexMatrix>& matrices() const noexcept { return matrices_; }

 private:
  Alphabet alphabet_;
  std::size_t coin_dim_ = 0;
  std::vector<ComplexMatrix> matrices_;
};

class WalkSpec {
 public:
  WalkSpec() = default;
  /// Throws std::invalid_argument when the generator sets disagree.
  WalkSpec(GroupPresentation presentation, TilingData tiling, TransitionFamily transitions);

  const GroupPresentation& presentation() const noexcept { return presentation_; }
  const TilingData& tiling() const noexcept { return tiling_; }
  const TransitionFamily& transitions() const noexcept { return transitions_; }
  const Alphabet& alphabet() const noexcept { return tiling_.alphabet(); }

  std::size_t coin_dim() const noexcept { return transitions_.coin_dim(); }
  std::size_t index() const noexcept { return tiling_.index(); }
  std::size_t dimension() const noexcept { return tiling_.dimension(); }
  std::size_t kspace_dim() const noexcept { return coin_dim() * index(); }

  const ComplexMatrix& matrix(GeneratorId g) const { return transitions_[g]; }

  WalkSpec with_transitions(TransitionFamily transitions) const;
  WalkSpec with_tiling(TilingData tiling) const;

 private:
  GroupPresentation presentation_;
  TilingData tiling_;
  TransitionFamily transitions_;
};

/// Generators whose transition matrix is identically zero.
std::vector<GeneratorId> null_transitions(const WalkSpec& w);

enum class BucketSide {
  forward,   // sum over g g'^{-1} = f of A_g A_g'^dagger
  backward,  // sum over g^{-1} g' = f of A_g^dagger A_g'
};

struct BucketDeviation {
  BucketSide side;
  GroupElement f;
  double deviation = 0.0;
  std::vector<std::pair<GeneratorId, GeneratorId>> pairs;
};

struct UnitarityReport {
  double residual = 0.0;
  std::vector<BucketDeviation> buckets;

  std::string summary(const Alphabet& alphabet) const;
};

/// Groups all pairs (g, g') by the group element they produce; buckets with
/// f != e must vanish and the f = e buckets must equal the identity.
UnitarityReport unitarity_residual(const WalkSpec& w);

inline bool is_unitary(const WalkSpec& w, double tolerance = kDefaultTolerance) {
  return unitarity_residual(w).residual < tolerance;
}

/// A graph automorphism (as a permutation of S) and its coin representation.
struct IsotropySpec {
  std::vector<GeneratorId> permutation;  // permutation[g] = f(g)
  ComplexMatrix coin_unitary;

  /// Mapping may list only S+; images of inverses follow f(g^-1) = f(g)^-1.
  static IsotropySpec from_names(const Alphabet& alphabet, const std::map<std::string, std::string>& mapping,
                                 ComplexMatrix coin_unitary);
};

/// max_g | A_{f(g)} - U A_g U^dagger |. Throws DimensionError for a coin
/// mismatch and std::invalid_argument for a malformed automorphism.
double check_isotropy(const WalkSpec& w, const IsotropySpec& iso, double unitary_tolerance = kDefaultTolerance);

/// | sum_g A_g - I |.
double isotropy_normalization_residual(const WalkSpec& w);

}  // namespace vaqw

#endif  // VAQW_WALK_HPP
