// Coarse-graining of a walk on a virtually Abelian group onto its Abelian
// subgroup H = Z^d. Plane waves on the cosets turn every generator into a
// phase times a coset permutation, so the walk decomposes into s*l x s*l
// blocks A_k with
//
//   (A_k)_{ij} = sum_{g : j'(g,j) = i} A_g exp(-i k . h_{j,g}).
//
// Wave-vector components are pairings k . h_i with the tiling's H basis and
// live in (-pi, pi].
#ifndef VAQW_COARSE_GRAIN_HPP
#define VAQW_COARSE_GRAIN_HPP

#include <span>
#include <vector>

#include "vaqw/numerics.hpp"
#include "vaqw/walk.hpp"

namespace vaqw {

struct WaveVector {
  std::vector<double> components;

  WaveVector() = default;
  explicit WaveVector(std::vector<double> k);  // wraps every component into (-pi, pi]

  std::size_t size() const noexcept { return components.size(); }
  double operator[](std::size_t i) const { return components[i]; }
  WaveVector operator-() const;
  operator std::span<const double>() const noexcept { return components; }
};

/// Precomputed block structure of A_k for one walk; evaluation at distinct k
/// is independent and thread-safe.
class KSpaceOperator {
 public:
  explicit KSpaceOperator(const WalkSpec& w);

  std::size_t dim() const noexcept { return coin_dim_ * index_; }
  std::size_t dimension() const noexcept { return dimension_; }

  ComplexMatrix at(std::span<const double> k) const;

 private:
  struct Term {
    std::size_t row_block;
    std::size_t col_block;
    std::vector<double> shift;
    std::size_t generator;
  };
  std::vector<ComplexMatrix> matrices_;
  std::vector<Term> terms_;
  std::size_t coin_dim_ = 0;
  std::size_t index_ = 0;
  std::size_t dimension_ = 0;
};

ComplexMatrix build_kspace_operator(const WalkSpec& w, std::span<const double> k);

/// Rebuilds the tiling for a new transversal of the same subgroup H. Each new
/// word must land in a distinct coset and the first must be the identity;
/// labels follow the position in new_rep_words. Throws TilingError
/// otherwise (the message lists the validate_tiling findings).
TilingData retile(const TilingData& t, const GroupPresentation& p, const std::vector<Word>& new_rep_words);
WalkSpec retile(const WalkSpec& w, const std::vector<Word>& new_rep_words);

}  // namespace vaqw

#endif  // VAQW_COARSE_GRAIN_HPP
