#pragma once

#include <vector>

#include "ppt/types.hpp"

namespace ppt {

/// Orthonormal basis {M_i} of the real vector space of Hermitian N x N
/// matrices, Tr(M_i M_j) = delta_ij.
///
/// Canonical order (fixed so coordinate vectors are reproducible):
///   [0]            identity / sqrt(N)
///   [1 .. N-1]     traceless diagonal family,
///                  D_k = diag(1,...,1, -k, 0,...,0) / sqrt(k(k+1)), k ones
///   [N .. N+P-1]   symmetric pairs (E_jk + E_kj)/sqrt(2), j < k lexicographic
///   [N+P .. N^2-1] antisymmetric pairs i(E_jk - E_kj)/sqrt(2), same order
/// with P = N(N-1)/2.
class HermitianBasis {
 public:
  /// Canonical basis for the given dimensions.
  explicit HermitianBasis(const BipartiteDims& dims);

  /// Arbitrary orthonormal Hermitian basis from an explicit matrix list.
  /// Coordinate maps then fall back to the generic trace formula.
  HermitianBasis(const BipartiteDims& dims, std::vector<MatrixXcd> matrices);

  const BipartiteDims& dims() const { return dims_; }
  int size() const { return static_cast<int>(mats_.size()); }
  const MatrixXcd& matrix(int i) const { return mats_.at(static_cast<std::size_t>(i)); }
  const std::vector<MatrixXcd>& matrices() const { return mats_; }
  bool canonical() const { return canonical_; }

 private:
  BipartiteDims dims_;
  std::vector<MatrixXcd> mats_;
  bool canonical_ = false;
};

/// x_i = Tr(H M_i). O(N^2) for the canonical basis.
VectorXd to_coords(const MatrixXcd& h, const HermitianBasis& basis);

/// sum_i x_i M_i, the inverse of to_coords.
MatrixXcd from_coords(const VectorXd& x, const HermitianBasis& basis);

}  // namespace ppt
