#pragma once

#include <utility>

#include "ppt/types.hpp"

namespace ppt {

/// Transpose of the B-subsystem indices: H'_{(a,b),(a',b')} = H_{(a,b'),(a',b)}.
/// Equivalently, transpose each N_B x N_B block. Linear involution, preserves
/// Hermiticity and trace.
MatrixXcd partial_transpose(const MatrixXcd& h, const BipartiteDims& dims);

/// Partial traces: rho_A = Tr_B rho and rho_B = Tr_A rho.
std::pair<MatrixXcd, MatrixXcd> reduced_states(const MatrixXcd& rho, const BipartiteDims& dims);

/// Hermitian eigensystem, eigenvalues ascending, eigenvectors orthonormal.
struct EigSystem {
  VectorXd values;
  MatrixXcd vectors;
};

EigSystem eig_hermitian(const MatrixXcd& h);

/// Default relative rank threshold: the searches drive target eigenvalues to
/// ~1e-12 while kept eigenvalues are O(1/N); 1e-8 splits the two clusters.
inline constexpr double kTauRank = 1e-8;

/// PSD certificate floor on the smallest eigenvalue.
inline constexpr double kTauPsd = 1e-9;

/// Count of eigenvalues above tau * lambda_max; 0 if lambda_max <= 1e-12.
int numerical_rank(const VectorXd& eigenvalues, double tau = kTauRank);
int numerical_rank(const MatrixXcd& h, double tau = kTauRank);

/// Kronecker product phi (x) chi with composite index a * N_B + b.
VectorXcd kron(const VectorXcd& phi, const VectorXcd& chi);

/// Normalized random vector with complex Gaussian entries.
VectorXcd random_unit_vector(int dim, Rng& rng);

/// rho = G G^dag / Tr(G G^dag) with G an N x rank Gaussian matrix; PSD,
/// trace 1, generically of the requested rank.
MatrixXcd random_density(const BipartiteDims& dims, int rank_hint, Rng& rng);

/// Orthogonal projector onto the span of the eigenvectors of h with
/// eigenvalue above tau * lambda_max.
MatrixXcd image_projector(const MatrixXcd& h, double tau = kTauRank);

/// Largest |H_ij - conj(H_ji)| relative to max |H_ij|.
double hermiticity_defect(const MatrixXcd& h);

}  // namespace ppt
