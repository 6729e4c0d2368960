#pragma once

#include <string>
#include <vector>

#include "ppt/product_vectors.hpp"
#include "ppt/state.hpp"
#include "ppt/types.hpp"

namespace ppt {

/// A product vector psi = phi (x) chi in Im rho whose conjugate partner
/// psi~ = phi (x) chi* lies in Im rho^P. chi* is taken in the computational
/// basis of H_B, the same basis the partial transposition uses.
struct ConjugatePair {
  ProductVector psi;
  double im_residual = 0.0;    // psi^dag (1 - P) psi
  double conj_residual = 0.0;  // psi~^dag (1 - Q) psi~

  VectorXcd psi_tilde() const { return kron(psi.phi, psi.chi.conjugate()); }
};

/// The conjugate-pair separability test only constrains product vectors when
/// m + n <= 2N - N_A - N_B + 2; beyond that the pair set is generically
/// infinite and the criterion says nothing.
bool criterion_in_range(const BipartiteDims& dims, int m, int n);

enum class Verdict {
  separable_with_decomposition,
  entangled_by_pair_deficit,
  entangled_by_reconstruction_failure,
  inconclusive_out_of_range,
};

const char* to_string(Verdict v);

struct SeparabilityVerdict {
  Verdict status = Verdict::inconclusive_out_of_range;
  int k_pairs = 0;
  bool k_infinite = false;
  VectorXd weights;            // decomposition coefficients when separable
  double residual = 0.0;       // ||rho - sum p_k psi_k psi_k^dag||_inf (entrywise)
  double gram_condition = 0.0;
};

/// Minimizes psi^dag (2 - P - Q^P) psi over product vectors from `budget`
/// random starts; a zero is a conjugate pair. Accepted solutions are
/// re-verified against the two separate conditions through P and Q.
std::vector<ConjugatePair> find_conjugate_pairs(const PptState& state, int budget, Rng& rng);

/// Nonnegative least-squares reconstruction of rho over the candidate pure
/// product states. Needs K >= max(m, n) candidates, else the pair deficit
/// already certifies entanglement.
SeparabilityVerdict reconstruct(const PptState& state, const std::vector<ConjugatePair>& pairs);

inline constexpr double kReconstructTol = 1e-8;

}  // namespace ppt
