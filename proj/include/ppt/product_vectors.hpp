#pragma once

#include <string>
#include <vector>

#include "ppt/linalg.hpp"
#include "ppt/types.hpp"

namespace ppt {

/// A product vector psi = phi (x) chi with the final value of the minimized
/// objective psi^dag A psi.
struct ProductVector {
  VectorXcd phi;
  VectorXcd chi;
  double objective = 0.0;
  bool converged = true;

  VectorXcd psi() const { return kron(phi, chi); }
};

ProductVector random_product_vector(const BipartiteDims& dims, Rng& rng);

/// Closest product state to psi: the top Schmidt pair of the N_A x N_B
/// reshaping of psi.
ProductVector schmidt_nearest_product(const VectorXcd& psi, const BipartiteDims& dims);

enum class PvExpectation { zero, finite, infinite };

/// Parameter count p = N_A + N_B - 2 - N + d for product vectors in a generic
/// d-dimensional subspace: p > 0 gives a p-parameter family, p = 0 a finite
/// set of binomial(N_A+N_B-2, N_A-1) solutions (the Segre variety degree),
/// p < 0 generically none.
struct PvPrediction {
  PvExpectation kind = PvExpectation::zero;
  long count = 0;       // meaningful when kind == finite
  int free_params = 0;  // meaningful when kind == infinite
};

PvPrediction predict_count(const BipartiteDims& dims, int subspace_dim);

long binomial(int n, int k);

/// One run of the alternating double-eigenvalue descent: from the current
/// product vector, move along (phi + eps x) (x) (chi + eps y) where x, y are
/// the Lagrange-condition residuals and eps minimizes the Rayleigh quotient
/// on span{psi, w}, w = phi (x) y + x (x) chi. Descent is enforced by halving
/// eps whenever the full step would raise f. Stops when ||x||^2 + ||y||^2
/// <= grad_tol or f stagnates; marked unconverged at the step budget.
ProductVector minimize_once(const MatrixXcd& a, const BipartiteDims& dims, ProductVector start,
                            double grad_tol = 1e-18, int max_steps = 2000,
                            std::vector<double>* f_trace = nullptr);

/// Residual norms ||x||, ||y|| of the stationarity conditions at (phi, chi).
std::pair<double, double> stationarity_residual(const MatrixXcd& a, const BipartiteDims& dims,
                                                const ProductVector& pv);

/// Polishes a near-solution by alternating projection between the subspace
/// and the product manifold; drives psi^dag (1-P) psi from ~tau_pv down to
/// machine precision so downstream least-squares fits see clean candidates.
ProductVector refine_in_subspace(const MatrixXcd& subspace_projector, const BipartiteDims& dims,
                                 ProductVector pv, int max_rounds = 200);

/// Census of product vectors in the subspace given by its orthogonal
/// projector, from `budget` random starts of the minimizer on A = 1 - P.
struct PvCensus {
  std::string subspace_tag;  // "image" or "kernel"
  PvPrediction expected;
  bool infinite = false;
  int found_total = 0;
  int found_independent = 0;
  std::vector<ProductVector> vectors;  // deduplicated representatives

  std::string cell() const;  // table cell: "0", "a/b" or "inf/b"
};

inline constexpr double kTauPv = 1e-9;      // acceptance threshold on f
inline constexpr double kPvDedup = 1e-6;    // |<psi_i, psi_j>| >= 1 - this merges

PvCensus census(const MatrixXcd& subspace_projector, const BipartiteDims& dims, int budget,
                Rng& rng, std::string subspace_tag = "image");

/// Default restart budget: 60 x the predicted count, with a floor for the
/// infinite and empty cases.
int default_census_budget(const PvPrediction& expected);

}  // namespace ppt
