#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ppt/basis.hpp"
#include "ppt/linalg.hpp"
#include "ppt/state.hpp"
#include "ppt/types.hpp"

namespace ppt {

/// Budgets and tolerances are engineering defaults: degenerate zero-eigenvalue
/// clusters make the Newton iteration linear rather than quadratic, with rates
/// as slow as ~0.995 per step for targets like (6,6) in 4x4, so the stall
/// window has to span well over the ~20 iterations a 10% drop then takes.
struct SearchConfig {
  int max_iterations = 8000;
  double residual_tol = 1e-11;  // convergence threshold on ||mu||_inf
  double cg_tol = 1e-12;
  int cg_max_steps = 0;  // 0 means 2 N^2
  int stall_window = 100;
  int restarts = 50;
  std::uint64_t seed = 0;
};

enum class SearchStatus { converged, aborted_stall, aborted_max_iter };

const char* to_string(SearchStatus status);

struct SearchOutcome {
  SearchStatus status = SearchStatus::aborted_max_iter;
  std::optional<PptState> state;  // present iff converged
  std::vector<double> history;    // per-iteration ||mu||_inf of the reported attempt
  int attempts_used = 0;
  int iterations = 0;
};

/// The vector of eigenvalues that the search drives to zero: the N-m smallest
/// of rho followed by the N-n smallest of rho^P, each sub-list ascending.
/// Both full eigensystems are returned for reuse by the Jacobian.
struct MuSystem {
  VectorXd mu;
  EigSystem rho_eig;
  EigSystem pt_eig;
};

MuSystem mu_vector(const MatrixXcd& rho, const BipartiteDims& dims, const RankPair& target);

/// First-order perturbation Jacobian B_kj = d mu_k / d x_j. Row k is the
/// coordinate vector of psi_k psi_k^dag (of (psi_k psi_k^dag)^P for rows that
/// belong to the rho^P spectrum).
MatrixXd jacobian(const MuSystem& sys, const BipartiteDims& dims, const RankPair& target,
                  const HermitianBasis& basis);

struct CgResult {
  VectorXd x;
  int steps = 0;
  double residual = 0.0;  // ||b - A x|| of the normal equations
  bool b_zero = false;    // b vanished while mu did not: stationary non-solution
};

/// Solves (B^T B) dx = -B^T mu by conjugate gradients started from zero.
/// Works when the system is singular: iterates stay in range(B^T) and the
/// limit is the minimum-norm least-squares step.
CgResult newton_step(const MatrixXd& b_mat, const VectorXd& mu, double cg_tol, int max_steps);

/// Iteratively deforms a random full-rank start until the chosen eigenvalues
/// of rho and rho^P vanish. Up to cfg.restarts independently seeded attempts;
/// the first converged attempt is returned, re-certified PPT with fresh
/// eigensolves. When no attempt converges the best attempt is reported.
SearchOutcome search(const BipartiteDims& dims, const RankPair& target, const SearchConfig& cfg);

/// One seeded attempt (used by search and by parallel survey drivers).
SearchOutcome search_attempt(const BipartiteDims& dims, const RankPair& target,
                             const SearchConfig& cfg, std::uint64_t attempt_seed,
                             const HermitianBasis& basis);

}  // namespace ppt
