#include "ppt/rank_search.hpp"

#include <cmath>
#include <stdexcept>

namespace ppt {

const char* to_string(SearchStatus status) {
  switch (status) {
    case SearchStatus::converged: return "converged";
    case SearchStatus::aborted_stall: return "aborted_stall";
    case SearchStatus::aborted_max_iter: return "aborted_max_iter";
  }
  return "unknown";
}

MuSystem mu_vector(const MatrixXcd& rho, const BipartiteDims& dims, const RankPair& target) {
  const int n = dims.n();
  if (target.m < 1 || target.m > n || target.n < 1 || target.n > n)
    throw std::invalid_argument("mu_vector: target ranks out of range");

  MuSystem sys;
  sys.rho_eig = eig_hermitian(rho);
  sys.pt_eig = eig_hermitian(partial_transpose(rho, dims));

  const int km = n - target.m;
  const int kn = n - target.n;
  sys.mu.resize(km + kn);
  sys.mu.head(km) = sys.rho_eig.values.head(km);
  sys.mu.tail(kn) = sys.pt_eig.values.head(kn);
  return sys;
}

MatrixXd jacobian(const MuSystem& sys, const BipartiteDims& dims, const RankPair& target,
                  const HermitianBasis& basis) {
  const int n = dims.n();
  const int km = n - target.m;
  const int kn = n - target.n;
  MatrixXd b_mat(km + kn, n * n);
  for (int k = 0; k < km; ++k) {
    const VectorXcd psi = sys.rho_eig.vectors.col(k);
    b_mat.row(k) = to_coords(psi * psi.adjoint(), basis);
  }
  for (int k = 0; k < kn; ++k) {
    const VectorXcd psi = sys.pt_eig.vectors.col(k);
    // d lambda_k^P / d x_j = psi^dag M_j^P psi = Tr(M_j (psi psi^dag)^P)
    b_mat.row(km + k) = to_coords(partial_transpose(psi * psi.adjoint(), dims), basis);
  }
  return b_mat;
}

CgResult newton_step(const MatrixXd& b_mat, const VectorXd& mu, double cg_tol, int max_steps) {
  CgResult result;
  const VectorXd b = -b_mat.transpose() * mu;
  result.x = VectorXd::Zero(b.size());

  const double b_norm = b.norm();
  if (b_norm == 0.0) {
    result.b_zero = mu.size() > 0 && mu.norm() > 0.0;
    return result;
  }

  VectorXd r = b;
  VectorXd p = r;
  double rs = r.squaredNorm();
  const double stop = cg_tol * b_norm;
  int step = 0;
  while (step < max_steps && std::sqrt(rs) > stop) {
    const VectorXd ap = b_mat.transpose() * (b_mat * p);
    const double p_ap = p.dot(ap);
    if (p_ap <= 1e-300 * p.squaredNorm()) break;  // p in the null space
    const double alpha = rs / p_ap;
    result.x += alpha * p;
    r -= alpha * ap;
    const double rs_new = r.squaredNorm();
    p = r + (rs_new / rs) * p;
    rs = rs_new;
    ++step;
  }
  result.steps = step;
  result.residual = std::sqrt(rs);
  return result;
}

namespace {

double residual_norm(const VectorXd& mu) {
  return mu.size() == 0 ? 0.0 : mu.cwiseAbs().maxCoeff();
}

// Full-rank random start with rho and rho^P both strictly positive. A plain
// Wishart draw is PSD but usually not PPT, so it is mixed toward 1/N until
// the partial transpose clears zero with some margin.
MatrixXcd random_ppt_start(const BipartiteDims& dims, Rng& rng) {
  const int n = dims.n();
  const MatrixXcd w = random_density(dims, n, rng);
  const double lmin = eig_hermitian(partial_transpose(w, dims)).values.minCoeff();
  const double floor = 0.1 / n;
  double t = 1.0;
  if (lmin < floor) t = (1.0 / n - floor) / (1.0 / n - lmin);
  return t * w + (1.0 - t) * MatrixXcd::Identity(n, n) / static_cast<double>(n);
}

// Trace of rho(x) in the canonical basis: only element 0 has nonzero trace.
double trace_of_coords(const VectorXd& x, int n) { return x(0) * std::sqrt(static_cast<double>(n)); }

}  // namespace

SearchOutcome search_attempt(const BipartiteDims& dims, const RankPair& target,
                             const SearchConfig& cfg, std::uint64_t attempt_seed,
                             const HermitianBasis& basis) {
  const int n = dims.n();
  const int cg_max = cfg.cg_max_steps > 0 ? cfg.cg_max_steps : 2 * n * n;

  SearchOutcome out;
  out.attempts_used = 1;

  Rng rng(attempt_seed);
  VectorXd x = to_coords(random_ppt_start(dims, rng), basis);
  MuSystem sys = mu_vector(from_coords(x, basis), dims, target);

  for (int iter = 0; iter <= cfg.max_iterations; ++iter) {
    const double res = residual_norm(sys.mu);
    out.history.push_back(res);
    out.iterations = iter;

    if (res <= cfg.residual_tol) {
      try {
        PptState state = certify_state(dims, from_coords(x, basis));
        if (state.ranks.m > target.m || state.ranks.n > target.n)
          return out;  // zero cluster not resolved at the rank threshold
        state.target = target;
        state.seed = attempt_seed;
        state.iterations = iter;
        state.residual = res;
        out.state = std::move(state);
        out.status = SearchStatus::converged;
      } catch (const std::runtime_error&) {
        // certificate failed; treat as a dead attempt
      }
      return out;
    }

    if (iter == cfg.max_iterations) break;

    // Stalled when the residual no longer drops by 10% across the window.
    const int w = cfg.stall_window;
    if (w > 0 && static_cast<int>(out.history.size()) > w &&
        res > 0.9 * out.history[out.history.size() - 1 - w]) {
      out.status = SearchStatus::aborted_stall;
      return out;
    }

    // The eigenvalues are 1-homogeneous in x, so B x = mu and the linearized
    // system is always solved exactly by the pure shrink dx = -x, which the
    // trace renormalization undoes. Restrict the step to the traceless
    // directions (column 0 is the trace coordinate in the canonical basis)
    // to keep the Newton step and the gauge compatible.
    const MatrixXd b_mat = jacobian(sys, dims, target, basis);
    const CgResult cg = newton_step(b_mat.rightCols(n * n - 1), sys.mu, cfg.cg_tol, cg_max);
    if (cg.b_zero) {
      out.status = SearchStatus::aborted_stall;  // stationary non-solution
      return out;
    }
    VectorXd dx = VectorXd::Zero(n * n);
    dx.tail(n * n - 1) = cg.x;

    auto advance = [&](double scale) -> std::optional<std::pair<VectorXd, MuSystem>> {
      VectorXd xn = x + scale * dx;
      const double tr = trace_of_coords(xn, n);
      if (!(tr > 1e-8)) return std::nullopt;
      xn /= tr;  // exact gauge hygiene; the step itself is traceless
      MuSystem next = mu_vector(from_coords(xn, basis), dims, target);
      return std::make_pair(std::move(xn), std::move(next));
    };

    auto stepped = advance(1.0);
    if (!stepped) {
      out.status = SearchStatus::aborted_stall;
      return out;
    }
    // Full Newton step; halve once if the residual blows up by > 10x.
    if (residual_norm(stepped->second.mu) > 10.0 * res) {
      auto halved = advance(0.5);
      if (halved) stepped = std::move(halved);
    }
    x = std::move(stepped->first);
    sys = std::move(stepped->second);
  }

  out.status = SearchStatus::aborted_max_iter;
  return out;
}

SearchOutcome search(const BipartiteDims& dims, const RankPair& target, const SearchConfig& cfg) {
  const int n = dims.n();
  if (target.m < 1 || target.m > n || target.n < 1 || target.n > n)
    throw std::invalid_argument("search: target ranks out of range");

  const HermitianBasis basis(dims);
  SearchOutcome best;
  bool have_best = false;
  for (int attempt = 0; attempt < std::max(1, cfg.restarts); ++attempt) {
    SearchOutcome out =
        search_attempt(dims, target, cfg, mix_seed(cfg.seed, static_cast<std::uint64_t>(attempt)),
                       basis);
    out.attempts_used = attempt + 1;
    if (out.status == SearchStatus::converged) return out;
    if (!have_best || out.history.back() < best.history.back()) {
      best = std::move(out);
      have_best = true;
    }
  }
  best.attempts_used = std::max(1, cfg.restarts);
  return best;
}

}  // namespace ppt
