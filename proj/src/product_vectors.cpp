#include "ppt/product_vectors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ppt {

ProductVector random_product_vector(const BipartiteDims& dims, Rng& rng) {
  ProductVector pv;
  pv.phi = random_unit_vector(dims.na, rng);
  pv.chi = random_unit_vector(dims.nb, rng);
  return pv;
}

ProductVector schmidt_nearest_product(const VectorXcd& psi, const BipartiteDims& dims) {
  Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> z(
      psi.data(), dims.na, dims.nb);
  Eigen::JacobiSVD<MatrixXcd> svd(z, Eigen::ComputeFullU | Eigen::ComputeFullV);
  ProductVector pv;
  pv.phi = svd.matrixU().col(0);
  pv.chi = svd.matrixV().col(0).conjugate();  // psi = phi chi^T reshaped
  return pv;
}

long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long result = 1;
  for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

PvPrediction predict_count(const BipartiteDims& dims, int subspace_dim) {
  if (subspace_dim < 0 || subspace_dim > dims.n())
    throw std::invalid_argument("predict_count: subspace dimension out of range");
  const int p = dims.na + dims.nb - 2 - dims.n() + subspace_dim;
  PvPrediction pred;
  if (p > 0) {
    pred.kind = PvExpectation::infinite;
    pred.free_params = p;
  } else if (p == 0) {
    pred.kind = PvExpectation::finite;
    pred.count = binomial(dims.na + dims.nb - 2, dims.na - 1);
  } else {
    pred.kind = PvExpectation::zero;
  }
  return pred;
}

namespace {

// z = A psi reshaped to N_A x N_B; u = Z conj(chi), v = Z^T conj(phi).
struct Gradient {
  VectorXcd u, v, x, y;
  double lambda = 0.0;  // = psi^dag A psi
};

Gradient gradient_at(const MatrixXcd& a, const BipartiteDims& dims, const VectorXcd& phi,
                     const VectorXcd& chi) {
  const VectorXcd z = a * kron(phi, chi);
  Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> zmat(
      z.data(), dims.na, dims.nb);
  Gradient g;
  g.u = zmat * chi.conjugate();
  g.v = zmat.transpose() * phi.conjugate();
  g.lambda = std::real(phi.dot(g.u));  // Eigen dot conjugates the left argument
  g.x = g.u - g.lambda * phi;
  g.y = g.v - g.lambda * chi;
  return g;
}

}  // namespace

std::pair<double, double> stationarity_residual(const MatrixXcd& a, const BipartiteDims& dims,
                                                const ProductVector& pv) {
  const Gradient g = gradient_at(a, dims, pv.phi, pv.chi);
  return {g.x.norm(), g.y.norm()};
}

ProductVector minimize_once(const MatrixXcd& a, const BipartiteDims& dims, ProductVector start,
                            double grad_tol, int max_steps, std::vector<double>* f_trace) {
  VectorXcd phi = start.phi.normalized();
  VectorXcd chi = start.chi.normalized();

  Gradient g = gradient_at(a, dims, phi, chi);
  double f = g.lambda;
  if (f_trace) f_trace->push_back(f);

  int step = 0;
  for (; step < max_steps; ++step) {
    if (g.x.squaredNorm() + g.y.squaredNorm() <= grad_tol) break;

    const VectorXcd w = kron(phi, g.y) + kron(g.x, chi);
    const double wn = w.norm();
    if (wn <= 1e-300) break;
    const VectorXcd wh = w / wn;

    // Rayleigh minimization over span{psi, w}: a 2x2 Hermitian eigenproblem
    // in the orthonormal pair (psi, w/||w||) since psi^dag w = 0.
    const VectorXcd psi = kron(phi, chi);
    const VectorXcd awh = a * wh;
    Eigen::Matrix2cd h2;
    h2(0, 0) = f;
    h2(0, 1) = psi.dot(awh);
    h2(1, 0) = std::conj(h2(0, 1));
    h2(1, 1) = std::real(wh.dot(awh));
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(h2);
    const Eigen::Vector2cd ground = es.eigenvectors().col(0);

    Complex eps;
    if (std::abs(ground(0)) < 1e-14) {
      eps = Complex(1e6 / wn, 0.0);
    } else {
      eps = ground(1) / (ground(0) * wn);
    }

    // The 2x2 step is first order in the product constraint; halve eps until
    // f actually decreases so the descent property holds exactly.
    bool improved = false;
    for (int backtrack = 0; backtrack < 50; ++backtrack) {
      const VectorXcd phi_c = (phi + eps * g.x).normalized();
      const VectorXcd chi_c = (chi + eps * g.y).normalized();
      const Gradient gc = gradient_at(a, dims, phi_c, chi_c);
      if (gc.lambda <= f) {
        const double df = f - gc.lambda;
        phi = phi_c;
        chi = chi_c;
        g = gc;
        f = gc.lambda;
        improved = true;
        if (f_trace) f_trace->push_back(f);
        if (df <= 1e-16 * std::max(1.0, std::abs(f))) step = max_steps - 1;  // stagnated
        break;
      }
      eps *= 0.5;
    }
    if (!improved) break;  // stationary to floating-point resolution
  }

  ProductVector out;
  out.phi = phi;
  out.chi = chi;
  out.objective = f;
  out.converged = g.x.squaredNorm() + g.y.squaredNorm() <= std::max(grad_tol, 1e-12);
  return out;
}

ProductVector refine_in_subspace(const MatrixXcd& subspace_projector, const BipartiteDims& dims,
                                 ProductVector pv, int max_rounds) {
  double best = std::numeric_limits<double>::infinity();
  for (int round = 0; round < max_rounds; ++round) {
    VectorXcd z = subspace_projector * pv.psi();
    const double norm = z.norm();
    if (norm < 1e-12) break;
    z /= norm;
    ProductVector next = schmidt_nearest_product(z, dims);
    const VectorXcd psi = next.psi();
    const double f = 1.0 - std::real(psi.dot(subspace_projector * psi));
    if (f >= best) break;
    best = f;
    next.objective = f;
    pv = std::move(next);
    if (f <= 1e-28) break;
  }
  return pv;
}

std::string PvCensus::cell() const {
  if (infinite) return "inf/" + std::to_string(found_independent);
  if (found_total == 0) return "0";
  return std::to_string(found_total) + "/" + std::to_string(found_independent);
}

int default_census_budget(const PvPrediction& expected) {
  const long predicted = expected.kind == PvExpectation::finite ? expected.count : 1;
  return static_cast<int>(60 * std::max(1L, predicted));
}

PvCensus census(const MatrixXcd& subspace_projector, const BipartiteDims& dims, int budget,
                Rng& rng, std::string subspace_tag) {
  const int n = dims.n();
  if (subspace_projector.rows() != n || subspace_projector.cols() != n)
    throw std::invalid_argument("census: projector dimension mismatch");

  PvCensus result;
  result.subspace_tag = std::move(subspace_tag);
  const int d = static_cast<int>(std::lround(subspace_projector.trace().real()));
  result.expected = predict_count(dims, d);
  if (d == 0) return result;

  const MatrixXcd a = MatrixXcd::Identity(n, n) - subspace_projector;

  // Starts alternate between uniform product states and the Schmidt-nearest
  // product of a random vector inside the subspace; the guided half hits the
  // small basins that pure random starts miss.
  auto draw_start = [&](int attempt) {
    if (attempt % 2 == 0) return random_product_vector(dims, rng);
    VectorXcd g(n);
    for (int i = 0; i < n; ++i) g(i) = rng.complex_gaussian();
    VectorXcd z = subspace_projector * g;
    if (z.norm() < 1e-12) return random_product_vector(dims, rng);
    z.normalize();
    return schmidt_nearest_product(z, dims);
  };

  std::vector<VectorXcd> kept_psi;
  for (int attempt = 0; attempt < budget; ++attempt) {
    ProductVector pv = minimize_once(a, dims, draw_start(attempt));
    if (pv.objective > kTauPv) continue;
    const auto [rx, ry] = stationarity_residual(a, dims, pv);
    if (rx > 1e-6 || ry > 1e-6) continue;
    pv = refine_in_subspace(subspace_projector, dims, std::move(pv));
    if (pv.objective > kTauPv) continue;

    const VectorXcd psi = pv.psi();
    bool duplicate = false;
    for (const VectorXcd& other : kept_psi)
      if (std::abs(other.dot(psi)) >= 1.0 - kPvDedup) {
        duplicate = true;
        break;
      }
    if (!duplicate) {
      kept_psi.push_back(psi);
      result.vectors.push_back(std::move(pv));
    }
  }

  result.found_total = static_cast<int>(kept_psi.size());
  if (!kept_psi.empty()) {
    // Accepted vectors carry up to sqrt(tau_pv) of out-of-subspace noise;
    // project onto the subspace so the rank counts genuine directions only.
    MatrixXcd span(n, static_cast<int>(kept_psi.size()));
    for (int i = 0; i < static_cast<int>(kept_psi.size()); ++i)
      span.col(i) = (subspace_projector * kept_psi[static_cast<std::size_t>(i)]).normalized();
    Eigen::JacobiSVD<MatrixXcd> svd(span);
    const VectorXd sv = svd.singularValues();
    result.found_independent = static_cast<int>((sv.array() > 1e-8 * sv(0)).count());
  }

  // The tables mark a family as infinite when no upper limit shows up;
  // parameter counting decides first, a saturation guard second.
  const long finite_cap = result.expected.kind == PvExpectation::finite
                              ? 3 * result.expected.count
                              : 3 * std::max(d, 4);
  result.infinite =
      result.expected.kind == PvExpectation::infinite || result.found_total > finite_cap;
  return result;
}

}  // namespace ppt
