#include "ppt/constructions.hpp"

#include <cmath>
#include <stdexcept>

namespace ppt {

std::pair<int, int> hlvc_bounds(const BipartiteDims& dims) {
  return {std::max(dims.na, dims.nb) + 1, dims.na + dims.nb - 2};
}

PptState separable_mixture(const BipartiteDims& dims, int k, std::uint64_t seed,
                           SeparableRecipe* recipe) {
  if (k < 1 || k > dims.n())
    throw std::invalid_argument("separable_mixture: k out of range");

  Rng rng(seed);
  std::vector<ProductVector> generators;
  std::vector<double> weights;
  generators.reserve(static_cast<std::size_t>(k));
  double total = 0.0;
  for (int i = 0; i < k; ++i) {
    generators.push_back(random_product_vector(dims, rng));
    // Weights bounded away from zero keep every generator visible in the rank.
    weights.push_back(0.2 + rng.uniform());
    total += weights.back();
  }
  MatrixXcd rho = MatrixXcd::Zero(dims.n(), dims.n());
  for (int i = 0; i < k; ++i) {
    weights[static_cast<std::size_t>(i)] /= total;
    const VectorXcd psi = generators[static_cast<std::size_t>(i)].psi();
    rho += weights[static_cast<std::size_t>(i)] * (psi * psi.adjoint()).eval();
  }

  PptState state = certify_state(dims, rho);
  state.seed = seed;
  state.target = {k, k};
  if (recipe) {
    recipe->generators = std::move(generators);
    recipe->weights = std::move(weights);
  }
  return state;
}

PptState embed_state(const PptState& state, const BipartiteDims& big) {
  const BipartiteDims& small = state.dims;
  if (big.na < small.na || big.nb < small.nb)
    throw std::invalid_argument("embed_state: target dimensions too small");
  MatrixXcd rho = MatrixXcd::Zero(big.n(), big.n());
  for (int a = 0; a < small.na; ++a)
    for (int b = 0; b < small.nb; ++b)
      for (int ap = 0; ap < small.na; ++ap)
        for (int bp = 0; bp < small.nb; ++bp)
          rho(a * big.nb + b, ap * big.nb + bp) = state.rho(a * small.nb + b, ap * small.nb + bp);
  PptState out = certify_state(big, rho);
  out.seed = state.seed;
  out.target = state.target;
  out.residual = state.residual;
  out.iterations = state.iterations;
  return out;
}

namespace {

// Component of u outside the image of the reduced state; the construction
// needs it nonzero to extend the local support.
double complement_component(const MatrixXcd& reduced, const VectorXcd& u) {
  const MatrixXcd proj = image_projector(reduced);
  return (u - proj * u).norm();
}

}  // namespace

PptState hlvc_saturating(const PptState& base, const ProductVector& new_product, double x) {
  if (!(x > 0.0 && x < 1.0))
    throw std::invalid_argument("hlvc_saturating: mixing weight must be in (0,1)");
  const BipartiteDims& dims = base.dims;
  if (new_product.phi.size() != dims.na || new_product.chi.size() != dims.nb)
    throw std::invalid_argument("hlvc_saturating: product vector dimension mismatch");

  auto [rho_a, rho_b] = reduced_states(base.rho, dims);
  if (complement_component(rho_a, new_product.phi) < 1e-8)
    throw std::invalid_argument("hlvc_saturating: u lies in the local support of the base on A");
  if (complement_component(rho_b, new_product.chi) < 1e-8)
    throw std::invalid_argument("hlvc_saturating: v lies in the local support of the base on B");

  const VectorXcd w = kron(new_product.phi.normalized(), new_product.chi.normalized());
  const MatrixXcd rho = (1.0 - x) * base.rho + x * (w * w.adjoint());
  PptState out = certify_state(dims, rho);
  out.seed = base.seed;
  return out;
}

ProductVector random_extension_product(const PptState& base, const BipartiteDims& big, Rng& rng,
                                       bool orthogonal) {
  const PptState embedded = base.dims == big ? base : embed_state(base, big);
  auto [rho_a, rho_b] = reduced_states(embedded.rho, big);

  auto draw = [&](const MatrixXcd& reduced, int dim) {
    const MatrixXcd proj = image_projector(reduced);
    VectorXcd u = random_unit_vector(dim, rng);
    if (orthogonal) {
      u = (u - proj * u).eval();
      const double norm = u.norm();
      if (norm < 1e-8)
        throw std::runtime_error("random_extension_product: local support already full");
      u /= norm;
    } else if ((u - proj * u).norm() < 1e-6) {
      u = random_unit_vector(dim, rng);  // pathological draw, once more
    }
    return u;
  };

  ProductVector pv;
  pv.phi = draw(rho_a, big.na);
  pv.chi = draw(rho_b, big.nb);
  return pv;
}

PptState hlvc_chain(int levels, std::uint64_t seed, double x, bool orthogonal,
                    const SearchConfig& seed_cfg) {
  SearchConfig cfg = seed_cfg;
  cfg.seed = seed;
  SearchOutcome outcome = search(BipartiteDims(3, 3), {4, 4}, cfg);
  if (!outcome.state)
    throw std::runtime_error("hlvc_chain: level-0 rank-(4,4) search did not converge");
  PptState state = *outcome.state;

  Rng rng(mix_seed(seed, 0xc0c0));
  for (int level = 1; level <= levels; ++level) {
    const BipartiteDims big(3 + level, 3 + level);
    const ProductVector ext = random_extension_product(state, big, rng, orthogonal);
    state = hlvc_saturating(embed_state(state, big), ext, x);
  }
  return state;
}

std::pair<double, MatrixXcd> peel_product_state(const MatrixXcd& rho, const VectorXcd& w,
                                                const BipartiteDims& dims) {
  const int n = dims.n();
  const EigSystem es = eig_hermitian(rho);
  const int rank = numerical_rank(es.values);
  const MatrixXcd u = es.vectors.rightCols(rank);
  const VectorXcd w_in = u.adjoint() * w;
  if ((w - u * w_in).norm() > 1e-6)
    throw std::invalid_argument("peel_product_state: w is not in Im rho");

  // Smallest eigenvalue of rho - x w w^dag restricted to Im rho flips sign at
  // the peeling weight.
  auto min_eig_restricted = [&](double x) {
    const MatrixXcd restricted =
        u.adjoint() * (rho - x * (w * w.adjoint())) * u;
    return eig_hermitian(restricted).values.minCoeff();
  };

  double lo = 0.0, hi = 1.0;
  while (min_eig_restricted(hi) > 0.0 && hi < 1e6) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
    const double mid = (lo + hi) / 2.0;
    (min_eig_restricted(mid) > 0.0 ? lo : hi) = mid;
  }
  const double x = (lo + hi) / 2.0;

  MatrixXcd peeled = rho - x * (w * w.adjoint());
  // Clip the vanishing direction exactly and renormalize.
  const EigSystem ps = eig_hermitian(peeled);
  MatrixXcd cleaned = MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    if (ps.values(i) > 0.0)
      cleaned += ps.values(i) * (ps.vectors.col(i) * ps.vectors.col(i).adjoint()).eval();
  cleaned /= cleaned.trace().real();
  return {x, cleaned};
}

}  // namespace ppt
