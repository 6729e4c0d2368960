#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ppt/product_vectors.hpp"
#include "ppt/rank_search.hpp"
#include "ppt/state.hpp"

namespace ppt {

/// Lower bounds on the ranks of interesting PPT states with full local ranks:
/// max(N_A, N_B) + 1 for entangled states (HLVC) and N_A + N_B - 2 for
/// extremal states (conjectured).
std::pair<int, int> hlvc_bounds(const BipartiteDims& dims);

/// Convex combination of k random pure product states with random positive
/// weights; generically of ranks (k, k) while k <= max(N_A, N_B). The
/// generating decomposition is kept as ground truth.
struct SeparableRecipe {
  std::vector<ProductVector> generators;
  std::vector<double> weights;
};

PptState separable_mixture(const BipartiteDims& dims, int k, std::uint64_t seed,
                           SeparableRecipe* recipe = nullptr);

/// Places a state on the upper-left N_A x N_B local blocks of the larger
/// system, so its support becomes a proper subspace U_1 (x) V_1.
PptState embed_state(const PptState& state, const BipartiteDims& big);

/// rho = (1-x) base + x w w^dag with w = u (x) v, u outside the local support
/// of base on A and v outside it on B. Raises both ranks and both local ranks
/// by one and adds exactly w to the product vectors in the image; iterating
/// the construction saturates the HLVC bound in each dimension.
/// Throws std::invalid_argument when u (or v) fails to leave the local
/// support, which breaks the direct-sum structure.
PptState hlvc_saturating(const PptState& base, const ProductVector& new_product, double x);

/// Random u (x) v extending the local supports of base by one dimension each.
/// With `orthogonal` set, u and v are drawn inside the orthogonal complements
/// of the local supports; otherwise they are generic (non-orthogonal
/// complements).
ProductVector random_extension_product(const PptState& base, const BipartiteDims& big, Rng& rng,
                                       bool orthogonal);

/// Level-0 seed (a 3x3 rank-(4,4) extremal state from the rank search)
/// lifted `levels` times: level L lives in (3+L)x(3+L) with ranks (4+L, 4+L).
PptState hlvc_chain(int levels, std::uint64_t seed, double x, bool orthogonal,
                    const SearchConfig& seed_cfg);

/// Largest x such that rho - x w w^dag stays PSD with the rank dropping by
/// one (bisection on the smallest eigenvalue restricted to Im rho), and the
/// renormalized peeled state. Requires w in Im rho.
std::pair<double, MatrixXcd> peel_product_state(const MatrixXcd& rho, const VectorXcd& w,
                                                const BipartiteDims& dims);

}  // namespace ppt
