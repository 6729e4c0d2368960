#include "ppt/classify.hpp"

#include <json.hpp>

namespace ppt {

using nlohmann::json;

namespace {

json census_json(const PvCensus& c) {
  json j;
  if (c.infinite)
    j["total"] = "inf";
  else
    j["total"] = c.found_total;
  j["independent"] = c.found_independent;
  return j;
}

}  // namespace

std::string Classification::signature() const {
  std::string s;
  s += std::to_string(ranks.m) + "," + std::to_string(ranks.n);
  s += "|" + std::to_string(rank_a) + "," + std::to_string(rank_b);
  s += "|F" + std::to_string(face.dim_f);
  s += "|im:" + pv_im.cell();
  s += "|ker:" + pv_ker.cell();
  s += "|" + std::string(to_string(sep.status));
  return s;
}

std::string Classification::to_json(int indent) const {
  json j;
  j["ranks"] = {ranks.m, ranks.n};
  j["bound"] = bound;
  j["dimF"] = face.dim_f;
  j["local_ranks"] = {rank_a, rank_b};
  j["pv_im"] = census_json(pv_im);
  j["pv_ker"] = census_json(pv_ker);
  j["verdict"] = to_string(sep.status);
  j["full_local_ranks"] = full_local_ranks;
  j["face_gap"] = face.eigen_gap;
  j["face_gap_reliable"] = face.gap_reliable;
  j["extremal"] = face.is_extremal;
  j["criterion_in_range"] = in_range;
  j["k_pairs"] = sep.k_infinite ? json("inf") : json(sep.k_pairs);
  if (sep.status == Verdict::separable_with_decomposition ||
      sep.status == Verdict::entangled_by_reconstruction_failure)
    j["reconstruction_residual"] = sep.residual;
  return j.dump(indent);
}

Classification classify_state(const PptState& state, const ClassifyConfig& cfg,
                              const HermitianBasis& basis) {
  const BipartiteDims& dims = state.dims;
  const int n = dims.n();

  Classification c;
  c.ranks = state.ranks;
  c.rank_a = state.rank_a;
  c.rank_b = state.rank_b;
  c.bound = c.ranks.m * c.ranks.m + c.ranks.n * c.ranks.n - n * n;
  c.full_local_ranks = state.full_local_ranks();
  c.face = face_dimension(face_projectors(state, basis));

  const MatrixXcd p_im = image_projector(state.rho);
  const MatrixXcd p_ker = MatrixXcd::Identity(n, n) - p_im;
  {
    Rng rng(mix_seed(cfg.seed, 11));
    const int budget =
        cfg.pv_budget > 0 ? cfg.pv_budget : default_census_budget(predict_count(dims, c.ranks.m));
    c.pv_im = census(p_im, dims, budget, rng, "image");
  }
  {
    Rng rng(mix_seed(cfg.seed, 22));
    const int budget = cfg.pv_budget > 0
                           ? cfg.pv_budget
                           : default_census_budget(predict_count(dims, n - c.ranks.m));
    c.pv_ker = census(p_ker, dims, budget, rng, "kernel");
  }

  c.in_range = criterion_in_range(dims, c.ranks.m, c.ranks.n);
  if (c.in_range) {
    Rng rng(mix_seed(cfg.seed, 33));
    const int budget =
        cfg.pair_budget > 0 ? cfg.pair_budget : 60 * std::max(c.ranks.m, c.ranks.n);
    std::vector<ConjugatePair> pairs = find_conjugate_pairs(state, budget, rng);
    const int cap = 3 * std::max({c.ranks.m, c.ranks.n, 4});
    c.sep = reconstruct(state, pairs);
    c.sep.k_infinite = static_cast<int>(pairs.size()) > cap;
  } else {
    c.sep.status = Verdict::inconclusive_out_of_range;
  }
  return c;
}

}  // namespace ppt
