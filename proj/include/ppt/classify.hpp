#pragma once

#include <cstdint>
#include <string>

#include "ppt/face.hpp"
#include "ppt/product_vectors.hpp"
#include "ppt/separability.hpp"
#include "ppt/state.hpp"

namespace ppt {

struct ClassifyConfig {
  int pv_budget = 0;    // 0 = 60 x predicted count
  int pair_budget = 0;  // 0 = 60 x max(m, n)
  std::uint64_t seed = 1;
};

/// Everything the survey tables report about one state: face dimension,
/// extremality, local ranks, product-vector censuses of image and kernel,
/// and the separability verdict where the criterion applies.
struct Classification {
  RankPair ranks;
  int rank_a = 0;
  int rank_b = 0;
  int bound = 0;  // m^2 + n^2 - N^2
  bool full_local_ranks = false;
  FaceReport face;
  PvCensus pv_im;
  PvCensus pv_ker;
  bool in_range = false;
  SeparabilityVerdict sep;

  /// Distinctness key used by surveys: states with equal signatures are the
  /// same row of a table.
  std::string signature() const;

  std::string to_json(int indent = 2) const;
};

Classification classify_state(const PptState& state, const ClassifyConfig& cfg,
                              const HermitianBasis& basis);

}  // namespace ppt
