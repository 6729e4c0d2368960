#pragma once

#include <cstdint>
#include <string>

#include "ppt/types.hpp"

namespace ppt {

/// A density matrix certified positive under partial transposition, with the
/// provenance of the search that produced it.
struct PptState {
  BipartiteDims dims;
  MatrixXcd rho;
  RankPair ranks;          // achieved numerical ranks of rho and rho^P
  RankPair target{0, 0};   // ranks the search asked for
  int rank_a = 0;          // local ranks (r_A, r_B)
  int rank_b = 0;
  std::uint64_t seed = 0;
  int iterations = 0;
  double residual = 0.0;   // final ||mu||_inf

  bool full_local_ranks() const { return rank_a == dims.na && rank_b == dims.nb; }
};

/// Measures ranks and local ranks and verifies trace 1 and the PSD
/// certificates on rho and rho^P. Throws std::runtime_error when the matrix
/// fails to certify.
PptState certify_state(const BipartiteDims& dims, const MatrixXcd& rho);

/// State file format: {"dims": [na, nb], "matrix": [[[re, im], ...], ...],
/// "meta": {seed, target_ranks, achieved_ranks, residual, iterations}}.
/// Complex numbers are always [re, im] pairs.
std::string state_to_json(const PptState& state);
PptState state_from_json(const std::string& text);

void save_state(const std::string& path, const PptState& state);
PptState load_state(const std::string& path);

}  // namespace ppt
