#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ppt/classify.hpp"
#include "ppt/rank_search.hpp"

namespace ppt {

/// One table row: a distinct classification signature at achieved ranks
/// (m, n), in the column convention of the survey tables ("a/b" product
/// vector cells, "inf" for families with no upper limit).
struct SurveyRow {
  RankPair ranks;
  int bound = 0;
  int dim_f = 0;
  int rank_a = 0;
  int rank_b = 0;
  std::string pv_im;
  std::string pv_ker;
  std::string verdict;
  int count = 0;  // converged states that share the signature
  double face_gap = 0.0;
  std::uint64_t witness_seed = 0;  // attempt seed of the first representative

  std::string signature() const;
  friend bool operator==(const SurveyRow&, const SurveyRow&);
};

struct TargetStats {
  RankPair target;
  int attempts = 0;
  int converged = 0;
  int found_exact = 0;  // achieved ranks equal the target
  std::vector<std::pair<RankPair, int>> achieved_histogram;
};

struct SurveyResult {
  BipartiteDims dims{1, 1};
  std::vector<SurveyRow> rows;
  std::vector<TargetStats> stats;
};

/// All rank targets N >= m >= n >= 1, descending in (m+n, m) so the cheap
/// high-rank targets run first.
std::vector<RankPair> all_targets(const BipartiteDims& dims);

struct SurveyOptions {
  int jobs = 1;
  std::string journal_path;  // empty disables the journal
  bool resume = false;
  std::function<void(const TargetStats&)> on_target;  // progress callback
};

/// Runs cfg.restarts seeded searches per target, classifies every converged
/// state and aggregates distinct signatures under their achieved ranks.
/// Deterministic for fixed (dims, cfg, ccfg) regardless of the job count.
SurveyResult survey(const BipartiteDims& dims, const std::vector<RankPair>& targets,
                    const SearchConfig& cfg, const ClassifyConfig& ccfg,
                    const SurveyOptions& options = {});

/// CSV with the table columns (ranks, bound, dim_f, local_ranks, pv_im,
/// pv_ker, verdict); cells quoted where needed, lossless round trip.
std::string table_to_csv(const SurveyResult& result);
SurveyResult table_from_csv(const std::string& text, const BipartiteDims& dims);

std::string table_to_json(const SurveyResult& result);
SurveyResult table_from_json(const std::string& text);

}  // namespace ppt
