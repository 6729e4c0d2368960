#include "ppt/survey.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "ppt/parallel.hpp"

namespace ppt {

using nlohmann::json;

std::string SurveyRow::signature() const {
  std::string s;
  s += std::to_string(ranks.m) + "," + std::to_string(ranks.n);
  s += "|" + std::to_string(rank_a) + "," + std::to_string(rank_b);
  s += "|F" + std::to_string(dim_f);
  s += "|im:" + pv_im;
  s += "|ker:" + pv_ker;
  s += "|" + verdict;
  return s;
}

bool operator==(const SurveyRow& a, const SurveyRow& b) {
  return a.ranks == b.ranks && a.bound == b.bound && a.dim_f == b.dim_f && a.rank_a == b.rank_a &&
         a.rank_b == b.rank_b && a.pv_im == b.pv_im && a.pv_ker == b.pv_ker &&
         a.verdict == b.verdict;
}

std::vector<RankPair> all_targets(const BipartiteDims& dims) {
  std::vector<RankPair> targets;
  for (int m = 1; m <= dims.n(); ++m)
    for (int n = 1; n <= m; ++n) targets.push_back({m, n});
  std::sort(targets.begin(), targets.end(), [](const RankPair& a, const RankPair& b) {
    if (a.m + a.n != b.m + b.n) return a.m + a.n > b.m + b.n;
    return a.m > b.m;
  });
  return targets;
}

namespace {

SurveyRow row_from_classification(const Classification& c, std::uint64_t witness_seed) {
  SurveyRow row;
  row.ranks = c.ranks;
  row.bound = c.bound;
  row.dim_f = c.face.dim_f;
  row.rank_a = c.rank_a;
  row.rank_b = c.rank_b;
  row.pv_im = c.pv_im.cell();
  row.pv_ker = c.pv_ker.cell();
  row.verdict = to_string(c.sep.status);
  row.count = 1;
  row.face_gap = c.face.eigen_gap;
  row.witness_seed = witness_seed;
  return row;
}

void sort_rows(std::vector<SurveyRow>& rows) {
  std::sort(rows.begin(), rows.end(), [](const SurveyRow& a, const SurveyRow& b) {
    if (a.ranks.m + a.ranks.n != b.ranks.m + b.ranks.n)
      return a.ranks.m + a.ranks.n > b.ranks.m + b.ranks.n;
    if (a.ranks.m != b.ranks.m) return a.ranks.m > b.ranks.m;
    if (a.dim_f != b.dim_f) return a.dim_f < b.dim_f;
    return a.signature() < b.signature();
  });
}

json stats_to_json(const TargetStats& s) {
  json hist = json::array();
  for (const auto& [ranks, count] : s.achieved_histogram)
    hist.push_back({{"ranks", {ranks.m, ranks.n}}, {"count", count}});
  return {{"target", {s.target.m, s.target.n}},
          {"attempts", s.attempts},
          {"converged", s.converged},
          {"found_exact", s.found_exact},
          {"achieved", hist}};
}

TargetStats stats_from_json(const json& j) {
  TargetStats s;
  s.target = {j.at("target").at(0).get<int>(), j.at("target").at(1).get<int>()};
  s.attempts = j.value("attempts", 0);
  s.converged = j.value("converged", 0);
  s.found_exact = j.value("found_exact", 0);
  if (j.contains("achieved"))
    for (const json& h : j["achieved"])
      s.achieved_histogram.push_back(
          {{h.at("ranks").at(0).get<int>(), h.at("ranks").at(1).get<int>()}, h.at("count").get<int>()});
  return s;
}

json row_to_json(const SurveyRow& row) {
  return {{"ranks", {row.ranks.m, row.ranks.n}},
          {"bound", row.bound},
          {"dim_f", row.dim_f},
          {"local_ranks", {row.rank_a, row.rank_b}},
          {"pv_im", row.pv_im},
          {"pv_ker", row.pv_ker},
          {"verdict", row.verdict},
          {"count", row.count},
          {"face_gap", row.face_gap},
          {"witness_seed", row.witness_seed}};
}

SurveyRow row_from_json(const json& j) {
  SurveyRow row;
  row.ranks = {j.at("ranks").at(0).get<int>(), j.at("ranks").at(1).get<int>()};
  row.bound = j.at("bound").get<int>();
  row.dim_f = j.at("dim_f").get<int>();
  row.rank_a = j.at("local_ranks").at(0).get<int>();
  row.rank_b = j.at("local_ranks").at(1).get<int>();
  row.pv_im = j.at("pv_im").get<std::string>();
  row.pv_ker = j.at("pv_ker").get<std::string>();
  row.verdict = j.at("verdict").get<std::string>();
  row.count = j.value("count", 1);
  row.face_gap = j.value("face_gap", 0.0);
  row.witness_seed = j.value("witness_seed", std::uint64_t{0});
  return row;
}

}  // namespace

SurveyResult survey(const BipartiteDims& dims, const std::vector<RankPair>& targets,
                    const SearchConfig& cfg, const ClassifyConfig& ccfg,
                    const SurveyOptions& options) {
  SurveyResult result;
  result.dims = dims;
  const HermitianBasis basis(dims);

  std::map<std::string, SurveyRow> rows;
  std::map<std::pair<int, int>, bool> done;

  // A journal line per completed target makes long scans resumable.
  if (options.resume && !options.journal_path.empty()) {
    std::ifstream in(options.journal_path);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const json j = json::parse(line);
      TargetStats stats = stats_from_json(j.at("stats"));
      done[{stats.target.m, stats.target.n}] = true;
      result.stats.push_back(std::move(stats));
      for (const json& rj : j.at("rows")) {
        SurveyRow row = row_from_json(rj);
        auto [it, inserted] = rows.try_emplace(row.signature(), row);
        if (!inserted) it->second.count += row.count;
      }
    }
  }

  std::ofstream journal;
  if (!options.journal_path.empty())
    journal.open(options.journal_path, options.resume ? std::ios::app : std::ios::trunc);

  const int restarts = std::max(1, cfg.restarts);
  std::uint64_t target_index = 0;
  for (const RankPair& target : targets) {
    const std::uint64_t tidx = target_index++;
    if (done.count({target.m, target.n})) continue;

    struct AttemptResult {
      bool converged = false;
      RankPair achieved;
      std::optional<Classification> classification;
      std::uint64_t seed = 0;
    };
    std::vector<AttemptResult> attempts(static_cast<std::size_t>(restarts));

    parallel_for(restarts, options.jobs, [&](int i) {
      AttemptResult& slot = attempts[static_cast<std::size_t>(i)];
      slot.seed = mix_seed(cfg.seed, tidx * 1000003ull + static_cast<std::uint64_t>(i));
      SearchOutcome out = search_attempt(dims, target, cfg, slot.seed, basis);
      if (out.status != SearchStatus::converged) return;
      slot.converged = true;
      slot.achieved = out.state->ranks;
      ClassifyConfig attempt_ccfg = ccfg;
      attempt_ccfg.seed = mix_seed(ccfg.seed, slot.seed);
      slot.classification = classify_state(*out.state, attempt_ccfg, basis);
    });

    TargetStats stats;
    stats.target = target;
    stats.attempts = restarts;
    std::map<std::pair<int, int>, int> hist;
    std::vector<SurveyRow> target_rows;
    for (const AttemptResult& a : attempts) {
      if (!a.converged) continue;
      ++stats.converged;
      if (a.achieved == target) ++stats.found_exact;
      ++hist[{a.achieved.m, a.achieved.n}];
      SurveyRow row = row_from_classification(*a.classification, a.seed);
      auto [it, inserted] = rows.try_emplace(row.signature(), row);
      if (!inserted) it->second.count += 1;
      bool seen = false;
      for (auto& tr : target_rows)
        if (tr.signature() == row.signature()) {
          tr.count += 1;
          seen = true;
          break;
        }
      if (!seen) target_rows.push_back(row);
    }
    for (const auto& [mn, count] : hist)
      stats.achieved_histogram.push_back({{mn.first, mn.second}, count});

    if (journal.is_open()) {
      json line;
      line["stats"] = stats_to_json(stats);
      json jrows = json::array();
      for (const SurveyRow& row : target_rows) jrows.push_back(row_to_json(row));
      line["rows"] = std::move(jrows);
      journal << line.dump() << '\n';
      journal.flush();
    }
    if (options.on_target) options.on_target(stats);
    result.stats.push_back(std::move(stats));
  }

  result.rows.reserve(rows.size());
  for (auto& [sig, row] : rows) result.rows.push_back(std::move(row));
  sort_rows(result.rows);
  return result;
}

namespace {

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

}  // namespace

std::string table_to_csv(const SurveyResult& result) {
  std::ostringstream out;
  out << "ranks,bound,dim_f,local_ranks,pv_im,pv_ker,verdict\n";
  for (const SurveyRow& row : result.rows) {
    out << csv_quote("(" + std::to_string(row.ranks.m) + "," + std::to_string(row.ranks.n) + ")")
        << ',' << row.bound << ',' << row.dim_f << ','
        << csv_quote("(" + std::to_string(row.rank_a) + "," + std::to_string(row.rank_b) + ")")
        << ',' << csv_quote(row.pv_im) << ',' << csv_quote(row.pv_ker) << ','
        << csv_quote(row.verdict) << '\n';
  }
  return out.str();
}

SurveyResult table_from_csv(const std::string& text, const BipartiteDims& dims) {
  SurveyResult result;
  result.dims = dims;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  auto parse_pair = [](const std::string& s) -> RankPair {
    const auto comma = s.find(',');
    return {std::stoi(s.substr(1, comma - 1)),
            std::stoi(s.substr(comma + 1, s.size() - comma - 2))};
  };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    const std::vector<std::string> f = csv_split(line);
    if (f.size() != 7) throw std::runtime_error("table_from_csv: expected 7 columns");
    SurveyRow row;
    row.ranks = parse_pair(f[0]);
    row.bound = std::stoi(f[1]);
    row.dim_f = std::stoi(f[2]);
    const RankPair local = parse_pair(f[3]);
    row.rank_a = local.m;
    row.rank_b = local.n;
    row.pv_im = f[4];
    row.pv_ker = f[5];
    row.verdict = f[6];
    result.rows.push_back(std::move(row));
  }
  return result;
}

std::string table_to_json(const SurveyResult& result) {
  json j;
  j["dims"] = {result.dims.na, result.dims.nb};
  json jrows = json::array();
  for (const SurveyRow& row : result.rows) jrows.push_back(row_to_json(row));
  j["rows"] = std::move(jrows);
  json jstats = json::array();
  for (const TargetStats& s : result.stats) jstats.push_back(stats_to_json(s));
  j["stats"] = std::move(jstats);
  return j.dump(2);
}

SurveyResult table_from_json(const std::string& text) {
  const json j = json::parse(text);
  SurveyResult result;
  result.dims = BipartiteDims(j.at("dims").at(0).get<int>(), j.at("dims").at(1).get<int>());
  for (const json& rj : j.at("rows")) result.rows.push_back(row_from_json(rj));
  if (j.contains("stats"))
    for (const json& sj : j["stats"]) result.stats.push_back(stats_from_json(sj));
  return result;
}

}  // namespace ppt
