#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ppt/chart.hpp"
#include "ppt/classify.hpp"
#include "ppt/constructions.hpp"
#include "ppt/survey.hpp"

namespace {

using namespace ppt;

BipartiteDims parse_dims(const std::string& text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos)
    throw CLI::ValidationError("--dims", "expected AxB, e.g. 3x3");
  return BipartiteDims(std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1)));
}

RankPair parse_ranks(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw CLI::ValidationError("--ranks", "expected m,n, e.g. 4,4");
  return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("PPT_SEED")) return std::strtoull(env, nullptr, 10);
  return 1;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct CommonSearchFlags {
  std::string dims_text;
  std::uint64_t seed = default_seed();
  SearchConfig cfg;

  void attach(CLI::App* cmd, bool with_dims = true) {
    if (with_dims) cmd->add_option("--dims", dims_text, "system dimensions AxB")->required();
    cmd->add_option("--seed", seed, "base RNG seed (default: $PPT_SEED or 1)");
    cmd->add_option("--restarts", cfg.restarts, "independent seeded attempts");
    cmd->add_option("--max-iter", cfg.max_iterations, "Newton iteration budget per attempt");
    cmd->add_option("--tol", cfg.residual_tol, "convergence threshold on ||mu||_inf");
    cmd->add_option("--stall-window", cfg.stall_window, "iterations without 10% progress");
    cmd->add_option("--cg-tol", cfg.cg_tol, "conjugate-gradient relative tolerance");
  }
};

int cmd_search(const CommonSearchFlags& flags, const std::string& ranks_text,
               const std::string& out_path) {
  const BipartiteDims dims = parse_dims(flags.dims_text);
  const RankPair target = parse_ranks(ranks_text);
  SearchConfig cfg = flags.cfg;
  cfg.seed = flags.seed;

  const SearchOutcome outcome = search(dims, target, cfg);
  if (!outcome.state) {
    std::fprintf(stderr, "no convergence for (%d,%d) after %d restarts (last status: %s)\n",
                 target.m, target.n, outcome.attempts_used, to_string(outcome.status));
    return 2;
  }
  const PptState& state = *outcome.state;
  if (!out_path.empty()) save_state(out_path, state);
  std::printf("ranks=(%d,%d) residual=%.3e iters=%d\n", state.ranks.m, state.ranks.n,
              state.residual, state.iterations);
  return 0;
}

int cmd_classify(const std::string& path, const ClassifyConfig& ccfg) {
  PptState state;
  try {
    state = load_state(path);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "malformed state file: %s\n", e.what());
    return 1;
  }
  try {
    state = certify_state(state.dims, state.rho);
  } catch (const std::runtime_error& e) {
    const EigSystem es = eig_hermitian(state.rho);
    const EigSystem es_pt = eig_hermitian(partial_transpose(state.rho, state.dims));
    std::fprintf(stderr, "PSD certificate failed: %s\n", e.what());
    std::fprintf(stderr, "min eig(rho) = %.6e, min eig(rho^P) = %.6e, floor = -%.0e\n",
                 es.values.minCoeff(), es_pt.values.minCoeff(), kTauPsd);
    return 3;
  }
  const HermitianBasis basis(state.dims);
  const Classification c = classify_state(state, ccfg, basis);
  std::printf("%s\n", c.to_json().c_str());
  return 0;
}

int cmd_scan(const CommonSearchFlags& flags, const std::string& out_prefix, int jobs, bool resume,
             int pv_budget, int pair_budget) {
  const BipartiteDims dims = parse_dims(flags.dims_text);
  SearchConfig cfg = flags.cfg;
  cfg.seed = flags.seed;
  ClassifyConfig ccfg;
  ccfg.seed = mix_seed(flags.seed, 0x5ca11);
  ccfg.pv_budget = pv_budget;
  ccfg.pair_budget = pair_budget;

  SurveyOptions options;
  options.jobs = jobs;
  options.journal_path = out_prefix + ".journal";
  options.resume = resume;
  options.on_target = [](const TargetStats& s) {
    std::fprintf(stderr, "target (%d,%d): %d/%d converged, %d exact\n", s.target.m, s.target.n,
                 s.converged, s.attempts, s.found_exact);
  };

  const SurveyResult result = survey(dims, all_targets(dims), cfg, ccfg, options);
  write_file(out_prefix + ".csv", table_to_csv(result));
  write_file(out_prefix + ".json", table_to_json(result));
  std::printf("%zu rows -> %s.csv / .json\n", result.rows.size(), out_prefix.c_str());
  return 0;
}

int cmd_chart(const std::string& table_path, const std::string& out_path) {
  SurveyResult table;
  try {
    table = table_from_json(read_file(table_path));
  } catch (const std::exception& e) {
    std::fprintf(stderr, "cannot read table: %s\n", e.what());
    return 1;
  }
  for (const SurveyRow& row : table.rows)
    if (row.ranks.m > table.dims.n() || row.ranks.n > table.dims.n()) {
      std::fprintf(stderr, "table/dims mismatch: row (%d,%d) exceeds N=%d\n", row.ranks.m,
                   row.ranks.n, table.dims.n());
      return 1;
    }
  const RankDiagram diagram = diagram_from_table(table);
  const bool txt = out_path.size() >= 4 && out_path.substr(out_path.size() - 4) == ".txt";
  write_file(out_path, txt ? render_txt(diagram) : render_svg(diagram));
  std::printf("%s\n", out_path.c_str());
  return 0;
}

int cmd_construct(const std::string& kind, const CommonSearchFlags& flags, int k, int levels,
                  double x, bool orthogonal, const std::string& out_path, bool do_classify) {
  PptState state;
  if (kind == "separable") {
    const BipartiteDims dims = parse_dims(flags.dims_text);
    state = separable_mixture(dims, k, flags.seed);
  } else if (kind == "hlvc") {
    SearchConfig cfg = flags.cfg;
    state = hlvc_chain(levels, flags.seed, x, orthogonal, cfg);
  } else {
    std::fprintf(stderr, "unknown construction kind '%s' (separable|hlvc)\n", kind.c_str());
    return 1;
  }
  if (!out_path.empty()) save_state(out_path, state);
  std::printf("ranks=(%d,%d) local=(%d,%d)\n", state.ranks.m, state.ranks.n, state.rank_a,
              state.rank_b);
  if (do_classify) {
    ClassifyConfig ccfg;
    ccfg.seed = mix_seed(flags.seed, 0xc1a55);
    const HermitianBasis basis(state.dims);
    std::printf("%s\n", classify_state(state, ccfg, basis).to_json().c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Search, classify and chart PPT states with prescribed ranks"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file mirroring the flags");

  // search
  auto* search_cmd = app.add_subcommand("search", "find a PPT state with ranks at most (m,n)");
  CommonSearchFlags search_flags;
  search_flags.attach(search_cmd);
  std::string ranks_text, out_path;
  search_cmd->add_option("--ranks", ranks_text, "target ranks m,n")->required();
  search_cmd->add_option("--out", out_path, "state file to write");

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "classify a state file");
  std::string classify_path;
  ClassifyConfig ccfg;
  ccfg.seed = default_seed();
  classify_cmd->add_option("file", classify_path, "state file")->required();
  classify_cmd->add_option("--pv-budget", ccfg.pv_budget, "census restarts per subspace");
  classify_cmd->add_option("--pair-budget", ccfg.pair_budget, "conjugate-pair restarts");
  classify_cmd->add_option("--seed", ccfg.seed, "census RNG seed");

  // scan
  auto* scan_cmd = app.add_subcommand("scan", "survey every rank target and emit the table");
  CommonSearchFlags scan_flags;
  scan_flags.attach(scan_cmd);
  std::string scan_prefix = "scan";
  int jobs = 1, scan_pv_budget = 0, scan_pair_budget = 0;
  bool resume = false;
  scan_cmd->add_option("--out", scan_prefix, "output prefix for .csv/.json/.journal");
  scan_cmd->add_option("--jobs", jobs, "worker threads");
  scan_cmd->add_option("--pv-budget", scan_pv_budget, "census restarts per subspace");
  scan_cmd->add_option("--pair-budget", scan_pair_budget, "conjugate-pair restarts");
  scan_cmd->add_flag("--resume", resume, "continue from the journal");

  // chart
  auto* chart_cmd = app.add_subcommand("chart", "render a rank diagram from a table");
  std::string table_path, chart_out = "diagram.svg";
  chart_cmd->add_option("table", table_path, "table JSON from scan")->required();
  chart_cmd->add_option("--out", chart_out, "output file (.svg or .txt)");

  // construct
  auto* construct_cmd = app.add_subcommand("construct", "deterministic state constructions");
  CommonSearchFlags construct_flags;
  std::string kind = "separable", construct_out;
  int k = 1, levels = 1;
  double xweight = 0.5;
  bool orthogonal = false, construct_classify = false;
  construct_cmd->add_option("--kind", kind, "separable|hlvc")->required();
  construct_cmd->add_option("--dims", construct_flags.dims_text, "dimensions AxB (separable)");
  construct_cmd->add_option("--seed", construct_flags.seed, "RNG seed");
  construct_cmd->add_option("-k,--terms", k, "number of product states (separable)");
  construct_cmd->add_option("--levels", levels, "lift levels above the 3x3 seed (hlvc)");
  construct_cmd->add_option("--x", xweight, "mixing weight in (0,1) (hlvc)");
  construct_cmd->add_flag("--orthogonal", orthogonal, "orthogonal complements (hlvc)");
  construct_cmd->add_option("--out", construct_out, "state file to write");
  construct_cmd->add_flag("--classify", construct_classify, "print the classification too");

  CLI11_PARSE(app, argc, argv);

  try {
    if (search_cmd->parsed()) return cmd_search(search_flags, ranks_text, out_path);
    if (classify_cmd->parsed()) return cmd_classify(classify_path, ccfg);
    if (scan_cmd->parsed())
      return cmd_scan(scan_flags, scan_prefix, jobs, resume, scan_pv_budget, scan_pair_budget);
    if (chart_cmd->parsed()) return cmd_chart(table_path, chart_out);
    if (construct_cmd->parsed())
      return cmd_construct(kind, construct_flags, k, levels, xweight, orthogonal, construct_out,
                           construct_classify);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid arguments: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
