#include "ppt/state.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "ppt/linalg.hpp"

namespace ppt {

using nlohmann::json;

PptState certify_state(const BipartiteDims& dims, const MatrixXcd& rho) {
  if (rho.rows() != dims.n() || rho.cols() != dims.n())
    throw std::invalid_argument("certify_state: dimension mismatch");
  if (hermiticity_defect(rho) > 1e-10)
    throw std::runtime_error("certify_state: matrix is not Hermitian");
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > 1e-10)
    throw std::runtime_error("certify_state: trace differs from 1");

  const EigSystem es = eig_hermitian(rho);
  const EigSystem es_pt = eig_hermitian(partial_transpose(rho, dims));
  if (es.values.minCoeff() < -kTauPsd)
    throw std::runtime_error("certify_state: rho has an eigenvalue below -1e-9");
  if (es_pt.values.minCoeff() < -kTauPsd)
    throw std::runtime_error("certify_state: rho^P has an eigenvalue below -1e-9");

  PptState state;
  state.dims = dims;
  state.rho = rho;
  state.ranks = {numerical_rank(es.values), numerical_rank(es_pt.values)};
  auto [rho_a, rho_b] = reduced_states(rho, dims);
  state.rank_a = numerical_rank(rho_a);
  state.rank_b = numerical_rank(rho_b);
  return state;
}

namespace {

json matrix_to_json(const MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

MatrixXcd matrix_from_json(const json& rows, int n) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != n)
    throw std::runtime_error("state file: matrix has wrong number of rows");
  MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i) {
    const json& row = rows.at(static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw std::runtime_error("state file: matrix row has wrong length");
    for (int j = 0; j < n; ++j) {
      const json& cell = row.at(static_cast<std::size_t>(j));
      if (!cell.is_array() || cell.size() != 2)
        throw std::runtime_error("state file: complex entries must be [re, im] pairs");
      m(i, j) = Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
    }
  }
  return m;
}

}  // namespace

std::string state_to_json(const PptState& state) {
  json j;
  j["dims"] = {state.dims.na, state.dims.nb};
  j["matrix"] = matrix_to_json(state.rho);
  j["meta"] = {{"seed", state.seed},
               {"target_ranks", {state.target.m, state.target.n}},
               {"achieved_ranks", {state.ranks.m, state.ranks.n}},
               {"residual", state.residual},
               {"iterations", state.iterations}};
  return j.dump(2);
}

PptState state_from_json(const std::string& text) {
  json j = json::parse(text);
  if (!j.contains("dims") || !j["dims"].is_array() || j["dims"].size() != 2)
    throw std::runtime_error("state file: missing or malformed dims");
  const BipartiteDims dims(j["dims"].at(0).get<int>(), j["dims"].at(1).get<int>());

  PptState state;
  state.dims = dims;
  state.rho = matrix_from_json(j.at("matrix"), dims.n());
  if (j.contains("meta")) {
    const json& meta = j["meta"];
    state.seed = meta.value("seed", std::uint64_t{0});
    state.residual = meta.value("residual", 0.0);
    state.iterations = meta.value("iterations", 0);
    if (meta.contains("target_ranks"))
      state.target = {meta["target_ranks"].at(0).get<int>(), meta["target_ranks"].at(1).get<int>()};
    if (meta.contains("achieved_ranks"))
      state.ranks = {meta["achieved_ranks"].at(0).get<int>(),
                     meta["achieved_ranks"].at(1).get<int>()};
  }
  return state;
}

void save_state(const std::string& path, const PptState& state) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_state: cannot open " + path);
  out << state_to_json(state) << '\n';
}

PptState load_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_state: cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return state_from_json(text);
}

}  // namespace ppt
