#include "ppt/nnls.hpp"

#include <limits>
#include <vector>

namespace ppt {

namespace {

// Least squares on the passive columns; column-pivoted QR tolerates a
// rank-deficient candidate set.
VectorXd solve_passive(const MatrixXd& e, const VectorXd& c, const std::vector<int>& passive) {
  MatrixXd ep(e.rows(), static_cast<Eigen::Index>(passive.size()));
  for (std::size_t i = 0; i < passive.size(); ++i) ep.col(static_cast<Eigen::Index>(i)) = e.col(passive[i]);
  return ep.colPivHouseholderQr().solve(c);
}

}  // namespace

NnlsResult nnls(const MatrixXd& e, const VectorXd& c, double tol, int max_iterations) {
  const int ncols = static_cast<int>(e.cols());
  if (tol <= 0.0) tol = 10.0 * std::numeric_limits<double>::epsilon() * e.cwiseAbs().maxCoeff() *
                        std::max<Eigen::Index>(e.rows(), e.cols());
  if (max_iterations <= 0) max_iterations = 3 * ncols + 30;

  NnlsResult result;
  result.p = VectorXd::Zero(ncols);
  std::vector<bool> in_passive(static_cast<std::size_t>(ncols), false);
  std::vector<int> passive;

  int iter = 0;
  while (iter < max_iterations) {
    const VectorXd w = e.transpose() * (c - e * result.p);
    int best = -1;
    double best_w = tol;
    for (int j = 0; j < ncols; ++j)
      if (!in_passive[static_cast<std::size_t>(j)] && w(j) > best_w) {
        best_w = w(j);
        best = j;
      }
    if (best < 0) break;  // KKT satisfied

    in_passive[static_cast<std::size_t>(best)] = true;
    passive.push_back(best);

    VectorXd z = solve_passive(e, c, passive);
    while (z.minCoeff() <= 0.0) {
      ++iter;
      // Step toward z until the first passive coefficient hits zero.
      double alpha = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < passive.size(); ++i) {
        if (z(static_cast<Eigen::Index>(i)) <= 0.0) {
          const double pi = result.p(passive[i]);
          alpha = std::min(alpha, pi / (pi - z(static_cast<Eigen::Index>(i))));
        }
      }
      if (!std::isfinite(alpha)) alpha = 0.0;
      for (std::size_t i = 0; i < passive.size(); ++i) {
        const int j = passive[i];
        result.p(j) += alpha * (z(static_cast<Eigen::Index>(i)) - result.p(j));
      }
      std::vector<int> next;
      for (int j : passive)
        if (result.p(j) > 0.0)
          next.push_back(j);
        else {
          result.p(j) = 0.0;
          in_passive[static_cast<std::size_t>(j)] = false;
        }
      passive = std::move(next);
      if (passive.empty()) break;
      z = solve_passive(e, c, passive);
      if (iter >= max_iterations) {
        result.converged = false;
        break;
      }
    }
    for (std::size_t i = 0; i < passive.size(); ++i) result.p(passive[i]) = z(static_cast<Eigen::Index>(i));
    ++iter;
  }
  result.iterations = iter;
  if (iter >= max_iterations) result.converged = false;

  if (!passive.empty()) {
    MatrixXd ep(e.rows(), static_cast<Eigen::Index>(passive.size()));
    for (std::size_t i = 0; i < passive.size(); ++i) ep.col(static_cast<Eigen::Index>(i)) = e.col(passive[i]);
    Eigen::JacobiSVD<MatrixXd> svd(ep);
    const VectorXd sv = svd.singularValues();
    result.gram_condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                                    : std::numeric_limits<double>::infinity();
  }
  result.residual = (c - e * result.p).norm();
  return result;
}

}  // namespace ppt
