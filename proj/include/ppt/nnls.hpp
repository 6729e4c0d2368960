#pragma once

#include "ppt/types.hpp"

namespace ppt {

/// min_p ||c - E p||_2 subject to p >= 0 (Lawson-Hanson active set).
struct NnlsResult {
  VectorXd p;
  double residual = 0.0;       // ||c - E p||_2
  int iterations = 0;
  double gram_condition = 0.0;  // sigma_max/sigma_min of the final passive columns
  bool converged = true;
};

NnlsResult nnls(const MatrixXd& e, const VectorXd& c, double tol = 0.0, int max_iterations = 0);

}  // namespace ppt
