#include "ppt/face.hpp"

#include <stdexcept>

#include "ppt/linalg.hpp"

namespace ppt {

namespace {

// Eigenvectors above the rank threshold; refuses when an eigenvalue sits
// within a factor 10 of the cut, since the rank is then ill-defined.
MatrixXcd image_basis_checked(const MatrixXcd& h, const char* label) {
  const EigSystem es = eig_hermitian(h);
  const double lmax = es.values.maxCoeff();
  if (lmax <= 1e-12) throw std::runtime_error(std::string("face_projectors: ") + label + " is zero");
  const double cut = kTauRank * lmax;
  int rank = 0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    const double v = es.values(i);
    if (v > cut / 10.0 && v < cut * 10.0)
      throw std::runtime_error(std::string("face_projectors: rank of ") + label +
                               " is ambiguous at the threshold");
    if (v > cut) ++rank;
  }
  return es.vectors.rightCols(rank);
}

}  // namespace

FaceProjectors face_projectors(const PptState& state, const HermitianBasis& basis) {
  const BipartiteDims& dims = state.dims;
  const int nsq = dims.n() * dims.n();

  const MatrixXcd u = image_basis_checked(state.rho, "rho");
  const MatrixXcd u_pt = image_basis_checked(partial_transpose(state.rho, dims), "rho^P");
  const MatrixXcd pi = u * u.adjoint();
  const MatrixXcd pi_pt = u_pt * u_pt.adjoint();

  FaceProjectors proj;
  proj.ranks = {static_cast<int>(u.cols()), static_cast<int>(u_pt.cols())};
  proj.p.resize(nsq, nsq);
  proj.q_bar.resize(nsq, nsq);
  for (int j = 0; j < nsq; ++j) {
    const MatrixXcd& mj = basis.matrix(j);
    proj.p.col(j) = to_coords(pi * mj * pi, basis);
    proj.q_bar.col(j) =
        to_coords(partial_transpose(pi_pt * partial_transpose(mj, dims) * pi_pt, dims), basis);
  }
  // The maps are trace-inner-product self-adjoint; symmetrize away roundoff.
  proj.p = ((proj.p + proj.p.transpose()) / 2.0).eval();
  proj.q_bar = ((proj.q_bar + proj.q_bar.transpose()) / 2.0).eval();
  return proj;
}

FaceReport face_dimension(const FaceProjectors& proj) {
  const MatrixXd composite = proj.p * proj.q_bar * proj.p;
  Eigen::SelfAdjointEigenSolver<MatrixXd> solver(composite);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("face_dimension: eigensolver failed");
  const VectorXd& vals = solver.eigenvalues();  // ascending

  FaceReport report;
  const int nsq = static_cast<int>(vals.size());
  int count = 0;
  while (count < nsq && std::abs(vals(nsq - 1 - count) - 1.0) <= 1e-6) ++count;
  report.dim_f = count;
  const double smallest_counted = count > 0 ? vals(nsq - count) : 1.0;
  const double largest_uncounted = count < nsq ? vals(nsq - count - 1) : 0.0;
  report.eigen_gap = smallest_counted - largest_uncounted;
  report.gap_reliable = report.eigen_gap >= 1e-4;
  const int m = proj.ranks.m, n = proj.ranks.n;
  report.lower_bound = m * m + n * n - nsq;
  report.is_extremal = (report.dim_f == 1);
  return report;
}

bool extremity_rank_bound(const BipartiteDims& dims, int m, int n) {
  const int nsq = dims.n() * dims.n();
  return m * m + n * n <= nsq + 1;
}

}  // namespace ppt
