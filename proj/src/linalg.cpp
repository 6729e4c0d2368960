#include "ppt/linalg.hpp"

#include <stdexcept>

namespace ppt {

MatrixXcd partial_transpose(const MatrixXcd& h, const BipartiteDims& dims) {
  const int na = dims.na, nb = dims.nb;
  if (h.rows() != dims.n() || h.cols() != dims.n())
    throw std::invalid_argument("partial_transpose: dimension mismatch");
  MatrixXcd out(h.rows(), h.cols());
  for (int a = 0; a < na; ++a)
    for (int ap = 0; ap < na; ++ap)
      out.block(a * nb, ap * nb, nb, nb) = h.block(a * nb, ap * nb, nb, nb).transpose();
  return out;
}

std::pair<MatrixXcd, MatrixXcd> reduced_states(const MatrixXcd& rho, const BipartiteDims& dims) {
  const int na = dims.na, nb = dims.nb;
  if (rho.rows() != dims.n() || rho.cols() != dims.n())
    throw std::invalid_argument("reduced_states: dimension mismatch");
  MatrixXcd rho_a = MatrixXcd::Zero(na, na);
  MatrixXcd rho_b = MatrixXcd::Zero(nb, nb);
  for (int a = 0; a < na; ++a)
    for (int ap = 0; ap < na; ++ap)
      rho_a(a, ap) = rho.block(a * nb, ap * nb, nb, nb).trace();
  for (int a = 0; a < na; ++a) rho_b += rho.block(a * nb, a * nb, nb, nb);
  return {std::move(rho_a), std::move(rho_b)};
}

EigSystem eig_hermitian(const MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eig_hermitian: eigensolver failed to converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

int numerical_rank(const VectorXd& eigenvalues, double tau) {
  if (eigenvalues.size() == 0) return 0;
  const double lmax = eigenvalues.maxCoeff();
  if (lmax <= 1e-12) return 0;
  return static_cast<int>((eigenvalues.array() > tau * lmax).count());
}

int numerical_rank(const MatrixXcd& h, double tau) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("numerical_rank: eigensolver failed to converge");
  return numerical_rank(solver.eigenvalues(), tau);
}

VectorXcd kron(const VectorXcd& phi, const VectorXcd& chi) {
  VectorXcd psi(phi.size() * chi.size());
  for (Eigen::Index a = 0; a < phi.size(); ++a)
    psi.segment(a * chi.size(), chi.size()) = phi(a) * chi;
  return psi;
}

VectorXcd random_unit_vector(int dim, Rng& rng) {
  VectorXcd v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.complex_gaussian();
  v.normalize();
  return v;
}

MatrixXcd random_density(const BipartiteDims& dims, int rank_hint, Rng& rng) {
  const int n = dims.n();
  if (rank_hint < 1 || rank_hint > n)
    throw std::invalid_argument("random_density: rank_hint out of range");
  MatrixXcd g(n, rank_hint);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < rank_hint; ++j) g(i, j) = rng.complex_gaussian();
  MatrixXcd rho = g * g.adjoint();
  rho /= rho.trace().real();
  return rho;
}

MatrixXcd image_projector(const MatrixXcd& h, double tau) {
  const EigSystem es = eig_hermitian(h);
  const int n = static_cast<int>(h.rows());
  const int rank = numerical_rank(es.values, tau);
  if (rank == 0) return MatrixXcd::Zero(n, n);
  const MatrixXcd u = es.vectors.rightCols(rank);
  return u * u.adjoint();
}

double hermiticity_defect(const MatrixXcd& h) {
  const double scale = h.cwiseAbs().maxCoeff();
  const double defect = (h - h.adjoint()).cwiseAbs().maxCoeff();
  return scale > 0.0 ? defect / scale : defect;
}

}  // namespace ppt
