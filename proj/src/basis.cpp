#include "ppt/basis.hpp"

#include <cmath>
#include <stdexcept>

namespace ppt {

HermitianBasis::HermitianBasis(const BipartiteDims& dims) : dims_(dims), canonical_(true) {
  const int n = dims.n();
  mats_.reserve(static_cast<std::size_t>(n) * n);

  MatrixXcd id = MatrixXcd::Identity(n, n) / std::sqrt(static_cast<double>(n));
  mats_.push_back(std::move(id));
  for (int k = 1; k < n; ++k) {
    MatrixXcd d = MatrixXcd::Zero(n, n);
    const double s = 1.0 / std::sqrt(static_cast<double>(k) * (k + 1));
    for (int i = 0; i < k; ++i) d(i, i) = s;
    d(k, k) = -static_cast<double>(k) * s;
    mats_.push_back(std::move(d));
  }
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      MatrixXcd m = MatrixXcd::Zero(n, n);
      m(j, k) = inv_sqrt2;
      m(k, j) = inv_sqrt2;
      mats_.push_back(std::move(m));
    }
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      MatrixXcd m = MatrixXcd::Zero(n, n);
      m(j, k) = Complex(0.0, inv_sqrt2);
      m(k, j) = Complex(0.0, -inv_sqrt2);
      mats_.push_back(std::move(m));
    }
}

HermitianBasis::HermitianBasis(const BipartiteDims& dims, std::vector<MatrixXcd> matrices)
    : dims_(dims), mats_(std::move(matrices)), canonical_(false) {
  const int n = dims.n();
  if (mats_.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("HermitianBasis: expected N^2 matrices");
  for (const auto& m : mats_)
    if (m.rows() != n || m.cols() != n)
      throw std::invalid_argument("HermitianBasis: matrix dimension mismatch");
}

VectorXd to_coords(const MatrixXcd& h, const HermitianBasis& basis) {
  const int n = basis.dims().n();
  if (h.rows() != n || h.cols() != n)
    throw std::invalid_argument("to_coords: matrix dimension mismatch");

  VectorXd x(n * n);
  if (!basis.canonical()) {
    for (int i = 0; i < n * n; ++i)
      x(i) = (basis.matrix(i).adjoint() * h).trace().real();
    return x;
  }

  // Canonical layout: read coordinates off the entries directly.
  double running = 0.0;  // prefix sum of diagonal entries
  x(0) = h.trace().real() / std::sqrt(static_cast<double>(n));
  for (int k = 1; k < n; ++k) {
    running += h(k - 1, k - 1).real();
    x(k) = (running - k * h(k, k).real()) / std::sqrt(static_cast<double>(k) * (k + 1));
  }
  const double sqrt2 = std::sqrt(2.0);
  const int p = n * (n - 1) / 2;
  int idx = n;
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k, ++idx) {
      x(idx) = sqrt2 * h(j, k).real();
      x(idx + p) = sqrt2 * h(j, k).imag();
    }
  return x;
}

MatrixXcd from_coords(const VectorXd& x, const HermitianBasis& basis) {
  const int n = basis.dims().n();
  if (x.size() != static_cast<Eigen::Index>(n) * n)
    throw std::invalid_argument("from_coords: coordinate length mismatch");

  if (!basis.canonical()) {
    MatrixXcd h = MatrixXcd::Zero(n, n);
    for (int i = 0; i < n * n; ++i) h += x(i) * basis.matrix(i);
    return h;
  }

  MatrixXcd h = MatrixXcd::Zero(n, n);
  const double dn = std::sqrt(static_cast<double>(n));
  for (int i = 0; i < n; ++i) h(i, i) = x(0) / dn;
  for (int k = 1; k < n; ++k) {
    const double s = x(k) / std::sqrt(static_cast<double>(k) * (k + 1));
    for (int i = 0; i < k; ++i) h(i, i) += s;
    h(k, k) -= static_cast<double>(k) * s;
  }
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const int p = n * (n - 1) / 2;
  int idx = n;
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k, ++idx) {
      const Complex v(x(idx) * inv_sqrt2, x(idx + p) * inv_sqrt2);
      h(j, k) += v;
      h(k, j) += std::conj(v);
    }
  return h;
}

}  // namespace ppt
