#include <doctest.h>

#include "ppt/basis.hpp"
#include "ppt/linalg.hpp"
#include "ppt/state.hpp"

using namespace ppt;

namespace {

MatrixXcd random_hermitian(const BipartiteDims& dims, Rng& rng) {
  MatrixXcd g(dims.n(), dims.n());
  for (int i = 0; i < dims.n(); ++i)
    for (int j = 0; j < dims.n(); ++j) g(i, j) = rng.complex_gaussian();
  return (g + g.adjoint()) / 2.0;
}

}  // namespace

TEST_SUITE("hilbert") {

TEST_CASE("dims validation") {
  CHECK_THROWS_AS(BipartiteDims(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(BipartiteDims(7, 7), std::invalid_argument);  // 49 > 36
  CHECK(BipartiteDims(3, 4).n() == 12);
}

TEST_CASE("basis: 1x1 system is the single matrix [1]") {
  HermitianBasis basis(BipartiteDims(1, 1));
  REQUIRE(basis.size() == 1);
  CHECK(std::abs(basis.matrix(0)(0, 0) - Complex(1.0, 0.0)) < 1e-15);
}

TEST_CASE("basis: 2x2 Gram matrix is the identity") {
  HermitianBasis basis(BipartiteDims(2, 2));
  REQUIRE(basis.size() == 16);
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) {
      const double gram = (basis.matrix(i) * basis.matrix(j)).trace().real();
      CHECK(std::abs(gram - (i == j ? 1.0 : 0.0)) <= 1e-14);
    }
}

TEST_CASE("basis: 3x3 orthonormality verified pairwise") {
  // Direct Gram computation over all 81 x 81 pairs.
  HermitianBasis basis(BipartiteDims(3, 3));
  REQUIRE(basis.size() == 81);
  double worst = 0.0;
  for (int i = 0; i < 81; ++i)
    for (int j = i; j < 81; ++j) {
      const double gram = (basis.matrix(i) * basis.matrix(j)).trace().real();
      worst = std::max(worst, std::abs(gram - (i == j ? 1.0 : 0.0)));
    }
  CHECK(worst <= 1e-14);
}

TEST_CASE("basis matrices are Hermitian and span: rank of Gram = N^2") {
  HermitianBasis basis(BipartiteDims(2, 3));
  MatrixXd gram(basis.size(), basis.size());
  for (int i = 0; i < basis.size(); ++i) {
    CHECK(hermiticity_defect(basis.matrix(i)) <= 1e-14);
    for (int j = 0; j < basis.size(); ++j)
      gram(i, j) = (basis.matrix(i) * basis.matrix(j)).trace().real();
  }
  CHECK(gram.colPivHouseholderQr().rank() == basis.size());
}

TEST_CASE("coords: unit vectors and zero") {
  BipartiteDims dims(2, 2);
  HermitianBasis basis(dims);
  const VectorXd e3 = to_coords(basis.matrix(3), basis);
  for (int i = 0; i < 16; ++i) CHECK(std::abs(e3(i) - (i == 3 ? 1.0 : 0.0)) <= 1e-14);
  CHECK(to_coords(MatrixXcd::Zero(4, 4), basis).norm() == 0.0);
  CHECK((from_coords(e3, basis) - basis.matrix(3)).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK(from_coords(VectorXd::Zero(16), basis).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("coords: round trips and agreement with the trace formula") {
  BipartiteDims dims(2, 3);
  HermitianBasis basis(dims);
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const MatrixXcd h = random_hermitian(dims, rng);
    const VectorXd x = to_coords(h, basis);
    // Oracle: the generic definition x_i = Tr(H M_i).
    for (int i = 0; i < basis.size(); ++i)
      CHECK(std::abs(x(i) - (h * basis.matrix(i)).trace().real()) <= 1e-12);
    CHECK((from_coords(x, basis) - h).cwiseAbs().maxCoeff() <= 1e-12);

    VectorXd y(basis.size());
    for (int i = 0; i < basis.size(); ++i) y(i) = rng.gaussian();
    CHECK((to_coords(from_coords(y, basis), basis) - y).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("coords: isometry Tr(HK) = x_H . x_K") {
  BipartiteDims dims(3, 3);
  HermitianBasis basis(dims);
  Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const MatrixXcd h = random_hermitian(dims, rng);
    const MatrixXcd k = random_hermitian(dims, rng);
    const double lhs = (h * k).trace().real();
    const double rhs = to_coords(h, basis).dot(to_coords(k, basis));
    CHECK(std::abs(lhs - rhs) <= 1e-11 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("partial transpose: involution, trace and Hermiticity preserved") {
  BipartiteDims dims(2, 3);
  Rng rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const MatrixXcd h = random_hermitian(dims, rng);
    const MatrixXcd hp = partial_transpose(h, dims);
    CHECK((partial_transpose(hp, dims) - h).cwiseAbs().maxCoeff() <= 1e-13);
    CHECK(std::abs((hp.trace() - h.trace()).real()) <= 1e-13);
    CHECK(hermiticity_defect(hp) <= 1e-13);
  }
}

TEST_CASE("partial transpose of a pure product state stays PSD of rank 1") {
  BipartiteDims dims(2, 3);
  Rng rng(14);
  const VectorXcd phi = random_unit_vector(2, rng);
  const VectorXcd chi = random_unit_vector(3, rng);
  const VectorXcd psi = kron(phi, chi);
  const MatrixXcd rho = psi * psi.adjoint();
  const MatrixXcd pt = partial_transpose(rho, dims);
  CHECK(numerical_rank(pt) == 1);
  CHECK(eig_hermitian(pt).values.minCoeff() >= -1e-13);
  // The transposed factor is chi* chi*^T.
  const VectorXcd psi_conj = kron(phi, chi.conjugate());
  CHECK((pt - psi_conj * psi_conj.adjoint()).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("partial transpose of the 2x2 Bell state has eigenvalues {-1/2, 1/2, 1/2, 1/2}") {
  BipartiteDims dims(2, 2);
  VectorXcd bell = VectorXcd::Zero(4);
  bell(0) = 1.0 / std::sqrt(2.0);  // |00>
  bell(3) = 1.0 / std::sqrt(2.0);  // |11>
  const MatrixXcd pt = partial_transpose(bell * bell.adjoint(), dims);
  const VectorXd vals = eig_hermitian(pt).values;  // 4x4 eigensolve oracle
  CHECK(std::abs(vals(0) + 0.5) <= 1e-14);
  for (int i = 1; i < 4; ++i) CHECK(std::abs(vals(i) - 0.5) <= 1e-14);
}

TEST_CASE("reduced states: product, maximally mixed and Bell cases") {
  BipartiteDims dims(2, 2);
  Rng rng(15);
  const VectorXcd psi = kron(random_unit_vector(2, rng), random_unit_vector(2, rng));
  auto [pa, pb] = reduced_states(psi * psi.adjoint(), dims);
  CHECK(numerical_rank(pa) == 1);
  CHECK(numerical_rank(pb) == 1);

  auto [ma, mb] = reduced_states(MatrixXcd::Identity(4, 4) / 4.0, dims);
  CHECK((ma - MatrixXcd::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK((mb - MatrixXcd::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() <= 1e-14);

  VectorXcd bell = VectorXcd::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  auto [ba, bb] = reduced_states(bell * bell.adjoint(), dims);
  CHECK((ba - MatrixXcd::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK((bb - MatrixXcd::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("reduced states: traces always match; local ranks bounded for PPT states") {
  BipartiteDims dims(3, 3);
  Rng rng(16);
  for (int r : {1, 3, 6, 9}) {
    const MatrixXcd rho = random_density(dims, r, rng);
    auto [pa, pb] = reduced_states(rho, dims);
    CHECK(std::abs(pa.trace().real() - 1.0) <= 1e-12);
    CHECK(std::abs(pb.trace().real() - 1.0) <= 1e-12);
    CHECK(eig_hermitian(pa).values.minCoeff() >= -1e-13);
  }
  // rank(rho_A) <= rank(rho) holds for PPT states (not for every PSD matrix:
  // a maximally entangled pure state has global rank 1 and local ranks 2).
  for (int k : {1, 2, 4}) {
    MatrixXcd rho = MatrixXcd::Zero(9, 9);
    for (int i = 0; i < k; ++i) {
      const VectorXcd psi = kron(random_unit_vector(3, rng), random_unit_vector(3, rng));
      rho += (psi * psi.adjoint()).eval();
    }
    rho /= rho.trace().real();
    auto [pa, pb] = reduced_states(rho, dims);
    CHECK(numerical_rank(pa) <= numerical_rank(rho));
    CHECK(numerical_rank(pb) <= numerical_rank(rho));
  }
}

TEST_CASE("numerical rank") {
  BipartiteDims dims(2, 2);
  CHECK(numerical_rank(MatrixXcd(MatrixXcd::Identity(4, 4) / 4.0)) == 4);
  Rng rng(17);
  const VectorXcd v = random_unit_vector(4, rng);
  CHECK(numerical_rank(MatrixXcd(v * v.adjoint())) == 1);

  MatrixXcd d = MatrixXcd::Zero(3, 3);
  d(0, 0) = 1.0;
  d(1, 1) = 1e-4;
  d(2, 2) = 1e-12;
  CHECK(numerical_rank(d, 1e-8) == 2);  // threshold sits between 1e-4 and 1e-12
  CHECK(numerical_rank(MatrixXcd(MatrixXcd::Zero(3, 3))) == 0);
}

TEST_CASE("numerical rank is invariant under unitary conjugation") {
  BipartiteDims dims(2, 3);
  Rng rng(18);
  const MatrixXcd rho = random_density(dims, 4, rng);
  // Random unitary via QR of a Gaussian matrix.
  MatrixXcd g(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) g(i, j) = rng.complex_gaussian();
  const MatrixXcd q = Eigen::HouseholderQR<MatrixXcd>(g).householderQ();
  CHECK(numerical_rank(MatrixXcd(q * rho * q.adjoint())) == numerical_rank(rho));
}

TEST_CASE("random density: rank hint, PSD, determinism") {
  BipartiteDims dims(3, 3);
  {
    Rng rng(19);
    const MatrixXcd full = random_density(dims, 9, rng);
    CHECK(eig_hermitian(full).values.minCoeff() > 0.0);
    CHECK(std::abs(full.trace().real() - 1.0) <= 1e-13);
  }
  {
    Rng rng(20);
    const MatrixXcd pure = random_density(dims, 1, rng);
    CHECK(numerical_rank(pure) == 1);
  }
  {
    Rng a(21), b(21);
    const MatrixXcd first = random_density(dims, 5, a);
    const MatrixXcd second = random_density(dims, 5, b);
    CHECK((first - second).cwiseAbs().maxCoeff() == 0.0);  // bit identical
  }
}

TEST_CASE("state file round trip") {
  BipartiteDims dims(2, 3);
  Rng rng(22);
  MatrixXcd rho = MatrixXcd::Zero(6, 6);
  for (int i = 0; i < 4; ++i) {
    const VectorXcd psi = kron(random_unit_vector(2, rng), random_unit_vector(3, rng));
    rho += (psi * psi.adjoint()).eval();
  }
  rho /= rho.trace().real();
  PptState state = certify_state(dims, rho);
  state.seed = 42;
  state.target = {6, 6};
  state.residual = 1.5e-12;
  state.iterations = 17;
  const PptState loaded = state_from_json(state_to_json(state));
  CHECK(loaded.dims == dims);
  CHECK((loaded.rho - state.rho).cwiseAbs().maxCoeff() == 0.0);
  CHECK(loaded.seed == 42);
  CHECK(loaded.target == RankPair{6, 6});
  CHECK(loaded.ranks == state.ranks);
  CHECK(loaded.iterations == 17);
}

TEST_CASE("certify rejects non-PPT and non-normalized input") {
  BipartiteDims dims(2, 2);
  VectorXcd bell = VectorXcd::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  CHECK_THROWS_AS(certify_state(dims, MatrixXcd(bell * bell.adjoint())), std::runtime_error);
  CHECK_THROWS_AS(certify_state(dims, MatrixXcd(MatrixXcd::Identity(4, 4))), std::runtime_error);
}

}  // TEST_SUITE
