#include "qctrl/matrixcore.hpp"
#include "qctrl/random.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>

using namespace qctrl;
using namespace qctrl::test;

TEST_CASE("commutator of Pauli generators") {
  const Matrix c = commutator(kI * pauli_x(), kI * pauli_y());
  CHECK((c - (-2.0 * kI * pauli_z())).norm() < 1e-15);

  const Matrix a = kI * pauli_x();
  CHECK(commutator(a, a).norm() == 0.0);
}

TEST_CASE("commutator of the lambda-system generators matches a triple-loop product") {
  const Matrix h0 = diag({0.0, 1.0, 0.0});
  Matrix h1 = Matrix::Zero(3, 3);
  h1(0, 1) = h1(1, 0) = h1(1, 2) = h1(2, 1) = 1.0;
  const Matrix a = kI * h0;
  const Matrix b = kI * h1;
  const Matrix expected = naive_product(a, b) - naive_product(b, a);
  CHECK((commutator(a, b) - expected).norm() == doctest::Approx(0.0));
  // i·i·[H0,H1] = −[H0,H1]; [H0,H1]_{12} = (E1−E2)·d = −1
  CHECK(expected(0, 1).real() == doctest::Approx(1.0));
  CHECK(expected(1, 0).real() == doctest::Approx(-1.0));
  CHECK(expected(1, 2).real() == doctest::Approx(-1.0));
}

TEST_CASE("commutator rejects mismatched dimensions") {
  CHECK_THROWS_AS(commutator(Matrix::Identity(2, 2), Matrix::Identity(3, 3)), DimensionError);
  CHECK_THROWS_AS(hs_inner(Matrix::Identity(2, 2), Matrix::Identity(3, 3)), DimensionError);
}

TEST_CASE("Hilbert-Schmidt inner product") {
  CHECK(hs_inner(kI * pauli_z(), kI * pauli_z()) == Complex{2.0, 0.0});
  CHECK(std::abs(hs_inner(kI * pauli_x(), kI * pauli_y())) == 0.0);
  CHECK(hs_inner(Matrix::Identity(3, 3), Matrix::Identity(3, 3)) == Complex{3.0, 0.0});
}

TEST_CASE("algebraic identities on random matrices") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index n = 2 + trial % 6;
    const Matrix a = kI * random_hermitian(n, rng);
    const Matrix b = kI * random_hermitian(n, rng);
    const Matrix c = random_hermitian(n, rng) + kI * random_hermitian(n, rng);

    const double scale = a.norm() * b.norm() + 1.0;
    CHECK((commutator(a, b) + commutator(b, a)).norm() < 1e-12 * scale);
    CHECK(is_skew_hermitian(commutator(a, b), 1e-12));

    const Matrix jacobi = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) +
                          commutator(c, commutator(a, b));
    CHECK(jacobi.norm() < 1e-9 * a.norm() * b.norm() * c.norm());

    const Complex ab = hs_inner(a, c);
    const Complex ba = hs_inner(c, a);
    CHECK(std::abs(ab - std::conj(ba)) < 1e-12 * scale);
    CHECK(hs_inner(c, c).real() >= 0.0);
    CHECK(std::abs(hs_inner(c, c).imag()) < 1e-12);
  }
}

TEST_CASE("eigensystem of a diagonal matrix") {
  const Eigensystem es = hermitian_eigensystem(diag({0.0, 1.0, 2.0}));
  CHECK(es.values == std::vector<double>{0.0, 1.0, 2.0});
  // permutation of the identity (here the identity itself), up to phases
  CHECK((es.vectors.cwiseAbs() - Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-15);

  const Eigensystem unsorted = hermitian_eigensystem(diag({2.0, 0.0, 1.0}));
  CHECK(unsorted.values == std::vector<double>{0.0, 1.0, 2.0});
  CHECK(std::abs(unsorted.vectors(1, 0)) == 1.0);
  CHECK(std::abs(unsorted.vectors(2, 1)) == 1.0);
  CHECK(std::abs(unsorted.vectors(0, 2)) == 1.0);
}

TEST_CASE("eigensystem of sigma_x") {
  const Eigensystem es = hermitian_eigensystem(pauli_x());
  REQUIRE(es.values.size() == 2);
  CHECK(es.values[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(es.values[1] == doctest::Approx(1.0).epsilon(1e-14));
  for (int k = 0; k < 2; ++k) {
    const Vector v = es.vectors.col(k);
    CHECK(std::abs(v(0)) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(std::abs(v(1)) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK((pauli_x() * v - es.values[k] * v).norm() < 1e-14);
  }
}

TEST_CASE("eigensystem reconstruction, unitarity and ordering up to N=12") {
  Rng rng(2024);
  for (Eigen::Index n = 1; n <= 12; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      const Matrix h = random_hermitian(n, rng);
      const Eigensystem es = hermitian_eigensystem(h);
      const Eigen::VectorXd lambda = Eigen::Map<const Eigen::VectorXd>(es.values.data(), n);
      const Matrix rebuilt = es.vectors * lambda.cast<Complex>().asDiagonal() * es.vectors.adjoint();
      CHECK((rebuilt - h).norm() < 1e-9 * h.norm());
      CHECK((es.vectors.adjoint() * es.vectors - Matrix::Identity(n, n)).norm() < 1e-9);
      CHECK(std::is_sorted(es.values.begin(), es.values.end()));

      // independent oracle: Eigen's tridiagonal QR eigensolver
      Eigen::SelfAdjointEigenSolver<Matrix> reference(h);
      CHECK((reference.eigenvalues() - lambda).cwiseAbs().maxCoeff() < 1e-10 * (1.0 + h.norm()));
    }
  }
}

TEST_CASE("eigensystem handles degenerate and scaled spectra") {
  Rng rng(5);
  const Matrix u = random_unitary(4, rng);
  const Matrix h = u * diag({1.0, 1.0, 1.0, -2.0}) * u.adjoint();
  const Eigensystem es = hermitian_eigensystem(0.5 * (h + h.adjoint()));
  CHECK(es.values[0] == doctest::Approx(-2.0).epsilon(1e-12));
  for (int k = 1; k < 4; ++k) CHECK(es.values[k] == doctest::Approx(1.0).epsilon(1e-12));

  const Matrix big = 1e6 * random_hermitian(6, rng);
  const Eigensystem esb = hermitian_eigensystem(big);
  const Eigen::VectorXd lambda = Eigen::Map<const Eigen::VectorXd>(esb.values.data(), 6);
  CHECK((esb.vectors * lambda.cast<Complex>().asDiagonal() * esb.vectors.adjoint() - big).norm() <
        1e-9 * big.norm());
}

TEST_CASE("eigensystem rejects non-Hermitian input") {
  Matrix m = pauli_x();
  m(0, 1) = 2.0;
  CHECK_THROWS_AS(hermitian_eigensystem(m), ValidationError);
  CHECK_THROWS_AS(hermitian_eigensystem(Matrix::Zero(2, 3)), DimensionError);
}

TEST_CASE("project_out against an orthonormal basis") {
  const Matrix x = kI * pauli_x() / std::sqrt(2.0);
  const std::vector<Matrix> basis{x};

  const Projection in_span = project_out(kI * pauli_x(), basis);
  CHECK(in_span.residual_norm < 1e-15);

  const Projection orthogonal = project_out(kI * pauli_y(), basis);
  CHECK((orthogonal.residual - kI * pauli_y()).norm() == 0.0);
  CHECK(orthogonal.residual_norm == doctest::Approx(std::sqrt(2.0)));

  const Projection mixed = project_out(kI * pauli_x() + kI * pauli_y(), basis);
  CHECK((mixed.residual - kI * pauli_y()).norm() < 1e-15);
  CHECK(std::abs(hs_inner(x, mixed.residual)) < 1e-15);
}

TEST_CASE("nullspace and tolerances") {
  Matrix a = Matrix::Zero(2, 3);
  a(0, 0) = 1.0;
  a(1, 1) = 1.0;
  const Matrix null = nullspace(a, 1e-12);
  REQUIRE(null.cols() == 1);
  CHECK(std::abs(null(2, 0)) == doctest::Approx(1.0));
  CHECK(nullspace(Matrix::Zero(4, 2), 1e-12).cols() == 2);

  CHECK_NOTHROW(Tolerances{}.validate());
  CHECK_THROWS_AS((Tolerances{1e-6, 1e-8}.validate()), ValidationError);
  CHECK_THROWS_AS((Tolerances{0.0, 1e-8}.validate()), ValidationError);
  CHECK_THROWS_AS((Tolerances{1e-10, -1.0}.validate()), ValidationError);
}
