#include <algorithm>
#include <numeric>

#include <doctest.h>

#include "bbq/linalg.hpp"
#include "test_util.hpp"

using namespace bbq;

TEST_CASE("hermitian_eigen examples")
{
  auto const id = hermitian_eigen(ComplexMatrix::Identity(3, 3));
  CHECK((id.values - RealVector::Ones(3)).norm() < 1e-15);

  auto const s3 = hermitian_eigen(pauli(2));
  CHECK(s3.values(0) == doctest::Approx(-1));
  CHECK(s3.values(1) == doctest::Approx(1));

  auto const s13 = hermitian_eigen(pauli(0) + pauli(2));
  CHECK(s13.values(0) == doctest::Approx(-std::sqrt(2.0)));
  CHECK(s13.values(1) == doctest::Approx(std::sqrt(2.0)));

  CHECK_THROWS_AS(hermitian_eigen(ComplexMatrix(2, 3)), DimensionError);
  CHECK_THROWS_AS(hermitian_eigen(ComplexMatrix()), DimensionError);
  ComplexMatrix bad = pauli(0);
  bad(0, 1) = 2.0;
  CHECK_THROWS_AS(hermitian_eigen(bad), DomainError);
}

TEST_CASE("hermitian_eigen reconstructs random matrices")
{
  for (Eigen::Index n : {1, 2, 5, 17, 64, 256}) {
    ComplexMatrix const A = test::random_hermitian(n);
    auto const e = hermitian_eigen(A);
    ComplexMatrix const back = e.vectors * e.values.cast<Cx>().asDiagonal() * e.vectors.adjoint();
    CHECK((back - A).norm() <= 1e-10 * A.norm());
    CHECK((e.vectors.adjoint() * e.vectors - ComplexMatrix::Identity(n, n)).norm() < 1e-10);
    CHECK(std::is_sorted(e.values.begin(), e.values.end()));
  }
}

TEST_CASE("operator_norm examples")
{
  CHECK(operator_norm(ComplexMatrix::Identity(4, 4)) == doctest::Approx(1));
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 3;
  d(1, 1) = -5;
  CHECK(operator_norm(d) == doctest::Approx(5));
  // sigma_1 + i sigma_2 = 2 |0><1|
  CHECK(operator_norm(pauli(0) + Cx(0, 1) * pauli(1)) == doctest::Approx(2));
  CHECK(operator_norm(ComplexMatrix::Zero(3, 3)) == 0.0);
}

TEST_CASE("operator_norm properties")
{
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::Index const n = test::uniform_int(1, 12);
    ComplexMatrix const A = test::random_matrix(n);
    ComplexMatrix const B = test::random_matrix(n);
    double const a = operator_norm(A), b = operator_norm(B);
    CHECK(operator_norm(A.adjoint() * A) == doctest::Approx(a * a).epsilon(1e-12));
    CHECK(operator_norm(A * B) <= a * b * (1 + 1e-12));
    CHECK(operator_norm(A + B) <= (a + b) * (1 + 1e-12));
    CHECK(operator_norm(A.adjoint()) == doctest::Approx(a).epsilon(1e-12));
    CHECK(a <= A.norm() * (1 + 1e-12));
  }
}

TEST_CASE("power iteration agrees with the direct norm")
{
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::Index const n = test::uniform_int(2, 20);
    ComplexMatrix const A = test::random_matrix(n);
    auto const r = spectral_norm_power(A);
    CHECK(r.converged);
    CHECK(r.norm == doctest::Approx(operator_norm(A)).epsilon(1e-6));
  }
  CHECK(spectral_norm_power(ComplexMatrix::Zero(2, 2)).norm == 0.0);
}

TEST_CASE("kron")
{
  ComplexMatrix const k = kron(pauli(2), ComplexMatrix::Identity(2, 2));
  RealVector diag(4);
  diag << 1, 1, -1, -1;
  CHECK((k - diag.cast<Cx>().asDiagonal().toDenseMatrix()).norm() == 0.0);

  ComplexMatrix const x0 = site_operator(pauli(0), 0, 3);
  CHECK((x0 - kron(pauli(0), ComplexMatrix::Identity(4, 4))).norm() == 0.0);
  ComplexMatrix const x2 = site_operator(pauli(0), 2, 3);
  CHECK((x2 - kron(ComplexMatrix::Identity(4, 4), pauli(0))).norm() == 0.0);

  for (int trial = 0; trial < 10; ++trial) {
    ComplexMatrix const A = test::random_matrix(test::uniform_int(1, 4));
    ComplexMatrix const B = test::random_matrix(test::uniform_int(1, 4));
    CHECK(operator_norm(kron(A, B)) == doctest::Approx(operator_norm(A) * operator_norm(B)).epsilon(1e-12));
  }

  CHECK_THROWS_AS(kron(ComplexMatrix::Identity(128, 128), ComplexMatrix::Identity(256, 256)), CapacityError);
  CHECK_THROWS_AS(pauli(3), std::out_of_range);
  CHECK_THROWS_AS(site_operator(pauli(0), 3, 3), std::out_of_range);
}

TEST_CASE("permute_basis swaps tensor factors")
{
  // |01> <-> |10> under the transposition of two sites
  std::array<int, 2> swap{1, 0};
  auto const map = permute_basis(swap, 2);
  CHECK(map == std::vector<Eigen::Index>{0, 2, 1, 3});

  std::array<int, 3> identity{0, 1, 2};
  auto const id = permute_basis(identity, 3);
  std::vector<Eigen::Index> expected(8);
  std::iota(expected.begin(), expected.end(), 0);
  CHECK(id == expected);
}

TEST_CASE("symmetrizer")
{
  SUBCASE("N = 1 is the identity")
  {
    auto const S = symmetrizer_full(1);
    CHECK((S.matrix - ComplexMatrix::Identity(2, 2)).norm() == 0.0);
  }
  SUBCASE("N = 2 has spectrum {0, 1, 1, 1}")
  {
    auto const e = hermitian_eigen(symmetrizer_full(2).matrix);
    CHECK(std::abs(e.values(0)) < 1e-15);
    for (int k = 1; k < 4; ++k) { CHECK(e.values(k) == doctest::Approx(1)); }
  }
  SUBCASE("projector of rank N+1")
  {
    for (int N = 1; N <= 5; ++N) {
      ComplexMatrix const S = symmetrizer_full(N).matrix;
      CHECK((S * S - S).norm() < 1e-12);
      CHECK((S - S.adjoint()).norm() < 1e-14);
      CHECK(S.trace().real() == doctest::Approx(N + 1));
    }
  }
  SUBCASE("commutes with U^{otimes N}")
  {
    for (int N = 1; N <= 6; ++N) {
      Eigen::Matrix2cd const U = test::random_su2();
      ComplexMatrix UN = U;
      for (int k = 1; k < N; ++k) { UN = kron(UN, U); }
      ComplexMatrix const S = symmetrizer_full(N).matrix;
      CHECK((S * UN - UN * S).norm() < 1e-11);
    }
  }
  CHECK_THROWS_AS(symmetrizer_full(0), DomainError);
  CHECK_THROWS_AS(symmetrizer_full(kOracleSiteCap + 1), CapacityError);
}

TEST_CASE("symmetrize_operator matches S X S on symmetric inputs")
{
  for (int N = 1; N <= 4; ++N) {
    FullTensorOperator X{N, test::random_matrix(Eigen::Index(1) << N)};
    ComplexMatrix const S = symmetrizer_full(N).matrix;
    ComplexMatrix const SX = symmetrize_operator(X).matrix;
    // S_N(X) commutes with every permutation, so S S_N(X) S = S X S.
    CHECK((S * SX * S - S * X.matrix * S).norm() < 1e-11);
    CHECK((symmetrize_operator({N, SX}).matrix - SX).norm() < 1e-11);
  }
  CHECK_THROWS_AS(symmetrize_operator({2, ComplexMatrix::Identity(3, 3)}), DimensionError);
}
