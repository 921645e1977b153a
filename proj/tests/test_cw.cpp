#include <sstream>

#include <doctest.h>

#include "bbq/cw.hpp"
#include "test_util.hpp"

using namespace bbq;

namespace {

/// 100^3 grid in (r, theta, phi) over the closed ball.
double grid_minimum(CWParams const &p)
{
  int const n = 100;
  double best = 1e300;
  for (int i = 0; i < n; ++i) {
    double const r = double(i) / (n - 1);
    for (int j = 0; j < n; ++j) {
      double const t = std::numbers::pi * j / (n - 1);
      for (int k = 0; k < n; ++k) {
        double const ph = 2 * std::numbers::pi * k / n;
        double const x = r * std::sin(t) * std::cos(ph), z = r * std::cos(t);
        best = std::min(best, -(p.J / 2) * z * z - p.B * x);
      }
    }
  }
  return best;
}

} // namespace

TEST_CASE("classical Hamiltonian")
{
  CHECK(cw_classical_hamiltonian({1, 0.5}) == Polynomial3::parse("-1/2 z^2 - 1/2 x"));
  CHECK(cw_classical_hamiltonian({0, 0}).is_zero());
}

TEST_CASE("Curie-Weiss Hamiltonian on Sym")
{
  SUBCASE("free spins")
  {
    auto const e = hermitian_eigen(cw_hamiltonian_sym({0, 1.3}, 7).matrix);
    for (Eigen::Index k = 0; k < e.values.size(); ++k) {
      CHECK(e.values(k) == doctest::Approx(-e.values(e.values.size() - 1 - k)).epsilon(1e-12));
    }
  }
  SUBCASE("pure coupling at N = 2")
  {
    ComplexMatrix expected = ComplexMatrix::Zero(3, 3);
    expected(0, 0) = -0.5;
    expected(2, 2) = -0.5;
    CHECK((cw_hamiltonian_sym({1, 0}, 2).matrix - expected).norm() < 1e-15);
  }
  SUBCASE("real symmetric tridiagonal")
  {
    ComplexMatrix const H = cw_hamiltonian_sym({0.7, -0.4}, 12).matrix;
    CHECK(H.imag().norm() == 0.0);
    CHECK((H - H.transpose()).norm() == 0.0);
    for (Eigen::Index i = 0; i < H.rows(); ++i) {
      for (Eigen::Index j = 0; j < H.cols(); ++j) {
        if (std::abs(i - j) > 1) { CHECK(H(i, j) == Cx(0)); }
      }
    }
  }
  SUBCASE("agrees with the compressed full-tensor Hamiltonian")
  {
    for (int N = 1; N <= 8; ++N) {
      CWParams const p{test::uniform(-2, 2), test::uniform(-2, 2)};
      CHECK((compress(cw_hamiltonian_full(p, N)).matrix - cw_hamiltonian_sym(p, N).matrix).norm() < 1e-12);
    }
  }
  SUBCASE("matches collective operators")
  {
    int const N = 9;
    auto const J = collective_ops(N);
    ComplexMatrix const expected = (-2.0 / (N * N)) * J[2] * J[2] - (2 * 0.5 / N) * J[0];
    CHECK((cw_hamiltonian_sym({1, 0.5}, N).matrix - expected).norm() < 1e-14);
  }
}

TEST_CASE("spectrum is invariant under B -> -B")
{
  for (int N : {1, 4, 17, 64}) {
    auto const a = cw_ground_state({1, 0.5}, N).eigenvalues;
    auto const b = cw_ground_state({1, -0.5}, N).eigenvalues;
    CHECK((a - b).norm() < 1e-12);
  }
}

TEST_CASE("classical minimum")
{
  auto const c = cw_classical({1, 0.5});
  CHECK(c.value == doctest::Approx(-0.625));
  REQUIRE(c.minimizers.size() == 2);
  CHECK((c.minimizers[0] - Eigen::Vector3d(0.5, 0, std::sqrt(3.0) / 2)).norm() < 1e-15);
  CHECK((c.minimizers[1] - Eigen::Vector3d(0.5, 0, -std::sqrt(3.0) / 2)).norm() < 1e-15);
  CHECK_FALSE(c.degenerate);

  auto const free = cw_classical({0, 1});
  CHECK(free.value == -1.0);
  CHECK((free.minimizers.at(0) - Eigen::Vector3d(1, 0, 0)).norm() == 0.0);

  auto const quad = cw_classical({1, 0});
  CHECK(quad.value == -0.5);
  CHECK(quad.minimizers.size() == 2);

  CHECK(cw_classical({0, 0}).degenerate);
  CHECK(cw_classical({0, 0}).value == 0.0);

  for (CWParams const p : {CWParams{1, 0.5}, CWParams{0, 1}, CWParams{1, 0}, CWParams{1, 1.5}, CWParams{-1, 0.3}}) {
    auto const cl = cw_classical(p);
    CHECK(std::abs(cl.value - grid_minimum(p)) < 1e-3);
    for (auto const &m : cl.minimizers) {
      CHECK(cw_classical_hamiltonian(p).evaluate(m.x(), m.y(), m.z()).real() == doctest::Approx(cl.value));
    }
  }
}

TEST_CASE("ground state")
{
  SUBCASE("matches the dense solver")
  {
    for (int N : {2, 9, 40}) {
      CWParams const p{1, 0.5};
      auto const s = cw_ground_state(p, N);
      auto const dense = hermitian_eigen(cw_hamiltonian_sym(p, N).matrix);
      CHECK((s.eigenvalues - dense.values).norm() < 1e-12);
      CHECK(std::abs(s.ground_vector.norm() - 1) < 1e-12);
      ComplexVector const Hv = cw_hamiltonian_sym(p, N).matrix * s.ground_vector;
      CHECK((Hv - s.eigenvalues(0) * s.ground_vector).norm() < 1e-12);
    }
  }
  SUBCASE("free spins align with the field")
  {
    for (int N : {1, 6, 30}) {
      auto const s = cw_ground_state({0, 1}, N);
      Cx const ex = s.ground_vector.dot(quantize_bulk(Polynomial3::x(), N).matrix * s.ground_vector);
      CHECK(ex.real() == doctest::Approx(1).epsilon(1e-12));
    }
  }
  SUBCASE("ties resolve to the lowest Dicke index")
  {
    auto const s = cw_ground_state({1, 0}, 6);
    CHECK(s.ground_tie);
    CHECK(std::abs(s.ground_vector(0) - Cx(1)) < 1e-15);
  }
  SUBCASE("odd observable vanishes by parity")
  {
    auto const s = cw_ground_state({1, 0.5}, 24);
    Cx const ez = s.ground_vector.dot(quantize_bulk(Polynomial3::z(), 24).matrix * s.ground_vector);
    CHECK(std::abs(ez) < 1e-8);
  }
}

TEST_CASE("Curie-Weiss convergence")
{
  CHECK(all_below(cw_theorem_sweep({0, 0}, {2, 8, 32}), 1e-12));
  auto const r = cw_theorem_sweep({1, 0.5}, geometric_range(2, 128));
  CHECK(strictly_decreasing(r));
  for (int N : {8, 32, 128}) { CHECK(N * cw_bulk_defect({1, 0.5}, N) < 1.0); }

  auto const rows = cw_experiment({1, 0.5}, {16, 64});
  REQUIRE(rows.size() == 2);
  CHECK(std::abs(rows[1].ground_energy + 0.625) < std::abs(rows[0].ground_energy + 0.625));
  CHECK(std::abs(rows[1].exp_z2 - 0.75) < std::abs(rows[0].exp_z2 - 0.75));
  CHECK(rows[1].gap >= 0);
  CHECK(rows[1].norm_diff == doctest::Approx(r[5].value));

  std::ostringstream os;
  write_cw_csv(os, rows);
  CHECK(os.str().rfind("N,ground_energy,gap,exp_z2,exp_x,norm_diff\n16,", 0) == 0);
}
