#include <algorithm>

#include <doctest.h>

#include "bbq/poly3.hpp"
#include "test_util.hpp"

using namespace bbq;
using bbq::test::uniform;

namespace {

Polynomial3 P(char const *s) { return Polynomial3::parse(s); }

} // namespace

TEST_CASE("parse and print")
{
  Polynomial3 const p = P("3/2 x^2 y - 1 z^3 + 2");
  CHECK(p.coefficient({2, 1, 0}) == ExactComplex(Rational(3, 2)));
  CHECK(p.coefficient({0, 0, 3}) == ExactComplex(-1));
  CHECK(p.coefficient({}) == ExactComplex(2));
  CHECK(p.to_string() == "3/2 x^2 y - z^3 + 2");

  CHECK(P("  x*y*z ") == P("xyz"));
  CHECK(P("0.25 z^2") == P("1/4 z^2"));
  CHECK(P("1e-1 x") == P("1/10 x"));
  CHECK(P("x + i y").coefficient({0, 1, 0}) == ExactComplex(0, 1));
  CHECK(P("x - x").is_zero());
  CHECK(P("x - x").to_string() == "0");

  SUBCASE("graded lex order")
  {
    CHECK(P("z + y + x + z^2 + x y + 1").to_string() == "x y + z^2 + x + y + z + 1");
  }
}

TEST_CASE("parse errors carry positions")
{
  auto position_of = [](char const *s) -> std::size_t {
    try {
      Polynomial3::parse(s);
    } catch (PolynomialParseError const &e) {
      return e.position();
    }
    return std::size_t(-1);
  };
  CHECK(position_of("") == 0);
  CHECK(position_of("x + w") == 4);
  CHECK(position_of("x^") == 2);
  CHECK(position_of("3/0 x") == 2);
  CHECK(position_of("x +") == 3);
}

TEST_CASE("print/parse round trip")
{
  for (int trial = 0; trial < 50; ++trial) {
    Polynomial3 p = test::random_integer_polynomial(5, 8);
    p += test::random_integer_polynomial(3) * ExactComplex(Rational(1, 3), Rational(-2, 7));
    CHECK(Polynomial3::parse(p.to_string()) == p);
  }
}

TEST_CASE("evaluate")
{
  CHECK(P("x^2+y^2+z^2").evaluate(0, 0, 1) == Cx(1));
  CHECK(P("z^2").evaluate(0, 0, 0.5) == Cx(0.25));
  // h_0 = -(J/2) z^2 - B x, J = 1, B = 1/2, at (1/2, 0, sqrt(3)/2)
  CHECK(std::abs(P("-1/2 z^2 - 1/2 x").evaluate(0.5, 0, std::sqrt(3.0) / 2) - Cx(-0.625)) < 1e-15);
}

TEST_CASE("algebra invariants")
{
  for (int trial = 0; trial < 20; ++trial) {
    auto const a = test::random_integer_polynomial(3);
    auto const b = test::random_integer_polynomial(3);
    auto const c = test::random_integer_polynomial(2);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    if (!a.is_zero() && !b.is_zero()) { CHECK((a * b).degree() == a.degree() + b.degree()); }
    Polynomial3 const sum = a * b - b * a + a;
    for (auto const &[m, coeff] : sum.terms()) { CHECK(!coeff.is_zero()); }
  }
}

TEST_CASE("exact double conversion")
{
  ExactComplex const c = ExactComplex::from_double(0.1);
  CHECK(c.re != Rational(1, 10));
  CHECK(c.re.convert_to<double>() == 0.1);
  CHECK(ExactComplex::from_double(0.5).re == Rational(1, 2));
}

TEST_CASE("poisson bracket examples")
{
  auto const x = Polynomial3::x(), y = Polynomial3::y(), z = Polynomial3::z();
  CHECK(poisson_bracket(x, y) == z);
  CHECK(poisson_bracket(y, z) == x);
  CHECK(poisson_bracket(z, x) == y);
  CHECK(poisson_bracket(P("z^2"), x) == P("2 y z"));
  auto const f = P("x^2 y + 3 z");
  CHECK(poisson_bracket(f, f, Rational(-2)).is_zero());
  CHECK(poisson_bracket(x, y, Rational(-2)) == P("-2 z"));
  // r^2 is a Casimir
  CHECK(poisson_bracket(Polynomial3::radius_squared(), f).is_zero());
}

TEST_CASE("poisson bracket: bilinear, antisymmetric, Leibniz and Jacobi on monomials up to degree 3")
{
  std::vector<Polynomial3> monos;
  for (int d = 0; d <= 3; ++d) {
    for (auto const &m : test::monomials_of_degree(d)) { monos.push_back(Polynomial3::monomial(m)); }
  }
  for (auto const &f : monos) {
    for (auto const &g : monos) {
      CHECK(poisson_bracket(f, g) == -poisson_bracket(g, f));
    }
  }
  for (int trial = 0; trial < 60; ++trial) {
    auto const &f = monos[test::uniform_int(0, int(monos.size()) - 1)];
    auto const &g = monos[test::uniform_int(0, int(monos.size()) - 1)];
    auto const &h = monos[test::uniform_int(0, int(monos.size()) - 1)];
    ExactComplex const s(Rational(test::uniform_int(-4, 4), 3));
    CHECK(poisson_bracket(f * s + g, h) == poisson_bracket(f, h) * s + poisson_bracket(g, h));
    CHECK(poisson_bracket(f, g * h) == poisson_bracket(f, g) * h + g * poisson_bracket(f, h));
    Polynomial3 const jacobi = poisson_bracket(f, poisson_bracket(g, h)) + poisson_bracket(g, poisson_bracket(h, f)) +
                               poisson_bracket(h, poisson_bracket(f, g));
    CHECK(jacobi.is_zero());
  }
}

TEST_CASE("bracket restricts to the intrinsic sphere bracket")
{
  // {f,g}_{S^2} = (1/sin t)(d_t f d_p g - d_p f d_t g) in polar angles,
  // evaluated by central differences.
  double const h = 1e-5;
  for (int trial = 0; trial < 50; ++trial) {
    auto const f = test::random_integer_polynomial(3);
    auto const g = test::random_integer_polynomial(3);
    auto const br = poisson_bracket(f, g);
    SpherePoint pt = test::random_sphere_point();
    pt.theta = std::clamp(pt.theta, 0.2, std::numbers::pi - 0.2);
    auto on_sphere = [](Polynomial3 const &p, double t, double ph) {
      return p.evaluate(std::sin(t) * std::cos(ph), std::sin(t) * std::sin(ph), std::cos(t)).real();
    };
    auto dt = [&](Polynomial3 const &p) {
      return (on_sphere(p, pt.theta + h, pt.phi) - on_sphere(p, pt.theta - h, pt.phi)) / (2 * h);
    };
    auto dp = [&](Polynomial3 const &p) {
      return (on_sphere(p, pt.theta, pt.phi + h) - on_sphere(p, pt.theta, pt.phi - h)) / (2 * h);
    };
    double const intrinsic = (dt(f) * dp(g) - dp(f) * dt(g)) / std::sin(pt.theta);
    double const ambient = on_sphere(br, pt.theta, pt.phi);
    CHECK(std::abs(intrinsic - ambient) < 1e-6 * std::max(1.0, std::abs(ambient)));
  }
}

TEST_CASE("harmonic decomposition examples")
{
  SUBCASE("x^2")
  {
    auto const d = harmonic_decompose(P("x^2"));
    REQUIRE(d.harmonic_parts.size() == 2);
    CHECK(d.harmonic_parts[0].degree == 0);
    CHECK(d.harmonic_parts[0].harmonic == P("1/3"));
    CHECK(d.harmonic_parts[1].degree == 2);
    CHECK(d.harmonic_parts[1].harmonic == P("x^2 - 1/3 x^2 - 1/3 y^2 - 1/3 z^2"));
    CHECK(d.radial_cofactor == P("1/3"));
  }
  SUBCASE("z")
  {
    auto const d = harmonic_decompose(P("z"));
    REQUIRE(d.harmonic_parts.size() == 1);
    CHECK(d.harmonic_parts[0].harmonic == P("z"));
    CHECK(d.radial_cofactor.is_zero());
  }
  SUBCASE("r^2")
  {
    auto const d = harmonic_decompose(Polynomial3::radius_squared());
    REQUIRE(d.harmonic_parts.size() == 1);
    CHECK(d.harmonic_parts[0].degree == 0);
    CHECK(d.harmonic_parts[0].harmonic == P("1"));
    CHECK(d.radial_cofactor == P("1"));
    CHECK(d.reconstruct() == Polynomial3::radius_squared());
  }
  SUBCASE("zero") { CHECK(harmonic_decompose(Polynomial3()).harmonic_parts.empty()); }
}

TEST_CASE("harmonic decomposition invariants on random polynomials up to degree 6")
{
  for (int trial = 0; trial < 40; ++trial) {
    Polynomial3 const p = test::random_integer_polynomial(6, 10);
    auto const d = harmonic_decompose(p);
    CHECK(d.reconstruct() == p);
    for (auto const &h : d.harmonic_parts) {
      CHECK(h.harmonic.laplacian().is_zero());
      CHECK(h.harmonic.is_homogeneous());
      CHECK(h.harmonic.degree() == h.degree);
    }
    if (!d.radial_cofactor.is_zero()) { CHECK(d.radial_cofactor.degree() <= p.degree() - 2); }
    double const t = std::acos(uniform()), ph = uniform(-3, 3);
    double const x = std::sin(t) * std::cos(ph), y = std::sin(t) * std::sin(ph), z = std::cos(t);
    CHECK(std::abs(p.evaluate(x, y, z) - d.sphere_part().evaluate(x, y, z)) < 1e-10);
  }
  // coefficient-linear over complex scalars
  Polynomial3 const p = test::random_integer_polynomial(4);
  Polynomial3 const q = p * ExactComplex(1, 2);
  CHECK(harmonic_decompose(q).radial_cofactor == harmonic_decompose(p).radial_cofactor * ExactComplex(1, 2));
}

TEST_CASE("restrict_basis sizes and rank")
{
  CHECK(restrict_basis(0).size() == 1);
  CHECK(restrict_basis(0)[0] == P("1"));
  CHECK(restrict_basis(1).size() == 4);
  CHECK(restrict_basis(3).size() == 16);
  for (auto const &b : restrict_basis(4)) {
    CHECK(b.laplacian().is_zero());
    CHECK(b.is_homogeneous());
  }
  CHECK_THROWS_AS(restrict_basis(-1), std::domain_error);

  // Gram matrix of restrictions under the sphere integral, via quadrature.
  auto const basis = restrict_basis(2);
  REQUIRE(basis.size() == 9);
  auto const quad = gauss_sphere_quadrature(4);
  RealMatrix gram(9, 9);
  for (int i = 0; i < 9; ++i) {
    for (int j = 0; j < 9; ++j) {
      gram(i, j) = quad.integrate([&](SpherePoint const &s) {
        Eigen::Vector3d const v = s.unit_vector();
        return (basis[i].evaluate(v.x(), v.y(), v.z()) * basis[j].evaluate(v.x(), v.y(), v.z())).real();
      });
    }
  }
  Eigen::FullPivLU<RealMatrix> lu(gram);
  lu.setThreshold(1e-10);
  CHECK(lu.rank() == 9);
}

TEST_CASE("rotate")
{
  Eigen::Matrix3d Rz;
  double const a = 0.7;
  Rz << std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a), 0, 0, 0, 1;
  // (rho_R x)(v) = (R^T v)_x
  Polynomial3 const rx = rotate(P("x"), Rz);
  CHECK(std::abs(rx.evaluate(1, 0, 0) - Cx(std::cos(a))) < 1e-15);
  CHECK(std::abs(rx.evaluate(0, 1, 0) - Cx(std::sin(a))) < 1e-15);
  // r^2 is invariant up to the exact rounding of cos^2 + sin^2
  Polynomial3 const r2 = rotate(Polynomial3::radius_squared(), Rz);
  CHECK(std::abs(r2.evaluate(0.3, -0.4, 0.5) - Cx(0.5)) < 1e-15);
}
