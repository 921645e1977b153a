#pragma once

#include <array>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

namespace bbq {

using Rational = boost::multiprecision::cpp_rational;

/// Exact complex number with rational real and imaginary parts.
struct ExactComplex
{
  Rational re{0};
  Rational im{0};

  ExactComplex() = default;
  ExactComplex(Rational r, Rational i = 0)
    : re(std::move(r))
    , im(std::move(i))
  {
  }
  ExactComplex(long long r)
    : re(r)
  {
  }
  /// Exact conversion; every finite double is a dyadic rational.
  static ExactComplex from_double(double r, double i = 0.0);

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  std::complex<double> to_complex() const;
  ExactComplex conj() const { return {re, -im}; }

  ExactComplex &operator+=(ExactComplex const &o);
  ExactComplex &operator-=(ExactComplex const &o);
  ExactComplex &operator*=(ExactComplex const &o);
  friend ExactComplex operator+(ExactComplex a, ExactComplex const &b) { return a += b; }
  friend ExactComplex operator-(ExactComplex a, ExactComplex const &b) { return a -= b; }
  friend ExactComplex operator*(ExactComplex a, ExactComplex const &b) { return a *= b; }
  friend ExactComplex operator-(ExactComplex a) { return {-a.re, -a.im}; }
  friend bool operator==(ExactComplex const &a, ExactComplex const &b) { return a.re == b.re && a.im == b.im; }
  ExactComplex operator/(Rational const &d) const { return {re / d, im / d}; }
};

/// x^ax y^ay z^az. Ordered graded-lexicographically: higher degree first,
/// then larger x exponent, then larger y exponent.
struct Monomial3
{
  int ax = 0, ay = 0, az = 0;

  int degree() const { return ax + ay + az; }
  int exponent(int axis) const { return axis == 0 ? ax : axis == 1 ? ay : az; }
  Monomial3 operator*(Monomial3 const &o) const { return {ax + o.ax, ay + o.ay, az + o.az}; }
  friend bool operator==(Monomial3 const &, Monomial3 const &) = default;
};

struct GrlexGreater
{
  bool operator()(Monomial3 const &a, Monomial3 const &b) const
  {
    if (a.degree() != b.degree()) { return a.degree() > b.degree(); }
    if (a.ax != b.ax) { return a.ax > b.ax; }
    return a.ay > b.ay;
  }
};

class PolynomialParseError : public std::runtime_error
{
public:
  PolynomialParseError(std::string const &msg, std::size_t pos);
  std::size_t position() const { return pos_; }

private:
  std::size_t pos_;
};

/// Sparse polynomial in x, y, z with exact complex-rational coefficients.
/// Zero coefficients are never stored.
class Polynomial3
{
public:
  using Terms = std::map<Monomial3, ExactComplex, GrlexGreater>;

  Polynomial3() = default;
  Polynomial3(ExactComplex c);
  Polynomial3(long long c)
    : Polynomial3(ExactComplex(c))
  {
  }

  static Polynomial3 monomial(Monomial3 m, ExactComplex c = ExactComplex(1));
  static Polynomial3 x() { return monomial({1, 0, 0}); }
  static Polynomial3 y() { return monomial({0, 1, 0}); }
  static Polynomial3 z() { return monomial({0, 0, 1}); }
  /// Coordinate function x_axis, axis in {0,1,2}.
  static Polynomial3 coordinate(int axis);
  /// x^2 + y^2 + z^2
  static Polynomial3 radius_squared();
  static Polynomial3 parse(std::string_view text);

  Terms const &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_real() const;
  /// -1 for the zero polynomial.
  int degree() const;
  ExactComplex coefficient(Monomial3 const &m) const;
  bool is_homogeneous() const;
  /// Homogeneous component of degree d.
  Polynomial3 homogeneous_part(int d) const;

  Polynomial3 conj() const;
  Polynomial3 derivative(int axis) const;
  Polynomial3 laplacian() const;
  std::complex<double> evaluate(double x, double y, double z) const;
  std::complex<double> evaluate(std::array<double, 3> const &p) const { return evaluate(p[0], p[1], p[2]); }

  std::string to_string() const;

  Polynomial3 &operator+=(Polynomial3 const &o);
  Polynomial3 &operator-=(Polynomial3 const &o);
  Polynomial3 &operator*=(ExactComplex const &c);
  friend Polynomial3 operator+(Polynomial3 a, Polynomial3 const &b) { return a += b; }
  friend Polynomial3 operator-(Polynomial3 a, Polynomial3 const &b) { return a -= b; }
  friend Polynomial3 operator-(Polynomial3 a) { return a *= ExactComplex(-1); }
  friend Polynomial3 operator*(Polynomial3 const &a, Polynomial3 const &b);
  friend Polynomial3 operator*(Polynomial3 a, ExactComplex const &c) { return a *= c; }
  friend Polynomial3 operator*(ExactComplex const &c, Polynomial3 a) { return a *= c; }
  friend bool operator==(Polynomial3 const &a, Polynomial3 const &b) { return a.terms_ == b.terms_; }

private:
  void add_term(Monomial3 const &m, ExactComplex const &c);
  Terms terms_;
};

Polynomial3 pow(Polynomial3 const &p, int n);

/// scale * sum_{abc} eps_{abc} x_c (d_a f)(d_b g)
Polynomial3 poisson_bracket(Polynomial3 const &f, Polynomial3 const &g, Rational const &scale = 1);

/// (rho_R p)(x) = p(R^{-1} x) for a rotation R (R^{-1} = R^T).
/// Entries of R are converted exactly from double.
Polynomial3 rotate(Polynomial3 const &p, Eigen::Matrix3d const &R);

/// Floating-point snapshot of a polynomial for repeated evaluation.
class PolynomialEvaluator
{
public:
  explicit PolynomialEvaluator(Polynomial3 const &p);
  std::complex<double> operator()(double x, double y, double z) const;
  int degree() const { return degree_; }

private:
  struct Term
  {
    int ax, ay, az;
    std::complex<double> c;
  };
  std::vector<Term> terms_;
  int degree_ = -1;
};

struct HarmonicPart
{
  int degree;
  Polynomial3 harmonic; // homogeneous of `degree`, Laplacian zero
};

/// p = sum_j H_j + (x^2+y^2+z^2-1) q
struct HarmonicDecomposition
{
  std::vector<HarmonicPart> harmonic_parts; // ascending degree, zero parts omitted
  Polynomial3 radial_cofactor;

  Polynomial3 reconstruct() const;
  /// sum_j H_j, i.e. the representative of p|_{S^2} in harmonic form.
  Polynomial3 sphere_part() const;
};

HarmonicDecomposition harmonic_decompose(Polynomial3 const &p);

/// Harmonic projection of a homogeneous polynomial (the r^0 term of its
/// expansion sum_k r^{2k} h_{d-2k}).
Polynomial3 harmonic_projection(Polynomial3 const &homogeneous);

/// (M+1)^2 harmonic homogeneous polynomials of degrees 0..M whose
/// restrictions to the sphere form a basis of P_M(S^2). Degree-j block has
/// 2j+1 members, the harmonic projections of x^a y^b z^c with c <= 1.
std::vector<Polynomial3> restrict_basis(int M);

} // namespace bbq
