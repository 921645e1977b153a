#include "bbq/poly3.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace bbq {

ExactComplex ExactComplex::from_double(double r, double i)
{
  if (!std::isfinite(r) || !std::isfinite(i)) { throw std::domain_error("non-finite coefficient"); }
  return {Rational(r), Rational(i)};
}

std::complex<double> ExactComplex::to_complex() const
{
  return {re.convert_to<double>(), im.convert_to<double>()};
}

ExactComplex &ExactComplex::operator+=(ExactComplex const &o)
{
  re += o.re;
  im += o.im;
  return *this;
}

ExactComplex &ExactComplex::operator-=(ExactComplex const &o)
{
  re -= o.re;
  im -= o.im;
  return *this;
}

ExactComplex &ExactComplex::operator*=(ExactComplex const &o)
{
  Rational const r = re * o.re - im * o.im;
  im = re * o.im + im * o.re;
  re = r;
  return *this;
}

PolynomialParseError::PolynomialParseError(std::string const &msg, std::size_t pos)
  : std::runtime_error(msg + " at position " + std::to_string(pos))
  , pos_(pos)
{
}

Polynomial3::Polynomial3(ExactComplex c) { add_term({}, c); }

Polynomial3 Polynomial3::monomial(Monomial3 m, ExactComplex c)
{
  if (m.ax < 0 || m.ay < 0 || m.az < 0) { throw std::domain_error("negative exponent"); }
  Polynomial3 p;
  p.add_term(m, c);
  return p;
}

Polynomial3 Polynomial3::coordinate(int axis)
{
  switch (axis) {
  case 0: return x();
  case 1: return y();
  case 2: return z();
  default: throw std::out_of_range("axis must be 0, 1 or 2");
  }
}

Polynomial3 Polynomial3::radius_squared()
{
  return monomial({2, 0, 0}) + monomial({0, 2, 0}) + monomial({0, 0, 2});
}

void Polynomial3::add_term(Monomial3 const &m, ExactComplex const &c)
{
  if (c.is_zero()) { return; }
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) { terms_.erase(it); }
  }
}

bool Polynomial3::is_real() const
{
  for (auto const &[m, c] : terms_) {
    if (!c.is_real()) { return false; }
  }
  return true;
}

int Polynomial3::degree() const { return terms_.empty() ? -1 : terms_.begin()->first.degree(); }

ExactComplex Polynomial3::coefficient(Monomial3 const &m) const
{
  auto it = terms_.find(m);
  return it == terms_.end() ? ExactComplex() : it->second;
}

bool Polynomial3::is_homogeneous() const
{
  if (terms_.empty()) { return true; }
  return terms_.begin()->first.degree() == terms_.rbegin()->first.degree();
}

Polynomial3 Polynomial3::homogeneous_part(int d) const
{
  Polynomial3 out;
  for (auto const &[m, c] : terms_) {
    if (m.degree() == d) { out.add_term(m, c); }
  }
  return out;
}

Polynomial3 Polynomial3::conj() const
{
  Polynomial3 out;
  for (auto const &[m, c] : terms_) { out.add_term(m, c.conj()); }
  return out;
}

Polynomial3 Polynomial3::derivative(int axis) const
{
  Polynomial3 out;
  for (auto const &[m, c] : terms_) {
    int const e = m.exponent(axis);
    if (e == 0) { continue; }
    Monomial3 d = m;
    (axis == 0 ? d.ax : axis == 1 ? d.ay : d.az) -= 1;
    out.add_term(d, c * ExactComplex(e));
  }
  return out;
}

Polynomial3 Polynomial3::laplacian() const
{
  Polynomial3 out;
  for (int a = 0; a < 3; ++a) { out += derivative(a).derivative(a); }
  return out;
}

std::complex<double> Polynomial3::evaluate(double x, double y, double z) const
{
  return PolynomialEvaluator(*this)(x, y, z);
}

PolynomialEvaluator::PolynomialEvaluator(Polynomial3 const &p)
  : degree_(p.degree())
{
  terms_.reserve(p.terms().size());
  for (auto const &[m, c] : p.terms()) { terms_.push_back({m.ax, m.ay, m.az, c.to_complex()}); }
}

std::complex<double> PolynomialEvaluator::operator()(double x, double y, double z) const
{
  std::complex<double> sum = 0.0;
  for (auto const &t : terms_) {
    double v = 1.0;
    for (int k = 0; k < t.ax; ++k) { v *= x; }
    for (int k = 0; k < t.ay; ++k) { v *= y; }
    for (int k = 0; k < t.az; ++k) { v *= z; }
    sum += t.c * v;
  }
  return sum;
}

Polynomial3 &Polynomial3::operator+=(Polynomial3 const &o)
{
  for (auto const &[m, c] : o.terms_) { add_term(m, c); }
  return *this;
}

Polynomial3 &Polynomial3::operator-=(Polynomial3 const &o)
{
  for (auto const &[m, c] : o.terms_) { add_term(m, -c); }
  return *this;
}

Polynomial3 &Polynomial3::operator*=(ExactComplex const &s)
{
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto &[m, c] : terms_) { c *= s; }
  return *this;
}

Polynomial3 operator*(Polynomial3 const &a, Polynomial3 const &b)
{
  Polynomial3 out;
  for (auto const &[ma, ca] : a.terms_) {
    for (auto const &[mb, cb] : b.terms_) { out.add_term(ma * mb, ca * cb); }
  }
  return out;
}

Polynomial3 pow(Polynomial3 const &p, int n)
{
  if (n < 0) { throw std::domain_error("negative power"); }
  Polynomial3 out(1);
  for (int i = 0; i < n; ++i) { out = out * p; }
  return out;
}

namespace {

void print_monomial(std::ostream &os, Monomial3 const &m)
{
  char const names[3] = {'x', 'y', 'z'};
  bool first = true;
  for (int a = 0; a < 3; ++a) {
    int const e = m.exponent(a);
    if (e == 0) { continue; }
    if (!first) { os << ' '; }
    os << names[a];
    if (e > 1) { os << '^' << e; }
    first = false;
  }
}

void print_term(std::ostream &os, bool &first, Rational const &c, bool imaginary, Monomial3 const &m)
{
  if (c == 0) { return; }
  bool const negative = c < 0;
  Rational const mag = negative ? Rational(-c) : c;
  if (first) {
    if (negative) { os << '-'; }
  } else {
    os << (negative ? " - " : " + ");
  }
  first = false;
  bool wrote = false;
  if (mag != 1 || (m.degree() == 0 && !imaginary)) {
    os << mag;
    wrote = true;
  }
  if (imaginary) {
    if (wrote) { os << ' '; }
    os << 'i';
    wrote = true;
  }
  if (m.degree() > 0) {
    if (wrote) { os << ' '; }
    print_monomial(os, m);
  }
}

} // namespace

std::string Polynomial3::to_string() const
{
  if (terms_.empty()) { return "0"; }
  std::ostringstream os;
  bool first = true;
  for (auto const &[m, c] : terms_) {
    print_term(os, first, c.re, false, m);
    print_term(os, first, c.im, true, m);
  }
  return os.str();
}

namespace {

class Parser
{
public:
  explicit Parser(std::string_view s)
    : s_(s)
  {
  }

  Polynomial3 parse()
  {
    Polynomial3 out;
    skip();
    if (at_end()) { throw PolynomialParseError("empty polynomial", pos_); }
    bool first = true;
    while (true) {
      skip();
      if (at_end()) { break; }
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        throw PolynomialParseError("expected '+' or '-'", pos_);
      }
      out += parse_term() * ExactComplex(sign);
      first = false;
    }
    return out;
  }

private:
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  void skip()
  {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) { ++pos_; }
  }

  Rational parse_unsigned_number()
  {
    std::size_t const start = pos_;
    boost::multiprecision::cpp_int digits = 0;
    int scale = 0;
    bool any = false;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      digits = digits * 10 + (peek() - '0');
      ++pos_;
      any = true;
    }
    if (!at_end() && peek() == '.') {
      ++pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        digits = digits * 10 + (peek() - '0');
        ++scale;
        ++pos_;
        any = true;
      }
    }
    if (!any) { throw PolynomialParseError("expected number", start); }
    if (!at_end() && (peek() == 'e' || peek() == 'E')) {
      ++pos_;
      int esign = 1;
      if (!at_end() && (peek() == '+' || peek() == '-')) {
        esign = peek() == '-' ? -1 : 1;
        ++pos_;
      }
      int e = 0;
      bool edigits = false;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        e = e * 10 + (peek() - '0');
        if (e > 400) { throw PolynomialParseError("exponent out of range", pos_); }
        ++pos_;
        edigits = true;
      }
      if (!edigits) { throw PolynomialParseError("malformed exponent", pos_); }
      scale -= esign * e;
    }
    Rational r(digits);
    boost::multiprecision::cpp_int const ten_pow = boost::multiprecision::pow(boost::multiprecision::cpp_int(10), std::abs(scale));
    return scale >= 0 ? r / Rational(ten_pow) : r * Rational(ten_pow);
  }

  int parse_exponent()
  {
    skip();
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) {
      throw PolynomialParseError("expected integer exponent", pos_);
    }
    int e = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      e = e * 10 + (peek() - '0');
      if (e > 10000) { throw PolynomialParseError("exponent too large", pos_); }
      ++pos_;
    }
    return e;
  }

  Polynomial3 parse_term()
  {
    std::size_t const start = pos_;
    ExactComplex coef(1);
    Monomial3 m;
    bool any = false;
    while (true) {
      skip();
      if (at_end()) { break; }
      char const c = peek();
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        Rational num = parse_unsigned_number();
        skip();
        if (!at_end() && peek() == '/') {
          ++pos_;
          skip();
          std::size_t const dpos = pos_;
          Rational den = parse_unsigned_number();
          if (den == 0) { throw PolynomialParseError("division by zero", dpos); }
          num /= den;
        }
        coef *= ExactComplex(num);
      } else if (c == 'x' || c == 'y' || c == 'z') {
        ++pos_;
        int e = 1;
        skip();
        if (!at_end() && peek() == '^') {
          ++pos_;
          e = parse_exponent();
        }
        (c == 'x' ? m.ax : c == 'y' ? m.ay : m.az) += e;
      } else if (c == 'i') {
        ++pos_;
        coef *= ExactComplex(0, 1);
      } else if (c == '*') {
        if (!any) { throw PolynomialParseError("unexpected '*'", pos_); }
        ++pos_;
        continue;
      } else if (c == '+' || c == '-') {
        break;
      } else {
        throw PolynomialParseError(std::string("unexpected character '") + c + "'", pos_);
      }
      any = true;
    }
    if (!any) { throw PolynomialParseError("expected term", start); }
    return Polynomial3::monomial(m, coef);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

} // namespace

Polynomial3 Polynomial3::parse(std::string_view text) { return Parser(text).parse(); }

Polynomial3 poisson_bracket(Polynomial3 const &f, Polynomial3 const &g, Rational const &scale)
{
  std::array<Polynomial3, 3> df, dg;
  for (int a = 0; a < 3; ++a) {
    df[a] = f.derivative(a);
    dg[a] = g.derivative(a);
  }
  // eps_{abc} x_c: (a,b,c) cyclic -> +1
  Polynomial3 out;
  for (int a = 0; a < 3; ++a) {
    int const b = (a + 1) % 3;
    int const c = (a + 2) % 3;
    out += Polynomial3::coordinate(c) * (df[a] * dg[b] - df[b] * dg[a]);
  }
  return out * ExactComplex(scale);
}

Polynomial3 rotate(Polynomial3 const &p, Eigen::Matrix3d const &R)
{
  // x_j -> (R^T x)_j = sum_k R_kj x_k
  std::array<Polynomial3, 3> forms;
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      forms[j] += Polynomial3::coordinate(k) * ExactComplex::from_double(R(k, j));
    }
  }
  int const d = std::max(p.degree(), 0);
  std::array<std::vector<Polynomial3>, 3> powers;
  for (int j = 0; j < 3; ++j) {
    powers[j].reserve(d + 1);
    powers[j].emplace_back(1);
    for (int e = 1; e <= d; ++e) { powers[j].push_back(powers[j].back() * forms[j]); }
  }
  Polynomial3 out;
  for (auto const &[m, c] : p.terms()) { out += c * (powers[0][m.ax] * powers[1][m.ay] * powers[2][m.az]); }
  return out;
}

namespace {

// p homogeneous of degree d. Returns h with p = sum_k r^{2k} h[k], h[k]
// harmonic homogeneous of degree d-2k.
std::vector<Polynomial3> expand_homogeneous(Polynomial3 const &p, int d)
{
  if (d < 2) { return {p}; }
  // Delta(r^{2k} h_m) = 2k(2k+2m+1) r^{2k-2} h_m, so the r^2-part of p is
  // determined by the expansion of Delta p.
  std::vector<Polynomial3> const lap = expand_homogeneous(p.laplacian(), d - 2);
  std::vector<Polynomial3> out(lap.size() + 1);
  Polynomial3 const r2 = Polynomial3::radius_squared();
  Polynomial3 r2k = r2;
  Polynomial3 radial;
  for (std::size_t i = 0; i < lap.size(); ++i) {
    long long const m = d - 2 - 2 * static_cast<long long>(i);
    long long const k = static_cast<long long>(i) + 1;
    out[i + 1] = lap[i] * ExactComplex(Rational(1, 2 * k * (2 * k + 2 * m + 1)));
    radial += r2k * out[i + 1];
    r2k = r2k * r2;
  }
  out[0] = p - radial;
  return out;
}

} // namespace

Polynomial3 harmonic_projection(Polynomial3 const &homogeneous)
{
  if (!homogeneous.is_homogeneous()) { throw std::invalid_argument("harmonic_projection needs a homogeneous polynomial"); }
  if (homogeneous.is_zero()) { return {}; }
  return expand_homogeneous(homogeneous, homogeneous.degree()).front();
}

HarmonicDecomposition harmonic_decompose(Polynomial3 const &p)
{
  int const deg = p.degree();
  std::vector<Polynomial3> parts(std::max(deg + 1, 0));
  Polynomial3 cofactor;
  Polynomial3 const r2 = Polynomial3::radius_squared();
  for (int d = 0; d <= deg; ++d) {
    Polynomial3 const pd = p.homogeneous_part(d);
    if (pd.is_zero()) { continue; }
    std::vector<Polynomial3> const h = expand_homogeneous(pd, d);
    // r^{2k} = 1 + (r^2 - 1)(1 + r^2 + ... + r^{2(k-1)})
    Polynomial3 geometric;
    Polynomial3 r2i(1);
    for (std::size_t k = 0; k < h.size(); ++k) {
      parts[d - 2 * k] += h[k];
      if (k > 0) {
        geometric += r2i;
        r2i = r2i * r2;
        cofactor += h[k] * geometric;
      }
    }
  }
  HarmonicDecomposition out;
  for (int j = 0; j <= deg; ++j) {
    if (!parts[j].is_zero()) { out.harmonic_parts.push_back({j, std::move(parts[j])}); }
  }
  out.radial_cofactor = std::move(cofactor);
  return out;
}

Polynomial3 HarmonicDecomposition::sphere_part() const
{
  Polynomial3 out;
  for (auto const &h : harmonic_parts) { out += h.harmonic; }
  return out;
}

Polynomial3 HarmonicDecomposition::reconstruct() const
{
  return sphere_part() + (Polynomial3::radius_squared() - Polynomial3(1)) * radial_cofactor;
}

std::vector<Polynomial3> restrict_basis(int M)
{
  if (M < 0) { throw std::domain_error("restrict_basis: M must be >= 0"); }
  std::vector<Polynomial3> out;
  out.reserve(static_cast<std::size_t>((M + 1) * (M + 1)));
  for (int j = 0; j <= M; ++j) {
    for (int c = 0; c <= std::min(j, 1); ++c) {
      for (int a = j - c; a >= 0; --a) {
        out.push_back(harmonic_projection(Polynomial3::monomial({a, j - c - a, c})));
      }
    }
  }
  return out;
}

} // namespace bbq
