#include "bbq/berezin.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

namespace bbq {

SpherePoint::SpherePoint(double th, double ph)
  : theta(th)
  , phi(ph)
{
  if (!(theta >= 0 && theta <= std::numbers::pi)) { throw DomainError("SpherePoint: theta outside [0, pi]"); }
  if (!(phi > -std::numbers::pi && phi <= std::numbers::pi)) {
    throw DomainError("SpherePoint: phi outside (-pi, pi]");
  }
}

SpherePoint SpherePoint::from_vector(Eigen::Vector3d const &v)
{
  double const r = v.norm();
  if (r == 0) { throw DomainError("SpherePoint::from_vector: zero vector"); }
  double const c = std::clamp(v.z() / r, -1.0, 1.0);
  double ph = std::atan2(v.y(), v.x());
  if (ph <= -std::numbers::pi) { ph = std::numbers::pi; }
  return {std::acos(c), ph};
}

Eigen::Vector3d SpherePoint::unit_vector() const
{
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

namespace {

// |amplitude_n| = sqrt(C(N,n)) cos^{N-n}(theta/2) sin^n(theta/2), via logs.
RealVector coherent_magnitudes(double theta, int N)
{
  RealVector mag = RealVector::Zero(N + 1);
  double const c = std::cos(theta / 2);
  double const s = std::sin(theta / 2);
  if (s <= 0) {
    mag(0) = 1;
    return mag;
  }
  if (c <= 0) {
    mag(N) = 1;
    return mag;
  }
  double const lc = std::log(c);
  double const ls = std::log(s);
  double const lgN = std::lgamma(N + 1.0);
  for (int n = 0; n <= N; ++n) {
    double const lbinom = lgN - std::lgamma(n + 1.0) - std::lgamma(N - n + 1.0);
    mag(n) = std::exp(0.5 * lbinom + (N - n) * lc + n * ls);
  }
  return mag;
}

} // namespace

CoherentState coherent_state(SpherePoint const &omega, int N)
{
  DickeSpace const space(N);
  RealVector const mag = coherent_magnitudes(omega.theta, N);
  ComplexVector amp(N + 1);
  for (int n = 0; n <= N; ++n) { amp(n) = mag(n) * std::polar(1.0, n * omega.phi); }
  return {space.n_sites, std::move(amp)};
}

SphereQuadrature::SphereQuadrature(RealVector u_nodes, RealVector u_weights, int phi_count, int exact_degree)
  : u_nodes_(std::move(u_nodes))
  , u_weights_(std::move(u_weights))
  , phi_count_(phi_count)
  , exact_degree_(exact_degree)
{
  if (u_nodes_.size() != u_weights_.size() || u_nodes_.size() == 0 || phi_count_ < 1) {
    throw DimensionError("SphereQuadrature: inconsistent node tables");
  }
}

double SphereQuadrature::phi(int k) const
{
  double const p = 2.0 * std::numbers::pi * k / phi_count_;
  return p > std::numbers::pi ? p - 2.0 * std::numbers::pi : p;
}

double SphereQuadrature::phi_weight() const { return 2.0 * std::numbers::pi / phi_count_; }

std::vector<SpherePoint> SphereQuadrature::nodes() const
{
  std::vector<SpherePoint> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (Eigen::Index i = 0; i < u_nodes_.size(); ++i) {
    double const theta = std::acos(u_nodes_(i));
    for (int k = 0; k < phi_count_; ++k) { out.emplace_back(theta, phi(k)); }
  }
  return out;
}

std::vector<double> SphereQuadrature::weights() const
{
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (Eigen::Index i = 0; i < u_nodes_.size(); ++i) {
    for (int k = 0; k < phi_count_; ++k) { out.push_back(u_weights_(i) * phi_weight()); }
  }
  return out;
}

void SphereQuadrature::write_csv(std::ostream &os) const
{
  auto const pts = nodes();
  auto const w = weights();
  char buf[128];
  os << "theta,phi,weight\n";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", pts[i].theta, pts[i].phi, w[i]);
    os << buf;
  }
}

GaussLegendre gauss_legendre(int n)
{
  if (n < 1) { throw DomainError("gauss_legendre: n must be >= 1"); }
  GaussLegendre out{RealVector(n), RealVector(n)};
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double const p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double const pn = n == 1 ? x : p1;
      double const pnm1 = n == 1 ? 1 : p0;
      dp = n * (x * pn - pnm1) / (x * x - 1);
      double const dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) { break; }
    }
    // recompute the derivative at the converged node
    double p0 = 1, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double const p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1);
    double const w = 2.0 / ((1 - x * x) * dp * dp);
    out.nodes(i) = -x;
    out.nodes(n - 1 - i) = x;
    out.weights(i) = w;
    out.weights(n - 1 - i) = w;
  }
  if (n % 2 == 1) { out.nodes(n / 2) = 0.0; }
  return out;
}

SphereQuadrature gauss_sphere_quadrature(int exact_degree)
{
  if (exact_degree < 0) { throw DomainError("gauss_sphere_quadrature: exact_degree must be >= 0"); }
  int const nu = std::max(1, (exact_degree + 2) / 2);
  auto gl = gauss_legendre(nu);
  return {std::move(gl.nodes), std::move(gl.weights), exact_degree + 1, exact_degree};
}

int default_boundary_degree(Polynomial3 const &f, int N) { return 2 * N + std::max(f.degree(), 0) + 2; }

SymOperator quantize_boundary(Polynomial3 const &f, int N, std::optional<int> exact_degree)
{
  DickeSpace const space(N);
  int const required = 2 * N + std::max(f.degree(), 0);
  int const degree = exact_degree.value_or(default_boundary_degree(f, N));
  if (degree < required) {
    throw ConfigurationError("quantize_boundary: quadrature degree " + std::to_string(degree) + " below required " +
                             std::to_string(required));
  }
  SphereQuadrature const quad = gauss_sphere_quadrature(degree);
  PolynomialEvaluator const eval(f);
  int const nphi = quad.phi_count();

  // |Omega><Omega|_{nm} = r_n(theta) r_m(theta) e^{i phi (n-m)}: sum the phi
  // ring first for every offset d = n - m.
  ComplexMatrix phase(2 * N + 1, nphi);
  std::vector<double> cosp(static_cast<std::size_t>(nphi)), sinp(static_cast<std::size_t>(nphi));
  for (int k = 0; k < nphi; ++k) {
    double const ph = quad.phi(k);
    cosp[k] = std::cos(ph);
    sinp[k] = std::sin(ph);
    for (int d = -N; d <= N; ++d) { phase(d + N, k) = std::polar(quad.phi_weight(), d * ph); }
  }
  ComplexMatrix out = ComplexMatrix::Zero(N + 1, N + 1);
  ComplexVector fring(nphi);
  for (Eigen::Index i = 0; i < quad.u_nodes().size(); ++i) {
    double const u = quad.u_nodes()(i);
    double const theta = std::acos(u);
    double const st = std::sin(theta);
    for (int k = 0; k < nphi; ++k) { fring(k) = eval(st * cosp[k], st * sinp[k], u); }
    ComplexVector const ring = phase * fring;
    RealVector const r = coherent_magnitudes(theta, N);
    double const w = quad.u_weights()(i);
    for (int m = 0; m <= N; ++m) {
      double const wr = w * r(m);
      for (int n = 0; n <= N; ++n) { out(n, m) += (wr * r(n)) * ring(n - m + N); }
    }
  }
  out *= (N + 1) / (4.0 * std::numbers::pi);
  return {N, std::move(out)};
}

SymOperator quantize_boundary_naive(Polynomial3 const &f, int N, SphereQuadrature const &quadrature)
{
  DickeSpace const space(N);
  if (quadrature.exact_degree() < 2 * N + std::max(f.degree(), 0)) {
    throw ConfigurationError("quantize_boundary_naive: quadrature degree too low");
  }
  PolynomialEvaluator const eval(f);
  auto const nodes = quadrature.nodes();
  auto const weights = quadrature.weights();
  ComplexMatrix out = ComplexMatrix::Zero(N + 1, N + 1);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    Eigen::Vector3d const x = nodes[k].unit_vector();
    ComplexVector const v = coherent_state(nodes[k], N).amplitudes;
    out += (weights[k] * eval(x.x(), x.y(), x.z())) * (v * v.adjoint());
  }
  out *= (N + 1) / (4.0 * std::numbers::pi);
  return {N, std::move(out)};
}

BoundaryInverse::BoundaryInverse(int N)
  : n_(N)
  , basis_(restrict_basis(N))
{
  if (N < 2) { throw DomainError("BoundaryInverse: N must be > 1"); }
  Eigen::Index const dim = (N + 1) * (N + 1);
  map_.resize(dim, static_cast<Eigen::Index>(basis_.size()));
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    ComplexMatrix const op = quantize_boundary(basis_[k], N).matrix;
    map_.col(static_cast<Eigen::Index>(k)) = op.reshaped();
  }
  lu_.compute(map_);
  rank_ = lu_.rank();
  rcond_ = Eigen::PartialPivLU<ComplexMatrix>(map_).rcond();
  if (rank_ != dim) {
    throw ConsistencyError("BoundaryInverse: boundary map has rank " + std::to_string(rank_) + " < " +
                           std::to_string(dim));
  }
}

Polynomial3 BoundaryInverse::solve(SymOperator const &A) const
{
  if (A.n_sites != n_) { throw DimensionError("BoundaryInverse::solve: mismatched N"); }
  ComplexVector const rhs = A.matrix.reshaped();
  ComplexVector const coeff = lu_.solve(rhs);
  Polynomial3 p;
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    Cx const c = coeff(static_cast<Eigen::Index>(k));
    if (c == Cx(0)) { continue; }
    p += basis_[k] * ExactComplex::from_double(c.real(), c.imag());
  }
  return p;
}

Polynomial3 inverse_boundary(SymOperator const &A) { return BoundaryInverse(A.n_sites).solve(A); }

Eigen::Matrix3d su2_to_so3(Eigen::Matrix2cd const &U)
{
  if (!(U * U.adjoint()).isApprox(Eigen::Matrix2cd::Identity(), 1e-12) || std::abs(U.determinant() - Cx(1)) > 1e-12) {
    throw DomainError("su2_to_so3: expected an SU(2) matrix");
  }
  Eigen::Matrix3d R;
  for (int k = 0; k < 3; ++k) {
    Eigen::Matrix2cd const sk = pauli(k);
    for (int j = 0; j < 3; ++j) {
      Eigen::Matrix2cd const sj = pauli(j);
      R(k, j) = 0.5 * (sk * U * sj * U.adjoint()).trace().real();
    }
  }
  return R;
}

double coherent_covariance_check(Eigen::Matrix2cd const &U, SpherePoint const &omega, int N)
{
  ComplexVector const rotated = spin_rotation(U, N) * coherent_state(omega, N).amplitudes;
  Eigen::Vector3d const target = su2_to_so3(U) * omega.unit_vector();
  ComplexVector const direct = coherent_state(SpherePoint::from_vector(target), N).amplitudes;
  ComplexMatrix const diff = rotated * rotated.adjoint() - direct * direct.adjoint();
  return operator_norm(diff);
}

double berezin_transform(Polynomial3 const &f, SpherePoint const &at, int N)
{
  DickeSpace const space(N);
  SphereQuadrature const quad = gauss_sphere_quadrature(default_boundary_degree(f, N));
  PolynomialEvaluator const eval(f);
  double const ct = std::cos(at.theta / 2);
  Cx const st = std::polar(std::sin(at.theta / 2), at.phi);
  double const sum = quad.integrate([&](SpherePoint const &p) {
    // single-site overlap <Omega'|Omega>_1, raised to N
    Cx const ov = ct * std::cos(p.theta / 2) + std::conj(st) * std::polar(std::sin(p.theta / 2), p.phi);
    Eigen::Vector3d const x = p.unit_vector();
    return eval(x.x(), x.y(), x.z()).real() * std::pow(std::norm(ov), N);
  });
  return (N + 1) / (4.0 * std::numbers::pi) * sum;
}

} // namespace bbq
