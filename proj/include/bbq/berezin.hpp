#pragma once

#include <iosfwd>
#include <optional>

#include "bbq/dicke.hpp"

namespace bbq {

struct SpherePoint
{
  double theta = 0; // [0, pi]
  double phi = 0;   // (-pi, pi]

  SpherePoint() = default;
  SpherePoint(double theta, double phi);
  /// Polar angles of a non-zero vector.
  static SpherePoint from_vector(Eigen::Vector3d const &v);
  Eigen::Vector3d unit_vector() const;
};

/// |Omega>_N in the Dicke basis.
struct CoherentState
{
  int n_sites = 0;
  ComplexVector amplitudes;
};

/// Amplitude n is sqrt(C(N,n)) cos^{N-n}(theta/2) (e^{i phi} sin(theta/2))^n.
CoherentState coherent_state(SpherePoint const &omega, int N);

/// Product rule on S^2: Gauss-Legendre in u = cos(theta) times a uniform phi
/// grid. Integrates polynomials of degree <= exact_degree exactly.
class SphereQuadrature
{
public:
  SphereQuadrature(RealVector u_nodes, RealVector u_weights, int phi_count, int exact_degree);

  int exact_degree() const { return exact_degree_; }
  Eigen::Index size() const { return u_nodes_.size() * phi_count_; }

  RealVector const &u_nodes() const { return u_nodes_; }
  RealVector const &u_weights() const { return u_weights_; }
  int phi_count() const { return phi_count_; }
  double phi(int k) const;
  double phi_weight() const;

  std::vector<SpherePoint> nodes() const;
  std::vector<double> weights() const;

  template <typename F>
  auto integrate(F &&f) const
  {
    using R = decltype(f(SpherePoint{}));
    R sum{};
    for (Eigen::Index i = 0; i < u_nodes_.size(); ++i) {
      double const theta = std::acos(u_nodes_(i));
      R ring{};
      for (int k = 0; k < phi_count_; ++k) { ring += f(SpherePoint(theta, phi(k))); }
      sum += (u_weights_(i) * phi_weight()) * ring;
    }
    return sum;
  }

  /// theta,phi,weight with 17 significant digits.
  void write_csv(std::ostream &os) const;

private:
  RealVector u_nodes_, u_weights_;
  int phi_count_;
  int exact_degree_;
};

struct GaussLegendre
{
  RealVector nodes;   // ascending in (-1, 1)
  RealVector weights; // sum to 2
};

GaussLegendre gauss_legendre(int n);

SphereQuadrature gauss_sphere_quadrature(int exact_degree);

/// Exactness degree used by quantize_boundary when none is given.
int default_boundary_degree(Polynomial3 const &f, int N);

/// Q'_{1/N}(f) = (N+1)/(4 pi) int f(Omega) |Omega><Omega|_N dOmega. The
/// quadrature must be exact to degree >= 2N + deg f.
SymOperator quantize_boundary(Polynomial3 const &f, int N, std::optional<int> exact_degree = std::nullopt);

/// Same integral as a plain node-by-node sum of rank-one projectors.
SymOperator quantize_boundary_naive(Polynomial3 const &f, int N, SphereQuadrature const &quadrature);

/// Linear map P_N(S^2) -> B(Sym^N) in the basis restrict_basis(N), and its
/// inverse.
class BoundaryInverse
{
public:
  explicit BoundaryInverse(int N);

  int n_sites() const { return n_; }
  Eigen::Index rank() const { return rank_; }
  double rcond() const { return rcond_; }
  ComplexMatrix const &map() const { return map_; }
  std::vector<Polynomial3> const &basis() const { return basis_; }

  /// Unique p in span(basis) with quantize_boundary(p, N) = A.
  Polynomial3 solve(SymOperator const &A) const;

private:
  int n_;
  std::vector<Polynomial3> basis_;
  ComplexMatrix map_;
  Eigen::FullPivLU<ComplexMatrix> lu_;
  Eigen::Index rank_ = 0;
  double rcond_ = 0;
};

Polynomial3 inverse_boundary(SymOperator const &A);

/// R_U with U sigma_j U* = (R_U^{-1})_j^k sigma_k.
Eigen::Matrix3d su2_to_so3(Eigen::Matrix2cd const &U);

/// || P(U^{otimes N}|Omega>) - P(|R_U Omega>) || with P(v) = v v*.
double coherent_covariance_check(Eigen::Matrix2cd const &U, SpherePoint const &omega, int N);

/// (N+1)/(4 pi) int f(Omega) |<Omega'|Omega>_N|^2 dOmega.
double berezin_transform(Polynomial3 const &f, SpherePoint const &at, int N);

} // namespace bbq
