#pragma once

#include <array>
#include <optional>

#include <json.hpp>

#include "bbq/linalg.hpp"
#include "bbq/poly3.hpp"

namespace bbq {

/// Sym^N(C^2) in the Dicke basis |n>, n = number of down spins, n = 0 first.
struct DickeSpace
{
  int n_sites = 1;

  explicit DickeSpace(int N);
  Eigen::Index dimension() const { return n_sites + 1; }
};

/// Operator on Sym^N(C^2), (N+1) x (N+1) in the Dicke basis.
struct SymOperator
{
  int n_sites = 0;
  ComplexMatrix matrix;

  SymOperator() = default;
  SymOperator(int N, ComplexMatrix m);
  static SymOperator identity(int N);
  static SymOperator zero(int N);

  SymOperator adjoint() const { return {n_sites, matrix.adjoint()}; }
  double norm() const { return operator_norm(matrix); }
  bool is_hermitian(double tol = 1e-12) const { return bbq::is_hermitian(matrix, tol); }

  SymOperator &operator+=(SymOperator const &o);
  SymOperator &operator-=(SymOperator const &o);
  friend SymOperator operator+(SymOperator a, SymOperator const &b) { return a += b; }
  friend SymOperator operator-(SymOperator a, SymOperator const &b) { return a -= b; }
  friend SymOperator operator*(SymOperator const &a, SymOperator const &b);
  friend SymOperator operator*(Cx s, SymOperator a)
  {
    a.matrix *= s;
    return a;
  }
};

/// {"n_sites": N, "re": [[...]], "im": [[...]]}, rows outermost.
void to_json(nlohmann::json &j, SymOperator const &op);
void from_json(nlohmann::json const &j, SymOperator &op);

/// Spin-N/2 representation: restriction of (1/2) sum_i sigma_a(i) to Sym^N.
struct CollectiveOps
{
  int n_sites = 0;
  std::array<ComplexMatrix, 3> J; // Jx, Jy, Jz

  ComplexMatrix const &operator[](int axis) const { return J[static_cast<std::size_t>(axis)]; }
};

CollectiveOps collective_ops(int N);

/// Q_{1/N}(p) restricted to Sym^N(C^2), generators b_j = sigma_j. A degree-L
/// monomial maps to (1/(N)_L) sum over pairwise distinct sites of
/// sigma_{j1}(i1)...sigma_{jL}(iL), which is zero when L > N.
SymOperator quantize_bulk(Polynomial3 const &p, int N);

/// Columns are the normalised Dicke vectors in (C^2)^{otimes N}; 2^N x (N+1).
ComplexMatrix dicke_isometry(int N);

/// V* X V.
SymOperator compress(FullTensorOperator const &X);

/// sigma_{j1} (x) ... (x) sigma_{jL} (x) I (x) ... (x) I on N sites.
FullTensorOperator padded_product(Monomial3 const &m, int N);

/// Brute-force Q_{1/N}: builds the 2^N-dimensional symmetrised operator from
/// symmetrizer_full and compresses it through the Dicke isometry.
class BulkOracle
{
public:
  explicit BulkOracle(int N);

  int n_sites() const { return n_; }
  SymOperator quantize(Polynomial3 const &p) const;
  FullTensorOperator const &symmetrizer() const { return symmetrizer_; }
  ComplexMatrix const &isometry() const { return isometry_; }

private:
  int n_;
  FullTensorOperator symmetrizer_;
  ComplexMatrix isometry_;
};

SymOperator quantize_bulk_oracle(Polynomial3 const &p, int N);

/// omega^{otimes N}(Q_{1/N}(p)) for the state with omega(sigma_a) = bloch_a,
/// by the product rule on symmetrised elementary tensors.
Cx product_state_expectation(Polynomial3 const &p, std::array<double, 3> const &bloch, int N);

/// U^{otimes N} restricted to Sym^N, computed as exp(-i theta n.J) from the
/// axis-angle form of U in SU(2).
ComplexMatrix spin_rotation(Eigen::Matrix2cd const &U, int N);

/// Same operator via the Dicke isometry; N <= oracle cap.
ComplexMatrix spin_rotation_oracle(Eigen::Matrix2cd const &U, int N);

} // namespace bbq
