#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "bbq/errors.hpp"

namespace bbq {

using Cx = std::complex<double>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using ComplexMatrix = Matrix<Cx>;
using ComplexVector = Vector<Cx>;
using RealMatrix = Matrix<double>;
using RealVector = Vector<double>;

/// Largest supported N for 2^N-dimensional brute-force objects.
inline constexpr int kOracleSiteCap = 10;
inline constexpr Eigen::Index kKronDimensionCap = Eigen::Index(1) << 14;

struct FullTensorOperator
{
  int n_sites = 0;
  ComplexMatrix matrix;
};

struct HermitianEigen
{
  RealVector values;    // ascending
  ComplexMatrix vectors; // unitary, columns are eigenvectors
};

/// Eigen-decomposition of a Hermitian matrix. The input is symmetrised as
/// (A + A*)/2; deviations above 1e-12 * max(1, |A|_F) are rejected.
HermitianEigen hermitian_eigen(ComplexMatrix const &A);

/// Largest singular value.
double operator_norm(ComplexMatrix const &A);

struct PowerIterationResult
{
  double norm = 0;
  int iterations = 0;
  bool converged = false;
};

/// Power iteration on A*A from the normalised all-ones vector. Stops when
/// successive Rayleigh quotients differ by less than tol (relative).
PowerIterationResult spectral_norm_power(ComplexMatrix const &A, double tol = 1e-14, int max_iterations = 10000);

template <typename Derived>
bool is_hermitian(Eigen::MatrixBase<Derived> const &A, double tol)
{
  if (A.rows() != A.cols()) { return false; }
  return (A - A.adjoint()).norm() <= tol * std::max(1.0, double(A.norm()));
}

ComplexMatrix kron(ComplexMatrix const &A, ComplexMatrix const &B, Eigen::Index cap = kKronDimensionCap);

/// sigma_1, sigma_2, sigma_3 for axis 0, 1, 2.
ComplexMatrix pauli(int axis);

/// op acting on tensor factor `site` (0-based, site 0 most significant) of N.
ComplexMatrix site_operator(ComplexMatrix const &op, int site, int n_sites);

/// Index map of the tensor-factor permutation: factor k of the input ends up
/// at position perm[k]. Basis index bit (N-1-k) is the state of factor k.
std::vector<Eigen::Index> permute_basis(std::span<int const> perm, int n_sites);

/// S_N as a projector on (C^2)^{otimes N}: average of all N! factor
/// permutation matrices.
FullTensorOperator symmetrizer_full(int n_sites);

/// S_N(X) = (1/N!) sum_pi P_pi X P_pi^T acting on operators. Cost N! 4^N.
FullTensorOperator symmetrize_operator(FullTensorOperator const &X);

} // namespace bbq
