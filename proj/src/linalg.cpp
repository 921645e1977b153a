#include "bbq/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace bbq {

namespace {

void require_square(ComplexMatrix const &A, char const *what)
{
  if (A.rows() != A.cols() || A.rows() == 0) {
    throw DimensionError(std::string(what) + ": expected non-empty square matrix, got " + std::to_string(A.rows()) + "x" +
                         std::to_string(A.cols()));
  }
}

} // namespace

HermitianEigen hermitian_eigen(ComplexMatrix const &A)
{
  require_square(A, "hermitian_eigen");
  if (!is_hermitian(A, 1e-12)) { throw DomainError("hermitian_eigen: matrix is not Hermitian"); }
  ComplexMatrix const H = 0.5 * (A + A.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(H);
  if (es.info() != Eigen::Success) { throw ConsistencyError("hermitian_eigen: solver did not converge"); }
  return {es.eigenvalues(), es.eigenvectors()};
}

double operator_norm(ComplexMatrix const &A)
{
  require_square(A, "operator_norm");
  if (A.isZero(0.0)) { return 0.0; }
  if (is_hermitian(A, 1e-13)) {
    ComplexMatrix const H = 0.5 * (A + A.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(H, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(A);
  return svd.singularValues()(0);
}

PowerIterationResult spectral_norm_power(ComplexMatrix const &A, double tol, int max_iterations)
{
  require_square(A, "spectral_norm_power");
  PowerIterationResult res;
  ComplexVector v = ComplexVector::Ones(A.cols()) / std::sqrt(double(A.cols()));
  double previous = -1.0;
  for (int it = 1; it <= max_iterations; ++it) {
    ComplexVector const u = A.adjoint() * (A * v);
    double const rayleigh = v.dot(u).real();
    res.iterations = it;
    double const un = u.norm();
    if (un == 0.0) {
      res.norm = 0.0;
      res.converged = true;
      return res;
    }
    v = u / un;
    if (std::abs(rayleigh - previous) < tol * std::max(1.0, rayleigh)) {
      res.norm = std::sqrt(std::max(rayleigh, 0.0));
      res.converged = true;
      return res;
    }
    previous = rayleigh;
  }
  res.norm = std::sqrt(std::max(previous, 0.0));
  return res;
}

ComplexMatrix kron(ComplexMatrix const &A, ComplexMatrix const &B, Eigen::Index cap)
{
  Eigen::Index const rows = A.rows() * B.rows();
  Eigen::Index const cols = A.cols() * B.cols();
  if (rows > cap || cols > cap) {
    throw CapacityError("kron: result " + std::to_string(rows) + "x" + std::to_string(cols) + " exceeds cap " +
                        std::to_string(cap));
  }
  ComplexMatrix out(rows, cols);
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    }
  }
  return out;
}

ComplexMatrix pauli(int axis)
{
  ComplexMatrix s = ComplexMatrix::Zero(2, 2);
  switch (axis) {
  case 0:
    s(0, 1) = 1;
    s(1, 0) = 1;
    break;
  case 1:
    s(0, 1) = Cx(0, -1);
    s(1, 0) = Cx(0, 1);
    break;
  case 2:
    s(0, 0) = 1;
    s(1, 1) = -1;
    break;
  default: throw std::out_of_range("pauli: axis must be 0, 1 or 2");
  }
  return s;
}

ComplexMatrix site_operator(ComplexMatrix const &op, int site, int n_sites)
{
  if (site < 0 || site >= n_sites) { throw std::out_of_range("site_operator: site out of range"); }
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int k = 0; k < n_sites; ++k) {
    out = kron(out, k == site ? op : ComplexMatrix::Identity(op.rows(), op.cols()));
  }
  return out;
}

std::vector<Eigen::Index> permute_basis(std::span<int const> perm, int n_sites)
{
  Eigen::Index const dim = Eigen::Index(1) << n_sites;
  std::vector<Eigen::Index> map(static_cast<std::size_t>(dim));
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    Eigen::Index out = 0;
    for (int k = 0; k < n_sites; ++k) {
      Eigen::Index const bit = (idx >> (n_sites - 1 - k)) & 1;
      out |= bit << (n_sites - 1 - perm[k]);
    }
    map[static_cast<std::size_t>(idx)] = out;
  }
  return map;
}

namespace {

void check_oracle_cap(int n_sites, char const *what)
{
  if (n_sites < 1) { throw DomainError(std::string(what) + ": N must be >= 1"); }
  if (n_sites > kOracleSiteCap) {
    throw CapacityError(std::string(what) + ": N=" + std::to_string(n_sites) + " exceeds oracle cap " +
                        std::to_string(kOracleSiteCap));
  }
}

double factorial(int n)
{
  double f = 1;
  for (int k = 2; k <= n; ++k) { f *= k; }
  return f;
}

} // namespace

FullTensorOperator symmetrizer_full(int n_sites)
{
  check_oracle_cap(n_sites, "symmetrizer_full");
  Eigen::Index const dim = Eigen::Index(1) << n_sites;
  RealMatrix acc = RealMatrix::Zero(dim, dim);
  std::vector<int> perm(static_cast<std::size_t>(n_sites));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    auto const map = permute_basis(perm, n_sites);
    for (Eigen::Index i = 0; i < dim; ++i) { acc(map[static_cast<std::size_t>(i)], i) += 1.0; }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {n_sites, (acc / factorial(n_sites)).cast<Cx>()};
}

FullTensorOperator symmetrize_operator(FullTensorOperator const &X)
{
  int const n = X.n_sites;
  check_oracle_cap(n, "symmetrize_operator");
  Eigen::Index const dim = Eigen::Index(1) << n;
  if (X.matrix.rows() != dim || X.matrix.cols() != dim) { throw DimensionError("symmetrize_operator: size is not 2^N"); }
  ComplexMatrix acc = ComplexMatrix::Zero(dim, dim);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    auto const map = permute_basis(perm, n);
    for (Eigen::Index j = 0; j < dim; ++j) {
      Eigen::Index const pj = map[static_cast<std::size_t>(j)];
      for (Eigen::Index i = 0; i < dim; ++i) { acc(map[static_cast<std::size_t>(i)], pj) += X.matrix(i, j); }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {n, acc / factorial(n)};
}

} // namespace bbq
