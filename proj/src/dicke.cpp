#include "bbq/dicke.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <string>

namespace bbq {

DickeSpace::DickeSpace(int N)
  : n_sites(N)
{
  if (N < 1) { throw DomainError("DickeSpace: N must be >= 1, got " + std::to_string(N)); }
}

SymOperator::SymOperator(int N, ComplexMatrix m)
  : n_sites(N)
  , matrix(std::move(m))
{
  if (matrix.rows() != N + 1 || matrix.cols() != N + 1) {
    throw DimensionError("SymOperator: matrix must be (N+1)x(N+1) for N=" + std::to_string(N));
  }
}

SymOperator SymOperator::identity(int N) { return {N, ComplexMatrix::Identity(N + 1, N + 1)}; }
SymOperator SymOperator::zero(int N) { return {N, ComplexMatrix::Zero(N + 1, N + 1)}; }

namespace {

void require_same_space(SymOperator const &a, SymOperator const &b)
{
  if (a.n_sites != b.n_sites) { throw DimensionError("SymOperator: mismatched N"); }
}

} // namespace

SymOperator &SymOperator::operator+=(SymOperator const &o)
{
  require_same_space(*this, o);
  matrix += o.matrix;
  return *this;
}

SymOperator &SymOperator::operator-=(SymOperator const &o)
{
  require_same_space(*this, o);
  matrix -= o.matrix;
  return *this;
}

SymOperator operator*(SymOperator const &a, SymOperator const &b)
{
  require_same_space(a, b);
  return {a.n_sites, a.matrix * b.matrix};
}

void to_json(nlohmann::json &j, SymOperator const &op)
{
  auto rows = [&](auto part) {
    nlohmann::json out = nlohmann::json::array();
    for (Eigen::Index r = 0; r < op.matrix.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index c = 0; c < op.matrix.cols(); ++c) { row.push_back(part(op.matrix(r, c))); }
      out.push_back(std::move(row));
    }
    return out;
  };
  j = nlohmann::json{{"n_sites", op.n_sites},
                     {"re", rows([](Cx v) { return v.real(); })},
                     {"im", rows([](Cx v) { return v.imag(); })}};
}

void from_json(nlohmann::json const &j, SymOperator &op)
{
  int const N = j.at("n_sites").get<int>();
  auto const &re = j.at("re");
  auto const &im = j.at("im");
  if (N < 1 || re.size() != std::size_t(N + 1) || im.size() != std::size_t(N + 1)) {
    throw DimensionError("SymOperator JSON: expected N+1 rows");
  }
  ComplexMatrix m(N + 1, N + 1);
  for (int r = 0; r <= N; ++r) {
    if (re[r].size() != std::size_t(N + 1) || im[r].size() != std::size_t(N + 1)) {
      throw DimensionError("SymOperator JSON: expected N+1 columns");
    }
    for (int c = 0; c <= N; ++c) { m(r, c) = Cx(re[r][c].get<double>(), im[r][c].get<double>()); }
  }
  op = SymOperator(N, std::move(m));
}

namespace {

// J+|n> = sqrt(n (N - n + 1)) |n-1>
RealVector raising_coefficients(int N)
{
  RealVector s(N + 1);
  s(0) = 0;
  for (int n = 1; n <= N; ++n) { s(n) = std::sqrt(double(n) * double(N - n + 1)); }
  return s;
}

} // namespace

CollectiveOps collective_ops(int N)
{
  DickeSpace const space(N);
  RealVector const s = raising_coefficients(N);
  ComplexMatrix Jp = ComplexMatrix::Zero(N + 1, N + 1);
  for (int n = 1; n <= N; ++n) { Jp(n - 1, n) = s(n); }
  ComplexMatrix const Jm = Jp.adjoint();
  CollectiveOps ops;
  ops.n_sites = space.n_sites;
  ops.J[0] = 0.5 * (Jp + Jm);
  ops.J[1] = Cx(0, -0.5) * (Jp - Jm);
  ops.J[2] = ComplexMatrix::Zero(N + 1, N + 1);
  for (int n = 0; n <= N; ++n) { ops.J[2](n, n) = 0.5 * (N - 2 * n); }
  return ops;
}

namespace {

// Distinct-site sums D(counts) = sum_{i distinct} sigma_{j1}(i1)...sigma_{jL}(iL)
// for the label multiset with counts (n_x, n_y, n_z), memoised per call.
class DistinctSiteSums
{
public:
  explicit DistinctSiteSums(int N)
    : n_(N)
    , raise_(raising_coefficients(N))
  {
  }

  ComplexMatrix const &get(std::array<int, 3> const &counts)
  {
    if (auto it = memo_.find(counts); it != memo_.end()) { return it->second; }
    int const L = counts[0] + counts[1] + counts[2];
    ComplexMatrix value;
    if (L > n_) {
      value = ComplexMatrix::Zero(n_ + 1, n_ + 1);
    } else if (L == 0) {
      value = ComplexMatrix::Identity(n_ + 1, n_ + 1);
    } else {
      value = reduce(counts, L);
    }
    return memo_.emplace(counts, std::move(value)).first->second;
  }

private:
  // C_a D(rest) = D(counts) + coincidences of the new label with each label
  // in rest; sigma_a sigma_b = delta_ab I + i eps_abc sigma_c on one site.
  ComplexMatrix reduce(std::array<int, 3> const &counts, int L)
  {
    int a = 0;
    while (counts[a] == 0) { ++a; }
    std::array<int, 3> rest = counts;
    --rest[a];
    ComplexMatrix out = apply_collective(a, get(rest));
    for (int b = 0; b < 3; ++b) {
      if (rest[b] == 0) { continue; }
      double const mult = rest[b];
      std::array<int, 3> removed = rest;
      --removed[b];
      if (a == b) {
        out -= (mult * double(n_ - L + 2)) * get(removed);
      } else {
        int const c = 3 - a - b;
        double const eps = (b == (a + 1) % 3) ? 1.0 : -1.0;
        std::array<int, 3> swapped = removed;
        ++swapped[c];
        out -= Cx(0, mult * eps) * get(swapped);
      }
    }
    return out;
  }

  // (2 J_a) M using the tridiagonal structure of J_a.
  ComplexMatrix apply_collective(int axis, ComplexMatrix const &M) const
  {
    ComplexMatrix out = ComplexMatrix::Zero(M.rows(), M.cols());
    if (axis == 2) {
      for (int n = 0; n <= n_; ++n) { out.row(n) = double(n_ - 2 * n) * M.row(n); }
      return out;
    }
    // 2Jx = J+ + J-, 2Jy = -i (J+ - J-)
    Cx const up = axis == 0 ? Cx(1) : Cx(0, -1);
    Cx const down = axis == 0 ? Cx(1) : Cx(0, 1);
    for (int n = 1; n <= n_; ++n) {
      out.row(n - 1) += (up * raise_(n)) * M.row(n);
      out.row(n) += (down * raise_(n)) * M.row(n - 1);
    }
    return out;
  }

  int n_;
  RealVector raise_;
  std::map<std::array<int, 3>, ComplexMatrix> memo_;
};

double falling_factorial(int N, int L)
{
  long double f = 1;
  for (int k = 0; k < L; ++k) { f *= static_cast<long double>(N - k); }
  return static_cast<double>(f);
}

} // namespace

SymOperator quantize_bulk(Polynomial3 const &p, int N)
{
  DickeSpace const space(N);
  DistinctSiteSums sums(N);
  ComplexMatrix out = ComplexMatrix::Zero(space.dimension(), space.dimension());
  for (auto const &[m, c] : p.terms()) {
    int const L = m.degree();
    if (L > N) { continue; }
    out += (c.to_complex() / falling_factorial(N, L)) * sums.get({m.ax, m.ay, m.az});
  }
  return {N, std::move(out)};
}

ComplexMatrix dicke_isometry(int N)
{
  DickeSpace const space(N);
  if (N > kOracleSiteCap) { throw CapacityError("dicke_isometry: N exceeds oracle cap"); }
  Eigen::Index const dim = Eigen::Index(1) << N;
  ComplexMatrix V = ComplexMatrix::Zero(dim, N + 1);
  std::vector<double> binom(static_cast<std::size_t>(N + 1), 1.0);
  for (int n = 1; n <= N; ++n) { binom[n] = binom[n - 1] * (N - n + 1) / n; }
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    int const n = std::popcount(static_cast<unsigned long long>(idx));
    V(idx, n) = 1.0 / std::sqrt(binom[n]);
  }
  return V;
}

SymOperator compress(FullTensorOperator const &X)
{
  ComplexMatrix const V = dicke_isometry(X.n_sites);
  if (X.matrix.rows() != V.rows() || X.matrix.cols() != V.rows()) { throw DimensionError("compress: size is not 2^N"); }
  return {X.n_sites, V.adjoint() * X.matrix * V};
}

FullTensorOperator padded_product(Monomial3 const &m, int N)
{
  if (m.degree() > N) { throw DomainError("padded_product: degree exceeds N"); }
  if (N > kOracleSiteCap) { throw CapacityError("padded_product: N exceeds oracle cap"); }
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  int site = 0;
  for (int axis = 0; axis < 3; ++axis) {
    for (int e = 0; e < m.exponent(axis); ++e, ++site) { out = kron(out, pauli(axis)); }
  }
  for (; site < N; ++site) { out = kron(out, ComplexMatrix::Identity(2, 2)); }
  return {N, std::move(out)};
}

BulkOracle::BulkOracle(int N)
  : n_(N)
  , symmetrizer_(symmetrizer_full(N))
  , isometry_(dicke_isometry(N))
{
}

SymOperator BulkOracle::quantize(Polynomial3 const &p) const
{
  Eigen::Index const dim = Eigen::Index(1) << n_;
  ComplexMatrix full = ComplexMatrix::Zero(dim, dim);
  for (auto const &[m, c] : p.terms()) {
    if (m.degree() > n_) { continue; }
    full += c.to_complex() * padded_product(m, n_).matrix;
  }
  ComplexMatrix const &P = symmetrizer_.matrix;
  ComplexMatrix const symmetrised = P * full * P;
  return {n_, isometry_.adjoint() * symmetrised * isometry_};
}

SymOperator quantize_bulk_oracle(Polynomial3 const &p, int N) { return BulkOracle(N).quantize(p); }

Cx product_state_expectation(Polynomial3 const &p, std::array<double, 3> const &bloch, int N)
{
  DickeSpace const space(N);
  double const r = std::sqrt(bloch[0] * bloch[0] + bloch[1] * bloch[1] + bloch[2] * bloch[2]);
  if (!(r <= 1.0 + 1e-12)) { throw DomainError("product_state_expectation: Bloch vector outside the unit ball"); }
  Cx sum = 0;
  for (auto const &[m, c] : p.terms()) {
    if (m.degree() > space.n_sites) { continue; }
    double prod = 1;
    for (int axis = 0; axis < 3; ++axis) {
      for (int e = 0; e < m.exponent(axis); ++e) { prod *= bloch[static_cast<std::size_t>(axis)]; }
    }
    sum += c.to_complex() * prod;
  }
  return sum;
}

namespace {

void require_su2(Eigen::Matrix2cd const &U)
{
  if (!(U * U.adjoint()).isApprox(Eigen::Matrix2cd::Identity(), 1e-12) || std::abs(U.determinant() - Cx(1)) > 1e-12) {
    throw DomainError("expected an SU(2) matrix");
  }
}

} // namespace

ComplexMatrix spin_rotation(Eigen::Matrix2cd const &U, int N)
{
  DickeSpace const space(N);
  require_su2(U);
  // U = w I - i v.sigma with w = cos(theta/2), v = sin(theta/2) n
  double const w = 0.5 * U.trace().real();
  std::array<double, 3> v{};
  for (int a = 0; a < 3; ++a) {
    Eigen::Matrix2cd const s = pauli(a);
    v[static_cast<std::size_t>(a)] = (Cx(0, 0.5) * (s * U).trace()).real();
  }
  double const vn = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (vn < 1e-15) {
    double const sign = (w < 0 && N % 2 == 1) ? -1.0 : 1.0;
    return sign * ComplexMatrix::Identity(N + 1, N + 1);
  }
  double const theta = 2.0 * std::atan2(vn, w);
  CollectiveOps const J = collective_ops(N);
  ComplexMatrix G = ComplexMatrix::Zero(N + 1, N + 1);
  for (int a = 0; a < 3; ++a) { G += (theta * v[static_cast<std::size_t>(a)] / vn) * J[a]; }
  HermitianEigen const eig = hermitian_eigen(G);
  ComplexVector phases(N + 1);
  for (int k = 0; k <= N; ++k) { phases(k) = std::exp(Cx(0, -eig.values(k))); }
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix spin_rotation_oracle(Eigen::Matrix2cd const &U, int N)
{
  require_su2(U);
  ComplexMatrix const u = U;
  ComplexMatrix full = ComplexMatrix::Identity(1, 1);
  for (int k = 0; k < N; ++k) { full = kron(full, u); }
  return compress({N, full}).matrix;
}

} // namespace bbq
