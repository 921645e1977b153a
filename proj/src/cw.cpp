#include "bbq/cw.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace bbq {

Polynomial3 cw_classical_hamiltonian(CWParams const &params)
{
  Rational const half_J = ExactComplex::from_double(params.J).re / 2;
  Rational const B = ExactComplex::from_double(params.B).re;
  return Polynomial3::monomial({0, 0, 2}, ExactComplex(-half_J)) + Polynomial3::monomial({1, 0, 0}, ExactComplex(-B));
}

namespace {

struct Tridiagonal
{
  RealVector diag;
  RealVector sub; // sub(n-1) couples n-1 and n
};

Tridiagonal cw_tridiagonal(CWParams const &params, int N)
{
  DickeSpace const space(N);
  double const n_sites = N;
  Tridiagonal t{RealVector(N + 1), RealVector(N)};
  for (int n = 0; n <= N; ++n) {
    double const m = 0.5 * (N - 2 * n);
    t.diag(n) = -2.0 * params.J / (n_sites * n_sites) * m * m;
  }
  for (int n = 1; n <= N; ++n) { t.sub(n - 1) = -params.B / n_sites * std::sqrt(double(n) * double(N - n + 1)); }
  return t;
}

} // namespace

SymOperator cw_hamiltonian_sym(CWParams const &params, int N)
{
  Tridiagonal const t = cw_tridiagonal(params, N);
  ComplexMatrix H = ComplexMatrix::Zero(N + 1, N + 1);
  H.diagonal() = t.diag.cast<Cx>();
  H.diagonal(1) = t.sub.cast<Cx>();
  H.diagonal(-1) = t.sub.cast<Cx>();
  return {N, H};
}

FullTensorOperator cw_hamiltonian_full(CWParams const &params, int N)
{
  if (N < 1) { throw DomainError("cw_hamiltonian_full: N must be >= 1"); }
  if (N > kOracleSiteCap) { throw CapacityError("cw_hamiltonian_full: N exceeds oracle cap"); }
  Eigen::Index const dim = Eigen::Index(1) << N;
  ComplexMatrix Z = ComplexMatrix::Zero(dim, dim), X = ComplexMatrix::Zero(dim, dim);
  for (int site = 0; site < N; ++site) {
    Z += site_operator(pauli(2), site, N);
    X += site_operator(pauli(0), site, N);
  }
  double const n = N;
  return {N, (-params.J / (2 * n * n)) * (Z * Z) - (params.B / n) * X};
}

CWClassical cw_classical(CWParams const &params)
{
  double const J = params.J, B = params.B;
  CWClassical out;
  if (J > 0 && std::abs(B) < J) {
    double const x = B / J;
    double const z = std::sqrt(1 - x * x);
    out.minimizers = {{x, 0, z}, {x, 0, -z}};
    out.value = -(J + B * B / J) / 2;
    return out;
  }
  if (B != 0) {
    out.minimizers = {{std::copysign(1.0, B), 0, 0}};
    out.value = -std::abs(B);
    return out;
  }
  // B = 0 with J <= 0: the minimum 0 is attained on the whole disc z = 0.
  out.minimizers = {{0, 0, 0}};
  out.value = 0;
  out.degenerate = true;
  return out;
}

namespace {

Eigen::Index largest_amplitude_index(ComplexVector const &v)
{
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (std::abs(v(i)) > std::abs(v(best)) + 1e-12) { best = i; }
  }
  return best;
}

} // namespace

CWSpectrum cw_ground_state(CWParams const &params, int N)
{
  CWSpectrum out;
  out.N = N;
  ComplexMatrix vectors;
  if (params.B != 0) {
    Tridiagonal const t = cw_tridiagonal(params, N);
    Eigen::SelfAdjointEigenSolver<RealMatrix> es;
    es.computeFromTridiagonal(t.diag, t.sub, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) { throw ConsistencyError("cw_ground_state: tridiagonal solver did not converge"); }
    out.eigenvalues = es.eigenvalues();
    vectors = es.eigenvectors().cast<Cx>();
  } else {
    HermitianEigen const e = hermitian_eigen(cw_hamiltonian_sym(params, N).matrix);
    out.eigenvalues = e.values;
    vectors = e.vectors;
  }

  double const e0 = out.eigenvalues(0);
  double const tie_tol = 1e-12 * std::max(1.0, std::abs(e0));
  Eigen::Index chosen = 0;
  Eigen::Index chosen_peak = largest_amplitude_index(vectors.col(0));
  for (Eigen::Index k = 1; k < out.eigenvalues.size() && out.eigenvalues(k) - e0 <= tie_tol; ++k) {
    out.ground_tie = true;
    Eigen::Index const peak = largest_amplitude_index(vectors.col(k));
    if (peak < chosen_peak) {
      chosen = k;
      chosen_peak = peak;
    }
  }
  out.ground_vector = vectors.col(chosen);
  Cx const a = out.ground_vector(chosen_peak);
  out.ground_vector *= std::conj(a) / std::abs(a);
  return out;
}

Records cw_theorem_sweep(CWParams const &params, std::vector<int> const &N_list)
{
  Polynomial3 const h0 = cw_classical_hamiltonian(params);
  return sweep(N_list, "h_cw", [&](int N) { return (cw_hamiltonian_sym(params, N) - quantize_boundary(h0, N)).norm(); });
}

double cw_bulk_defect(CWParams const &params, int N)
{
  return (cw_hamiltonian_sym(params, N) - quantize_bulk(cw_classical_hamiltonian(params), N)).norm();
}

std::vector<CWRow> cw_experiment(CWParams const &params, std::vector<int> const &N_list)
{
  Polynomial3 const h0 = cw_classical_hamiltonian(params);
  std::vector<CWRow> rows(N_list.size());
  parallel_for(N_list.size(), [&](std::size_t i) {
    int const N = N_list[i];
    CWSpectrum const s = cw_ground_state(params, N);
    ComplexVector const &psi = s.ground_vector;
    CWRow &r = rows[i];
    r.N = N;
    r.ground_energy = s.eigenvalues(0);
    r.gap = s.eigenvalues(1) - s.eigenvalues(0);
    r.exp_z2 = psi.dot(quantize_bulk(Polynomial3::parse("z^2"), N).matrix * psi).real();
    r.exp_x = psi.dot(quantize_bulk(Polynomial3::x(), N).matrix * psi).real();
    r.norm_diff = (cw_hamiltonian_sym(params, N) - quantize_boundary(h0, N)).norm();
  });
  return rows;
}

void write_cw_csv(std::ostream &os, std::vector<CWRow> const &rows)
{
  os << "N,ground_energy,gap,exp_z2,exp_x,norm_diff\n";
  char buf[256];
  for (auto const &r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.N, r.ground_energy, r.gap, r.exp_z2, r.exp_x,
                  r.norm_diff);
    os << buf;
  }
}

} // namespace bbq
