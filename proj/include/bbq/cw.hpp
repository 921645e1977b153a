#pragma once

#include <iosfwd>
#include <vector>

#include "bbq/limits.hpp"

namespace bbq {

struct CWParams
{
  double J = 1.0; // spin-spin coupling
  double B = 0.5; // transverse field
};

/// -(J/2) z^2 - B x
Polynomial3 cw_classical_hamiltonian(CWParams const &params);

/// -(2J/N^2) Jz^2 - (2B/N) Jx, real symmetric tridiagonal in the Dicke basis.
SymOperator cw_hamiltonian_sym(CWParams const &params, int N);

/// (1/N)(-(J/2N) sum_{ij} s3(i) s3(j) - B sum_j s1(j)) on (C^2)^{otimes N}.
FullTensorOperator cw_hamiltonian_full(CWParams const &params, int N);

struct CWClassical
{
  std::vector<Eigen::Vector3d> minimizers;
  double value = 0;
  bool degenerate = false; // the minimizer set is not a finite set of points
};

/// Minimum of -(J/2) z^2 - B x over the closed unit ball.
CWClassical cw_classical(CWParams const &params);

struct CWSpectrum
{
  int N = 0;
  RealVector eigenvalues; // ascending
  ComplexVector ground_vector;
  bool ground_tie = false; // lowest eigenvalue is degenerate to 1e-12
};

CWSpectrum cw_ground_state(CWParams const &params, int N);

/// || h_CW - Q'(h0) || per N.
Records cw_theorem_sweep(CWParams const &params, std::vector<int> const &N_list);

/// || h_CW - Q(h0) ||
double cw_bulk_defect(CWParams const &params, int N);

struct CWRow
{
  int N = 0;
  double ground_energy = 0;
  double gap = 0;
  double exp_z2 = 0;
  double exp_x = 0;
  double norm_diff = 0;
};

std::vector<CWRow> cw_experiment(CWParams const &params, std::vector<int> const &N_list);

/// "N,ground_energy,gap,exp_z2,exp_x,norm_diff"
void write_cw_csv(std::ostream &os, std::vector<CWRow> const &rows);

} // namespace bbq
