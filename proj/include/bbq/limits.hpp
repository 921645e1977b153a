#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bbq/berezin.hpp"

namespace bbq {

struct ConvergenceRecord
{
  int N = 0;
  double value = 0;
  std::string label;
  double elapsed = 0; // seconds
};

using Records = std::vector<ConvergenceRecord>;

/// Named tolerances used when judging sweep contracts.
struct Tolerances
{
  double exact = 1e-12;          // exact identities
  double min_decay_exponent = 0.9;
  double sup_norm = 1e-4;        // norm_continuity target accuracy
  double covariance = 1e-10;
  double inverse = 1e-9;
  double berezin_constant = 3.0; // residual <= C / N
  double cw_reference = 0.05;    // distance to classical reference values
};

struct SweepConfig
{
  std::vector<Polynomial3> polynomials;
  std::vector<int> N_list;
  std::optional<double> bracket_scale; // unset means calibrate
  Tolerances tolerances;

  /// Throws ConfigurationError unless N_list is nonempty, >= 1 and strictly
  /// increasing.
  void validate() const;
};

std::vector<int> geometric_range(int start, int stop, int factor = 2);
std::vector<int> linear_range(int start, int stop, int step = 1);

/// BB_THREADS if set to a positive integer, otherwise hardware concurrency.
int worker_count();

/// Runs body(0..count-1) on up to worker_count() threads. The exception from
/// the lowest failing index, if any, is rethrown after all workers finish.
void parallel_for(std::size_t count, std::function<void(std::size_t)> const &body);

/// Evaluates value(N) for every N, concurrently up to worker_count(), and
/// returns records in N_list order.
Records sweep(std::vector<int> const &N_list, std::string const &label, std::function<double(int)> const &value);

struct LogLogFit
{
  double slope = 0;
  double intercept = 0;
  int points = 0;
  bool valid() const { return points >= 2; }
};

/// Least squares of log(value) on log(N), skipping exact zeros.
LogLogFit loglog_fit(Records const &records);

bool strictly_decreasing(Records const &records);
bool all_below(Records const &records, double tol);

/// Bulk or boundary quantization map.
enum class MapKind
{
  bulk,
  boundary
};

SymOperator quantize(MapKind kind, Polynomial3 const &p, int N);

/// || Q(p) - Q'(p) || per N.
Records main_theorem_sweep(Polynomial3 const &p, std::vector<int> const &N_list);

/// || Q(q (r^2 - 1)) || per N.
Records annihilation_sweep(Polynomial3 const &q, std::vector<int> const &N_list);

/// || Q(q) Q(r^2 - 1) ||.
double annihilation_product_residual(Polynomial3 const &q, int N);

/// || i N [Q(f), Q(g)] - Q(scale {f,g}) ||.
double dgr_residual(Polynomial3 const &f, Polynomial3 const &g, int N, double scale, MapKind kind = MapKind::bulk);

Records dgr_sweep(Polynomial3 const &f, Polynomial3 const &g, std::vector<int> const &N_list, double scale,
                  MapKind kind = MapKind::bulk);

struct ScaleCalibration
{
  double scale = 0;
  int N = 0;
  std::vector<std::pair<double, double>> residuals; // (scale, residual) per candidate
};

ScaleCalibration calibrate_bracket_scale(Polynomial3 const &f, Polynomial3 const &g, int N = 64,
                                         std::vector<double> const &candidates = {1.0, -1.0, 2.0, -2.0});

/// || Q(f) Q(g) - Q(f g) ||
double product_continuity_residual(Polynomial3 const &f, Polynomial3 const &g, int N);

Records product_continuity_sweep(Polynomial3 const &f, Polynomial3 const &g, std::vector<int> const &N_list);

/// max over the closed unit ball of |f|: 64^3 grid, then 20 levels of
/// coordinate refinement in spherical coordinates with halving steps.
double ball_sup_norm(Polynomial3 const &f);

/// || Q(f) || per N.
Records norm_continuity(Polynomial3 const &f, std::vector<int> const &N_list);

/// | omega^N(Q(p)) - p(bloch) | per N.
Records classical_limit_check(Polynomial3 const &p, std::array<double, 3> const &bloch, std::vector<int> const &N_list);

/// "N,value,label,elapsed". Elapsed is written as 0 unless include_timing,
/// so that repeated runs produce identical files.
void write_records_csv(std::ostream &os, Records const &records, bool include_timing = false);

struct SweepSummary
{
  std::string sweep;
  LogLogFit fit;
  bool pass = false;
  nlohmann::json details = nlohmann::json::object();
};

/// {sweep, fit_slope, fit_intercept, pass} plus any details.
nlohmann::json to_json(SweepSummary const &s);

/// Contract judgments for the sweeps above.
SweepSummary judge_decay(std::string name, Records const &records, Tolerances const &tol);
SweepSummary judge_exact(std::string name, Records const &records, Tolerances const &tol);

} // namespace bbq
