#include "bbq/limits.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <limits>
#include <numbers>
#include <ostream>
#include <thread>

namespace bbq {

void SweepConfig::validate() const
{
  if (N_list.empty()) { throw ConfigurationError("sweep: N list is empty"); }
  for (std::size_t i = 0; i < N_list.size(); ++i) {
    if (N_list[i] < 1) { throw ConfigurationError("sweep: N must be >= 1"); }
    if (i > 0 && N_list[i] <= N_list[i - 1]) { throw ConfigurationError("sweep: N list must be strictly increasing"); }
  }
}

std::vector<int> geometric_range(int start, int stop, int factor)
{
  if (start < 1 || factor < 2 || stop < start) { throw ConfigurationError("geometric_range: need 1 <= start <= stop, factor >= 2"); }
  std::vector<int> out;
  for (long long n = start; n <= stop; n *= factor) { out.push_back(int(n)); }
  return out;
}

std::vector<int> linear_range(int start, int stop, int step)
{
  if (start < 1 || step < 1 || stop < start) { throw ConfigurationError("linear_range: need 1 <= start <= stop, step >= 1"); }
  std::vector<int> out;
  for (int n = start; n <= stop; n += step) { out.push_back(n); }
  return out;
}

int worker_count()
{
  if (char const *env = std::getenv("BB_THREADS")) {
    char *end = nullptr;
    long const v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) { return int(v); }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, std::function<void(std::size_t)> const &body)
{
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::size_t const n_workers = std::min<std::size_t>(std::size_t(worker_count()), count);
  if (n_workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < n_workers; ++t) { pool.emplace_back(work); }
  }
  for (auto const &e : errors) {
    if (e) { std::rethrow_exception(e); }
  }
}

Records sweep(std::vector<int> const &N_list, std::string const &label, std::function<double(int)> const &value)
{
  Records out(N_list.size());
  parallel_for(N_list.size(), [&](std::size_t i) {
    auto const t0 = std::chrono::steady_clock::now();
    double const v = value(N_list[i]);
    std::chrono::duration<double> const dt = std::chrono::steady_clock::now() - t0;
    out[i] = {N_list[i], v, label, dt.count()};
  });
  return out;
}

LogLogFit loglog_fit(Records const &records)
{
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (auto const &r : records) {
    if (!(r.value > 0)) { continue; }
    double const x = std::log(double(r.N)), y = std::log(r.value);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  LogLogFit fit;
  fit.points = n;
  if (n < 2) { return fit; }
  double const denom = n * sxx - sx * sx;
  if (denom == 0) {
    fit.points = 1;
    return fit;
  }
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

bool strictly_decreasing(Records const &records)
{
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (!(records[i].value < records[i - 1].value)) { return false; }
  }
  return true;
}

bool all_below(Records const &records, double tol)
{
  for (auto const &r : records) {
    if (!(r.value <= tol)) { return false; }
  }
  return true;
}

SymOperator quantize(MapKind kind, Polynomial3 const &p, int N)
{
  return kind == MapKind::bulk ? quantize_bulk(p, N) : quantize_boundary(p, N);
}

Records main_theorem_sweep(Polynomial3 const &p, std::vector<int> const &N_list)
{
  return sweep(N_list, p.to_string(),
               [&](int N) { return (quantize_bulk(p, N) - quantize_boundary(p, N)).norm(); });
}

namespace {

Polynomial3 sphere_defect() { return Polynomial3::radius_squared() - Polynomial3(1); }

} // namespace

Records annihilation_sweep(Polynomial3 const &q, std::vector<int> const &N_list)
{
  Polynomial3 const p = q * sphere_defect();
  return sweep(N_list, q.to_string(), [&](int N) { return quantize_bulk(p, N).norm(); });
}

double annihilation_product_residual(Polynomial3 const &q, int N)
{
  return (quantize_bulk(q, N) * quantize_bulk(sphere_defect(), N)).norm();
}

double dgr_residual(Polynomial3 const &f, Polynomial3 const &g, int N, double scale, MapKind kind)
{
  ComplexMatrix const qf = quantize(kind, f, N).matrix;
  ComplexMatrix const qg = quantize(kind, g, N).matrix;
  Polynomial3 const bracket = poisson_bracket(f, g, Rational(ExactComplex::from_double(scale).re));
  ComplexMatrix const lhs = Cx(0, N) * (qf * qg - qg * qf);
  return operator_norm(lhs - quantize(kind, bracket, N).matrix);
}

Records dgr_sweep(Polynomial3 const &f, Polynomial3 const &g, std::vector<int> const &N_list, double scale,
                  MapKind kind)
{
  std::string const label = "{" + f.to_string() + ";" + g.to_string() + "}";
  return sweep(N_list, label, [&](int N) { return dgr_residual(f, g, N, scale, kind); });
}

ScaleCalibration calibrate_bracket_scale(Polynomial3 const &f, Polynomial3 const &g, int N,
                                         std::vector<double> const &candidates)
{
  if (candidates.empty()) { throw ConfigurationError("calibrate_bracket_scale: no candidates"); }
  ScaleCalibration out;
  out.N = N;
  double best = std::numeric_limits<double>::infinity();
  for (double s : candidates) {
    double const r = dgr_residual(f, g, N, s);
    out.residuals.emplace_back(s, r);
    if (r < best) {
      best = r;
      out.scale = s;
    }
  }
  return out;
}

double product_continuity_residual(Polynomial3 const &f, Polynomial3 const &g, int N)
{
  return (quantize_bulk(f, N) * quantize_bulk(g, N) - quantize_bulk(f * g, N)).norm();
}

Records product_continuity_sweep(Polynomial3 const &f, Polynomial3 const &g, std::vector<int> const &N_list)
{
  std::string const label = f.to_string() + ";" + g.to_string();
  return sweep(N_list, label, [&](int N) { return product_continuity_residual(f, g, N); });
}

double ball_sup_norm(Polynomial3 const &f)
{
  PolynomialEvaluator const ev(f);
  auto value = [&](Eigen::Vector3d const &v) { return std::abs(ev(v.x(), v.y(), v.z())); };

  int const n = 64;
  double const h = 2.0 / (n - 1);
  Eigen::Vector3d best = Eigen::Vector3d::Zero();
  double best_value = value(best);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        Eigen::Vector3d const v(-1 + i * h, -1 + j * h, -1 + k * h);
        if (v.squaredNorm() > 1.0) { continue; }
        double const fv = value(v);
        if (fv > best_value) {
          best_value = fv;
          best = v;
        }
      }
    }
  }

  // Refine in (r, theta, phi) so that moves along the sphere stay feasible.
  auto to_point = [](Eigen::Vector3d const &s) {
    return Eigen::Vector3d(s(0) * std::sin(s(1)) * std::cos(s(2)), s(0) * std::sin(s(1)) * std::sin(s(2)),
                           s(0) * std::cos(s(1)));
  };
  double const r0 = best.norm();
  Eigen::Vector3d sph(r0, r0 > 0 ? std::acos(std::clamp(best.z() / r0, -1.0, 1.0)) : 0.0, std::atan2(best.y(), best.x()));
  double step = h;
  for (int level = 0; level < 20; ++level) {
    for (bool improved = true; improved;) {
      improved = false;
      for (int axis = 0; axis < 3; ++axis) {
        for (double sign : {1.0, -1.0}) {
          Eigen::Vector3d t = sph;
          t(axis) += sign * step;
          t(0) = std::clamp(t(0), 0.0, 1.0);
          t(1) = std::clamp(t(1), 0.0, std::numbers::pi);
          double const fv = value(to_point(t));
          if (fv > best_value) {
            best_value = fv;
            sph = t;
            improved = true;
          }
        }
      }
    }
    step /= 2;
  }
  return best_value;
}

Records norm_continuity(Polynomial3 const &f, std::vector<int> const &N_list)
{
  return sweep(N_list, f.to_string(), [&](int N) { return quantize_bulk(f, N).norm(); });
}

Records classical_limit_check(Polynomial3 const &p, std::array<double, 3> const &bloch, std::vector<int> const &N_list)
{
  Cx const classical = p.evaluate(bloch);
  return sweep(N_list, p.to_string(),
               [&](int N) { return std::abs(product_state_expectation(p, bloch, N) - classical); });
}

void write_records_csv(std::ostream &os, Records const &records, bool include_timing)
{
  os << "N,value,label,elapsed\n";
  char buf[64];
  for (auto const &r : records) {
    std::snprintf(buf, sizeof buf, "%.17g", r.value);
    os << r.N << ',' << buf << ',' << r.label << ',';
    std::snprintf(buf, sizeof buf, "%.17g", include_timing ? r.elapsed : 0.0);
    os << buf << '\n';
  }
}

nlohmann::json to_json(SweepSummary const &s)
{
  nlohmann::json j = s.details;
  j["sweep"] = s.sweep;
  if (s.fit.valid()) {
    j["fit_slope"] = s.fit.slope;
    j["fit_intercept"] = s.fit.intercept;
  } else {
    j["fit_slope"] = nullptr;
    j["fit_intercept"] = nullptr;
  }
  j["pass"] = s.pass;
  return j;
}

SweepSummary judge_decay(std::string name, Records const &records, Tolerances const &tol)
{
  SweepSummary s{std::move(name), loglog_fit(records), false, nlohmann::json::object()};
  if (all_below(records, tol.exact)) {
    s.pass = true;
    s.details["exact"] = true;
    return s;
  }
  bool const decreasing = strictly_decreasing(records);
  bool const steep = s.fit.valid() && s.fit.slope <= -tol.min_decay_exponent;
  s.details["strictly_decreasing"] = decreasing;
  s.details["min_decay_exponent"] = tol.min_decay_exponent;
  s.pass = decreasing && steep;
  return s;
}

SweepSummary judge_exact(std::string name, Records const &records, Tolerances const &tol)
{
  SweepSummary s{std::move(name), loglog_fit(records), all_below(records, tol.exact), nlohmann::json::object()};
  double worst = 0;
  for (auto const &r : records) { worst = std::max(worst, r.value); }
  s.details["max_value"] = worst;
  s.details["tolerance"] = tol.exact;
  return s;
}

} // namespace bbq
