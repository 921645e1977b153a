#include "bbq/cli.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

namespace bbq::cli {

std::vector<std::string> const &subcommands()
{
  static std::vector<std::string> const names{"converge",        "annihilate", "dgr", "berezin-check", "covariance",
                                              "classical-limit", "cw",         "inverse-check"};
  return names;
}

std::vector<std::string> const &valid_keys()
{
  static std::vector<std::string> const keys{
    "subcommand", "poly",        "q",           "f",           "g",        "N",
    "bracket_scale", "map",      "J",           "B",           "bloch",    "point",
    "samples",    "seed",        "csv",         "json",        "timing",   "tol_exact",
    "tol_decay",  "tol_sup",     "tol_covariance", "tol_inverse", "berezin_constant", "cw_tolerance"};
  return keys;
}

namespace {

std::string trim(std::string_view s)
{
  auto const b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) { return {}; }
  auto const e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep)
{
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto const pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) { break; }
    start = pos + 1;
  }
  return out;
}

std::string joined_keys()
{
  std::string out;
  for (auto const &k : valid_keys()) { out += (out.empty() ? "" : ", ") + k; }
  return out;
}

bool is_valid_key(std::string const &k)
{
  auto const &keys = valid_keys();
  return std::find(keys.begin(), keys.end(), k) != keys.end();
}

template <typename T>
T parse_number(std::string const &key, std::string const &text)
{
  T value{};
  auto const *first = text.data();
  auto const *last = text.data() + text.size();
  auto const [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw UsageError(key + ": expected a number, got '" + text + "'");
  }
  return value;
}

double parse_real(std::string const &key, std::string const &text)
{
  std::istringstream is(text);
  is.imbue(std::locale::classic());
  double v = 0;
  if (!(is >> v) || !(is >> std::ws).eof() || !std::isfinite(v)) {
    throw UsageError(key + ": expected a finite real, got '" + text + "'");
  }
  return v;
}

Polynomial3 parse_polynomial(std::string const &key, std::string const &text)
{
  try {
    return Polynomial3::parse(text);
  } catch (PolynomialParseError const &e) {
    throw UsageError(key + ": cannot parse '" + text + "': " + e.what());
  }
}

std::vector<double> parse_reals(std::string const &key, std::string const &text, std::size_t count)
{
  auto const parts = split(text, ',');
  if (parts.size() != count) {
    throw UsageError(key + ": expected " + std::to_string(count) + " comma-separated reals, got '" + text + "'");
  }
  std::vector<double> out;
  for (auto const &p : parts) { out.push_back(parse_real(key, p)); }
  return out;
}

bool parse_bool(std::string const &key, std::string const &text)
{
  if (text == "true" || text == "1" || text == "yes" || text == "on") { return true; }
  if (text == "false" || text == "0" || text == "no" || text == "off") { return false; }
  throw UsageError(key + ": expected true or false, got '" + text + "'");
}

std::string default_range(std::string const &sub)
{
  if (sub == "converge" || sub == "dgr") { return "8..256:geom2"; }
  if (sub == "annihilate") { return "4..64:geom2"; }
  if (sub == "berezin-check" || sub == "cw") { return "4..256:geom2"; }
  if (sub == "covariance") { return "1..16:lin1"; }
  if (sub == "classical-limit") { return "1..16:lin1"; }
  return "2..8:lin1";
}

} // namespace

Settings parse_settings(std::string_view text)
{
  Settings out;
  int line_no = 0;
  for (auto const &raw : split(text, '\n')) {
    ++line_no;
    std::string const line = trim(raw);
    if (line.empty() || line[0] == '#') { continue; }
    auto const eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string const key = trim(std::string_view(line).substr(0, eq));
    if (!is_valid_key(key)) {
      throw UsageError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'; valid keys: " +
                       joined_keys());
    }
    out[key] = trim(std::string_view(line).substr(eq + 1));
  }
  return out;
}

std::vector<int> parse_n_range(std::string_view text)
{
  std::string const s = trim(text);
  if (s.empty()) { throw UsageError("N: empty range"); }
  std::vector<int> out;
  try {
    if (s.find("..") == std::string::npos) {
      for (auto const &part : split(s, ',')) { out.push_back(parse_number<int>("N", part)); }
    } else {
      auto const colon = s.find(':');
      std::string const span = s.substr(0, colon);
      std::string const step = colon == std::string::npos ? "geom2" : s.substr(colon + 1);
      auto const dots = span.find("..");
      int const a = parse_number<int>("N", trim(span.substr(0, dots)));
      int const b = parse_number<int>("N", trim(span.substr(dots + 2)));
      if (step.rfind("geom", 0) == 0) {
        out = geometric_range(a, b, parse_number<int>("N", step.substr(4)));
      } else if (step.rfind("lin", 0) == 0) {
        out = linear_range(a, b, parse_number<int>("N", step.substr(3)));
      } else {
        throw UsageError("N: unknown step '" + step + "', expected geomK or linK");
      }
    }
    SweepConfig cfg;
    cfg.N_list = out;
    cfg.validate();
  } catch (ConfigurationError const &e) {
    throw UsageError(std::string("N '") + s + "': " + e.what());
  }
  return out;
}

RunConfig make_config(Settings const &settings)
{
  for (auto const &[k, v] : settings) {
    if (!is_valid_key(k)) { throw UsageError("unknown key '" + k + "'; valid keys: " + joined_keys()); }
  }
  auto get = [&](std::string const &key, std::string const &fallback) {
    auto const it = settings.find(key);
    return it == settings.end() ? fallback : it->second;
  };

  RunConfig c;
  c.subcommand = get("subcommand", "");
  auto const &subs = subcommands();
  if (std::find(subs.begin(), subs.end(), c.subcommand) == subs.end()) {
    std::string list;
    for (auto const &s : subs) { list += (list.empty() ? "" : ", ") + s; }
    throw UsageError("subcommand '" + c.subcommand + "' is not one of: " + list);
  }
  std::string const &sub = c.subcommand;

  std::string poly_default = "z^2";
  if (sub == "annihilate") { poly_default = "1; x; z; x z"; }
  if (sub == "classical-limit") { poly_default = "x z"; }
  std::string const polys = get(sub == "annihilate" ? "q" : "poly", poly_default);
  for (auto const &p : split(polys, ';')) { c.polynomials.push_back(parse_polynomial("poly", p)); }

  c.f = parse_polynomial("f", get("f", sub == "berezin-check" ? "z^2" : "x"));
  c.g = parse_polynomial("g", get("g", "y"));
  c.N_list = parse_n_range(get("N", default_range(sub)));

  std::string const scale = get("bracket_scale", "auto");
  if (scale != "auto") { c.bracket_scale = parse_real("bracket_scale", scale); }

  std::string const map = get("map", "bulk");
  if (map == "bulk") {
    c.map = MapKind::bulk;
  } else if (map == "boundary") {
    c.map = MapKind::boundary;
  } else {
    throw UsageError("map: expected bulk or boundary, got '" + map + "'");
  }

  c.cw.J = parse_real("J", get("J", "1"));
  c.cw.B = parse_real("B", get("B", "0.5"));

  auto const b = parse_reals("bloch", get("bloch", "0.6,0,0.8"), 3);
  c.bloch = {b[0], b[1], b[2]};
  if (std::sqrt(b[0] * b[0] + b[1] * b[1] + b[2] * b[2]) > 1 + 1e-12) {
    throw UsageError("bloch: vector lies outside the unit ball");
  }
  auto const pt = parse_reals("point", get("point", "0,0"), 2);
  try {
    c.point = SpherePoint(pt[0], pt[1]);
  } catch (DomainError const &e) {
    throw UsageError(std::string("point: ") + e.what());
  }

  c.samples = parse_number<int>("samples", get("samples", "50"));
  if (c.samples < 1) { throw UsageError("samples: must be >= 1"); }
  c.seed = parse_number<std::uint64_t>("seed", get("seed", "1"));
  c.csv_path = get("csv", "-");
  c.json_path = get("json", "");
  c.timing = parse_bool("timing", get("timing", "false"));

  auto override_real = [&](std::string const &key, double &field) {
    if (auto const it = settings.find(key); it != settings.end()) { field = parse_real(key, it->second); }
  };
  Tolerances &t = c.tolerances;
  override_real("tol_exact", t.exact);
  override_real("tol_decay", t.min_decay_exponent);
  override_real("tol_sup", t.sup_norm);
  override_real("tol_covariance", t.covariance);
  override_real("tol_inverse", t.inverse);
  override_real("berezin_constant", t.berezin_constant);
  override_real("cw_tolerance", t.cw_reference);
  return c;
}

RunConfig parse_command_line(int argc, char const *const *argv)
{
  CLI::App app("Bulk and boundary quantization of the Bloch ball: convergence experiments");
  app.set_version_flag("--version", "1.0.0");

  struct Flag
  {
    char const *name;
    char const *key;
    char const *help;
  };
  static Flag const flags[] = {
    {"--N", "N", "N range: a..b:geomK, a..b:linK, a, or a comma list"},
    {"--f", "f", "first polynomial (dgr, berezin-check)"},
    {"--g", "g", "second polynomial (dgr)"},
    {"--scale", "bracket_scale", "bracket scale: a real or auto"},
    {"--map", "map", "quantization map for dgr: bulk or boundary"},
    {"--J", "J", "Curie-Weiss coupling"},
    {"--B", "B", "Curie-Weiss transverse field"},
    {"--bloch", "bloch", "Bloch vector x,y,z for classical-limit"},
    {"--point", "point", "sphere point theta,phi for berezin-check"},
    {"--samples", "samples", "random samples per N (covariance)"},
    {"--seed", "seed", "random seed (covariance, inverse-check)"},
    {"--csv", "csv", "CSV output path, - for stdout"},
    {"--json", "json", "JSON summary path"},
    {"--tol-exact", "tol_exact", "tolerance for exact identities"},
    {"--tol-decay", "tol_decay", "minimum fitted decay exponent"},
    {"--tol-sup", "tol_sup", "sup-norm accuracy"},
    {"--tol-covariance", "tol_covariance", "covariance tolerance"},
    {"--tol-inverse", "tol_inverse", "inverse round-trip tolerance"},
    {"--berezin-constant", "berezin_constant", "C in the Berezin bound C/N"},
    {"--cw-tolerance", "cw_tolerance", "distance to classical Curie-Weiss references"},
  };

  std::string subcommand, config_path;
  std::vector<std::string> polys, qs;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option *> options;
  bool timing = false;

  app.add_option("subcommand", subcommand, "experiment to run")->check(CLI::IsMember(subcommands()));
  app.add_option("--config", config_path, "key = value settings file; flags override it");
  app.add_option("--poly", polys, "polynomial (repeatable)");
  app.add_option("--q", qs, "cofactor polynomial for annihilate (repeatable)");
  for (auto const &f : flags) { options[f.key] = app.add_option(f.name, values[f.key], f.help); }
  auto *timing_flag = app.add_flag("--timing", timing, "write measured seconds in the elapsed column");

  try {
    app.parse(argc, argv);
  } catch (CLI::Success const &) {
    std::cout << app.help();
    throw HelpShown{};
  } catch (CLI::ParseError const &e) {
    throw UsageError(e.what());
  }

  Settings settings;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) { throw UsageError("--config: cannot read '" + config_path + "'"); }
    std::stringstream buf;
    buf << in.rdbuf();
    settings = parse_settings(buf.str());
  }
  if (!subcommand.empty()) { settings["subcommand"] = subcommand; }
  auto join = [](std::vector<std::string> const &v) {
    std::string out;
    for (auto const &s : v) { out += (out.empty() ? "" : "; ") + s; }
    return out;
  };
  if (!polys.empty()) { settings["poly"] = join(polys); }
  if (!qs.empty()) { settings["q"] = join(qs); }
  for (auto const &[key, opt] : options) {
    if (opt->count() > 0) { settings[key] = values[key]; }
  }
  if (timing_flag->count() > 0) { settings["timing"] = timing ? "true" : "false"; }
  return make_config(settings);
}

namespace {

struct Outcome
{
  std::vector<SweepSummary> summaries;
  nlohmann::json extra = nlohmann::json::object();
};

std::string format_real(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// First record explaining why a summary failed.
std::string failing_record(SweepSummary const &s, Records const &records)
{
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (!(records[i].value < records[i - 1].value)) {
      return "N=" + std::to_string(records[i].N) + " value=" + format_real(records[i].value) +
             " does not decrease from N=" + std::to_string(records[i - 1].N);
    }
  }
  if (s.fit.valid()) { return "fitted slope " + format_real(s.fit.slope); }
  return "insufficient nonzero records";
}

Eigen::Matrix2cd random_su2(std::mt19937_64 &rng)
{
  std::normal_distribution<double> g;
  Eigen::Vector4d q;
  for (int i = 0; i < 4; ++i) { q(i) = g(rng); }
  q.normalize();
  Eigen::Matrix2cd U;
  U << Cx(q(0), q(3)), Cx(q(2), q(1)), Cx(-q(2), q(1)), Cx(q(0), -q(3));
  return U;
}

SpherePoint random_point(std::mt19937_64 &rng)
{
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double const z = u(rng);
  double const phi = std::numbers::pi * u(rng);
  return {std::acos(z), phi > -std::numbers::pi ? phi : std::numbers::pi};
}

void emit_records(Records &all, Records const &more) { all.insert(all.end(), more.begin(), more.end()); }

} // namespace

ExitCode run(RunConfig const &c, std::ostream &err)
{
  auto const t0 = std::chrono::steady_clock::now();
  Tolerances const &tol = c.tolerances;
  Records records;
  std::vector<CWRow> cw_rows;
  Outcome out;
  std::vector<std::string> failures;

  auto add = [&](SweepSummary s, Records const &r) {
    if (!s.pass) { failures.push_back(s.sweep + ": " + failing_record(s, r)); }
    out.summaries.push_back(std::move(s));
    emit_records(records, r);
  };

  std::string const &sub = c.subcommand;
  if (sub == "converge") {
    for (auto const &p : c.polynomials) {
      Records const r = main_theorem_sweep(p, c.N_list);
      add(judge_decay("converge " + p.to_string(), r, tol), r);
    }
  } else if (sub == "annihilate") {
    for (auto const &q : c.polynomials) {
      Records const r = annihilation_sweep(q, c.N_list);
      SweepSummary s = judge_exact("annihilate " + q.to_string(), r, tol);
      if (!s.pass) {
        bool const decaying = r.back().value < r.front().value && loglog_fit(r).slope < 0;
        s.details["decaying"] = decaying;
        s.pass = decaying;
        if (!decaying) { failures.push_back(s.sweep + ": " + failing_record(s, r)); }
      }
      double worst = 0;
      int worst_N = c.N_list.front();
      for (int N : c.N_list) {
        double const v = annihilation_product_residual(q, N);
        if (v > worst) {
          worst = v;
          worst_N = N;
        }
      }
      s.details["product_identity_max"] = worst;
      if (!(worst <= tol.exact)) {
        s.pass = false;
        failures.push_back(s.sweep + ": product identity residual " + format_real(worst) + " at N=" +
                           std::to_string(worst_N));
      }
      out.summaries.push_back(std::move(s));
      emit_records(records, r);
    }
  } else if (sub == "dgr") {
    double scale = 0;
    if (c.bracket_scale) {
      scale = *c.bracket_scale;
    } else {
      ScaleCalibration const cal = calibrate_bracket_scale(Polynomial3::x(), Polynomial3::y());
      scale = cal.scale;
      nlohmann::json table = nlohmann::json::array();
      for (auto const &[s, r] : cal.residuals) { table.push_back({{"scale", s}, {"residual", r}}); }
      out.extra["calibration"] = {{"N", cal.N}, {"candidates", table}};
    }
    out.extra["bracket_scale"] = scale;
    Records const r = dgr_sweep(c.f, c.g, c.N_list, scale, c.map);
    SweepSummary s = judge_decay("dgr " + r.front().label, r, tol);
    s.details["map"] = c.map == MapKind::bulk ? "bulk" : "boundary";
    add(std::move(s), r);
  } else if (sub == "berezin-check") {
    Eigen::Vector3d const v = c.point.unit_vector();
    double const exact = c.f.evaluate(v.x(), v.y(), v.z()).real();
    Records const r = sweep(c.N_list, c.f.to_string(),
                            [&](int N) { return std::abs(berezin_transform(c.f, c.point, N) - exact); });
    SweepSummary s{"berezin-check " + c.f.to_string(), loglog_fit(r), true, nlohmann::json::object()};
    s.details["constant"] = tol.berezin_constant;
    s.details["strictly_decreasing"] = strictly_decreasing(r);
    std::string first_violation;
    for (auto const &rec : r) {
      if (rec.value > tol.berezin_constant / rec.N && first_violation.empty()) {
        first_violation = "N=" + std::to_string(rec.N) + " value=" + format_real(rec.value) + " exceeds " +
                          format_real(tol.berezin_constant) + "/N";
      }
    }
    s.pass = first_violation.empty() && strictly_decreasing(r);
    if (!first_violation.empty()) { failures.push_back(s.sweep + ": " + first_violation); }
    else if (!s.pass) { failures.push_back(s.sweep + ": " + failing_record(s, r)); }
    out.summaries.push_back(std::move(s));
    emit_records(records, r);
  } else if (sub == "covariance") {
    std::vector<std::vector<std::pair<Eigen::Matrix2cd, SpherePoint>>> draws(c.N_list.size());
    std::mt19937_64 rng(c.seed);
    for (auto &d : draws) {
      for (int k = 0; k < c.samples; ++k) {
        Eigen::Matrix2cd const U = random_su2(rng);
        d.emplace_back(U, random_point(rng));
      }
    }
    std::vector<double> coherent(c.N_list.size()), bulk(c.N_list.size(), -1.0);
    parallel_for(c.N_list.size(), [&](std::size_t i) {
      int const N = c.N_list[i];
      double worst = 0;
      for (auto const &[U, omega] : draws[i]) { worst = std::max(worst, coherent_covariance_check(U, omega, N)); }
      coherent[i] = worst;
      if (N > kOracleSiteCap) { return; }
      double worst_bulk = 0;
      for (int d = 0; d <= 2; ++d) {
        for (int a = d; a >= 0; --a) {
          for (int b = d - a; b >= 0; --b) {
            Polynomial3 const m = Polynomial3::monomial({a, b, d - a - b});
            for (auto const &[U, omega] : draws[i]) {
              ComplexMatrix const W = spin_rotation(U, N);
              ComplexMatrix const lhs = quantize_bulk(rotate(m, su2_to_so3(U)), N).matrix;
              ComplexMatrix const rhs = W * quantize_bulk(m, N).matrix * W.adjoint();
              worst_bulk = std::max(worst_bulk, operator_norm(lhs - rhs));
            }
          }
        }
      }
      bulk[i] = worst_bulk;
    });
    Records rc, rb;
    for (std::size_t i = 0; i < c.N_list.size(); ++i) {
      rc.push_back({c.N_list[i], coherent[i], "coherent", 0});
      if (bulk[i] >= 0) { rb.push_back({c.N_list[i], bulk[i], "bulk", 0}); }
    }
    Tolerances cov = tol;
    cov.exact = tol.covariance;
    auto check = [&](std::string name, Records const &r) {
      SweepSummary s = judge_exact(std::move(name), r, cov);
      if (!s.pass) {
        for (auto const &rec : r) {
          if (!(rec.value <= cov.exact)) {
            failures.push_back(s.sweep + ": N=" + std::to_string(rec.N) + " deviation " + format_real(rec.value));
            break;
          }
        }
      }
      out.summaries.push_back(std::move(s));
      emit_records(records, r);
    };
    check("covariance coherent", rc);
    if (!rb.empty()) { check("covariance bulk", rb); }
    out.extra["samples"] = c.samples;
    out.extra["seed"] = c.seed;
  } else if (sub == "classical-limit") {
    for (auto const &p : c.polynomials) {
      Records const r = classical_limit_check(p, c.bloch, c.N_list);
      Records judged;
      for (auto const &rec : r) {
        if (rec.N >= p.degree()) { judged.push_back(rec); }
      }
      SweepSummary s = judge_exact("classical-limit " + p.to_string(), judged, tol);
      if (!s.pass) {
        for (auto const &rec : judged) {
          if (!(rec.value <= tol.exact)) {
            failures.push_back(s.sweep + ": N=" + std::to_string(rec.N) + " value=" + format_real(rec.value));
            break;
          }
        }
      }
      out.summaries.push_back(std::move(s));
      emit_records(records, r);
    }
    out.extra["bloch"] = c.bloch;
  } else if (sub == "cw") {
    cw_rows = cw_experiment(c.cw, c.N_list);
    Records norm;
    for (auto const &row : cw_rows) { norm.push_back({row.N, row.norm_diff, "h_cw", 0}); }
    SweepSummary s = judge_decay("cw theorem", norm, tol);
    CWClassical const cl = cw_classical(c.cw);
    CWRow const &last = cw_rows.back();
    nlohmann::json ref = {{"classical_value", cl.value}, {"degenerate", cl.degenerate}};
    double const energy_gap = std::abs(last.ground_energy - cl.value);
    ref["ground_energy_distance"] = energy_gap;
    bool ok = energy_gap <= tol.cw_reference;
    if (!ok) {
      failures.push_back("cw: N=" + std::to_string(last.N) + " ground energy " + format_real(last.ground_energy) +
                         " vs classical " + format_real(cl.value));
    }
    if (c.cw.J > 0 && std::abs(c.cw.B) < c.cw.J) {
      double const z2 = 1 - (c.cw.B / c.cw.J) * (c.cw.B / c.cw.J);
      ref["z2_reference"] = z2;
      ref["z2_distance"] = std::abs(last.exp_z2 - z2);
      if (!(std::abs(last.exp_z2 - z2) <= tol.cw_reference)) {
        ok = false;
        failures.push_back("cw: N=" + std::to_string(last.N) + " <Q(z^2)> = " + format_real(last.exp_z2) +
                           " vs " + format_real(z2));
      }
    }
    if (!s.pass) { failures.push_back("cw theorem: " + failing_record(s, norm)); }
    s.pass = s.pass && ok;
    s.details["reference"] = ref;
    s.details["J"] = c.cw.J;
    s.details["B"] = c.cw.B;
    out.summaries.push_back(std::move(s));
  } else if (sub == "inverse-check") {
    std::mt19937_64 rng(c.seed);
    std::normal_distribution<double> g;
    std::vector<ComplexMatrix> targets;
    for (int N : c.N_list) {
      ComplexMatrix A(N + 1, N + 1);
      for (Eigen::Index i = 0; i < A.size(); ++i) {
        double const re = g(rng);
        A(i) = Cx(re, g(rng));
      }
      targets.push_back(A);
    }
    std::vector<double> rcond(c.N_list.size());
    Records r(c.N_list.size());
    parallel_for(c.N_list.size(), [&](std::size_t i) {
      int const N = c.N_list[i];
      BoundaryInverse const inv(N);
      rcond[i] = inv.rcond();
      SymOperator const A(N, targets[i]);
      r[i] = {N, (quantize_boundary(inv.solve(A), N) - A).matrix.norm(), "roundtrip", 0};
    });
    Tolerances inv_tol = tol;
    inv_tol.exact = tol.inverse;
    SweepSummary s = judge_exact("inverse-check", r, inv_tol);
    s.details["rcond"] = rcond;
    if (!s.pass) {
      for (auto const &rec : r) {
        if (!(rec.value <= inv_tol.exact)) {
          failures.push_back("inverse-check: N=" + std::to_string(rec.N) + " residual " + format_real(rec.value));
          break;
        }
      }
    }
    out.summaries.push_back(std::move(s));
    emit_records(records, r);
  }

  auto write_to = [&](std::string const &path, auto const &writer) {
    if (path == "-") {
      writer(std::cout);
      return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) { throw UsageError("cannot write '" + path + "'"); }
    writer(os);
  };
  write_to(c.csv_path, [&](std::ostream &os) {
    if (sub == "cw") {
      write_cw_csv(os, cw_rows);
    } else {
      write_records_csv(os, records, c.timing);
    }
  });

  bool pass = true;
  nlohmann::json summary = out.extra;
  summary["subcommand"] = sub;
  summary["sweeps"] = nlohmann::json::array();
  for (auto const &s : out.summaries) {
    pass = pass && s.pass;
    summary["sweeps"].push_back(to_json(s));
  }
  summary["pass"] = pass;
  if (c.timing) {
    std::chrono::duration<double> const dt = std::chrono::steady_clock::now() - t0;
    summary["elapsed"] = dt.count();
  }
  if (c.json_path.empty()) {
    err << summary.dump() << '\n';
  } else {
    write_to(c.json_path, [&](std::ostream &os) { os << summary.dump(2) << '\n'; });
  }
  for (auto const &f : failures) { err << "FAIL " << f << '\n'; }
  return pass ? ExitCode::pass : ExitCode::contract_failure;
}

int main(int argc, char const *const *argv)
{
  try {
    return int(run(parse_command_line(argc, argv), std::cerr));
  } catch (HelpShown const &) {
    return int(ExitCode::pass);
  } catch (UsageError const &e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return int(ExitCode::usage);
  } catch (ConfigurationError const &e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return int(ExitCode::usage);
  } catch (ConsistencyError const &e) {
    std::cerr << "FAIL internal consistency: " << e.what() << '\n';
    return int(ExitCode::contract_failure);
  } catch (std::exception const &e) {
    std::cerr << "error: " << e.what() << '\n';
    return int(ExitCode::contract_failure);
  }
}

} // namespace bbq::cli
