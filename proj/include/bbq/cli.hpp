#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bbq/cw.hpp"

namespace bbq::cli {

/// Malformed flags, config files, ranges or polynomials. Exit status 2.
struct UsageError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

/// Raised after --help or --version output has been printed.
struct HelpShown
{
};

enum class ExitCode : int
{
  pass = 0,
  contract_failure = 1,
  usage = 2,
};

std::vector<std::string> const &subcommands();

/// Keys accepted in config files; command-line flags map onto the same keys.
std::vector<std::string> const &valid_keys();

using Settings = std::map<std::string, std::string>;

/// Flat "key = value" text. Blank lines and lines starting with '#' are
/// skipped. Unknown keys raise UsageError listing the valid keys.
Settings parse_settings(std::string_view text);

/// "a..b:geom2", "a..b:lin3", "a..b" (geometric, factor 2), "a", or a
/// comma-separated list.
std::vector<int> parse_n_range(std::string_view text);

struct RunConfig
{
  std::string subcommand;
  std::vector<Polynomial3> polynomials; // converge, classical-limit, annihilate
  Polynomial3 f, g;                     // dgr, berezin-check
  std::vector<int> N_list;
  std::optional<double> bracket_scale;  // unset means calibrate
  MapKind map = MapKind::bulk;
  CWParams cw;
  std::array<double, 3> bloch{0.6, 0.0, 0.8};
  SpherePoint point;                    // berezin-check evaluation point
  int samples = 50;
  std::uint64_t seed = 1;
  std::string csv_path = "-";           // "-" is standard output
  std::string json_path;                // empty: one-line summary on stderr
  bool timing = false;
  Tolerances tolerances;
};

/// Applies defaults for the subcommand, then the given settings. Throws
/// UsageError on any invalid value.
RunConfig make_config(Settings const &settings);

/// Command-line front end: positional subcommand plus flags. --config reads
/// a settings file first; flags given explicitly override it.
RunConfig parse_command_line(int argc, char const *const *argv);

/// Runs the experiment, writes CSV and JSON summary, and returns the exit
/// status. Failing records are reported on err.
ExitCode run(RunConfig const &config, std::ostream &err);

/// parse_command_line + run with every error mapped to an exit status.
int main(int argc, char const *const *argv);

} // namespace bbq::cli
