#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace biortho::cli {

enum class Command { verify, kg_density, photon_density, emission, boost_check, transverse_delta };
enum class Format { csv, json };

// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitGuard = 3;

struct RunConfig {
  Command command = Command::verify;

  // grid
  int grid = 32;
  double dk = 0.5;
  double mass = 1.0;
  double t = 0.0;

  std::uint64_t seed = 1;
  std::string out;  // empty: stdout
  Format format = Format::json;

  // verify
  std::vector<std::string> suites;  // empty with all = true runs everything
  bool all = false;
  int states = 20;

  // kg-density / photon-density
  bool slice = false;
  std::string export_kind = "density";  // photon-density: density | field
  int epsilon = 1;
  int helicity = 1;

  // emission
  double omega0 = 1.0;
  std::vector<double> dipole = {1, 0, 0, 0, 0, 0};  // re, im per axis
  double g0 = 1.0;
  double window = 0.5;
  int n_radial = 0;  // 0: chosen from t
  int n_theta = 4;
  int n_phi = 6;
  std::string profile = "radial";  // radial | number | map
  double dr = 0.1;

  // boost-check
  double rapidity = 0.5;
  std::vector<double> axis = {0, 0, 1};

  // transverse-delta
  int samples = 10000;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown by parse_args for --help; what() is the help text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string usage();

// Parses argv; a --config JSON file overrides flags. Throws ConfigError or HelpRequested.
RunConfig parse_args(int argc, const char* const* argv);

// Applies the keys of a JSON object on top of cfg. Throws ConfigError.
void apply_json(RunConfig& cfg, const nlohmann::json& j);

std::string command_name(Command c);

struct CheckResult {
  std::string suite;
  std::string check;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

const std::vector<std::string>& suite_names();

// Runs one verify suite. Random states derive from (seed, suite name) only.
std::vector<CheckResult> run_suite(const std::string& name, const RunConfig& cfg);

// Worker count for parallel suites: BIORTHO_THREADS if set, else the hardware count.
unsigned thread_cap();

// Writes the command's artifact to `out` and returns the exit code.
// Errors are reported on `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Parses, runs and writes to cfg.out (or stdout). The tool's main().
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace biortho::cli
