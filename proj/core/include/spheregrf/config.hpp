#ifndef SPHEREGRF_CONFIG_HPP
#define SPHEREGRF_CONFIG_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "spheregrf/noise.hpp"
#include "spheregrf/solver.hpp"

namespace spheregrf {

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Flat key = value run description shared by all CLI commands.
/// Required keys: command, beta, kappa, L, k, levels, samples, seed.
/// Defaulted keys: noise_mode=project, quad_order=5, cg_tol=1e-10,
/// cg_max_iter=0 (auto), warm_start=false, out=".".
struct RunConfig {
  std::string command;
  std::vector<double> betas;  // one or more; sample/convergence iterate over them
  double kappa = 1.0;
  int degree_cap = 1;         // key "L"
  std::vector<double> ks;     // one or more; quadrature-study sweeps them
  std::vector<int> levels;    // ascending
  int samples = 1;
  std::uint64_t seed = 0;
  std::string noise_mode = "project"; // "project" or "interpolate"
  int quad_order = 5;
  double cg_tol = 1e-10;
  std::int64_t cg_max_iter = 0;
  bool warm_start = false;
  std::string out = ".";

  NoiseMode noise() const;
  SolverConfig solver() const;

  /// Throws ConfigError naming the offending key on any violation.
  void validate() const;
};

/// Parses the flat text form ('#' comments, key = value per line).
/// Unknown keys and duplicate keys are errors; missing required keys are
/// reported by name.
RunConfig parse_config(const std::string& text);

/// Reads and parses a config file; I/O failures carry the path.
RunConfig load_config(const std::string& path);

/// Canonical serialization; parse(serialize(c)) == c.
std::string serialize_config(const RunConfig& config);

bool operator==(const RunConfig& a, const RunConfig& b);

} // namespace spheregrf

#endif
