#include "spheregrf/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace spheregrf {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos)
    return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> items;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty())
      items.push_back(item);
  }
  return items;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size())
      throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse '" + value + "' as a number");
  }
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size())
      throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse '" + value +
                      "' as an integer");
  }
}

std::uint64_t parse_uint(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(value, &used);
    if (used != value.size())
      throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse '" + value +
                      "' as an unsigned integer");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1")
    return true;
  if (value == "false" || value == "0")
    return false;
  throw ConfigError("config key '" + key + "': expected true/false, got '" + value + "'");
}

// Shortest decimal form that round-trips to the same double.
std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

} // namespace

NoiseMode RunConfig::noise() const {
  if (noise_mode == "interpolate")
    return NoiseMode::interpolate();
  if (noise_mode == "project")
    return NoiseMode::project(quad_order);
  throw ConfigError("config key 'noise_mode': expected project or interpolate, got '" +
                    noise_mode + "'");
}

SolverConfig RunConfig::solver() const {
  SolverConfig cfg;
  cfg.tol = cg_tol;
  cfg.max_iter = cg_max_iter;
  return cfg;
}

void RunConfig::validate() const {
  static const std::vector<std::string> commands = {"sample", "convergence",
                                                    "quadrature-study", "noise-study"};
  if (std::find(commands.begin(), commands.end(), command) == commands.end())
    throw ConfigError("config key 'command': unknown command '" + command + "'");
  if (betas.empty())
    throw ConfigError("config key 'beta': need at least one value");
  for (double b : betas)
    if (!(b > 0.5))
      throw ConfigError("config key 'beta': values must exceed 0.5 (got " +
                        format_double(b) + ")");
  if (!(kappa > 0.0))
    throw ConfigError("config key 'kappa': must be positive");
  if (degree_cap < 0)
    throw ConfigError("config key 'L': must be nonnegative");
  if (ks.empty())
    throw ConfigError("config key 'k': need at least one value");
  for (double k : ks)
    if (!(k > 0.0))
      throw ConfigError("config key 'k': values must be positive");
  if (levels.empty())
    throw ConfigError("config key 'levels': need at least one level");
  for (std::size_t i = 0; i + 1 < levels.size(); ++i)
    if (levels[i] >= levels[i + 1])
      throw ConfigError("config key 'levels': must be strictly ascending");
  for (int level : levels)
    if (level < 0 || level > 10)
      throw ConfigError("config key 'levels': levels must lie in [0, 10]");
  if (samples < 1)
    throw ConfigError("config key 'samples': must be at least 1");
  if (noise_mode != "project" && noise_mode != "interpolate")
    throw ConfigError("config key 'noise_mode': expected project or interpolate");
  if (quad_order != 2 && quad_order != 5)
    throw ConfigError("config key 'quad_order': must be 2 or 5");
  if (!(cg_tol > 0.0 && cg_tol < 1.0))
    throw ConfigError("config key 'cg_tol': must lie in (0, 1)");
  if (cg_max_iter < 0)
    throw ConfigError("config key 'cg_max_iter': must be nonnegative");
}

RunConfig parse_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    if (kv.count(key))
      throw ConfigError("config key '" + key + "': duplicated");
    kv[key] = value;
  }

  auto take = [&](const std::string& key) -> std::string {
    auto it = kv.find(key);
    if (it == kv.end())
      throw ConfigError("missing config key '" + key + "'");
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  auto take_optional = [&](const std::string& key, const std::string& fallback) {
    auto it = kv.find(key);
    if (it == kv.end())
      return fallback;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };

  RunConfig cfg;
  cfg.command = take("command");
  for (const auto& b : split_list(take("beta")))
    cfg.betas.push_back(parse_double("beta", b));
  cfg.kappa = parse_double("kappa", take("kappa"));
  cfg.degree_cap = static_cast<int>(parse_int("L", take("L")));
  for (const auto& k : split_list(take("k")))
    cfg.ks.push_back(parse_double("k", k));
  for (const auto& l : split_list(take("levels")))
    cfg.levels.push_back(static_cast<int>(parse_int("levels", l)));
  cfg.samples = static_cast<int>(parse_int("samples", take("samples")));
  cfg.seed = parse_uint("seed", take("seed"));
  cfg.noise_mode = take_optional("noise_mode", "project");
  cfg.quad_order = static_cast<int>(parse_int("quad_order", take_optional("quad_order", "5")));
  cfg.cg_tol = parse_double("cg_tol", take_optional("cg_tol", "1e-10"));
  cfg.cg_max_iter = parse_int("cg_max_iter", take_optional("cg_max_iter", "0"));
  cfg.warm_start = parse_bool("warm_start", take_optional("warm_start", "false"));
  cfg.out = take_optional("out", ".");

  if (!kv.empty())
    throw ConfigError("unknown config key '" + kv.begin()->first + "'");
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string serialize_config(const RunConfig& config) {
  std::string out;
  auto join_doubles = [](const std::vector<double>& vs) {
    std::string s;
    for (std::size_t i = 0; i < vs.size(); ++i)
      s += (i ? "," : "") + format_double(vs[i]);
    return s;
  };
  out += "command = " + config.command + "\n";
  out += "beta = " + join_doubles(config.betas) + "\n";
  out += "kappa = " + format_double(config.kappa) + "\n";
  out += "L = " + std::to_string(config.degree_cap) + "\n";
  out += "k = " + join_doubles(config.ks) + "\n";
  std::string levels;
  for (std::size_t i = 0; i < config.levels.size(); ++i)
    levels += (i ? "," : "") + std::to_string(config.levels[i]);
  out += "levels = " + levels + "\n";
  out += "samples = " + std::to_string(config.samples) + "\n";
  out += "seed = " + std::to_string(config.seed) + "\n";
  out += "noise_mode = " + config.noise_mode + "\n";
  out += "quad_order = " + std::to_string(config.quad_order) + "\n";
  out += "cg_tol = " + format_double(config.cg_tol) + "\n";
  out += "cg_max_iter = " + std::to_string(config.cg_max_iter) + "\n";
  out += std::string("warm_start = ") + (config.warm_start ? "true" : "false") + "\n";
  out += "out = " + config.out + "\n";
  return out;
}

bool operator==(const RunConfig& a, const RunConfig& b) {
  return a.command == b.command && a.betas == b.betas && a.kappa == b.kappa &&
         a.degree_cap == b.degree_cap && a.ks == b.ks && a.levels == b.levels &&
         a.samples == b.samples && a.seed == b.seed && a.noise_mode == b.noise_mode &&
         a.quad_order == b.quad_order && a.cg_tol == b.cg_tol &&
         a.cg_max_iter == b.cg_max_iter && a.warm_start == b.warm_start && a.out == b.out;
}

} // namespace spheregrf
