#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spheregrf/config.hpp"
#include "spheregrf/fractional.hpp"
#include "spheregrf/harness.hpp"
#include "spheregrf/io.hpp"
#include "spheregrf/spectral.hpp"

namespace {

using namespace spheregrf;

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

ModelParams base_params(const RunConfig& cfg, double beta, double k) {
  ModelParams p;
  p.beta = beta;
  p.kappa = cfg.kappa;
  p.degree_cap = cfg.degree_cap;
  p.k = k;
  p.noise = cfg.noise();
  p.solver = cfg.solver();
  p.warm_start = cfg.warm_start;
  return p;
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.out, ec);
  if (ec)
    throw IoError("cannot create output directory '" + cfg.out + "': " + ec.message());
  return (std::filesystem::path(cfg.out) / name).string();
}

void run_sample(const RunConfig& cfg, unsigned /*workers*/) {
  if (cfg.levels.size() != 1)
    throw ConfigError("config key 'levels': sample expects exactly one level");
  if (cfg.ks.size() != 1)
    throw ConfigError("config key 'k': sample expects exactly one step size");
  const TriangleMesh mesh = icosphere(cfg.levels.front());
  for (double beta : cfg.betas) {
    const ModelParams params = base_params(cfg, beta, cfg.ks.front());
    const FieldSampler sampler(mesh, params);
    // Sample index 0 everywhere: the same seed yields the same noise draw
    // for every beta, exactly the shared-noise comparison setup.
    const SampleResult result = sampler.sample(0, cfg.seed);
    const std::string file = out_path(cfg, "sample_beta" + short_num(beta) + "_seed" +
                                               std::to_string(cfg.seed) + ".vtk");
    write_vtk(file, mesh, &result.fem, "u");
    std::printf("sample beta=%s seed=%llu level=%d -> %s\n", short_num(beta).c_str(),
                static_cast<unsigned long long>(cfg.seed), cfg.levels.front(),
                file.c_str());
  }
}

void run_convergence(const RunConfig& cfg, unsigned workers) {
  if (cfg.ks.size() != 1)
    throw ConfigError("config key 'k': convergence expects exactly one step size");
  for (double beta : cfg.betas) {
    const ModelParams params = base_params(cfg, beta, cfg.ks.front());
    const auto rows =
        monte_carlo_strong_error(params, cfg.levels, cfg.samples, cfg.seed, workers);
    const std::string file = out_path(cfg, "convergence_beta" + short_num(beta) + ".csv");
    write_convergence_csv(file, rows, beta, cfg.kappa, cfg.ks.front(), cfg.degree_cap,
                          cfg.samples);
    std::printf("convergence beta=%s kappa=%s k=%s L=%d N=%d fitted_rate=%.4f -> %s\n",
                short_num(beta).c_str(), short_num(cfg.kappa).c_str(),
                short_num(cfg.ks.front()).c_str(), cfg.degree_cap, cfg.samples,
                fit_rate(rows), file.c_str());
  }
}

void run_quadrature_study(const RunConfig& cfg, unsigned /*workers*/) {
  if (cfg.betas.size() != 1)
    throw ConfigError("config key 'beta': quadrature-study expects exactly one value");
  const double beta = cfg.betas.front();
  if (is_integer_beta(beta))
    throw ConfigError("config key 'beta': integer beta takes the non-fractional bypass; "
                      "there is no sinc quadrature to study");
  const auto errors = quadrature_error_curve(beta, cfg.kappa, cfg.degree_cap, cfg.ks);
  const std::string file = out_path(cfg, "quadrature_study.csv");
  write_quadrature_csv(file, cfg.ks, errors);
  std::vector<double> inv_k, log_err;
  for (std::size_t i = 0; i < cfg.ks.size(); ++i) {
    inv_k.push_back(1.0 / cfg.ks[i]);
    log_err.push_back(std::log(errors[i]));
  }
  if (cfg.ks.size() >= 2)
    std::printf("quadrature-study beta=%s kappa=%s L=%d slope(log err vs 1/k)=%.4f -> %s\n",
                short_num(beta).c_str(), short_num(cfg.kappa).c_str(), cfg.degree_cap,
                fit_slope(inv_k, log_err), file.c_str());
  else
    std::printf("quadrature-study beta=%s kappa=%s L=%d -> %s\n", short_num(beta).c_str(),
                short_num(cfg.kappa).c_str(), cfg.degree_cap, file.c_str());
}

void run_noise_study(const RunConfig& cfg, unsigned workers) {
  const auto rows = noise_transfer_study(cfg.degree_cap, cfg.quad_order, cfg.solver(),
                                         cfg.levels, cfg.samples, cfg.seed, workers);
  const std::string file = out_path(cfg, "noise_study.csv");
  write_noise_study_csv(file, rows, cfg.degree_cap, cfg.samples);
  if (rows.size() >= 2) {
    std::vector<double> logh, logi, logp;
    for (const auto& r : rows) {
      logh.push_back(std::log(r.h_inball));
      logi.push_back(std::log(r.interpolation_error));
      logp.push_back(std::log(r.projection_error));
    }
    std::printf("noise-study L=%d N=%d interp_rate=%.4f proj_rate=%.4f -> %s\n",
                cfg.degree_cap, cfg.samples, fit_slope(logh, logi), fit_slope(logh, logp),
                file.c_str());
  } else {
    std::printf("noise-study L=%d N=%d -> %s\n", cfg.degree_cap, cfg.samples,
                file.c_str());
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Whittle-Matern Gaussian random field sampler on the sphere (surface FEM)"};
  app.require_subcommand(1);

  std::string config_path;
  unsigned workers = 0;
  std::string out_override;
  std::vector<CLI::App*> commands;
  for (const char* name : {"sample", "convergence", "quadrature-study", "noise-study"}) {
    auto* cmd = app.add_subcommand(name, std::string("run the ") + name + " command");
    cmd->add_option("--config", config_path, "run configuration file")->required();
    cmd->add_option("--workers", workers, "number of parallel sample workers (0 = auto)");
    cmd->add_option("--out", out_override, "output directory (overrides config)");
    commands.push_back(cmd);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg = load_config(config_path);
    const std::string invoked = app.get_subcommands().front()->get_name();
    if (cfg.command != invoked)
      throw ConfigError("config key 'command': file says '" + cfg.command +
                        "' but the '" + invoked + "' subcommand was invoked");
    if (!out_override.empty())
      cfg.out = out_override;

    if (invoked == "sample")
      run_sample(cfg, workers);
    else if (invoked == "convergence")
      run_convergence(cfg, workers);
    else if (invoked == "quadrature-study")
      run_quadrature_study(cfg, workers);
    else
      run_noise_study(cfg, workers);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const SolveFailure& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  } catch (const IoError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
