#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef SPHEREGRF_CLI_PATH
#error "SPHEREGRF_CLI_PATH must point at the sphere-grf binary"
#endif

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output; // stdout and stderr combined
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(SPHEREGRF_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 512> buf{};
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::fgets(buf.data(), buf.size(), pipe))
    result.output += buf.data();
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "spheregrf_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string write_config(const std::string& name, const std::string& text) {
  const fs::path path = scratch_dir() / name;
  std::ofstream out(path);
  out << text;
  return path.string();
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

TEST_CASE("cli: sample writes one vtk per beta, reruns are byte-identical") {
  const fs::path out = scratch_dir() / "sample_out";
  fs::remove_all(out);
  const std::string cfg = write_config("sample.cfg", R"(command = sample
beta = 0.75,1.5
kappa = 1
L = 1
k = 0.5
levels = 1
samples = 1
seed = 7
)");
  const RunResult r = run_cli("sample --config " + cfg + " --out " + out.string());
  CHECK(r.exit_code == 0);
  const fs::path f075 = out / "sample_beta0.75_seed7.vtk";
  const fs::path f15 = out / "sample_beta1.5_seed7.vtk";
  REQUIRE(fs::exists(f075));
  REQUIRE(fs::exists(f15));
  const std::string first = slurp(f075);
  CHECK(slurp(f15) != first); // different beta, different field

  const RunResult again = run_cli("sample --config " + cfg + " --out " + out.string());
  CHECK(again.exit_code == 0);
  CHECK(slurp(f075) == first);
}

TEST_CASE("cli: convergence smoke run emits the csv and a fitted rate") {
  const fs::path out = scratch_dir() / "conv_out";
  fs::remove_all(out);
  const std::string cfg = write_config("conv.cfg", R"(command = convergence
beta = 0.75
kappa = 1
L = 1
k = 0.5
levels = 1,2,3
samples = 1
seed = 3
)");
  const RunResult r = run_cli("convergence --config " + cfg + " --out " + out.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("fitted_rate=") != std::string::npos);
  const fs::path csv = out / "convergence_beta0.75.csv";
  REQUIRE(fs::exists(csv));
  const std::string text = slurp(csv);
  CHECK(text.rfind("level,", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);

  // byte-identical rerun, and identical under a different worker count
  const RunResult again =
      run_cli("convergence --config " + cfg + " --out " + out.string() + " --workers 3");
  CHECK(again.exit_code == 0);
  CHECK(slurp(csv) == text);
}

TEST_CASE("cli: quadrature study runs and rejects integer beta") {
  const fs::path out = scratch_dir() / "quad_out";
  const std::string cfg = write_config("quad.cfg", R"(command = quadrature-study
beta = 0.75
kappa = 1
L = 10
k = 1,0.5,0.25,0.125
levels = 1
samples = 1
seed = 1
)");
  const RunResult r =
      run_cli("quadrature-study --config " + cfg + " --out " + out.string());
  CHECK(r.exit_code == 0);
  REQUIRE(fs::exists(out / "quadrature_study.csv"));

  const std::string bad = write_config("quad_int.cfg", R"(command = quadrature-study
beta = 2
kappa = 1
L = 10
k = 1,0.5
levels = 1
samples = 1
seed = 1
)");
  const RunResult rejected =
      run_cli("quadrature-study --config " + bad + " --out " + out.string());
  CHECK(rejected.exit_code == 2);
  CHECK(rejected.output.find("bypass") != std::string::npos);
}

TEST_CASE("cli: noise study emits per-level errors") {
  const fs::path out = scratch_dir() / "noise_out";
  const std::string cfg = write_config("noise.cfg", R"(command = noise-study
beta = 0.75
kappa = 1
L = 1
k = 0.5
levels = 1,2
samples = 2
seed = 5
)");
  const RunResult r = run_cli("noise-study --config " + cfg + " --out " + out.string());
  CHECK(r.exit_code == 0);
  REQUIRE(fs::exists(out / "noise_study.csv"));
}

TEST_CASE("cli exit codes: config errors are 2 and name the problem") {
  const std::string low_beta = write_config("low_beta.cfg", R"(command = sample
beta = 0.4
kappa = 1
L = 1
k = 0.5
levels = 1
samples = 1
seed = 7
)");
  const RunResult r1 = run_cli("sample --config " + low_beta);
  CHECK(r1.exit_code == 2);
  CHECK(r1.output.find("beta") != std::string::npos);

  const std::string missing = write_config("missing.cfg", R"(command = sample
beta = 0.75
L = 1
k = 0.5
levels = 1
samples = 1
seed = 7
)");
  const RunResult r2 = run_cli("sample --config " + missing);
  CHECK(r2.exit_code == 2);
  CHECK(r2.output.find("kappa") != std::string::npos);

  const RunResult r3 = run_cli("sample --config /does/not/exist.cfg");
  CHECK(r3.exit_code == 2);

  // command in the file must match the subcommand
  const std::string mismatched = write_config("mismatch.cfg", R"(command = convergence
beta = 0.75
kappa = 1
L = 1
k = 0.5
levels = 1
samples = 1
seed = 7
)");
  const RunResult r4 = run_cli("sample --config " + mismatched);
  CHECK(r4.exit_code == 2);
  CHECK(r4.output.find("command") != std::string::npos);
}

TEST_CASE("cli exit codes: unwritable output directory is 4") {
  const std::string cfg = write_config("io_fail.cfg", R"(command = sample
beta = 0.75
kappa = 1
L = 1
k = 0.5
levels = 1
samples = 1
seed = 7
out = /proc/definitely/not/writable
)");
  const RunResult r = run_cli("sample --config " + cfg);
  CHECK(r.exit_code == 4);
  CHECK(r.output.find("i/o error") != std::string::npos);
}
