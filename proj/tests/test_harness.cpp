#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "spheregrf/harness.hpp"
#include "spheregrf/noise.hpp"
#include "spheregrf/spectral.hpp"

using namespace spheregrf;

TEST_CASE("lifted error: zeros, exact constants, interpolation rate window") {
  const TriangleMesh mesh = icosphere(3);
  const FemField zero(mesh);
  const HarmonicCoeffs none(1);
  CHECK(lifted_l2_error(mesh, zero, none, 5) == 0.0);

  HarmonicCoeffs e00(0);
  e00.at(0, 0) = 1.0;
  for (int level : {1, 3}) {
    const TriangleMesh m = icosphere(level);
    CHECK(lifted_l2_error(m, interpolate_noise(e00, m), e00, 5) <= 1e-10);
  }

  // Nodal interpolant of Y_{1,0}: successive-level error ratios near 4.
  HarmonicCoeffs e10(1);
  e10.at(1, 0) = 1.0;
  double prev = 0.0;
  for (int level = 2; level <= 5; ++level) {
    const TriangleMesh m = icosphere(level);
    const double err = lifted_l2_error(m, interpolate_noise(e10, m), e10, 5);
    if (level > 2) {
      const double ratio = prev / err;
      CHECK(ratio >= 3.6);
      CHECK(ratio <= 4.4);
    }
    prev = err;
  }
}

TEST_CASE("lifted error behaves like a norm of the difference") {
  const TriangleMesh mesh = icosphere(2);
  GaussianSampler rng(sample_seed(61, 0));
  const auto ca = sample_white_noise(2, rng);
  const auto cb = sample_white_noise(2, rng);
  const FemField fa = interpolate_noise(ca, mesh);
  const FemField fb = interpolate_noise(cb, mesh);

  // triangle inequality: d(a_fem, b_ref) <= d(a_fem, mid) + ... checked via
  // the two decompositions available here: error(a vs 0) <= error(a vs b) +
  // error(b-as-field vs 0-ref composed) is awkward; instead check absolute
  // homogeneity and subadditivity on coefficient differences.
  const HarmonicCoeffs zero_ref(2);
  HarmonicCoeffs sum(2);
  for (std::size_t i = 0; i < sum.size(); ++i)
    sum.values()[i] = ca.values()[i] + cb.values()[i];
  std::vector<double> fsum(mesh.n_vertices());
  for (std::size_t i = 0; i < fsum.size(); ++i)
    fsum[i] = fa[i] + fb[i];
  const double da = lifted_l2_error(mesh, fa, ca, 5);
  const double db = lifted_l2_error(mesh, fb, cb, 5);
  const double dsum = lifted_l2_error(mesh, FemField(mesh, fsum), sum, 5);
  CHECK(dsum <= da + db + 1e-12);

  const double alpha = -2.5;
  HarmonicCoeffs sa(2);
  for (std::size_t i = 0; i < sa.size(); ++i)
    sa.values()[i] = alpha * ca.values()[i];
  std::vector<double> sfa(mesh.n_vertices());
  for (std::size_t i = 0; i < sfa.size(); ++i)
    sfa[i] = alpha * fa[i];
  CHECK(lifted_l2_error(mesh, FemField(mesh, sfa), sa, 5) ==
        doctest::Approx(std::abs(alpha) * da).epsilon(1e-12));
}

TEST_CASE("fit_rate: exact powers and degenerate input") {
  std::vector<ConvergenceRow> rows;
  for (int i = 0; i < 4; ++i) {
    ConvergenceRow r;
    r.level = i;
    r.h_inball = 0.3 * std::pow(0.5, i);
    r.strong_error = 7.0 * r.h_inball * r.h_inball;
    rows.push_back(r);
  }
  CHECK(fit_rate(rows) == doctest::Approx(2.0).epsilon(1e-12));
  for (auto& r : rows)
    r.strong_error = 0.37 * r.h_inball;
  CHECK(fit_rate(rows) == doctest::Approx(1.0).epsilon(1e-12));

  for (auto& r : rows)
    r.h_inball = 0.25;
  CHECK_THROWS_AS(fit_rate(rows), std::invalid_argument);
  rows.resize(1);
  CHECK_THROWS_AS(fit_rate(rows), std::invalid_argument);
}

TEST_CASE("monte carlo estimator: N = 1 equals the single-sample error") {
  ModelParams params;
  params.beta = 0.75;
  params.kappa = 1.0;
  params.degree_cap = 1;
  params.k = 0.5;
  const std::vector<int> levels = {1, 2};
  const auto rows = monte_carlo_strong_error(params, levels, 1, 321);
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const TriangleMesh mesh = icosphere(levels[i]);
    const FieldSampler sampler(mesh, params);
    const SampleResult s = sampler.sample(0, 321);
    CHECK(rows[i].strong_error ==
          doctest::Approx(lifted_l2_error(mesh, s.fem, s.spectral, 5)).epsilon(1e-14));
  }
  CHECK(std::isnan(rows.back().pairwise_rate));
  CHECK(rows[0].pairwise_rate ==
        doctest::Approx(std::log2(rows[0].strong_error / rows[1].strong_error)));
}

TEST_CASE("monte carlo estimator: sample prefix is stable when N grows") {
  ModelParams params;
  params.beta = 0.75;
  params.kappa = 1.0;
  params.degree_cap = 1;
  params.k = 0.5;
  const std::vector<int> levels = {2};
  const auto rows2 = monte_carlo_strong_error(params, levels, 2, 55);
  const auto rows4 = monte_carlo_strong_error(params, levels, 4, 55);

  const TriangleMesh mesh = icosphere(2);
  const FieldSampler sampler(mesh, params);
  double sum2 = 0.0, sum4 = 0.0;
  for (int i = 0; i < 4; ++i) {
    const SampleResult s = sampler.sample(static_cast<std::uint64_t>(i), 55);
    const double e = lifted_l2_error(mesh, s.fem, s.spectral, 5);
    if (i < 2)
      sum2 += e * e;
    sum4 += e * e;
  }
  CHECK(rows2[0].strong_error == doctest::Approx(std::sqrt(sum2 / 2.0)).epsilon(1e-14));
  CHECK(rows4[0].strong_error == doctest::Approx(std::sqrt(sum4 / 4.0)).epsilon(1e-14));
}

TEST_CASE("monte carlo estimator is invariant under worker count") {
  ModelParams params;
  params.beta = 0.9;
  params.kappa = 1.0;
  params.degree_cap = 1;
  params.k = 0.5;
  const std::vector<int> levels = {1, 2};
  const auto serial = monte_carlo_strong_error(params, levels, 6, 777, 1);
  const auto threaded = monte_carlo_strong_error(params, levels, 6, 777, 4);
  REQUIRE(serial.size() == threaded.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].strong_error == threaded[i].strong_error); // bitwise
    CHECK(serial[i].h_inball == threaded[i].h_inball);
  }
}

TEST_CASE("noise transfer study: projection no worse than interpolation") {
  SolverConfig cfg;
  const auto rows = noise_transfer_study(1, 5, cfg, {2, 3}, 4, 11, 2);
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) {
    CHECK(r.projection_error <= r.interpolation_error);
    CHECK(r.projection_error > 0.0);
  }
  CHECK(rows[1].interpolation_error < rows[0].interpolation_error);

  const auto again = noise_transfer_study(1, 5, cfg, {2, 3}, 4, 11, 3);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].interpolation_error == again[i].interpolation_error);
    CHECK(rows[i].projection_error == again[i].projection_error);
  }
}

TEST_CASE("constant-mode L = 0 noise is exact in both transfer modes") {
  SolverConfig cfg;
  cfg.tol = 1e-12;
  const auto rows = noise_transfer_study(0, 5, cfg, {2}, 2, 13, 1);
  CHECK(rows[0].interpolation_error <= 1e-9);
  CHECK(rows[0].projection_error <= 1e-9);
}
