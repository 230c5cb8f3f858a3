#include "spheregrf/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "spheregrf/noise.hpp"

namespace spheregrf {

double lifted_l2_error(const TriangleMesh& mesh, const FemField& fem,
                       const HarmonicCoeffs& reference, int order) {
  if (!fem.same_mesh(mesh))
    throw std::invalid_argument("lifted_l2_error: field/mesh mismatch");
  const TriangleRule rule = triangle_quadrature(order);
  ExpansionEvaluator ref(reference);
  const auto& tris = mesh.triangles();
  const auto& geo = mesh.geometry();
  double acc = 0.0;
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const Vec3& p0 = mesh.vertex(tris[t][0]);
    const Vec3& p1 = mesh.vertex(tris[t][1]);
    const Vec3& p2 = mesh.vertex(tris[t][2]);
    const double f0 = fem[static_cast<std::size_t>(tris[t][0])];
    const double f1 = fem[static_cast<std::size_t>(tris[t][1])];
    const double f2 = fem[static_cast<std::size_t>(tris[t][2])];
    double local = 0.0;
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const auto& bc = rule.points[q];
      const Vec3 x = p0 * bc[0] + p1 * bc[1] + p2 * bc[2];
      const double r = x.norm();
      const double jac = x.dot(geo[t].normal) / (r * r * r);
      const double diff = ref(x / r) - (bc[0] * f0 + bc[1] * f1 + bc[2] * f2);
      local += rule.weights[q] * jac * diff * diff;
    }
    acc += local * geo[t].area;
  }
  return std::sqrt(acc);
}

namespace {

/// Runs fn(sample_index) for 0..n-1 on `workers` threads. Work is handed out
/// by an atomic counter; fn must write results only into per-sample slots.
void parallel_samples(int n, unsigned workers, const std::function<void(int)>& fn) {
  unsigned count = workers != 0 ? workers : std::thread::hardware_concurrency();
  if (count == 0)
    count = 1;
  count = std::min<unsigned>(count, static_cast<unsigned>(n) > 0 ? static_cast<unsigned>(n) : 1);
  if (count <= 1) {
    for (int i = 0; i < n; ++i)
      fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(count);
  for (unsigned w = 0; w < count; ++w)
    pool.emplace_back([&] {
      while (true) {
        const int i = next.fetch_add(1);
        if (i >= n)
          return;
        try {
          fn(i);
        } catch (...) {
          std::scoped_lock lock(error_mutex);
          if (!error)
            error = std::current_exception();
          return;
        }
      }
    });
  for (auto& t : pool)
    t.join();
  if (error)
    std::rethrow_exception(error);
}

void attach_pairwise_rates(std::vector<ConvergenceRow>& rows) {
  for (std::size_t i = 0; i < rows.size(); ++i)
    rows[i].pairwise_rate =
        i + 1 < rows.size()
            ? std::log2(rows[i].strong_error / rows[i + 1].strong_error)
            : std::numeric_limits<double>::quiet_NaN();
}

} // namespace

std::vector<ConvergenceRow> monte_carlo_strong_error(const ModelParams& params,
                                                     const std::vector<int>& levels,
                                                     int n_samples,
                                                     std::uint64_t base_seed,
                                                     unsigned workers) {
  params.validate();
  if (n_samples < 1)
    throw std::invalid_argument("monte_carlo_strong_error: need at least one sample");
  if (levels.empty())
    throw std::invalid_argument("monte_carlo_strong_error: empty level list");

  std::vector<ConvergenceRow> rows;
  rows.reserve(levels.size());
  for (int level : levels) {
    const TriangleMesh mesh = icosphere(level);
    const FieldSampler sampler(mesh, params);
    std::vector<double> squared(static_cast<std::size_t>(n_samples), 0.0);
    parallel_samples(n_samples, workers, [&](int i) {
      const SampleResult s = sampler.sample(static_cast<std::uint64_t>(i), base_seed);
      const double err = lifted_l2_error(mesh, s.fem, s.spectral, 5);
      squared[static_cast<std::size_t>(i)] = err * err;
    });
    double mean = 0.0;
    for (double e2 : squared) // fixed sample order, independent of scheduling
      mean += e2;
    mean /= static_cast<double>(n_samples);

    const MeshSize size = mesh_size(mesh);
    ConvergenceRow row;
    row.level = level;
    row.h_inball = size.h_inball;
    row.h_diam = size.h_diam;
    row.n_vertices = mesh.n_vertices();
    row.strong_error = std::sqrt(mean);
    rows.push_back(row);
  }
  attach_pairwise_rates(rows);
  return rows;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_slope: need two or more points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0)
    throw std::invalid_argument("fit_slope: abscissae are all identical");
  return sxy / sxx;
}

double fit_rate(const std::vector<ConvergenceRow>& rows) {
  std::vector<double> logh, loge;
  logh.reserve(rows.size());
  loge.reserve(rows.size());
  for (const auto& r : rows) {
    logh.push_back(std::log(r.h_inball));
    loge.push_back(std::log(r.strong_error));
  }
  return fit_slope(logh, loge);
}

std::vector<NoiseStudyRow> noise_transfer_study(int degree_cap, int quad_order,
                                                const SolverConfig& cfg,
                                                const std::vector<int>& levels,
                                                int n_samples, std::uint64_t base_seed,
                                                unsigned workers) {
  if (n_samples < 1)
    throw std::invalid_argument("noise_transfer_study: need at least one sample");
  std::vector<NoiseStudyRow> rows;
  rows.reserve(levels.size());
  for (int level : levels) {
    const TriangleMesh mesh = icosphere(level);
    std::vector<double> interp2(static_cast<std::size_t>(n_samples), 0.0);
    std::vector<double> proj2(static_cast<std::size_t>(n_samples), 0.0);
    parallel_samples(n_samples, workers, [&](int i) {
      GaussianSampler rng(sample_seed(base_seed, static_cast<std::uint64_t>(i)));
      const HarmonicCoeffs coeffs = sample_white_noise(degree_cap, rng);
      const FemField interp = interpolate_noise(coeffs, mesh);
      const FemField proj = project_noise(coeffs, mesh, quad_order, cfg);
      const double ei = lifted_l2_error(mesh, interp, coeffs, 5);
      const double ep = lifted_l2_error(mesh, proj, coeffs, 5);
      interp2[static_cast<std::size_t>(i)] = ei * ei;
      proj2[static_cast<std::size_t>(i)] = ep * ep;
    });
    double mi = 0.0, mp = 0.0;
    for (int i = 0; i < n_samples; ++i) {
      mi += interp2[static_cast<std::size_t>(i)];
      mp += proj2[static_cast<std::size_t>(i)];
    }
    NoiseStudyRow row;
    row.level = level;
    row.h_inball = mesh_size(mesh).h_inball;
    row.n_vertices = mesh.n_vertices();
    row.interpolation_error = std::sqrt(mi / static_cast<double>(n_samples));
    row.projection_error = std::sqrt(mp / static_cast<double>(n_samples));
    rows.push_back(row);
  }
  return rows;
}

} // namespace spheregrf
