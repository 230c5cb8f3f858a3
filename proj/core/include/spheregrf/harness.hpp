#ifndef SPHEREGRF_HARNESS_HPP
#define SPHEREGRF_HARNESS_HPP

#include <cstdint>
#include <vector>

#include "spheregrf/fractional.hpp"
#include "spheregrf/harmonics.hpp"
#include "spheregrf/mesh.hpp"

namespace spheregrf {

/// One level of a convergence study. pairwise_rate is log2(e_i / e_{i+1})
/// against the next row; NaN on the last row.
struct ConvergenceRow {
  int level = 0;
  double h_inball = 0.0;
  double h_diam = 0.0;
  std::size_t n_vertices = 0;
  double strong_error = 0.0;
  double pairwise_rate = 0.0;
};

/// Lifted L2(S^2) distance between a FEM field and a spectral reference:
/// triangle-wise quadrature of (reference at the lifted point - P1 value at
/// the flat point)^2 with the radial-lift area factor.
double lifted_l2_error(const TriangleMesh& mesh, const FemField& fem,
                       const HarmonicCoeffs& reference, int order);

/// Root-mean-square of per-sample lifted errors over `n_samples` draws per
/// level, with the same per-sample seeds across levels (common random
/// numbers). Samples are distributed over `workers` threads; accumulation is
/// in fixed sample order, so results do not depend on the worker count.
std::vector<ConvergenceRow> monte_carlo_strong_error(const ModelParams& params,
                                                     const std::vector<int>& levels,
                                                     int n_samples,
                                                     std::uint64_t base_seed,
                                                     unsigned workers = 0);

/// Ordinary least-squares slope of log(strong_error) against log(h_inball).
double fit_rate(const std::vector<ConvergenceRow>& rows);

/// Generic slope fit for study CSVs (e.g. log error against 1/k).
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Per-level noise-transfer errors, Monte Carlo averaged with common seeds:
/// lifted L2 distance of interpolated and projected noise to the spectral
/// white-noise expansion itself.
struct NoiseStudyRow {
  int level = 0;
  double h_inball = 0.0;
  std::size_t n_vertices = 0;
  double interpolation_error = 0.0;
  double projection_error = 0.0;
};

std::vector<NoiseStudyRow> noise_transfer_study(int degree_cap, int quad_order,
                                                const SolverConfig& cfg,
                                                const std::vector<int>& levels,
                                                int n_samples, std::uint64_t base_seed,
                                                unsigned workers = 0);

} // namespace spheregrf

#endif
