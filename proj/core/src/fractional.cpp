#include "spheregrf/fractional.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "spheregrf/spectral.hpp"

namespace spheregrf {

double SincQuadrature::weight(long l) const {
  return (2.0 * k * std::sin(std::numbers::pi * beta_frac) / std::numbers::pi) *
         std::exp(2.0 * beta_frac * node(l));
}

SincQuadrature sinc_nodes(double beta_frac, double k) {
  if (!(beta_frac > 0.0 && beta_frac < 1.0))
    throw std::invalid_argument(
        "sinc_nodes: fractional exponent must lie in (0,1); integer beta takes the "
        "non-fractional bypass");
  if (!(k > 0.0))
    throw std::invalid_argument("sinc_nodes: step size must be positive");
  const double pi2 = std::numbers::pi * std::numbers::pi;
  SincQuadrature q;
  q.k = k;
  q.beta_frac = beta_frac;
  q.k_plus = static_cast<long>(std::ceil(pi2 / (4.0 * (1.0 - beta_frac) * k * k)));
  q.k_minus = static_cast<long>(std::ceil(pi2 / (4.0 * beta_frac * k * k)));
  return q;
}

int ModelParams::floor_beta() const { return spheregrf::floor_beta(beta); }
double ModelParams::frac_beta() const { return spheregrf::frac_beta(beta); }

void ModelParams::validate() const {
  if (!(beta > 0.5))
    throw std::invalid_argument("ModelParams: beta must exceed 1/2");
  if (!(kappa > 0.0))
    throw std::invalid_argument("ModelParams: kappa must be positive");
  if (degree_cap < 0)
    throw std::invalid_argument("ModelParams: degree cap must be nonnegative");
  if (!(k > 0.0))
    throw std::invalid_argument("ModelParams: quadrature step must be positive");
  noise.validate();
  solver.validate();
}

FemField solve_recursion(const TriangleMesh& mesh, const SparseSymmetricMatrix& mass,
                         const SparseSymmetricMatrix& stiffness, const FemField& field,
                         int floor_count, double kappa, const SolverConfig& cfg,
                         SolveStats* stats) {
  if (floor_count < 0)
    throw std::invalid_argument("solve_recursion: negative recursion count");
  if (!field.same_mesh(mesh))
    throw std::invalid_argument("solve_recursion: field/mesh mismatch");
  if (floor_count == 0)
    return field;

  const SparseSymmetricMatrix op =
      SparseSymmetricMatrix::combine(mass, stiffness, kappa * kappa, 1.0);
  std::vector<double> x = field.values();
  std::vector<double> rhs(x.size());
  for (int i = 1; i <= floor_count; ++i) {
    mass.multiply(x, rhs);
    try {
      x = solve_spd(op, rhs, cfg);
    } catch (const SolveFailure& f) {
      throw SolveFailure(f.residual(), f.iterations(),
                         "recursion step " + std::to_string(i) + ": " + f.what());
    }
    if (stats)
      ++stats->recursion;
  }
  return FemField(mesh, std::move(x));
}

FemField apply_fractional(const TriangleMesh& mesh, const SparseSymmetricMatrix& mass,
                          const SparseSymmetricMatrix& stiffness, const FemField& field,
                          const ModelParams& params, SolveStats* stats) {
  if (!field.same_mesh(mesh))
    throw std::invalid_argument("apply_fractional: field/mesh mismatch");
  const double fb = params.frac_beta();
  if (fb == 0.0)
    return field;

  const SincQuadrature quad = sinc_nodes(fb, params.k);
  const double weight_scale =
      2.0 * params.k * std::sin(std::numbers::pi * fb) / std::numbers::pi;
  const double kappa2 = params.kappa * params.kappa;

  std::vector<double> rhs(field.size());
  mass.multiply(field.values(), rhs);

  SparseSymmetricMatrix op; // node matrices share one skeleton, values refilled
  std::vector<double> acc(field.size(), 0.0);
  std::vector<double> prev;
  for (long l = -quad.k_minus; l <= quad.k_plus; ++l) {
    const double y = quad.node(l);
    // The subproblem matrix (1 + e^{2y} kappa^2) M + e^{2y} S is scaled by
    // e^{-2y} on the positive side so assembled values stay O(1); the
    // solution picks the inverse scale back up in the accumulation weight.
    double c0, c1, solution_scale;
    if (y > 0.0) {
      c0 = std::exp(-2.0 * y) + kappa2;
      c1 = 1.0;
      solution_scale = weight_scale * std::exp(-2.0 * (1.0 - fb) * y);
    } else {
      const double s = std::exp(2.0 * y);
      c0 = 1.0 + s * kappa2;
      c1 = s;
      solution_scale = weight_scale * std::exp(2.0 * fb * y);
    }
    op.fill_combination(mass, stiffness, c0, c1);
    std::vector<double> x;
    try {
      x = solve_spd(op, rhs, params.solver,
                    params.warm_start && !prev.empty() ? &prev : nullptr);
    } catch (const SolveFailure& f) {
      throw SolveFailure(f.residual(), f.iterations(),
                         "sinc node " + std::to_string(l) + ": " + f.what());
    }
    if (stats)
      ++stats->subproblem;
    for (std::size_t i = 0; i < acc.size(); ++i)
      acc[i] += solution_scale * x[i];
    if (params.warm_start)
      prev = std::move(x);
  }
  return FemField(mesh, std::move(acc));
}

FieldSampler::FieldSampler(const TriangleMesh& mesh, const ModelParams& params)
    : mesh_(&mesh), params_(params), mass_(assemble_mass(mesh)),
      stiffness_(assemble_stiffness(mesh)) {
  params_.validate();
}

SampleResult FieldSampler::sample(std::uint64_t sample_index,
                                  std::uint64_t base_seed) const {
  GaussianSampler rng(sample_seed(base_seed, sample_index));
  SampleResult result;
  result.noise = sample_white_noise(params_.degree_cap, rng);

  FemField noise_field = transfer_noise(result.noise, *mesh_, params_.noise, params_.solver);
  if (params_.noise.kind == NoiseMode::Kind::Project)
    ++result.stats.noise;

  FemField recursed = solve_recursion(*mesh_, mass_, stiffness_, noise_field,
                                      params_.floor_beta(), params_.kappa, params_.solver,
                                      &result.stats);
  result.fem =
      apply_fractional(*mesh_, mass_, stiffness_, recursed, params_, &result.stats);
  result.spectral = spectral_solution(result.noise, params_.beta, params_.kappa);
  return result;
}

SampleResult sample_field(const TriangleMesh& mesh, const ModelParams& params,
                          std::uint64_t sample_index, std::uint64_t base_seed) {
  return FieldSampler(mesh, params).sample(sample_index, base_seed);
}

} // namespace spheregrf
