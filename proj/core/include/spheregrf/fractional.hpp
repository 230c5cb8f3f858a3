#ifndef SPHEREGRF_FRACTIONAL_HPP
#define SPHEREGRF_FRACTIONAL_HPP

#include <cstdint>

#include "spheregrf/assemble.hpp"
#include "spheregrf/harmonics.hpp"
#include "spheregrf/mesh.hpp"
#include "spheregrf/noise.hpp"
#include "spheregrf/solver.hpp"

namespace spheregrf {

/// Equispaced exponential node grid y_l = k l, l = -K^-..K^+, with weights
/// (2 k sin(pi b) / pi) exp(2 b y_l) for the fractional exponent b.
struct SincQuadrature {
  double k = 0.0;
  double beta_frac = 0.0;
  long k_plus = 0;
  long k_minus = 0;

  long node_count() const { return k_plus + k_minus + 1; }
  double node(long l) const { return k * static_cast<double>(l); }
  double weight(long l) const;
};

/// Node counts K^+ = ceil(pi^2 / (4 (1-b) k^2)), K^- = ceil(pi^2 / (4 b k^2)).
/// Rejects b outside (0,1): integer exponents take the non-fractional bypass.
SincQuadrature sinc_nodes(double beta_frac, double k);

struct ModelParams {
  double beta = 0.75;
  double kappa = 1.0;
  int degree_cap = 1; // white-noise truncation degree L
  double k = 0.5;     // sinc quadrature step
  NoiseMode noise;
  SolverConfig solver;
  bool warm_start = false; // reuse the previous node's solution as CG start

  int floor_beta() const;
  double frac_beta() const;
  void validate() const;
};

/// Linear solves actually performed for one sample, split by pipeline stage.
struct SolveStats {
  std::int64_t recursion = 0;  // non-fractional recursion solves
  std::int64_t subproblem = 0; // sinc-node subproblem solves
  std::int64_t noise = 0;      // projection Gram solves
};

/// Applies (kappa^2 M + S)^{-1} M to the nodal vector `floor_count` times.
FemField solve_recursion(const TriangleMesh& mesh, const SparseSymmetricMatrix& mass,
                         const SparseSymmetricMatrix& stiffness, const FemField& field,
                         int floor_count, double kappa, const SolverConfig& cfg,
                         SolveStats* stats = nullptr);

/// Sinc-quadrature combination of the shifted Helmholtz solves:
/// sum_l w_l x_l with ((1 + e^{2 y_l} kappa^2) M + e^{2 y_l} S) x_l = M field.
/// Identity for integer beta. Nodes are processed in ascending l; the
/// weighted sum uses that fixed order.
FemField apply_fractional(const TriangleMesh& mesh, const SparseSymmetricMatrix& mass,
                          const SparseSymmetricMatrix& stiffness, const FemField& field,
                          const ModelParams& params, SolveStats* stats = nullptr);

struct SampleResult {
  FemField fem;            // full SFEM pipeline output
  HarmonicCoeffs spectral; // exact spectral solution from the same noise
  HarmonicCoeffs noise;    // the white-noise draw itself
  SolveStats stats;
};

/// Caches the assembled matrices so Monte Carlo loops pay assembly once.
class FieldSampler {
public:
  FieldSampler(const TriangleMesh& mesh, const ModelParams& params);

  SampleResult sample(std::uint64_t sample_index, std::uint64_t base_seed) const;

  const SparseSymmetricMatrix& mass() const { return mass_; }
  const SparseSymmetricMatrix& stiffness() const { return stiffness_; }

private:
  const TriangleMesh* mesh_;
  ModelParams params_;
  SparseSymmetricMatrix mass_;
  SparseSymmetricMatrix stiffness_;
};

/// One-shot variant of FieldSampler::sample for callers without a cache.
SampleResult sample_field(const TriangleMesh& mesh, const ModelParams& params,
                          std::uint64_t sample_index, std::uint64_t base_seed);

} // namespace spheregrf

#endif
