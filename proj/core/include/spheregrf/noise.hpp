#ifndef SPHEREGRF_NOISE_HPP
#define SPHEREGRF_NOISE_HPP

#include "spheregrf/assemble.hpp"
#include "spheregrf/harmonics.hpp"
#include "spheregrf/mesh.hpp"
#include "spheregrf/rng.hpp"
#include "spheregrf/solver.hpp"

namespace spheregrf {

/// How truncated white noise is transferred to the FEM space: nodal
/// interpolation or L2(S^2) orthogonal projection onto the lifted space.
struct NoiseMode {
  enum class Kind { Interpolate, Project };
  Kind kind = Kind::Project;
  int quad_order = 5; // projection quadrature order, 2 or 5

  static NoiseMode interpolate() { return {Kind::Interpolate, 5}; }
  static NoiseMode project(int order = 5) { return {Kind::Project, order}; }
  void validate() const;
};

/// (L+1)^2 i.i.d. standard normal coefficients for the truncated white
/// noise, drawn in coefficient order from the supplied generator.
HarmonicCoeffs sample_white_noise(int degree_cap, GaussianSampler& rng);

/// Nodal interpolation: field value at each vertex is the expansion there.
FemField interpolate_noise(const HarmonicCoeffs& coeffs, const TriangleMesh& mesh);

/// L2(S^2) projection onto the lifted hat functions: solves G c = b with
/// G the lifted Gram matrix and b_i the lifted pairing of the noise with
/// hat i, both integrated triangle-wise with the radial-lift area factor
/// (x . nu_h) / ||x||^3.
FemField project_noise(const HarmonicCoeffs& coeffs, const TriangleMesh& mesh, int order,
                       const SolverConfig& cfg = {});

/// Lifted Gram matrix of the hat functions over S^2 (exposed for reuse and
/// for the projection-orthogonality tests).
SparseSymmetricMatrix lifted_gram_matrix(const TriangleMesh& mesh, int order);

/// Right-hand side b_i = integral of the expansion against hat i over S^2.
std::vector<double> lifted_noise_load(const HarmonicCoeffs& coeffs,
                                      const TriangleMesh& mesh, int order);

/// Dispatch on the mode; the projection branch uses the given solver config.
FemField transfer_noise(const HarmonicCoeffs& coeffs, const TriangleMesh& mesh,
                        const NoiseMode& mode, const SolverConfig& cfg = {});

} // namespace spheregrf

#endif
