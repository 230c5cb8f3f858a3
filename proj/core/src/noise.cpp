#include "spheregrf/noise.hpp"

#include <stdexcept>

namespace spheregrf {

void NoiseMode::validate() const {
  if (kind == Kind::Project && quad_order != 2 && quad_order != 5)
    throw std::invalid_argument("NoiseMode: projection quadrature order must be 2 or 5");
}

HarmonicCoeffs sample_white_noise(int degree_cap, GaussianSampler& rng) {
  if (degree_cap < 0)
    throw std::invalid_argument("sample_white_noise: negative degree cap");
  HarmonicCoeffs coeffs(degree_cap);
  for (auto& c : coeffs.values())
    c = rng();
  return coeffs;
}

FemField interpolate_noise(const HarmonicCoeffs& coeffs, const TriangleMesh& mesh) {
  return FemField(mesh, eval_expansion(coeffs, mesh.vertices()));
}

SparseSymmetricMatrix lifted_gram_matrix(const TriangleMesh& mesh, int order) {
  const TriangleRule rule = triangle_quadrature(order);
  SparseBuilder builder(mesh.n_vertices());
  const auto& tris = mesh.triangles();
  const auto& geo = mesh.geometry();
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const Vec3& p0 = mesh.vertex(tris[t][0]);
    const Vec3& p1 = mesh.vertex(tris[t][1]);
    const Vec3& p2 = mesh.vertex(tris[t][2]);
    double local[3][3] = {};
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const auto& bc = rule.points[q];
      const Vec3 x = p0 * bc[0] + p1 * bc[1] + p2 * bc[2];
      const double r = x.norm();
      const double jac = x.dot(geo[t].normal) / (r * r * r);
      const double w = rule.weights[q] * jac * geo[t].area;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          local[i][j] += w * bc[static_cast<std::size_t>(i)] * bc[static_cast<std::size_t>(j)];
    }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        builder.add(tris[t][static_cast<std::size_t>(i)],
                    tris[t][static_cast<std::size_t>(j)], local[i][j]);
  }
  return builder.build();
}

std::vector<double> lifted_noise_load(const HarmonicCoeffs& coeffs,
                                      const TriangleMesh& mesh, int order) {
  const TriangleRule rule = triangle_quadrature(order);
  std::vector<double> load(mesh.n_vertices(), 0.0);
  ExpansionEvaluator noise(coeffs);
  const auto& tris = mesh.triangles();
  const auto& geo = mesh.geometry();
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const Vec3& p0 = mesh.vertex(tris[t][0]);
    const Vec3& p1 = mesh.vertex(tris[t][1]);
    const Vec3& p2 = mesh.vertex(tris[t][2]);
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const auto& bc = rule.points[q];
      const Vec3 x = p0 * bc[0] + p1 * bc[1] + p2 * bc[2];
      const double r = x.norm();
      const double jac = x.dot(geo[t].normal) / (r * r * r);
      const double w = rule.weights[q] * jac * geo[t].area * noise(x / r);
      for (int i = 0; i < 3; ++i)
        load[static_cast<std::size_t>(tris[t][static_cast<std::size_t>(i)])] +=
            w * bc[static_cast<std::size_t>(i)];
    }
  }
  return load;
}

FemField project_noise(const HarmonicCoeffs& coeffs, const TriangleMesh& mesh, int order,
                       const SolverConfig& cfg) {
  const SparseSymmetricMatrix gram = lifted_gram_matrix(mesh, order);
  const std::vector<double> load = lifted_noise_load(coeffs, mesh, order);
  return FemField(mesh, solve_spd(gram, load, cfg));
}

FemField transfer_noise(const HarmonicCoeffs& coeffs, const TriangleMesh& mesh,
                        const NoiseMode& mode, const SolverConfig& cfg) {
  mode.validate();
  if (mode.kind == NoiseMode::Kind::Interpolate)
    return interpolate_noise(coeffs, mesh);
  return project_noise(coeffs, mesh, mode.quad_order, cfg);
}

} // namespace spheregrf
