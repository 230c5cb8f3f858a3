#include "spheregrf/assemble.hpp"

#include <stdexcept>

namespace spheregrf {

FemField::FemField(const TriangleMesh& mesh, std::vector<double> values)
    : mesh_(&mesh), values_(std::move(values)) {
  if (values_.size() != mesh.n_vertices())
    throw std::invalid_argument("FemField: coefficient count != vertex count");
}

FemField::FemField(const TriangleMesh& mesh)
    : mesh_(&mesh), values_(mesh.n_vertices(), 0.0) {}

SparseSymmetricMatrix assemble_mass(const TriangleMesh& mesh) {
  SparseBuilder builder(mesh.n_vertices());
  const auto& tris = mesh.triangles();
  const auto& geo = mesh.geometry();
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const double a12 = geo[t].area / 12.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        builder.add(tris[t][static_cast<std::size_t>(i)],
                    tris[t][static_cast<std::size_t>(j)], (i == j ? 2.0 : 1.0) * a12);
  }
  return builder.build();
}

SparseSymmetricMatrix assemble_stiffness(const TriangleMesh& mesh) {
  SparseBuilder builder(mesh.n_vertices());
  const auto& tris = mesh.triangles();
  const auto& geo = mesh.geometry();
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const auto& g = geo[t];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        builder.add(tris[t][static_cast<std::size_t>(i)],
                    tris[t][static_cast<std::size_t>(j)],
                    g.area * g.grad[static_cast<std::size_t>(i)].dot(
                                 g.grad[static_cast<std::size_t>(j)]));
  }
  return builder.build();
}

SparseSymmetricMatrix helmholtz_matrix(const SparseSymmetricMatrix& mass,
                                       const SparseSymmetricMatrix& stiffness, double c0,
                                       double c1) {
  if (c0 < 0.0 || c1 < 0.0)
    throw std::invalid_argument("helmholtz_matrix: negative coefficient");
  if (c0 == 0.0 && c1 == 0.0)
    throw std::invalid_argument("helmholtz_matrix: c0 = c1 = 0");
  return SparseSymmetricMatrix::combine(mass, stiffness, c0, c1);
}

double l2_inner(const TriangleMesh& mesh, const SparseSymmetricMatrix& mass,
                const FemField& f, const FemField& g) {
  if (!f.same_mesh(mesh) || !g.same_mesh(mesh))
    throw std::invalid_argument("l2_inner: field/mesh mismatch");
  if (mass.dim() != mesh.n_vertices())
    throw std::invalid_argument("l2_inner: mass matrix does not match mesh");
  std::vector<double> mg(g.size());
  mass.multiply(g.values(), mg);
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    acc += f[i] * mg[i];
  return acc;
}

} // namespace spheregrf
