#ifndef SPHEREGRF_ASSEMBLE_HPP
#define SPHEREGRF_ASSEMBLE_HPP

#include <vector>

#include "spheregrf/mesh.hpp"
#include "spheregrf/sparse.hpp"

namespace spheregrf {

/// Nodal coefficient vector over mesh vertices; represents a P1 function on
/// the polyhedral sphere (and, through the shared nodes, its lift).
/// Non-owning mesh handle: the mesh must outlive the field.
class FemField {
public:
  FemField() = default;
  FemField(const TriangleMesh& mesh, std::vector<double> values);
  explicit FemField(const TriangleMesh& mesh);

  const TriangleMesh& mesh() const { return *mesh_; }
  bool same_mesh(const TriangleMesh& mesh) const { return mesh_ == &mesh; }

  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

private:
  const TriangleMesh* mesh_ = nullptr;
  std::vector<double> values_;
};

/// Consistent P1 mass matrix on the flat triangles:
/// local block (area / 12) * [[2,1,1],[1,2,1],[1,1,2]].
SparseSymmetricMatrix assemble_mass(const TriangleMesh& mesh);

/// P1 stiffness matrix from the flat per-triangle hat gradients. Symmetric
/// positive semidefinite with constants in the kernel.
SparseSymmetricMatrix assemble_stiffness(const TriangleMesh& mesh);

/// c0 * M + c1 * S for pre-assembled mass and stiffness on the same mesh.
/// Rejects c0 = c1 = 0.
SparseSymmetricMatrix helmholtz_matrix(const SparseSymmetricMatrix& mass,
                                       const SparseSymmetricMatrix& stiffness, double c0,
                                       double c1);

/// f^T M g over the polyhedral surface. Throws on a mesh mismatch.
double l2_inner(const TriangleMesh& mesh, const SparseSymmetricMatrix& mass,
                const FemField& f, const FemField& g);

} // namespace spheregrf

#endif
