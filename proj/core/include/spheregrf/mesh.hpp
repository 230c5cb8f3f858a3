#ifndef SPHEREGRF_MESH_HPP
#define SPHEREGRF_MESH_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "spheregrf/geometry.hpp"

namespace spheregrf {

using VertexId = std::int32_t;

/// Per-triangle data used by assembly and quadrature: flat area, outward
/// unit normal, and the in-plane gradients of the three P1 hat functions.
struct TriangleGeometry {
  double area = 0.0;
  Vec3 normal;
  std::array<Vec3, 3> grad;
};

/// Polyhedral approximation of the unit sphere. Vertices lie on the sphere,
/// triangles are counterclockwise seen from outside. Immutable once built;
/// safe for concurrent reads.
class TriangleMesh {
public:
  TriangleMesh(std::vector<Vec3> vertices, std::vector<std::array<VertexId, 3>> triangles,
               int level);

  std::size_t n_vertices() const { return vertices_.size(); }
  std::size_t n_triangles() const { return triangles_.size(); }
  int level() const { return level_; }

  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<std::array<VertexId, 3>>& triangles() const { return triangles_; }
  const std::vector<TriangleGeometry>& geometry() const { return geometry_; }

  const Vec3& vertex(VertexId i) const { return vertices_[static_cast<std::size_t>(i)]; }

  /// Number of undirected edges (computed once at construction).
  std::size_t n_edges() const { return n_edges_; }

  double total_flat_area() const;

  /// Full manifold validation: unit vertices, positive areas, consistent
  /// outward orientation, every edge shared by exactly two triangles with
  /// opposite traversal, Euler characteristic 2. Throws std::runtime_error
  /// on the first violation.
  void validate() const;

private:
  std::vector<Vec3> vertices_;
  std::vector<std::array<VertexId, 3>> triangles_;
  std::vector<TriangleGeometry> geometry_;
  std::size_t n_edges_ = 0;
  int level_ = 0;
};

/// Radial projection p(x) = x / ||x|| onto the unit sphere.
/// Throws std::domain_error for ||x|| <= 1e-14.
Vec3 project_to_sphere(const Vec3& x);

/// Icosahedral triangulation of the sphere refined `level` times by
/// edge-midpoint subdivision with immediate radial projection of the new
/// vertices. Throws std::invalid_argument for level outside [0, 10].
TriangleMesh icosphere(int level);

struct MeshSize {
  double h_inball = 0.0; // max over triangles of the flat in-circle radius
  double h_diam = 0.0;   // max over triangles of the longest edge
};

MeshSize mesh_size(const TriangleMesh& mesh);

/// Quadrature rule on the reference triangle in barycentric coordinates.
/// Weights sum to one; integrals of a function f over a flat triangle are
/// area * sum_i w_i f(x_i).
struct TriangleRule {
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;
};

/// Supported orders: 1 (centroid), 2 (edge midpoints), 5 (7-point rule).
/// Throws std::invalid_argument otherwise.
TriangleRule triangle_quadrature(int order);

/// One-line mesh summary: level, V, F, h_inball, h_diam.
std::string mesh_summary(const TriangleMesh& mesh);

} // namespace spheregrf

#endif
