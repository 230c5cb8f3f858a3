#include "spheregrf/mesh.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace spheregrf {

namespace {

TriangleGeometry triangle_geometry(const Vec3& p0, const Vec3& p1, const Vec3& p2) {
  TriangleGeometry g;
  const Vec3 e01 = p1 - p0;
  const Vec3 e02 = p2 - p0;
  const Vec3 cr = e01.cross(e02);
  const double twice_area = cr.norm();
  g.area = 0.5 * twice_area;
  g.normal = cr / twice_area;
  // P1 hat gradients: grad[i] = n x (opposite edge) / (2A), in the triangle plane.
  g.grad[0] = g.normal.cross(p2 - p1) / twice_area;
  g.grad[1] = g.normal.cross(p0 - p2) / twice_area;
  g.grad[2] = g.normal.cross(p1 - p0) / twice_area;
  return g;
}

} // namespace

TriangleMesh::TriangleMesh(std::vector<Vec3> vertices,
                           std::vector<std::array<VertexId, 3>> triangles, int level)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)), level_(level) {
  geometry_.reserve(triangles_.size());
  for (const auto& t : triangles_) {
    const TriangleGeometry g =
        triangle_geometry(vertex(t[0]), vertex(t[1]), vertex(t[2]));
    if (!(g.area > 0.0))
      throw std::runtime_error("TriangleMesh: degenerate triangle");
    geometry_.push_back(g);
  }
  std::map<std::pair<VertexId, VertexId>, int> edge_count;
  for (const auto& t : triangles_)
    for (int e = 0; e < 3; ++e) {
      const VertexId a = t[static_cast<std::size_t>(e)];
      const VertexId b = t[static_cast<std::size_t>((e + 1) % 3)];
      ++edge_count[{std::min(a, b), std::max(a, b)}];
    }
  n_edges_ = edge_count.size();
}

double TriangleMesh::total_flat_area() const {
  double area = 0.0;
  for (const auto& g : geometry_)
    area += g.area;
  return area;
}

void TriangleMesh::validate() const {
  for (const auto& v : vertices_)
    if (std::abs(v.norm() - 1.0) > 1e-12)
      throw std::runtime_error("mesh vertex off the unit sphere");
  for (std::size_t i = 0; i < triangles_.size(); ++i) {
    const auto& t = triangles_[i];
    const auto& g = geometry_[i];
    if (!(g.area > 0.0))
      throw std::runtime_error("degenerate triangle");
    const Vec3 centroid = (vertex(t[0]) + vertex(t[1]) + vertex(t[2])) / 3.0;
    if (!(g.normal.dot(centroid) > 0.0))
      throw std::runtime_error("inward-facing triangle");
  }
  // Each undirected edge must be traversed exactly once in each direction.
  std::map<std::pair<VertexId, VertexId>, int> directed;
  for (const auto& t : triangles_)
    for (int e = 0; e < 3; ++e) {
      const VertexId a = t[static_cast<std::size_t>(e)];
      const VertexId b = t[static_cast<std::size_t>((e + 1) % 3)];
      if (a == b)
        throw std::runtime_error("triangle with repeated vertex");
      if (++directed[{a, b}] > 1)
        throw std::runtime_error("edge traversed twice in the same direction");
    }
  std::map<std::pair<VertexId, VertexId>, int> undirected;
  for (const auto& [edge, count] : directed)
    ++undirected[{std::min(edge.first, edge.second), std::max(edge.first, edge.second)}];
  for (const auto& [edge, count] : undirected)
    if (count != 2)
      throw std::runtime_error("edge not shared by exactly two triangles");
  const auto v = static_cast<long>(n_vertices());
  const auto e = static_cast<long>(undirected.size());
  const auto f = static_cast<long>(n_triangles());
  if (v - e + f != 2)
    throw std::runtime_error("Euler characteristic != 2");
}

Vec3 project_to_sphere(const Vec3& x) {
  const double r = x.norm();
  if (r <= 1e-14)
    throw std::domain_error("project_to_sphere: point too close to the origin");
  return x / r;
}

TriangleMesh icosphere(int level) {
  if (level < 0 || level > 10)
    throw std::invalid_argument("icosphere: level must be in [0, 10]");

  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> verts = {
      {-1, t, 0}, {1, t, 0},   {-1, -t, 0}, {1, -t, 0}, {0, -1, t},  {0, 1, t},
      {0, -1, -t}, {0, 1, -t}, {t, 0, -1},  {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
  for (auto& v : verts)
    v = project_to_sphere(v);

  std::vector<std::array<VertexId, 3>> faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};

  for (int i = 0; i < level; ++i) {
    // Midpoint indices keyed by the undirected parent edge, so shared edges
    // dedupe exactly and the result is independent of traversal order.
    std::map<std::pair<VertexId, VertexId>, VertexId> midpoint;
    auto mid = [&](VertexId a, VertexId b) -> VertexId {
      const auto key = std::make_pair(std::min(a, b), std::max(a, b));
      auto it = midpoint.find(key);
      if (it != midpoint.end())
        return it->second;
      const auto asz = static_cast<std::size_t>(a);
      const auto bsz = static_cast<std::size_t>(b);
      verts.push_back(project_to_sphere((verts[asz] + verts[bsz]) * 0.5));
      const auto id = static_cast<VertexId>(verts.size() - 1);
      midpoint.emplace(key, id);
      return id;
    };
    std::vector<std::array<VertexId, 3>> next;
    next.reserve(faces.size() * 4);
    for (const auto& f : faces) {
      const VertexId ab = mid(f[0], f[1]);
      const VertexId bc = mid(f[1], f[2]);
      const VertexId ca = mid(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }

  return TriangleMesh(std::move(verts), std::move(faces), level);
}

MeshSize mesh_size(const TriangleMesh& mesh) {
  MeshSize s;
  const auto& tris = mesh.triangles();
  const auto& geo = mesh.geometry();
  for (std::size_t i = 0; i < tris.size(); ++i) {
    const Vec3& p0 = mesh.vertex(tris[i][0]);
    const Vec3& p1 = mesh.vertex(tris[i][1]);
    const Vec3& p2 = mesh.vertex(tris[i][2]);
    const double a = (p1 - p2).norm();
    const double b = (p2 - p0).norm();
    const double c = (p0 - p1).norm();
    const double semi = 0.5 * (a + b + c);
    s.h_inball = std::max(s.h_inball, geo[i].area / semi);
    s.h_diam = std::max(s.h_diam, std::max(a, std::max(b, c)));
  }
  return s;
}

TriangleRule triangle_quadrature(int order) {
  TriangleRule rule;
  switch (order) {
  case 1:
    rule.points = {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}};
    rule.weights = {1.0};
    break;
  case 2:
    rule.points = {{0.5, 0.5, 0.0}, {0.0, 0.5, 0.5}, {0.5, 0.0, 0.5}};
    rule.weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    break;
  case 5: {
    // 7-point degree-5 rule (Radon/Hammer), weights normalized to 1.
    const double a1 = 0.059715871789770;
    const double b1 = 0.470142064105115;
    const double a2 = 0.797426985353087;
    const double b2 = 0.101286507323456;
    const double w1 = (155.0 + std::sqrt(15.0)) / 1200.0;
    const double w2 = (155.0 - std::sqrt(15.0)) / 1200.0;
    rule.points = {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0},
                   {a1, b1, b1},
                   {b1, a1, b1},
                   {b1, b1, a1},
                   {a2, b2, b2},
                   {b2, a2, b2},
                   {b2, b2, a2}};
    rule.weights = {9.0 / 40.0, w1, w1, w1, w2, w2, w2};
    break;
  }
  default:
    throw std::invalid_argument("triangle_quadrature: unsupported order " +
                                std::to_string(order));
  }
  return rule;
}

std::string mesh_summary(const TriangleMesh& mesh) {
  const MeshSize s = mesh_size(mesh);
  char buf[160];
  std::snprintf(buf, sizeof(buf), "level=%d V=%zu F=%zu h_inball=%.6f h_diam=%.6f",
                mesh.level(), mesh.n_vertices(), mesh.n_triangles(), s.h_inball, s.h_diam);
  return buf;
}

} // namespace spheregrf
