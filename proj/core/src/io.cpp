#include "spheregrf/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

namespace spheregrf {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw IoError("cannot open '" + path + "' for writing");
  return out;
}

// Shortest decimal form that round-trips to the same double.
std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void close_checked(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out)
    throw IoError("write failure on '" + path + "'");
}

} // namespace

void write_vtk(const std::string& path, const TriangleMesh& mesh, const FemField* field,
               const std::string& field_name) {
  if (field && !field->same_mesh(mesh))
    throw std::invalid_argument("write_vtk: field/mesh mismatch");
  auto out = open_out(path);
  out << "# vtk DataFile Version 3.0\n";
  out << "sphere-grf " << mesh_summary(mesh) << "\n";
  out << "ASCII\n";
  out << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.n_vertices() << " double\n";
  for (const auto& v : mesh.vertices())
    out << fmt(v.x) << " " << fmt(v.y) << " " << fmt(v.z) << "\n";
  out << "CELLS " << mesh.n_triangles() << " " << 4 * mesh.n_triangles() << "\n";
  for (const auto& t : mesh.triangles())
    out << "3 " << t[0] << " " << t[1] << " " << t[2] << "\n";
  out << "CELL_TYPES " << mesh.n_triangles() << "\n";
  for (std::size_t i = 0; i < mesh.n_triangles(); ++i)
    out << "5\n";
  if (field) {
    out << "POINT_DATA " << mesh.n_vertices() << "\n";
    out << "SCALARS " << field_name << " double 1\n";
    out << "LOOKUP_TABLE default\n";
    for (double v : field->values())
      out << fmt(v) << "\n";
  }
  close_checked(out, path);
}

void write_field_csv(const std::string& path, const TriangleMesh& mesh,
                     const FemField& field) {
  if (!field.same_mesh(mesh))
    throw std::invalid_argument("write_field_csv: field/mesh mismatch");
  auto out = open_out(path);
  out << "vertex,x,y,z,value\n";
  for (std::size_t i = 0; i < mesh.n_vertices(); ++i) {
    const Vec3& v = mesh.vertices()[i];
    out << i << "," << fmt(v.x) << "," << fmt(v.y) << "," << fmt(v.z) << ","
        << fmt(field[i]) << "\n";
  }
  close_checked(out, path);
}

void write_convergence_csv(const std::string& path, const std::vector<ConvergenceRow>& rows,
                           double beta, double kappa, double k, int degree_cap,
                           int n_samples) {
  auto out = open_out(path);
  out << "level,h_inball,h_diam,n_vertices,beta,kappa,k,L,n_samples,strong_error,"
         "pairwise_rate\n";
  for (const auto& r : rows) {
    out << r.level << "," << fmt(r.h_inball) << "," << fmt(r.h_diam) << ","
        << r.n_vertices << "," << fmt(beta) << "," << fmt(kappa) << "," << fmt(k) << ","
        << degree_cap << "," << n_samples << "," << fmt(r.strong_error) << ","
        << (std::isnan(r.pairwise_rate) ? std::string("nan") : fmt(r.pairwise_rate))
        << "\n";
  }
  close_checked(out, path);
}

void write_quadrature_csv(const std::string& path, const std::vector<double>& ks,
                          const std::vector<double>& errors) {
  if (ks.size() != errors.size())
    throw std::invalid_argument("write_quadrature_csv: size mismatch");
  auto out = open_out(path);
  out << "k,max_rel_error\n";
  for (std::size_t i = 0; i < ks.size(); ++i)
    out << fmt(ks[i]) << "," << fmt(errors[i]) << "\n";
  close_checked(out, path);
}

void write_noise_study_csv(const std::string& path, const std::vector<NoiseStudyRow>& rows,
                           int degree_cap, int n_samples) {
  auto out = open_out(path);
  out << "level,h_inball,n_vertices,L,n_samples,interp_error,proj_error\n";
  for (const auto& r : rows)
    out << r.level << "," << fmt(r.h_inball) << "," << r.n_vertices << "," << degree_cap
        << "," << n_samples << "," << fmt(r.interpolation_error) << ","
        << fmt(r.projection_error) << "\n";
  close_checked(out, path);
}

void write_matrix_market(const std::string& path, const SparseSymmetricMatrix& matrix) {
  auto out = open_out(path);
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << matrix.dim() << " " << matrix.dim() << " " << matrix.nnz() << "\n";
  const auto& offsets = matrix.row_offsets();
  const auto& cols = matrix.cols();
  const auto& vals = matrix.values();
  for (std::size_t i = 0; i < matrix.dim(); ++i)
    for (std::size_t p = offsets[i]; p < offsets[i + 1]; ++p)
      out << i + 1 << " " << cols[p] + 1 << " " << fmt(vals[p]) << "\n";
  close_checked(out, path);
}

} // namespace spheregrf
