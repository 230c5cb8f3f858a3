#ifndef SPHEREGRF_IO_HPP
#define SPHEREGRF_IO_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "spheregrf/assemble.hpp"
#include "spheregrf/harness.hpp"
#include "spheregrf/mesh.hpp"
#include "spheregrf/sparse.hpp"

namespace spheregrf {

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Legacy ASCII VTK (UNSTRUCTURED_GRID, triangle cells); when a field is
/// given, appended as POINT_DATA SCALARS double.
void write_vtk(const std::string& path, const TriangleMesh& mesh,
               const FemField* field = nullptr, const std::string& field_name = "field");

/// CSV field dump: vertex index, x, y, z, value.
void write_field_csv(const std::string& path, const TriangleMesh& mesh,
                     const FemField& field);

/// Convergence-study CSV, one file per study.
void write_convergence_csv(const std::string& path, const std::vector<ConvergenceRow>& rows,
                           double beta, double kappa, double k, int degree_cap,
                           int n_samples);

/// Quadrature-study CSV: k, max_rel_error rows.
void write_quadrature_csv(const std::string& path, const std::vector<double>& ks,
                          const std::vector<double>& errors);

/// Noise-study CSV: per-level interpolation and projection errors.
void write_noise_study_csv(const std::string& path, const std::vector<NoiseStudyRow>& rows,
                           int degree_cap, int n_samples);

/// Matrix Market coordinate format (general symmetric written in full).
void write_matrix_market(const std::string& path, const SparseSymmetricMatrix& matrix);

} // namespace spheregrf

#endif
