#ifndef SPHEREGRF_SPARSE_HPP
#define SPHEREGRF_SPARSE_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace spheregrf {

/// Symmetric sparse matrix in CSR form. Both triangles are stored so that
/// mat-vec is a plain CSR sweep; symmetry is a checked invariant, not a
/// storage trick.
class SparseSymmetricMatrix {
public:
  SparseSymmetricMatrix() = default;
  SparseSymmetricMatrix(std::vector<std::size_t> row_offsets, std::vector<int> cols,
                        std::vector<double> vals);

  std::size_t dim() const { return row_offsets_.empty() ? 0 : row_offsets_.size() - 1; }
  std::size_t nnz() const { return cols_.size(); }

  const std::vector<std::size_t>& row_offsets() const { return row_offsets_; }
  const std::vector<int>& cols() const { return cols_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  /// y = A x
  void multiply(std::span<const double> x, std::span<double> y) const;

  /// x^T A x (used for Rayleigh quotients in tests and diagnostics)
  double quadratic_form(std::span<const double> x) const;

  /// Entry (i, j); zero if outside the pattern.
  double entry(int i, int j) const;

  std::vector<double> diagonal() const;

  double sum_entries() const;

  /// Max relative asymmetry max |A_ij - A_ji| / max|A|; exact zero for an
  /// empty matrix.
  double asymmetry() const;

  /// Same-pattern linear combination c0 * a + c1 * b. Throws
  /// std::invalid_argument if the patterns differ.
  static SparseSymmetricMatrix combine(const SparseSymmetricMatrix& a,
                                       const SparseSymmetricMatrix& b, double c0,
                                       double c1);

  /// Refill this matrix with c0 * a + c1 * b, reusing the pattern.
  void fill_combination(const SparseSymmetricMatrix& a, const SparseSymmetricMatrix& b,
                        double c0, double c1);

private:
  std::vector<std::size_t> row_offsets_;
  std::vector<int> cols_;
  std::vector<double> values_;
};

/// Incremental builder: collect (i, j, v) triplets, duplicates are summed.
class SparseBuilder {
public:
  explicit SparseBuilder(std::size_t n) : n_(n) {}
  void add(int i, int j, double v) { triplets_.push_back({i, j, v}); }
  SparseSymmetricMatrix build() const;

private:
  struct Triplet {
    int row;
    int col;
    double value;
  };
  std::size_t n_;
  std::vector<Triplet> triplets_;
};

} // namespace spheregrf

#endif
