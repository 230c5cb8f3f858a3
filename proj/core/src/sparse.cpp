#include "spheregrf/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spheregrf {

SparseSymmetricMatrix::SparseSymmetricMatrix(std::vector<std::size_t> row_offsets,
                                             std::vector<int> cols,
                                             std::vector<double> vals)
    : row_offsets_(std::move(row_offsets)), cols_(std::move(cols)),
      values_(std::move(vals)) {
  if (cols_.size() != values_.size())
    throw std::invalid_argument("SparseSymmetricMatrix: cols/values size mismatch");
}

void SparseSymmetricMatrix::multiply(std::span<const double> x,
                                     std::span<double> y) const {
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    const std::size_t end = row_offsets_[i + 1];
    for (std::size_t p = row_offsets_[i]; p < end; ++p)
      acc += values_[p] * x[static_cast<std::size_t>(cols_[p])];
    y[i] = acc;
  }
}

double SparseSymmetricMatrix::quadratic_form(std::span<const double> x) const {
  const std::size_t n = dim();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    const std::size_t end = row_offsets_[i + 1];
    for (std::size_t p = row_offsets_[i]; p < end; ++p)
      row += values_[p] * x[static_cast<std::size_t>(cols_[p])];
    acc += x[i] * row;
  }
  return acc;
}

double SparseSymmetricMatrix::entry(int i, int j) const {
  const auto begin = cols_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[static_cast<std::size_t>(i)]);
  const auto end = cols_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[static_cast<std::size_t>(i) + 1]);
  const auto it = std::lower_bound(begin, end, j);
  if (it == end || *it != j)
    return 0.0;
  return values_[static_cast<std::size_t>(it - cols_.begin())];
}

std::vector<double> SparseSymmetricMatrix::diagonal() const {
  const std::size_t n = dim();
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i)
    d[i] = entry(static_cast<int>(i), static_cast<int>(i));
  return d;
}

double SparseSymmetricMatrix::sum_entries() const {
  double acc = 0.0;
  for (double v : values_)
    acc += v;
  return acc;
}

double SparseSymmetricMatrix::asymmetry() const {
  double max_abs = 0.0;
  for (double v : values_)
    max_abs = std::max(max_abs, std::abs(v));
  if (max_abs == 0.0)
    return 0.0;
  double worst = 0.0;
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p) {
      const int j = cols_[p];
      worst = std::max(worst, std::abs(values_[p] - entry(j, static_cast<int>(i))));
    }
  return worst / max_abs;
}

SparseSymmetricMatrix SparseSymmetricMatrix::combine(const SparseSymmetricMatrix& a,
                                                     const SparseSymmetricMatrix& b,
                                                     double c0, double c1) {
  SparseSymmetricMatrix out(a.row_offsets_, a.cols_, a.values_);
  out.fill_combination(a, b, c0, c1);
  return out;
}

void SparseSymmetricMatrix::fill_combination(const SparseSymmetricMatrix& a,
                                             const SparseSymmetricMatrix& b, double c0,
                                             double c1) {
  if (a.row_offsets_ != b.row_offsets_ || a.cols_ != b.cols_)
    throw std::invalid_argument("fill_combination: pattern mismatch");
  if (row_offsets_ != a.row_offsets_) {
    row_offsets_ = a.row_offsets_;
    cols_ = a.cols_;
    values_.resize(a.values_.size());
  }
  const std::size_t nz = values_.size();
  for (std::size_t p = 0; p < nz; ++p)
    values_[p] = c0 * a.values_[p] + c1 * b.values_[p];
}

SparseSymmetricMatrix SparseBuilder::build() const {
  // Bucket triplets per row, then sort each row by column (insertion order as
  // tie-break, so accumulation order is deterministic) and merge duplicates.
  std::vector<std::size_t> offsets(n_ + 1, 0);
  for (const auto& t : triplets_)
    ++offsets[static_cast<std::size_t>(t.row) + 1];
  for (std::size_t i = 0; i < n_; ++i)
    offsets[i + 1] += offsets[i];

  std::vector<int> cols(triplets_.size());
  std::vector<double> vals(triplets_.size());
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const auto& t : triplets_) {
    const std::size_t p = cursor[static_cast<std::size_t>(t.row)]++;
    cols[p] = t.col;
    vals[p] = t.value;
  }

  std::vector<std::size_t> out_offsets(n_ + 1, 0);
  std::vector<int> out_cols;
  std::vector<double> out_vals;
  out_cols.reserve(triplets_.size());
  out_vals.reserve(triplets_.size());
  std::vector<std::pair<int, std::size_t>> row_entries;
  for (std::size_t i = 0; i < n_; ++i) {
    row_entries.clear();
    for (std::size_t p = offsets[i]; p < offsets[i + 1]; ++p)
      row_entries.emplace_back(cols[p], p);
    std::sort(row_entries.begin(), row_entries.end());
    for (const auto& [c, p] : row_entries) {
      if (out_cols.size() > out_offsets[i] && out_cols.back() == c)
        out_vals.back() += vals[p];
      else {
        out_cols.push_back(c);
        out_vals.push_back(vals[p]);
      }
    }
    out_offsets[i + 1] = out_cols.size();
  }
  return SparseSymmetricMatrix(std::move(out_offsets), std::move(out_cols),
                               std::move(out_vals));
}

} // namespace spheregrf
