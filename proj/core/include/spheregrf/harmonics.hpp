#ifndef SPHEREGRF_HARMONICS_HPP
#define SPHEREGRF_HARMONICS_HPP

#include <vector>

#include "spheregrf/geometry.hpp"

namespace spheregrf {

/// Real spherical-harmonic coefficients a_{l,m} for l = 0..L, m = -l..l,
/// stored contiguously as (L+1)^2 values. Index of (l, m) is l*(l+1) + m.
class HarmonicCoeffs {
public:
  HarmonicCoeffs() = default;
  explicit HarmonicCoeffs(int degree_cap)
      : degree_cap_(degree_cap),
        coeffs_(static_cast<std::size_t>((degree_cap + 1) * (degree_cap + 1)), 0.0) {}
  HarmonicCoeffs(int degree_cap, std::vector<double> coeffs);

  int degree_cap() const { return degree_cap_; }
  std::size_t size() const { return coeffs_.size(); }

  double& at(int l, int m) { return coeffs_[index(l, m)]; }
  double at(int l, int m) const { return coeffs_[index(l, m)]; }

  const std::vector<double>& values() const { return coeffs_; }
  std::vector<double>& values() { return coeffs_; }

  std::size_t index(int l, int m) const;

private:
  int degree_cap_ = -1;
  std::vector<double> coeffs_;
};

/// Laplace-Beltrami eigenvalue l(l+1) for degree l.
double eigenvalue(int l);

/// Real orthonormal spherical harmonic Y_{l,m} at a unit point:
/// m = 0 gives the normalized Legendre term, m > 0 the sqrt(2) cos(m phi)
/// branch, m < 0 the sqrt(2) sin(|m| phi) branch. Uses the fully normalized
/// three-term Legendre recurrence; stable through l of a few hundred.
double eval_real_sh(int l, int m, const Vec3& x);

/// All Y_{l,m} for l <= degree_cap at one point, in coefficient order.
/// `out` is resized to (degree_cap+1)^2.
void eval_real_sh_all(int degree_cap, const Vec3& x, std::vector<double>& out);

/// Pointwise truncated expansion sum_{l,m} a_{l,m} Y_{l,m}(x_i).
std::vector<double> eval_expansion(const HarmonicCoeffs& coeffs,
                                   const std::vector<Vec3>& points);

/// Single-point convenience overload.
double eval_expansion(const HarmonicCoeffs& coeffs, const Vec3& point);

/// Repeated-evaluation helper that reuses its basis scratch buffer across
/// points (quadrature loops evaluate the same expansion at many points).
class ExpansionEvaluator {
public:
  explicit ExpansionEvaluator(const HarmonicCoeffs& coeffs) : coeffs_(&coeffs) {}
  double operator()(const Vec3& x) {
    eval_real_sh_all(coeffs_->degree_cap(), x, basis_);
    double acc = 0.0;
    for (std::size_t j = 0; j < basis_.size(); ++j)
      acc += coeffs_->values()[j] * basis_[j];
    return acc;
  }

private:
  const HarmonicCoeffs* coeffs_;
  std::vector<double> basis_;
};

} // namespace spheregrf

#endif
