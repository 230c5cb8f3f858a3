#include "spheregrf/harmonics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spheregrf {

namespace {

constexpr double kInv4Pi = 1.0 / (4.0 * std::numbers::pi);

struct SphereAngles {
  double ct; // cos(theta) = z
  double st; // sin(theta) >= 0
  double cp; // cos(phi)
  double sp; // sin(phi)
};

SphereAngles to_angles(const Vec3& x) {
  SphereAngles a;
  a.ct = x.z;
  a.st = std::hypot(x.x, x.y);
  if (a.st > 0.0) {
    a.cp = x.x / a.st;
    a.sp = x.y / a.st;
  } else {
    // phi is undefined at the poles; fix phi = 0 (all m != 0 terms vanish).
    a.cp = 1.0;
    a.sp = 0.0;
  }
  return a;
}

/// Fully normalized associated Legendre P~_l^m(cos theta), so that the
/// m = 0 harmonics are P~_l^0 and the m != 0 ones are sqrt(2) P~_l^m trig.
/// Diagonal seed and three-term upward recurrence in l.
double normalized_legendre(int l, int m, double ct, double st) {
  double pmm = std::sqrt(kInv4Pi);
  for (int i = 1; i <= m; ++i)
    pmm *= st * std::sqrt((2.0 * i + 1.0) / (2.0 * i));
  if (l == m)
    return pmm;
  double pm1 = ct * std::sqrt(2.0 * m + 3.0) * pmm;
  if (l == m + 1)
    return pm1;
  double pll = 0.0;
  for (int ll = m + 2; ll <= l; ++ll) {
    const double a = std::sqrt((4.0 * ll * ll - 1.0) /
                               (static_cast<double>(ll) * ll - static_cast<double>(m) * m));
    const double b = std::sqrt((static_cast<double>(ll - 1) * (ll - 1) -
                                static_cast<double>(m) * m) /
                               (4.0 * static_cast<double>(ll - 1) * (ll - 1) - 1.0));
    pll = a * (ct * pm1 - b * pmm);
    pmm = pm1;
    pm1 = pll;
  }
  return pll;
}

} // namespace

HarmonicCoeffs::HarmonicCoeffs(int degree_cap, std::vector<double> coeffs)
    : degree_cap_(degree_cap), coeffs_(std::move(coeffs)) {
  if (degree_cap < 0)
    throw std::invalid_argument("HarmonicCoeffs: negative degree cap");
  const auto expected = static_cast<std::size_t>((degree_cap + 1) * (degree_cap + 1));
  if (coeffs_.size() != expected)
    throw std::invalid_argument("HarmonicCoeffs: expected (L+1)^2 coefficients");
}

std::size_t HarmonicCoeffs::index(int l, int m) const {
  if (l < 0 || l > degree_cap_ || m < -l || m > l)
    throw std::out_of_range("HarmonicCoeffs: index (l, m) out of range");
  return static_cast<std::size_t>(l * (l + 1) + m);
}

double eigenvalue(int l) {
  if (l < 0)
    throw std::invalid_argument("eigenvalue: negative degree");
  return static_cast<double>(l) * (l + 1.0);
}

double eval_real_sh(int l, int m, const Vec3& x) {
  if (l < 0 || std::abs(m) > l)
    throw std::out_of_range("eval_real_sh: |m| must not exceed l");
  const SphereAngles a = to_angles(x);
  const int am = std::abs(m);
  const double p = normalized_legendre(l, am, a.ct, a.st);
  if (m == 0)
    return p;
  // cos(m phi), sin(m phi) by angle addition from the point's cp, sp.
  double cm = a.cp, sm = a.sp;
  for (int i = 1; i < am; ++i) {
    const double c = cm * a.cp - sm * a.sp;
    sm = sm * a.cp + cm * a.sp;
    cm = c;
  }
  const double sqrt2 = std::numbers::sqrt2;
  return m > 0 ? sqrt2 * p * cm : sqrt2 * p * sm;
}

void eval_real_sh_all(int degree_cap, const Vec3& x, std::vector<double>& out) {
  const auto n = static_cast<std::size_t>((degree_cap + 1) * (degree_cap + 1));
  out.assign(n, 0.0);
  const SphereAngles ang = to_angles(x);
  const double sqrt2 = std::numbers::sqrt2;

  double cm = 1.0, sm = 0.0; // cos(m phi), sin(m phi), starting at m = 0
  double pmm = std::sqrt(kInv4Pi);
  for (int m = 0; m <= degree_cap; ++m) {
    if (m > 0) {
      pmm *= ang.st * std::sqrt((2.0 * m + 1.0) / (2.0 * m));
      const double c = cm * ang.cp - sm * ang.sp;
      sm = sm * ang.cp + cm * ang.sp;
      cm = c;
    }
    double prev2 = 0.0;
    double prev1 = pmm;
    for (int l = m; l <= degree_cap; ++l) {
      double p;
      if (l == m) {
        p = pmm;
      } else if (l == m + 1) {
        p = ang.ct * std::sqrt(2.0 * m + 3.0) * pmm;
      } else {
        const double a =
            std::sqrt((4.0 * l * l - 1.0) /
                      (static_cast<double>(l) * l - static_cast<double>(m) * m));
        const double b = std::sqrt((static_cast<double>(l - 1) * (l - 1) -
                                    static_cast<double>(m) * m) /
                                   (4.0 * static_cast<double>(l - 1) * (l - 1) - 1.0));
        p = a * (ang.ct * prev1 - b * prev2);
      }
      if (l > m) {
        prev2 = prev1;
        prev1 = p;
      }
      const auto base = static_cast<std::size_t>(l * (l + 1));
      if (m == 0) {
        out[base] = p;
      } else {
        out[base + static_cast<std::size_t>(m)] = sqrt2 * p * cm;
        out[base - static_cast<std::size_t>(m)] = sqrt2 * p * sm;
      }
    }
  }
}

std::vector<double> eval_expansion(const HarmonicCoeffs& coeffs,
                                   const std::vector<Vec3>& points) {
  std::vector<double> values(points.size(), 0.0);
  std::vector<double> basis;
  for (std::size_t i = 0; i < points.size(); ++i) {
    eval_real_sh_all(coeffs.degree_cap(), points[i], basis);
    double acc = 0.0;
    for (std::size_t j = 0; j < basis.size(); ++j)
      acc += coeffs.values()[j] * basis[j];
    values[i] = acc;
  }
  return values;
}

double eval_expansion(const HarmonicCoeffs& coeffs, const Vec3& point) {
  std::vector<double> basis;
  eval_real_sh_all(coeffs.degree_cap(), point, basis);
  double acc = 0.0;
  for (std::size_t j = 0; j < basis.size(); ++j)
    acc += coeffs.values()[j] * basis[j];
  return acc;
}

} // namespace spheregrf
