#include "spheregrf/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "spheregrf/fractional.hpp"

namespace spheregrf {

bool is_integer_beta(double beta) { return std::abs(beta - std::round(beta)) < 1e-12; }

int floor_beta(double beta) {
  if (is_integer_beta(beta))
    return static_cast<int>(std::llround(beta));
  return static_cast<int>(std::floor(beta));
}

double frac_beta(double beta) {
  if (is_integer_beta(beta))
    return 0.0;
  return beta - std::floor(beta);
}

double spectral_factor(int l, double beta, double kappa) {
  return std::pow(kappa * kappa + eigenvalue(l), -beta);
}

HarmonicCoeffs spectral_solution(const HarmonicCoeffs& coeffs, double beta, double kappa) {
  HarmonicCoeffs out = coeffs;
  for (int l = 0; l <= coeffs.degree_cap(); ++l) {
    const double factor = spectral_factor(l, beta, kappa);
    for (int m = -l; m <= l; ++m)
      out.at(l, m) *= factor;
  }
  return out;
}

double sinc_factor(double lambda, double beta_frac, double kappa, double k) {
  if (!(beta_frac > 0.0 && beta_frac < 1.0))
    throw std::invalid_argument("sinc_factor: fractional exponent must lie in (0,1)");
  const SincQuadrature quad = sinc_nodes(beta_frac, k);
  const double shifted = kappa * kappa + lambda;
  double sum = 0.0;
  for (long l = -quad.k_minus; l <= quad.k_plus; ++l) {
    const double y = k * static_cast<double>(l);
    // exp(2 b y) / (1 + exp(2y) lambda'), rewritten for y > 0 so that no
    // intermediate overflows for large node ranges.
    double term;
    if (y > 0.0)
      term = std::exp(-2.0 * (1.0 - beta_frac) * y) / (std::exp(-2.0 * y) + shifted);
    else
      term = std::exp(2.0 * beta_frac * y) / (1.0 + std::exp(2.0 * y) * shifted);
    sum += term;
  }
  return (2.0 * k * std::sin(std::numbers::pi * beta_frac) / std::numbers::pi) * sum;
}

HarmonicCoeffs spectral_sinc_apply(const HarmonicCoeffs& coeffs, double beta, double kappa,
                                   double k) {
  if (is_integer_beta(beta))
    return spectral_solution(coeffs, beta, kappa);
  const int ib = floor_beta(beta);
  const double fb = frac_beta(beta);
  HarmonicCoeffs out = coeffs;
  for (int l = 0; l <= coeffs.degree_cap(); ++l) {
    const double lambda = eigenvalue(l);
    const double factor = std::pow(kappa * kappa + lambda, -static_cast<double>(ib)) *
                          sinc_factor(lambda, fb, kappa, k);
    for (int m = -l; m <= l; ++m)
      out.at(l, m) *= factor;
  }
  return out;
}

std::vector<double> quadrature_error_curve(double beta, double kappa, int degree_cap,
                                           const std::vector<double>& ks) {
  if (ks.empty())
    throw std::invalid_argument("quadrature_error_curve: empty step list");
  const int ib = floor_beta(beta);
  const double fb = frac_beta(beta);
  std::vector<double> errors;
  errors.reserve(ks.size());
  for (double k : ks) {
    if (!(k > 0.0))
      throw std::invalid_argument("quadrature_error_curve: k must be positive");
    double worst = 0.0;
    for (int l = 0; l <= degree_cap; ++l) {
      const double lambda = eigenvalue(l);
      const double exact = spectral_factor(l, beta, kappa);
      const double approx =
          fb == 0.0 ? exact
                    : std::pow(kappa * kappa + lambda, -static_cast<double>(ib)) *
                          sinc_factor(lambda, fb, kappa, k);
      worst = std::max(worst, std::abs(approx - exact) / exact);
    }
    errors.push_back(worst);
  }
  return errors;
}

} // namespace spheregrf
