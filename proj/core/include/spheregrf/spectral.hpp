#ifndef SPHEREGRF_SPECTRAL_HPP
#define SPHEREGRF_SPECTRAL_HPP

#include <vector>

#include "spheregrf/harmonics.hpp"

namespace spheregrf {

/// beta is treated as integer when within 1e-12 of one; the sinc weight
/// sin(pi {beta}) vanishes there and the pure-power path must be taken.
bool is_integer_beta(double beta);
int floor_beta(double beta);
double frac_beta(double beta);

/// Exact per-degree solution factor (kappa^2 + l(l+1))^{-beta}.
double spectral_factor(int l, double beta, double kappa);

/// Coefficient-wise application of the exact inverse fractional operator.
HarmonicCoeffs spectral_solution(const HarmonicCoeffs& coeffs, double beta, double kappa);

/// Per-eigenvalue sinc-quadrature factor for the fractional part:
/// (2 k sin(pi b) / pi) * sum_l exp(2 b y_l) / (1 + exp(2 y_l) lambda'),
/// with lambda' = kappa^2 + lambda, y_l = k l over l = -K^-..K^+.
/// Evaluated in overflow-safe form for large |y_l|.
double sinc_factor(double lambda, double beta_frac, double kappa, double k);

/// Coefficient-wise application of the split operator: exact power for the
/// integer part, sinc quadrature for the fractional part. For integer beta
/// this is exactly spectral_solution.
HarmonicCoeffs spectral_sinc_apply(const HarmonicCoeffs& coeffs, double beta, double kappa,
                                   double k);

/// For each step size k: max over l <= degree_cap of the relative error of
/// the quadrature factor against the exact factor.
std::vector<double> quadrature_error_curve(double beta, double kappa, int degree_cap,
                                           const std::vector<double>& ks);

} // namespace spheregrf

#endif
