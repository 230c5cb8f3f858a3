#include "spheregrf/solver.hpp"

#include <cmath>
#include <cstdio>

namespace spheregrf {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    acc += a[i] * b[i];
  return acc;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

} // namespace

std::vector<double> solve_spd(const SparseSymmetricMatrix& a, const std::vector<double>& b,
                              const SolverConfig& cfg, const std::vector<double>* x0) {
  cfg.validate();
  const std::size_t n = a.dim();
  if (b.size() != n)
    throw std::invalid_argument("solve_spd: dimension mismatch");
  if (x0 && x0->size() != n)
    throw std::invalid_argument("solve_spd: initial guess dimension mismatch");

  const double bnorm = norm(b);
  if (bnorm == 0.0)
    return std::vector<double>(n, 0.0);

  std::vector<double> inv_diag;
  if (cfg.jacobi) {
    inv_diag = a.diagonal();
    for (auto& d : inv_diag)
      d = 1.0 / d;
  }

  std::vector<double> x = x0 ? *x0 : std::vector<double>(n, 0.0);
  std::vector<double> r(n), z(n), p(n), ap(n);

  a.multiply(x, r);
  for (std::size_t i = 0; i < n; ++i)
    r[i] = b[i] - r[i];

  auto precondition = [&](const std::vector<double>& in, std::vector<double>& out) {
    if (cfg.jacobi)
      for (std::size_t i = 0; i < n; ++i)
        out[i] = inv_diag[i] * in[i];
    else
      out = in;
  };

  precondition(r, z);
  p = z;
  double rz = dot(r, z);
  double rnorm = norm(r);

  const std::int64_t cap =
      cfg.max_iter > 0 ? cfg.max_iter : 10 * static_cast<std::int64_t>(n);
  std::int64_t it = 0;
  while (true) {
    if (rnorm / bnorm <= cfg.tol) {
      // The recurrence residual can drift from the true one; certify the
      // contract against b - Ax and restart if it disagrees.
      a.multiply(x, r);
      for (std::size_t i = 0; i < n; ++i)
        r[i] = b[i] - r[i];
      rnorm = norm(r);
      if (rnorm / bnorm <= cfg.tol)
        return x;
      precondition(r, z);
      rz = dot(r, z);
      p = z;
    }
    if (it >= cap) {
      char res[32];
      std::snprintf(res, sizeof(res), "%.3e", rnorm / bnorm);
      throw SolveFailure(rnorm / bnorm, it,
                         "solve_spd: no convergence after " + std::to_string(it) +
                             " iterations (relative residual " + res + ")");
    }
    a.multiply(p, ap);
    const double pap = dot(p, ap);
    const double alpha = rz / pap;
    for (std::size_t i = 0; i < n; ++i)
      x[i] += alpha * p[i];
    for (std::size_t i = 0; i < n; ++i)
      r[i] -= alpha * ap[i];
    ++it;
    precondition(r, z);
    const double rz_next = dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < n; ++i)
      p[i] = z[i] + beta * p[i];
    rnorm = norm(r);
  }
}

} // namespace spheregrf
