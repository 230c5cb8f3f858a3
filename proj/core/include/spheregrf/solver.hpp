#ifndef SPHEREGRF_SOLVER_HPP
#define SPHEREGRF_SOLVER_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "spheregrf/sparse.hpp"

namespace spheregrf {

struct SolverConfig {
  double tol = 1e-10;       // relative residual ||b - Ax|| / ||b||
  std::int64_t max_iter = 0; // 0 = automatic cap of 10 * n
  bool jacobi = false;      // diagonal preconditioning

  void validate() const {
    if (!(tol > 0.0 && tol < 1.0))
      throw std::invalid_argument("SolverConfig: tol must lie in (0,1)");
    if (max_iter < 0)
      throw std::invalid_argument("SolverConfig: max_iter must be >= 0");
  }
};

/// Thrown when CG hits its iteration cap. Carries the residual reached and
/// an optional context string set by the caller (recursion step, sinc node).
class SolveFailure : public std::runtime_error {
public:
  SolveFailure(double residual, std::int64_t iterations, const std::string& what)
      : std::runtime_error(what), residual_(residual), iterations_(iterations) {}
  double residual() const { return residual_; }
  std::int64_t iterations() const { return iterations_; }

private:
  double residual_;
  std::int64_t iterations_;
};

/// Conjugate gradients for SPD systems. Starts from x0 when given (same
/// length as b), otherwise from zero. Deterministic: fixed operation order,
/// no reductions across threads.
std::vector<double> solve_spd(const SparseSymmetricMatrix& a, const std::vector<double>& b,
                              const SolverConfig& cfg,
                              const std::vector<double>* x0 = nullptr);

} // namespace spheregrf

#endif
