#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "spheregrf/assemble.hpp"
#include "spheregrf/mesh.hpp"
#include "spheregrf/solver.hpp"
#include "testutil.hpp"

using namespace spheregrf;

TEST_CASE("mass matrix: entry sum equals flat area, SPD on random vectors") {
  const TriangleMesh mesh0 = icosphere(0);
  const auto m0 = assemble_mass(mesh0);
  CHECK(m0.sum_entries() == doctest::Approx(mesh0.total_flat_area()).epsilon(1e-13));

  const TriangleMesh mesh5 = icosphere(5);
  const auto m5 = assemble_mass(mesh5);
  CHECK(m5.sum_entries() ==
        doctest::Approx(4.0 * std::numbers::pi).epsilon(5e-3)); // within 0.5%

  for (unsigned seed : {1u, 2u, 3u}) {
    const auto x = testutil::random_vector(m0.dim(), seed);
    CHECK(m0.quadratic_form(x) > 0.0);
  }
  CHECK(m5.asymmetry() <= 1e-13);
}

TEST_CASE("stiffness matrix: constants in the kernel, PSD, symmetric") {
  const TriangleMesh mesh = icosphere(3);
  const auto s = assemble_stiffness(mesh);
  std::vector<double> ones(s.dim(), 1.0), out(s.dim());
  s.multiply(ones, out);
  double worst = 0.0;
  for (double v : out)
    worst = std::max(worst, std::abs(v));
  CHECK(worst <= 1e-10);
  for (unsigned seed : {4u, 5u, 6u}) {
    const auto x = testutil::random_vector(s.dim(), seed);
    CHECK(s.quadratic_form(x) >= 0.0);
  }
  CHECK(s.asymmetry() <= 1e-13);
}

TEST_CASE("assembly is deterministic: bit-identical on reassembly") {
  const TriangleMesh mesh = icosphere(3);
  const auto m1 = assemble_mass(mesh);
  const auto m2 = assemble_mass(mesh);
  CHECK(m1.values() == m2.values());
  CHECK(m1.cols() == m2.cols());
  const auto s1 = assemble_stiffness(mesh);
  const auto s2 = assemble_stiffness(mesh);
  CHECK(s1.values() == s2.values());
}

TEST_CASE("smallest nonzero generalized eigenvalue of (S, M) is ~2 at level 4") {
  // Shifted inverse iteration on (S + M) w = M v with M-orthogonal deflation
  // of the constant kernel; the Rayleigh quotient converges to the first
  // nonzero eigenvalue, which discretizes l(l+1) at l = 1.
  const TriangleMesh mesh = icosphere(4);
  const auto m = assemble_mass(mesh);
  const auto s = assemble_stiffness(mesh);
  const auto op = SparseSymmetricMatrix::combine(m, s, 1.0, 1.0);
  const std::size_t n = m.dim();

  std::vector<double> ones(n, 1.0), m_ones(n);
  m.multiply(ones, m_ones);
  const double ones_m_ones = m.quadratic_form(ones);
  auto deflate = [&](std::vector<double>& v) {
    double proj = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      proj += v[i] * m_ones[i];
    proj /= ones_m_ones;
    for (std::size_t i = 0; i < n; ++i)
      v[i] -= proj;
  };

  SolverConfig cfg;
  cfg.tol = 1e-12;
  auto v = testutil::random_vector(n, 7u);
  deflate(v);
  double rq = 0.0;
  for (int it = 0; it < 60; ++it) {
    std::vector<double> mv(n);
    m.multiply(v, mv);
    v = solve_spd(op, mv, cfg);
    deflate(v);
    const double mnorm = std::sqrt(m.quadratic_form(v));
    for (auto& x : v)
      x /= mnorm;
    const double next = s.quadratic_form(v) / m.quadratic_form(v);
    if (it > 5 && std::abs(next - rq) < 1e-10 * next)
      break;
    rq = next;
  }
  CHECK(rq == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("helmholtz_matrix combinations") {
  const TriangleMesh mesh = icosphere(2);
  const auto m = assemble_mass(mesh);
  const auto s = assemble_stiffness(mesh);
  CHECK_THROWS_AS(helmholtz_matrix(m, s, 0.0, 0.0), std::invalid_argument);

  const auto h = helmholtz_matrix(m, s, 1.0, 1.0);
  const auto x = testutil::random_vector(m.dim(), 11u);
  std::vector<double> hx(m.dim()), mx(m.dim()), sx(m.dim());
  h.multiply(x, hx);
  m.multiply(x, mx);
  s.multiply(x, sx);
  for (std::size_t i = 0; i < m.dim(); ++i)
    CHECK(hx[i] == doctest::Approx(mx[i] + sx[i]).epsilon(1e-13));

  const double kappa = 1.7, y = 0.3;
  const double e2y = std::exp(2.0 * y);
  const auto sub = helmholtz_matrix(m, s, 1.0 + e2y * kappa * kappa, e2y);
  h.multiply(x, hx); // reuse buffers
  sub.multiply(x, hx);
  for (std::size_t i = 0; i < m.dim(); ++i)
    CHECK(hx[i] ==
          doctest::Approx((1.0 + e2y * kappa * kappa) * mx[i] + e2y * sx[i]).epsilon(1e-12));
}

TEST_CASE("solve_spd: diagonal system, zero rhs, dense oracle") {
  // Diagonal matrix built through the builder.
  SparseBuilder builder(4);
  const double d[4] = {2.0, 5.0, 0.5, 8.0};
  for (int i = 0; i < 4; ++i)
    builder.add(i, i, d[i]);
  const auto a = builder.build();
  SolverConfig cfg;

  const std::vector<double> b = {2.0, -10.0, 1.0, 4.0};
  const auto x = solve_spd(a, b, cfg);
  for (int i = 0; i < 4; ++i)
    CHECK(x[static_cast<std::size_t>(i)] ==
          doctest::Approx(b[static_cast<std::size_t>(i)] / d[i]).epsilon(1e-12));

  const std::vector<double> zero(4, 0.0);
  CHECK(solve_spd(a, zero, cfg) == zero); // exactly zero, zero iterations

  // Random SPD 10x10 against the dense Cholesky oracle.
  const std::size_t n = 10;
  auto r = testutil::random_vector(n * n, 21u);
  std::vector<std::vector<double>> dense(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        acc += r[k * n + i] * r[k * n + j]; // B^T B
      dense[i][j] = acc + (i == j ? 1.0 : 0.0);
    }
  SparseBuilder sb(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      sb.add(static_cast<int>(i), static_cast<int>(j), dense[i][j]);
  const auto sparse = sb.build();
  const auto rhs = testutil::random_vector(n, 22u);
  const auto oracle = testutil::dense_spd_solve(dense, rhs);
  SolverConfig tight;
  tight.tol = 1e-12;
  const auto cg = solve_spd(sparse, rhs, tight);
  for (std::size_t i = 0; i < n; ++i)
    CHECK(cg[i] == doctest::Approx(oracle[i]).epsilon(1e-8));
}

TEST_CASE("solve_spd: iteration cap raises SolveFailure with residual") {
  const TriangleMesh mesh = icosphere(2);
  const auto m = assemble_mass(mesh);
  const auto s = assemble_stiffness(mesh);
  const auto a = SparseSymmetricMatrix::combine(m, s, 1.0, 1.0);
  SolverConfig cfg;
  cfg.tol = 1e-12;
  cfg.max_iter = 2;
  const auto b = testutil::random_vector(a.dim(), 31u);
  try {
    solve_spd(a, b, cfg);
    FAIL("expected SolveFailure");
  } catch (const SolveFailure& f) {
    CHECK(f.residual() > 0.0);
    CHECK(f.iterations() == 2);
  }
}

TEST_CASE("solve_spd converges across the coefficient grid") {
  const TriangleMesh mesh = icosphere(2);
  const auto m = assemble_mass(mesh);
  const auto s = assemble_stiffness(mesh);
  const auto b = testutil::random_vector(m.dim(), 41u);
  // The extreme corners (c0 = 1e-4 with c1 = 1e4) are conditioned around
  // 1e10, which puts the CG roundoff floor above 1e-10; certify at 1e-6.
  SolverConfig cfg;
  cfg.tol = 1e-6;
  SparseSymmetricMatrix a;
  for (double c0 : {1e-4, 1e-2, 1.0, 1e2, 1e4})
    for (double c1 : {1e-4, 1e-2, 1.0, 1e2, 1e4}) {
      a.fill_combination(m, s, c0, c1);
      const auto x = solve_spd(a, b, cfg);
      std::vector<double> ax(m.dim());
      a.multiply(x, ax);
      double rnorm = 0.0, bnorm = 0.0;
      for (std::size_t i = 0; i < m.dim(); ++i) {
        rnorm += (b[i] - ax[i]) * (b[i] - ax[i]);
        bnorm += b[i] * b[i];
      }
      CHECK(std::sqrt(rnorm / bnorm) <= cfg.tol * 1.001);
    }
}

TEST_CASE("jacobi preconditioning reaches the same solution") {
  const TriangleMesh mesh = icosphere(2);
  const auto m = assemble_mass(mesh);
  const auto s = assemble_stiffness(mesh);
  const auto a = SparseSymmetricMatrix::combine(m, s, 2.0, 1.0);
  const auto b = testutil::random_vector(a.dim(), 51u);
  SolverConfig plain, jacobi;
  plain.tol = jacobi.tol = 1e-12;
  jacobi.jacobi = true;
  const auto x0 = solve_spd(a, b, plain);
  const auto x1 = solve_spd(a, b, jacobi);
  for (std::size_t i = 0; i < a.dim(); ++i)
    CHECK(x0[i] == doctest::Approx(x1[i]).epsilon(1e-8));
}

TEST_CASE("l2_inner: mass pairing properties") {
  const TriangleMesh mesh = icosphere(2);
  const auto m = assemble_mass(mesh);
  const FemField ones(mesh, std::vector<double>(mesh.n_vertices(), 1.0));
  CHECK(l2_inner(mesh, m, ones, ones) ==
        doctest::Approx(mesh.total_flat_area()).epsilon(1e-13));

  const FemField f(mesh, testutil::random_vector(mesh.n_vertices(), 61u));
  const FemField g(mesh, testutil::random_vector(mesh.n_vertices(), 62u));
  CHECK(l2_inner(mesh, m, f, g) == doctest::Approx(l2_inner(mesh, m, g, f)).epsilon(1e-13));
  CHECK(l2_inner(mesh, m, f, f) > 0.0);
  const FemField zero(mesh);
  CHECK(l2_inner(mesh, m, zero, zero) == 0.0);

  const TriangleMesh other = icosphere(2);
  const FemField h(other, std::vector<double>(other.n_vertices(), 1.0));
  CHECK_THROWS_AS(l2_inner(mesh, m, ones, h), std::invalid_argument);
}

TEST_CASE("Galerkin consistency: constant rhs inverts to c / kappa^2") {
  const TriangleMesh mesh = icosphere(3);
  const auto m = assemble_mass(mesh);
  const auto s = assemble_stiffness(mesh);
  const double kappa = 1.5, c = 2.25;
  const auto a = SparseSymmetricMatrix::combine(m, s, kappa * kappa, 1.0);
  std::vector<double> rhs(m.dim());
  const std::vector<double> cvec(m.dim(), c);
  m.multiply(cvec, rhs);
  SolverConfig cfg;
  cfg.tol = 1e-13;
  const auto x = solve_spd(a, rhs, cfg);
  for (double v : x)
    CHECK(v == doctest::Approx(c / (kappa * kappa)).epsilon(1e-9));
}
