// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "annpde/errors.hpp"
#include "annpde/harness.hpp"
#include "annpde/pde.hpp"
#include "test_util.hpp"

using namespace annpde;

TEST_CASE("discretize sym1d n=3") {
  const SleProblem sle = discretize({PoissonKind::Sym1D, 3});
  REQUIRE(sle.k.order() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(sle.k(i, i) == doctest::Approx(32.0).epsilon(1e-15));
    for (std::size_t j = i + 1; j < 3; ++j)
      CHECK(sle.k(i, j) == doctest::Approx(j == i + 1 ? -16.0 : 0.0).epsilon(1e-15));
  }
  CHECK(sle.f[0] == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(sle.f[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sle.f[2] == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("discretize asym1d n=1") {
  const SleProblem sle = discretize({PoissonKind::Asym1D, 1});
  REQUIRE(sle.k.order() == 1);
  CHECK(sle.k(0, 0) == doctest::Approx(8.0).epsilon(1e-15));
  CHECK(sle.f[0] == doctest::Approx(0.5).epsilon(1e-14));  // -12/4 + 9 - 5.5
}

TEST_CASE("discretize poisson2d structure") {
  const SleProblem sle = discretize({PoissonKind::Poisson2D, 3});
  REQUIRE(sle.k.order() == 9);  // n_per_dim^2 unknowns
  const double inv_h2 = 16.0;
  CHECK(sle.k(4, 4) == doctest::Approx(4.0 * inv_h2).epsilon(1e-15));
  CHECK(sle.k(4, 1) == doctest::Approx(-inv_h2).epsilon(1e-15));  // vertical neighbor
  CHECK(sle.k(4, 3) == doctest::Approx(-inv_h2).epsilon(1e-15));  // horizontal neighbor
  CHECK(sle.k(4, 0) == 0.0);                                      // diagonal is not coupled
  CHECK(sle.k(2, 3) == 0.0);  // row wrap: (0,2) and (1,0) are not neighbors

  // diagonally dominant with non-negative row sums
  for (std::size_t i = 0; i < 9; ++i) {
    double off = 0.0, row = sle.k(i, i);
    for (std::size_t j = 0; j < 9; ++j)
      if (j != i) {
        off += std::abs(sle.k(i, j));
        row += sle.k(i, j);
      }
    CHECK(sle.k(i, i) >= off);
    CHECK(row >= 0.0);
  }
}

TEST_CASE("discretized operators are positive definite for every kind") {
  for (PoissonKind kind : {PoissonKind::Sym1D, PoissonKind::Asym1D, PoissonKind::Poisson2D}) {
    for (int n = 1; n <= 6; ++n) {
      const SleProblem sle = discretize({kind, n});
      CHECK_NOTHROW(cholesky_solve(sle.k, sle.f));
      CHECK(sle.norm_f > 0.0);
    }
  }
}

TEST_CASE("sle_to_gep on the scalar system") {
  SymMatrix k(1);
  k.set(0, 0, 2.0);
  const GepFromSle g = sle_to_gep(SleProblem{k, {3.0}, 3.0});
  CHECK(g.f_tilde == Vector{1.0});
  CHECK(g.gep.b(0, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(g.gep.a(0, 0) == doctest::Approx(-1.0).epsilon(1e-15));
  // the unique nonzero eigenvalue is -1.5
  CHECK(rayleigh_quotient(g.gep.a, g.gep.b, {1.0}) == doctest::Approx(-1.5).epsilon(1e-14));
}

TEST_CASE("sle_to_gep invariants") {
  Rng rng(61);
  SUBCASE("trace(A) == -1") {
    for (int rep = 0; rep < 10; ++rep) {
      const std::size_t n = 2 + rng.next_u64() % 5;
      SleProblem sle{testutil::random_spd(n, rng), testutil::random_vec(n, rng), 0.0};
      if (norm(sle.f) < 1e-6) continue;
      const GepFromSle g = sle_to_gep(sle);
      double tr = 0.0;
      for (std::size_t i = 0; i < n; ++i) tr += g.gep.a(i, i);
      CHECK(tr == doctest::Approx(-1.0).epsilon(1e-12));
      CHECK(std::abs(norm(g.f_tilde) - 1.0) <= 1e-14);
    }
  }

  SUBCASE("A annihilates the orthogonal complement of f~") {
    const GepFromSle g = sle_to_gep(discretize({PoissonKind::Sym1D, 3}));
    Vector w{1.0, 0.0, -1.0};  // f is symmetric, so this is orthogonal to f~
    const Vector aw = matvec(g.gep.a, orthogonalize(w, g.f_tilde));
    CHECK(norm(aw) <= 1e-14);
  }

  SUBCASE("zero right-hand side is rejected") {
    CHECK_THROWS_AS(sle_to_gep(SleProblem{SymMatrix::identity(2), {0.0, 0.0}, 0.0}), ZeroRhs);
  }
}

TEST_CASE("recover_solution") {
  SUBCASE("scalar case") {
    const Vector u = recover_solution(-1.5, {1.0}, {1.0});
    CHECK(u[0] == doctest::Approx(1.5).epsilon(1e-15));  // K u = 2 * 1.5 = 3 = f
  }

  SUBCASE("sign flip of the eigenvector leaves u unchanged") {
    const Vector f_tilde = normalize({1.0, 2.0});
    const Vector v = normalize({0.4, 0.9});
    const Vector u1 = recover_solution(-0.7, v, f_tilde);
    const Vector u2 = recover_solution(-0.7, {-v[0], -v[1]}, f_tilde);
    CHECK(u1[0] == doctest::Approx(u2[0]).epsilon(1e-15));
    CHECK(u1[1] == doctest::Approx(u2[1]).epsilon(1e-15));
  }

  SUBCASE("round trip through the eigenpair identity") {
    Rng rng(62);
    for (int rep = 0; rep < 20; ++rep) {
      const std::size_t n = 2 + rng.next_u64() % 7;
      const SymMatrix k = testutil::random_spd(n, rng);
      Vector f = testutil::random_vec(n, rng);
      if (norm(f) < 1e-6) continue;
      const GepFromSle g = sle_to_gep(SleProblem{k, f, norm(f)});

      const Vector u_ref = cholesky_solve(k, f);
      const Vector v = normalize(u_ref);
      const double lambda = rayleigh_quotient(g.gep.a, g.gep.b, v);
      const Vector u = recover_solution(lambda, v, g.f_tilde);

      double err = 0.0;
      for (std::size_t i = 0; i < n; ++i) err += (u[i] - u_ref[i]) * (u[i] - u_ref[i]);
      CHECK(std::sqrt(err) <= 1e-10 * std::max(1.0, norm(u_ref)));
    }
  }

  SUBCASE("errors") {
    CHECK_THROWS_AS(recover_solution(0.5, {1.0}, {1.0}), NonNegativeLambda);
    CHECK_THROWS_AS(recover_solution(-1.0, {0.0, 1.0}, {1.0, 0.0}), DegenerateEigenvector);
  }
}

TEST_CASE("exact_solution") {
  const Vector u_sym = exact_solution({PoissonKind::Sym1D, 3});
  CHECK(u_sym[0] == doctest::Approx(0.03515625).epsilon(1e-15));
  CHECK(u_sym[1] == doctest::Approx(0.0625).epsilon(1e-15));
  CHECK(u_sym[2] == doctest::Approx(0.03515625).epsilon(1e-15));

  const Vector u_2d = exact_solution({PoissonKind::Poisson2D, 3});
  CHECK(u_2d[4] == doctest::Approx(0.0625).epsilon(1e-15));  // node (0.5, 0.5)

  // near-boundary node values shrink toward the Dirichlet zeros
  const Vector fine = exact_solution({PoissonKind::Sym1D, 99});
  CHECK(std::abs(fine.front()) < 1e-3);
  CHECK(std::abs(fine.back()) < 1e-3);
}

TEST_CASE("discretization error drops by roughly 4x from n=9 to n=19") {
  auto rmse_vs_exact = [](int n) {
    const PoissonProblem prob{PoissonKind::Sym1D, n};
    const SleProblem sle = discretize(prob);
    return rmse(cholesky_solve(sle.k, sle.f), exact_solution(prob));
  };
  const double ratio = rmse_vs_exact(9) / rmse_vs_exact(19);
  CHECK(ratio >= 3.2);
  CHECK(ratio <= 4.8);
}

TEST_CASE("solve_pde with the exhaustive sampler is exact to tolerance") {
  SolverConfig cfg;
  cfg.bits = 4;
  ExhaustiveSampler sampler;

  SUBCASE("single unknown") {
    Rng rng(63);
    const PdeSolution sol = solve_pde({PoissonKind::Sym1D, 1}, cfg, sampler, rng);
    CHECK(sol.u[0] == doctest::Approx(0.125).epsilon(1e-9));  // f(0.5)/K = 1/8
  }

  SUBCASE("every kind within nb <= 16") {
    const PoissonProblem probs[] = {{PoissonKind::Sym1D, 3},
                                    {PoissonKind::Asym1D, 4},
                                    {PoissonKind::Poisson2D, 2}};
    int seed = 64;
    for (const PoissonProblem& prob : probs) {
      Rng rng(static_cast<std::uint64_t>(seed++));
      const SleProblem sle = discretize(prob);
      const PdeSolution sol = solve_pde(prob, cfg, sampler, rng);
      CHECK(rmse(sol.u, cholesky_solve(sle.k, sle.f)) < 1e-8);
    }
  }
}

TEST_CASE("solve_pde with simulated annealing keeps the residual small on success") {
  // A success (rmse < eps_1) must come from a genuine solve: the relative
  // residual can exceed the rmse only by the operator's smooth-mode gain
  // (about pi^2 sqrt(n) / |f|, i.e. ~14 here), so 100x tolerance is ample.
  SolverConfig cfg;
  cfg.bits = 4;
  cfg.anneal.n_steps = 1000;
  SimulatedAnnealer sampler(cfg.anneal);

  const PoissonProblem prob{PoissonKind::Sym1D, 9};
  const SleProblem sle = discretize(prob);
  const Vector u_ref = cholesky_solve(sle.k, sle.f);

  int successes = 0;
  for (int seed = 65; seed < 70; ++seed) {
    Rng rng(static_cast<std::uint64_t>(seed));
    const PdeSolution sol = solve_pde(prob, cfg, sampler, rng);
    if (rmse(sol.u, u_ref) >= 1e-8) continue;
    ++successes;
    Vector res = matvec(sle.k, sol.u);
    for (std::size_t i = 0; i < res.size(); ++i) res[i] -= sle.f[i];
    CHECK(norm(res) / norm(sle.f) <= 100.0 * 1e-8);
  }
  CHECK(successes >= 1);
}

TEST_CASE("kind names round-trip") {
  for (PoissonKind kind : {PoissonKind::Sym1D, PoissonKind::Asym1D, PoissonKind::Poisson2D})
    CHECK(parse_kind(to_string(kind)) == kind);
  CHECK(!parse_kind("heat3d").has_value());
}
