// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string_view>

#include "annpde/geneig.hpp"
#include "annpde/linalg.hpp"

namespace annpde {

enum class PoissonKind { Sym1D, Asym1D, Poisson2D };

const char* to_string(PoissonKind kind);
std::optional<PoissonKind> parse_kind(std::string_view name);

/// Poisson benchmark problem on the unit interval/square with homogeneous
/// Dirichlet boundaries, discretized on n_per_dim interior points per
/// dimension (grid spacing h = 1/(n_per_dim + 1)).
struct PoissonProblem {
  PoissonKind kind = PoissonKind::Sym1D;
  int n_per_dim = 1;

  /// n (1D) or n^2 (2D).
  std::size_t system_size() const;
};

/// Linear system K u = f with K symmetric positive definite.
struct SleProblem {
  SymMatrix k;
  Vector f;
  double norm_f = 0.0;
};

/// Rank-1 generalized eigenproblem equivalent to the SLE:
/// A = -f~ f~^T, B = K / |f|, with f~ = f / |f|.
struct GepFromSle {
  GepProblem gep;
  Vector f_tilde;
};

/// Central-difference discretization: second difference in 1D, 5-point
/// stencil in 2D with row-major node ordering; boundary values are zero and
/// carry no unknowns. The source is evaluated pointwise at interior nodes.
SleProblem discretize(const PoissonProblem& prob);

/// Throws ZeroRhs when |f| < 1e-14.
GepFromSle sle_to_gep(const SleProblem& sle);

/// u = -lambda_min v_min / (f~^T v_min); solves the original K u = f (the
/// |f| normalization cancels). Throws NonNegativeLambda / DegenerateEigenvector.
Vector recover_solution(double lambda_min, const Vector& v_min, const Vector& f_tilde);

/// The known closed-form solution evaluated at the interior nodes, same
/// ordering as discretize().
Vector exact_solution(const PoissonProblem& prob);

struct PdeSolution {
  Vector u;
  GepSolution eig;
};

/// discretize -> sle_to_gep -> solve_gep -> recover_solution.
PdeSolution solve_pde(const PoissonProblem& prob, const SolverConfig& cfg, Sampler& sampler,
                      Rng& rng);

}  // namespace annpde
