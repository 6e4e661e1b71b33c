// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "annpde/annealer.hpp"
#include "annpde/linalg.hpp"

namespace annpde {

/// Symmetric pair (A, B) of the generalized eigenvalue problem A v = lambda B v,
/// B positive definite. Construction verifies equal orders and that B passes
/// a Cholesky factorization.
struct GepProblem {
  SymMatrix a;
  SymMatrix b;

  GepProblem(SymMatrix a_in, SymMatrix b_in);

  std::size_t order() const { return a.order(); }
  /// A - lambda B.
  SymMatrix pencil_at(double lambda) const;
};

enum class EtaMode { BDependent, Constant };

struct SolverConfig {
  int bits = 4;                         // precision parameter b (>= 2)
  double tolerance = 1e-8;              // eps_0, target precision mesh
  double mesh_initial = 0.0;            // r_ini; 0 selects the mode default
  EtaMode eta_mode = EtaMode::BDependent;
  double eta = 0.1;                     // mesh reduction rate in Constant mode
  int max_consecutive_rejections = 0;   // n_rpt
  /// Relative convergence tolerance of the initial stage; 0 selects the
  /// encoding resolution 2^{1-b}, the precision that stage promises. Stochastic
  /// samplers keep finding near-tie grid states whose Rayleigh quotients differ
  /// far above machine precision, so a machine-scale tolerance would stretch
  /// the stage tens of iterations past any useful gain.
  double lambda_tol = 0.0;
  long max_initial_iters = 100;
  long max_descent_iters = 100000;
  /// Stop at r <= eps_0 * 2^{1-b} instead of r <= eps_0 (alternative reading
  /// of the termination rule; off keeps update counts on the n_upd formula).
  bool scaled_tolerance_termination = false;
  /// Stop early when lambda stalls (< 1e-15 relative improvement) across two
  /// consecutive mesh levels. Off by default so update counts stay comparable
  /// to the theoretical ladder length.
  bool early_lambda_exit = false;
  AnnealParams anneal;                  // used by callers that build the default sampler

  /// Mesh reduction rate eta: 2^{1-b} in BDependent mode, `eta` otherwise.
  double mesh_reduction() const;
  double effective_lambda_tol() const;
  /// Initial mesh r_ini: explicit value if set, else 2^{1-b} (BDependent)
  /// or eta (Constant), matching the pairing r_ini = eta.
  double initial_mesh() const;
  double stop_mesh() const;
  /// Throws InvalidParameter unless b >= 2, 0 < eps_0 < r_ini <= 1, 0 < eta < 1.
  void validate() const;
};

struct SolverTrace {
  long iters_initial = 0;
  long iters_descent = 0;
  long precision_updates = 0;
  std::vector<double> lambda_history;  // stage-1 result, then every accepted lambda
  double final_mesh = 0.0;
};

struct GepSolution {
  double lambda_min = 0.0;
  Vector v_min;  // unit vector; lambda_min == rayleigh_quotient(A, B, v_min)
  SolverTrace trace;
};

/// x^T A x for x uniform on the unit sphere (normalized Gaussian draw).
double initial_lambda(const SymMatrix& a, Rng& rng);

struct InitialGuess {
  double lambda = 0.0;
  Vector v;  // unit
  long iters = 0;
};

/// Stage 1: alternate (anneal the pencil QUBO, decode, normalize) with the
/// Rayleigh-quotient update of lambda until lambda stops moving.
///
/// All-zero samples are triaged against the QUBO diagonal (the table of
/// single-bit energies). A zero answer despite a negative diagonal entry is a
/// provable sampler miss and is retried; three such misses in a row raise
/// AllZeroSample. A plausible zero answer means the decode grid offers
/// nothing below the current lambda: the stage ends if a tentative eigenpair
/// exists, otherwise a random unit eigenvector is substituted (covers the
/// random initial lambda undercutting the grid, which for rank-1 pencils with
/// B != I happens routinely).
InitialGuess initial_guess_stage(const GepProblem& p, const SolverConfig& cfg, Sampler& sampler,
                                 Rng& rng);

/// Step length for the line update v + t d, from a = d^T C d and
/// bb = -v^T C d: sgn(bb) * max(|bb|/a, 1) when a > 0, else 1. |t| >= 1 always.
double step_length(double a, double bb);

/// d* minus its component along the unit vector v.
Vector orthogonalize(const Vector& d_star, const Vector& v);

struct DescentOutcome {
  enum class Kind { Accepted, RejectedKeepVector, ReduceMesh };
  Kind kind = Kind::ReduceMesh;
  double lambda = 0.0;  // new eigenvalue estimate (Accepted)
  Vector v;             // updated eigenvector (Accepted, RejectedKeepVector)
};

/// One descent step at mesh r: sample the update-direction QUBO, decode and
/// orthogonalize, line-update with step_length, re-estimate lambda, then
/// accept / keep-vector / reduce-mesh per the rejection counter. An all-zero
/// sample counts as a rejection.
DescentOutcome descent_iteration(const GepProblem& p, double lambda, const Vector& v, double mesh,
                                 int consecutive_rejections, const SolverConfig& cfg,
                                 Sampler& sampler, Rng& rng);

/// Stage 2: run descent iterations from (lambda0, v0), shrinking the mesh by
/// eta on each ReduceMesh until it reaches the tolerance. The returned
/// solution is the last accepted (lambda, v) pair.
GepSolution iterative_descent_stage(const GepProblem& p, double lambda0, const Vector& v0,
                                    const SolverConfig& cfg, Sampler& sampler, Rng& rng,
                                    long iters_initial = 0);

/// Both stages composed.
GepSolution solve_gep(const GepProblem& p, const SolverConfig& cfg, Sampler& sampler, Rng& rng);

}  // namespace annpde
