// SPDX-License-Identifier: Apache-2.0
#include "annpde/geneig.hpp"

#include <algorithm>
#include <cmath>

#include "annpde/errors.hpp"

namespace annpde {

namespace {

bool all_zero(const BitVec& q) {
  return std::all_of(q.begin(), q.end(), [](std::uint8_t b) { return b == 0; });
}

Vector random_unit(std::size_t n, Rng& rng) {
  Vector x(n);
  for (double& xi : x) xi = rng.next_gaussian();
  return normalize(x);
}

}  // namespace

GepProblem::GepProblem(SymMatrix a_in, SymMatrix b_in) : a(std::move(a_in)), b(std::move(b_in)) {
  if (a.order() != b.order()) throw DimensionMismatch("GepProblem: orders of A and B differ");
  if (a.order() < 1) throw InvalidParameter("GepProblem: empty problem");
  // B must be positive definite; a factorization attempt is the check.
  cholesky_solve(b, Vector(b.order(), 0.0));
}

SymMatrix GepProblem::pencil_at(double lambda) const {
  SymMatrix c(a.order());
  for (std::size_t i = 0; i < a.order(); ++i)
    for (std::size_t j = i; j < a.order(); ++j) c.set(i, j, a(i, j) - lambda * b(i, j));
  return c;
}

double SolverConfig::mesh_reduction() const {
  return eta_mode == EtaMode::BDependent ? std::ldexp(1.0, 1 - bits) : eta;
}

double SolverConfig::initial_mesh() const {
  if (mesh_initial > 0.0) return mesh_initial;
  return eta_mode == EtaMode::BDependent ? std::ldexp(1.0, 1 - bits) : eta;
}

double SolverConfig::stop_mesh() const {
  return scaled_tolerance_termination ? tolerance * std::ldexp(1.0, 1 - bits) : tolerance;
}

double SolverConfig::effective_lambda_tol() const {
  return lambda_tol > 0.0 ? lambda_tol : std::ldexp(1.0, 1 - bits);
}

void SolverConfig::validate() const {
  if (bits < 2) throw InvalidParameter("SolverConfig: b must be >= 2");
  const double eta_eff = mesh_reduction();
  if (!(eta_eff > 0.0) || !(eta_eff < 1.0))
    throw InvalidParameter("SolverConfig: eta must lie in (0, 1)");
  const double r0 = initial_mesh();
  if (!(tolerance > 0.0) || !(tolerance < r0) || !(r0 <= 1.0))
    throw InvalidParameter("SolverConfig: need 0 < eps0 < r_ini <= 1");
  if (lambda_tol < 0.0) throw InvalidParameter("SolverConfig: lambda_tol must be >= 0");
  if (max_initial_iters < 1 || max_descent_iters < 1)
    throw InvalidParameter("SolverConfig: iteration caps must be >= 1");
}

double initial_lambda(const SymMatrix& a, Rng& rng) {
  return quad_form(a, random_unit(a.order(), rng));
}

InitialGuess initial_guess_stage(const GepProblem& p, const SolverConfig& cfg, Sampler& sampler,
                                 Rng& rng) {
  cfg.validate();
  const BinaryEncoding enc = make_encoding(p.order(), static_cast<std::size_t>(cfg.bits));

  double lambda = initial_lambda(p.a, rng);
  Vector v;  // current tentative eigenvector with lambda == RQ(v); empty at first
  int zero_streak = 0;

  for (long iter = 1; iter <= cfg.max_initial_iters; ++iter) {
    const QuboProblem qubo = build_initial_qubo(p.pencil_at(lambda), enc);
    const SampleResult s = sampler.sample(qubo, rng);
    const double slack = 1e-12 * (1.0 + qubo.coefficient_l1());

    if (all_zero(s.q)) {
      // The QUBO diagonal lists every single-bit energy, so a negative entry
      // certifies that some state beats the zero answer: the sampler missed.
      double min_diag = 0.0;
      for (double d : qubo.diagonal()) min_diag = std::min(min_diag, d);
      if (min_diag < -slack) {
        if (++zero_streak >= 3)
          throw AllZeroSample("initial_guess_stage: sampler returned the zero state " +
                              std::to_string(zero_streak) + " times in a row");
        continue;  // resample at the same lambda
      }
      // Plausible zero: the grid offers nothing below the current lambda.
      if (!v.empty()) return InitialGuess{lambda, v, iter};
      // No eigenpair yet, so lambda (a random quadratic-form value) undercuts
      // the whole grid; restart from a random tentative eigenvector.
      v = random_unit(p.order(), rng);
      lambda = rayleigh_quotient(p.a, p.b, v);
      continue;
    }
    zero_streak = 0;

    const Vector v_new = normalize(decode(s.q, enc, 1.0));
    const double lambda_new = rayleigh_quotient(p.a, p.b, v_new);
    if (std::abs(lambda_new - lambda) <= cfg.effective_lambda_tol() * std::max(1.0, std::abs(lambda)))
      return InitialGuess{lambda_new, v_new, iter};
    lambda = lambda_new;
    v = v_new;
  }

  IterationLimit err("initial_guess_stage: no convergence in " +
                     std::to_string(cfg.max_initial_iters) + " iterations");
  err.iters_initial = cfg.max_initial_iters;
  err.lambda = lambda;
  throw err;
}

double step_length(double a, double bb) {
  if (a <= 0.0) return 1.0;
  const double sign = bb < 0.0 ? -1.0 : 1.0;
  return sign * std::max(std::abs(bb) / a, 1.0);
}

Vector orthogonalize(const Vector& d_star, const Vector& v) {
  if (d_star.size() != v.size()) throw DimensionMismatch("orthogonalize: length mismatch");
  const double proj = dot(v, d_star);
  Vector d(d_star);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] -= proj * v[i];
  return d;
}

DescentOutcome descent_iteration(const GepProblem& p, double lambda, const Vector& v, double mesh,
                                 int consecutive_rejections, const SolverConfig& cfg,
                                 Sampler& sampler, Rng& rng) {
  const BinaryEncoding enc = make_encoding(p.order(), static_cast<std::size_t>(cfg.bits));
  const SymMatrix c = p.pencil_at(lambda);

  const SampleResult s = sampler.sample(build_descent_qubo(c, v, mesh, enc), rng);

  Vector v_new = v;
  if (!all_zero(s.q)) {  // the zero direction is the sampler's "no improvement" answer
    const Vector d = orthogonalize(decode(s.q, enc, mesh), v);
    const Vector cd = matvec(c, d);
    const double t = step_length(dot(d, cd), -dot(v, cd));
    Vector moved(v);
    for (std::size_t i = 0; i < moved.size(); ++i) moved[i] += t * d[i];
    v_new = normalize(moved);
    const double lambda_new = rayleigh_quotient(p.a, p.b, v_new);
    if (lambda_new < lambda)
      return DescentOutcome{DescentOutcome::Kind::Accepted, lambda_new, std::move(v_new)};
  }

  if (consecutive_rejections < cfg.max_consecutive_rejections)
    return DescentOutcome{DescentOutcome::Kind::RejectedKeepVector, lambda, std::move(v_new)};
  return DescentOutcome{DescentOutcome::Kind::ReduceMesh, lambda, {}};
}

GepSolution iterative_descent_stage(const GepProblem& p, double lambda0, const Vector& v0,
                                    const SolverConfig& cfg, Sampler& sampler, Rng& rng,
                                    long iters_initial) {
  cfg.validate();

  GepSolution sol;
  sol.lambda_min = lambda0;
  sol.v_min = v0;  // last accepted eigenvector; 5b updates touch only v_work
  sol.trace.iters_initial = iters_initial;
  sol.trace.lambda_history.push_back(lambda0);

  Vector v_work = v0;
  double mesh = cfg.initial_mesh();
  const double stop = cfg.stop_mesh() * (1.0 + 1e-9);  // reach-inclusive: r_ini eta^k == eps0 stops
  int rejections = 0;
  double lambda_at_last_reduction = lambda0;
  int stall_levels = 0;

  while (mesh > stop) {
    if (sol.trace.iters_descent >= cfg.max_descent_iters) {
      IterationLimit err("iterative_descent_stage: mesh " + std::to_string(mesh) +
                         " above tolerance after " + std::to_string(cfg.max_descent_iters) +
                         " iterations");
      err.iters_initial = iters_initial;
      err.iters_descent = sol.trace.iters_descent;
      err.precision_updates = sol.trace.precision_updates;
      err.lambda = sol.lambda_min;
      err.final_mesh = mesh;
      throw err;
    }

    DescentOutcome out =
        descent_iteration(p, sol.lambda_min, v_work, mesh, rejections, cfg, sampler, rng);
    ++sol.trace.iters_descent;

    switch (out.kind) {
      case DescentOutcome::Kind::Accepted:
        sol.lambda_min = out.lambda;
        sol.v_min = out.v;
        v_work = std::move(out.v);
        rejections = 0;
        sol.trace.lambda_history.push_back(sol.lambda_min);
        break;
      case DescentOutcome::Kind::RejectedKeepVector:
        v_work = std::move(out.v);
        ++rejections;
        break;
      case DescentOutcome::Kind::ReduceMesh:
        mesh *= cfg.mesh_reduction();
        ++sol.trace.precision_updates;
        rejections = 0;
        if (cfg.early_lambda_exit) {
          const double tol = 1e-15 * std::max(1.0, std::abs(sol.lambda_min));
          stall_levels =
              std::abs(lambda_at_last_reduction - sol.lambda_min) < tol ? stall_levels + 1 : 0;
          lambda_at_last_reduction = sol.lambda_min;
          if (stall_levels >= 2) {
            sol.trace.final_mesh = mesh;
            return sol;
          }
        }
        break;
    }
  }

  sol.trace.final_mesh = mesh;
  return sol;
}

GepSolution solve_gep(const GepProblem& p, const SolverConfig& cfg, Sampler& sampler, Rng& rng) {
  const InitialGuess guess = initial_guess_stage(p, cfg, sampler, rng);
  return iterative_descent_stage(p, guess.lambda, guess.v, cfg, sampler, rng, guess.iters);
}

}  // namespace annpde
