// SPDX-License-Identifier: Apache-2.0
#include "annpde/pde.hpp"

#include <cmath>

#include "annpde/errors.hpp"

namespace annpde {

namespace {

double source_sym(double x) { return -12.0 * x * x + 12.0 * x - 2.0; }
double source_asym(double x) { return -12.0 * x * x + 18.0 * x - 5.5; }
double source_2d(double x, double y) { return -2.0 * x * (x - 1.0) - 2.0 * y * (y - 1.0); }

double exact_sym(double x) { return x * x * (x - 1.0) * (x - 1.0); }
double exact_asym(double x) { return x * (x - 1.0) * (2.0 * x - 1.0) * (2.0 * x - 3.0) / 4.0; }
double exact_2d(double x, double y) { return x * y * (x - 1.0) * (y - 1.0); }

}  // namespace

const char* to_string(PoissonKind kind) {
  switch (kind) {
    case PoissonKind::Sym1D: return "sym1d";
    case PoissonKind::Asym1D: return "asym1d";
    case PoissonKind::Poisson2D: return "poisson2d";
  }
  return "?";
}

std::optional<PoissonKind> parse_kind(std::string_view name) {
  if (name == "sym1d") return PoissonKind::Sym1D;
  if (name == "asym1d") return PoissonKind::Asym1D;
  if (name == "poisson2d") return PoissonKind::Poisson2D;
  return std::nullopt;
}

std::size_t PoissonProblem::system_size() const {
  const auto n = static_cast<std::size_t>(n_per_dim);
  return kind == PoissonKind::Poisson2D ? n * n : n;
}

SleProblem discretize(const PoissonProblem& prob) {
  if (prob.n_per_dim < 1) throw InvalidParameter("discretize: n_per_dim must be >= 1");
  const std::size_t n = static_cast<std::size_t>(prob.n_per_dim);
  const double h = 1.0 / static_cast<double>(n + 1);
  const double inv_h2 = 1.0 / (h * h);

  SleProblem sle;
  if (prob.kind == PoissonKind::Poisson2D) {
    sle.k = SymMatrix(n * n);
    sle.f.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t idx = i * n + j;  // row-major over interior (i, j)
        sle.k.set(idx, idx, 4.0 * inv_h2);
        if (i + 1 < n) sle.k.set(idx, idx + n, -inv_h2);
        if (j + 1 < n) sle.k.set(idx, idx + 1, -inv_h2);
        sle.f[idx] = source_2d(static_cast<double>(i + 1) * h, static_cast<double>(j + 1) * h);
      }
    }
  } else {
    sle.k = SymMatrix(n);
    sle.f.resize(n);
    const auto source = prob.kind == PoissonKind::Sym1D ? source_sym : source_asym;
    for (std::size_t i = 0; i < n; ++i) {
      sle.k.set(i, i, 2.0 * inv_h2);
      if (i + 1 < n) sle.k.set(i, i + 1, -inv_h2);
      sle.f[i] = source(static_cast<double>(i + 1) * h);
    }
  }
  sle.norm_f = norm(sle.f);
  return sle;
}

GepFromSle sle_to_gep(const SleProblem& sle) {
  if (sle.k.order() != sle.f.size()) throw DimensionMismatch("sle_to_gep: dimension mismatch");
  const double nf = norm(sle.f);
  if (nf < 1e-14) throw ZeroRhs("sle_to_gep: zero right-hand side");

  const Vector f_tilde = normalize(sle.f);
  SymMatrix b(sle.k.order());
  for (std::size_t i = 0; i < b.order(); ++i)
    for (std::size_t j = i; j < b.order(); ++j) b.set(i, j, sle.k(i, j) / nf);

  return GepFromSle{GepProblem(SymMatrix::scaled_outer(-1.0, f_tilde), std::move(b)), f_tilde};
}

Vector recover_solution(double lambda_min, const Vector& v_min, const Vector& f_tilde) {
  if (v_min.size() != f_tilde.size()) throw DimensionMismatch("recover_solution: length mismatch");
  if (lambda_min >= 0.0) throw NonNegativeLambda("recover_solution: lambda_min must be negative");
  const double overlap = dot(f_tilde, v_min);
  if (std::abs(overlap) <= 1e-12)
    throw DegenerateEigenvector("recover_solution: eigenvector orthogonal to f");

  Vector u(v_min);
  const double factor = -lambda_min / overlap;
  for (double& x : u) x *= factor;
  return u;
}

Vector exact_solution(const PoissonProblem& prob) {
  if (prob.n_per_dim < 1) throw InvalidParameter("exact_solution: n_per_dim must be >= 1");
  const std::size_t n = static_cast<std::size_t>(prob.n_per_dim);
  const double h = 1.0 / static_cast<double>(n + 1);

  Vector u(prob.system_size());
  if (prob.kind == PoissonKind::Poisson2D) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        u[i * n + j] = exact_2d(static_cast<double>(i + 1) * h, static_cast<double>(j + 1) * h);
  } else {
    const auto exact = prob.kind == PoissonKind::Sym1D ? exact_sym : exact_asym;
    for (std::size_t i = 0; i < n; ++i) u[i] = exact(static_cast<double>(i + 1) * h);
  }
  return u;
}

PdeSolution solve_pde(const PoissonProblem& prob, const SolverConfig& cfg, Sampler& sampler,
                      Rng& rng) {
  const GepFromSle g = sle_to_gep(discretize(prob));
  GepSolution eig = solve_gep(g.gep, cfg, sampler, rng);
  Vector u = recover_solution(eig.lambda_min, eig.v_min, g.f_tilde);
  return PdeSolution{std::move(u), std::move(eig)};
}

}  // namespace annpde
