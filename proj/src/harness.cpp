// SPDX-License-Identifier: Apache-2.0
#include "annpde/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "annpde/errors.hpp"
#include "annpde/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace annpde {

namespace {

std::string fmt_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

double mean_of(const std::vector<TrialRecord>& recs, double (*field)(const TrialRecord&)) {
  double s = 0.0;
  for (const TrialRecord& r : recs) s += field(r);
  return s / static_cast<double>(recs.size());
}

}  // namespace

void SweepConfig::validate() const {
  if (problem_kinds.empty() || n_values.empty() || b_values.empty() || n_step_values.empty())
    throw InvalidParameter("SweepConfig: every value list must be non-empty");
  if (trials < 1) throw InvalidParameter("SweepConfig: trials must be >= 1");
  if (workers < 1) throw InvalidParameter("SweepConfig: workers must be >= 1");
  if (!(epsilon0 > 0.0) || !(epsilon1 > 0.0))
    throw InvalidParameter("SweepConfig: tolerances must be positive");
}

double rmse(const Vector& u, const Vector& u_ref) {
  if (u.size() != u_ref.size() || u.empty()) throw LengthMismatch("rmse: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double d = u[i] - u_ref[i];
    s += d * d;
  }
  return std::sqrt(s / static_cast<double>(u.size()));
}

double theoretical_updates(double r, double r_ini, double eta) {
  if (!(r > 0.0) || !(r < r_ini) || !(eta > 0.0) || !(eta < 1.0))
    throw InvalidParameter("theoretical_updates: need 0 < r < r_ini and 0 < eta < 1");
  return (std::log2(r) - std::log2(r_ini)) / std::log2(eta);
}

std::uint64_t trial_seed(std::uint64_t base_seed, PoissonKind kind, int n, int b, long n_step,
                         long trial_index) {
  std::uint64_t h = 0x243f6a8885a308d3ull;  // fixed stream, independent of base_seed
  splitmix64(h);
  h ^= static_cast<std::uint64_t>(kind) + 1;
  splitmix64(h);
  h ^= static_cast<std::uint64_t>(n);
  splitmix64(h);
  h ^= static_cast<std::uint64_t>(b);
  splitmix64(h);
  h ^= static_cast<std::uint64_t>(n_step);
  splitmix64(h);
  h ^= static_cast<std::uint64_t>(trial_index);
  return base_seed + splitmix64(h);
}

TrialRecord run_trial(PoissonKind kind, int n, int b, long n_step, std::uint64_t seed,
                      const SweepConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();

  TrialRecord rec;
  rec.problem = kind;
  rec.n = n;
  rec.b = b;
  rec.n_step = n_step;
  rec.seed = seed;

  SolverConfig solver;
  solver.bits = b;
  solver.tolerance = cfg.epsilon0;
  solver.eta_mode = cfg.eta_mode;
  solver.eta = cfg.eta;
  solver.max_consecutive_rejections = cfg.n_rpt;
  solver.anneal.n_steps = n_step;

  try {
    const PoissonProblem prob{kind, n};
    const SleProblem sle = discretize(prob);
    SimulatedAnnealer sampler(solver.anneal);
    Rng rng(seed);

    const PdeSolution sol = solve_pde(prob, solver, sampler, rng);
    rec.iters_initial = sol.eig.trace.iters_initial;
    rec.iters_descent = sol.eig.trace.iters_descent;
    rec.precision_updates = sol.eig.trace.precision_updates;
    rec.lambda_final = sol.eig.lambda_min;
    rec.rmse_value = rmse(sol.u, cholesky_solve(sle.k, sle.f));
  } catch (const IterationLimit& e) {
    rec.iters_initial = e.iters_initial;
    rec.iters_descent = e.iters_descent;
    rec.precision_updates = e.precision_updates;
    rec.lambda_final = e.lambda;
    rec.rmse_value = std::numeric_limits<double>::infinity();
  } catch (const Error&) {
    rec.rmse_value = std::numeric_limits<double>::infinity();
  }

  rec.success = rec.rmse_value < cfg.epsilon1;
  rec.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

std::string csv_header() {
  return "problem,n,b,n_step,trial_index,seed,iters_initial,iters_descent,"
         "n_precision_updates,lambda_final,rmse,success,wall_time_ms";
}

std::string to_csv(const TrialRecord& r) {
  std::string s;
  s += to_string(r.problem);
  s += ',' + std::to_string(r.n) + ',' + std::to_string(r.b) + ',' + std::to_string(r.n_step);
  s += ',' + std::to_string(r.trial_index) + ',' + std::to_string(r.seed);
  s += ',' + std::to_string(r.iters_initial) + ',' + std::to_string(r.iters_descent);
  s += ',' + std::to_string(r.precision_updates);
  s += ',' + fmt_real(r.lambda_final) + ',' + fmt_real(r.rmse_value);
  s += r.success ? ",1," : ",0,";
  s += fmt_real(r.wall_time_ms);
  return s;
}

std::string summary_csv_header() {
  return "problem,n,b,n_step,mean_iters_descent,sd_iters_descent,mean_updates,success_rate";
}

std::string summary_to_csv(const std::vector<TrialRecord>& recs) {
  const double count = static_cast<double>(recs.size());
  const double mean_descent =
      mean_of(recs, [](const TrialRecord& r) { return static_cast<double>(r.iters_descent); });
  const double mean_updates =
      mean_of(recs, [](const TrialRecord& r) { return static_cast<double>(r.precision_updates); });
  const double successes =
      mean_of(recs, [](const TrialRecord& r) { return r.success ? 1.0 : 0.0; });

  double var = 0.0;
  for (const TrialRecord& r : recs) {
    const double d = static_cast<double>(r.iters_descent) - mean_descent;
    var += d * d;
  }
  const double sd = recs.size() > 1 ? std::sqrt(var / (count - 1.0)) : 0.0;

  const TrialRecord& first = recs.front();
  std::string s;
  s += to_string(first.problem);
  s += ',' + std::to_string(first.n) + ',' + std::to_string(first.b) + ',' +
       std::to_string(first.n_step);
  s += ',' + fmt_real(mean_descent) + ',' + fmt_real(sd) + ',' + fmt_real(mean_updates) + ',' +
       fmt_real(successes);
  return s;
}

std::string summary_path(const std::string& output_path) {
  const std::string suffix = ".csv";
  if (output_path.size() > suffix.size() &&
      output_path.compare(output_path.size() - suffix.size(), suffix.size(), suffix) == 0)
    return output_path.substr(0, output_path.size() - suffix.size()) + ".summary.csv";
  return output_path + ".summary.csv";
}

std::vector<TrialRecord> run_sweep(const SweepConfig& cfg) {
  cfg.validate();

  std::ofstream out, summary;
  if (!cfg.output_path.empty()) {
    out.open(cfg.output_path);
    summary.open(summary_path(cfg.output_path));
    if (!out || !summary)
      throw OutputUnwritable("run_sweep: cannot open output files at " + cfg.output_path);
    out << csv_header() << '\n';
    summary << summary_csv_header() << '\n';
  }

  std::vector<TrialRecord> all;
  all.reserve(cfg.problem_kinds.size() * cfg.n_values.size() * cfg.b_values.size() *
              cfg.n_step_values.size() * static_cast<std::size_t>(cfg.trials));

  for (PoissonKind kind : cfg.problem_kinds) {
    for (int n : cfg.n_values) {
      for (int b : cfg.b_values) {
        for (long n_step : cfg.n_step_values) {
          std::vector<TrialRecord> tuple_records(static_cast<std::size_t>(cfg.trials));

          if (cfg.workers > 1) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(cfg.workers)
#endif
            for (long t = 0; t < cfg.trials; ++t) {
              const std::uint64_t seed = trial_seed(cfg.base_seed, kind, n, b, n_step, t);
              tuple_records[static_cast<std::size_t>(t)] =
                  run_trial(kind, n, b, n_step, seed, cfg);
              tuple_records[static_cast<std::size_t>(t)].trial_index = t;
            }
          } else {
            for (long t = 0; t < cfg.trials; ++t) {
              const std::uint64_t seed = trial_seed(cfg.base_seed, kind, n, b, n_step, t);
              tuple_records[static_cast<std::size_t>(t)] =
                  run_trial(kind, n, b, n_step, seed, cfg);
              tuple_records[static_cast<std::size_t>(t)].trial_index = t;
            }
          }

          if (out.is_open()) {
            for (const TrialRecord& r : tuple_records) out << to_csv(r) << '\n';
            summary << summary_to_csv(tuple_records) << '\n';
            if (!out || !summary) throw OutputUnwritable("run_sweep: write failed");
          }
          for (TrialRecord& r : tuple_records) all.push_back(std::move(r));
        }
      }
    }
  }
  return all;
}

}  // namespace annpde
