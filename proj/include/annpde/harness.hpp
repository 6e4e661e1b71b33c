// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "annpde/pde.hpp"

namespace annpde {

/// Parameter sweep: Cartesian product of the value lists, `trials` seeded
/// runs per tuple. Field names match the JSON config keys in lower_snake_case.
struct SweepConfig {
  std::vector<PoissonKind> problem_kinds;
  std::vector<int> n_values;
  std::vector<int> b_values;
  std::vector<long> n_step_values;
  long trials = 1000;
  std::uint64_t base_seed = 0;
  double epsilon0 = 1e-8;  // solver tolerance
  double epsilon1 = 1e-8;  // success threshold on the RMSE
  int n_rpt = 0;
  EtaMode eta_mode = EtaMode::BDependent;
  double eta = 0.1;
  std::string output_path;  // empty: keep records in memory only
  int workers = 1;

  void validate() const;
};

struct TrialRecord {
  PoissonKind problem = PoissonKind::Sym1D;
  int n = 0;
  int b = 0;
  long n_step = 0;
  long trial_index = 0;
  std::uint64_t seed = 0;
  long iters_initial = 0;
  long iters_descent = 0;
  long precision_updates = 0;
  double lambda_final = 0.0;
  double rmse_value = 0.0;
  bool success = false;
  double wall_time_ms = 0.0;  // excluded from determinism guarantees
};

/// sqrt(mean of squared componentwise differences). Throws LengthMismatch.
double rmse(const Vector& u, const Vector& u_ref);

/// Mesh updates needed to shrink r_ini to r at rate eta:
/// (log2 r - log2 r_ini) / log2 eta. Throws InvalidParameter unless
/// 0 < r < r_ini and 0 < eta < 1.
double theoretical_updates(double r, double r_ini, double eta);

/// Deterministic per-trial seed: base_seed + stable hash of the parameter
/// tuple and trial index.
std::uint64_t trial_seed(std::uint64_t base_seed, PoissonKind kind, int n, int b, long n_step,
                         long trial_index);

/// One seeded end-to-end run: solve the PDE with annealing, score the RMSE
/// against the Cholesky reference of the same system. Solver errors are
/// recorded as failures (rmse = +inf), never propagated.
TrialRecord run_trial(PoissonKind kind, int n, int b, long n_step, std::uint64_t seed,
                      const SweepConfig& cfg);

/// Runs the full sweep. Trials of a tuple execute concurrently across
/// cfg.workers threads; records and summary rows are emitted in deterministic
/// (parameter tuple, trial index) order regardless of completion order. When
/// output_path is set, records stream to that CSV and per-tuple aggregates to
/// the companion "<stem>.summary.csv". Throws OutputUnwritable.
std::vector<TrialRecord> run_sweep(const SweepConfig& cfg);

std::string csv_header();
std::string to_csv(const TrialRecord& rec);
std::string summary_csv_header();
/// Aggregate row over the records of one parameter tuple.
std::string summary_to_csv(const std::vector<TrialRecord>& tuple_records);
/// Companion summary file path for an output path ("x.csv" -> "x.summary.csv").
std::string summary_path(const std::string& output_path);

}  // namespace annpde
