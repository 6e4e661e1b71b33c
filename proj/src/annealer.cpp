// SPDX-License-Identifier: Apache-2.0
#include "annpde/annealer.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "annpde/errors.hpp"

namespace annpde {

namespace {

constexpr double kLn2 = 0.6931471805599453;
constexpr double kLn100 = 4.605170185988091;

/// Dense symmetric coupling table (zero diagonal) for O(1) row scans in the
/// flip loops. Built once per call and shared read-only across reads.
std::vector<double> dense_couplings(const QuboProblem& q) {
  const std::size_t n = q.num_bits();
  std::vector<double> w(n * n, 0.0);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j, ++idx) {
      const double c = q.upper()[idx];
      w[i * n + j] = c;
      w[j * n + i] = c;
    }
  return w;
}

struct Chain {
  BitVec q;
  double energy = 0.0;  // exact energy of q
};

/// One independent annealing read. Local fields phi_i = diag_i + sum_j W_ij q_j
/// give the flip cost dE_i = (1 - 2 q_i) phi_i in O(1); an accepted flip
/// updates the fields of every other bit from row i of W.
Chain run_chain(const QuboProblem& q, const std::vector<double>& w, long n_steps,
                long sweeps_per_step, double beta_min, double beta_max, std::uint64_t seed) {
  const std::size_t n = q.num_bits();
  Rng rng(seed);

  BitVec state(n);
  for (std::size_t i = 0; i < n; ++i) state[i] = rng.next_bit() ? 1 : 0;

  std::vector<double> phi(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = q.diag(i);
    const double* row = w.data() + i * n;
    for (std::size_t j = 0; j < n; ++j)
      if (state[j]) s += row[j];
    phi[i] = s;
  }
  double e = energy(q, state);

  BitVec best = state;
  double best_e = e;

  const double ratio = n_steps > 1 ? std::pow(beta_max / beta_min, 1.0 / static_cast<double>(n_steps - 1)) : 1.0;
  double beta = beta_min;
  for (long step = 0; step < n_steps; ++step, beta *= ratio) {
    for (long sweep = 0; sweep < sweeps_per_step; ++sweep) {
      for (std::size_t i = 0; i < n; ++i) {
        const double de = (state[i] ? -1.0 : 1.0) * phi[i];
        if (de > 0.0 && rng.next_uniform() >= std::exp(-beta * de)) continue;
        e += de;
        const double sign = state[i] ? -1.0 : 1.0;
        state[i] ^= 1;
        const double* row = w.data() + i * n;  // W_ii = 0, so phi_i stays put
#pragma omp simd
        for (std::size_t j = 0; j < n; ++j) phi[j] += sign * row[j];
        if (e < best_e) {
          best_e = e;
          best = state;
        }
      }
    }
  }

  // Incremental energies drift over millions of flips; pin the result to the
  // exact quadratic form so SampleResult.energy == energy(Q, q) holds.
  const double exact = energy(q, best);
  return Chain{std::move(best), exact};
}

SampleResult anneal_impl(const QuboProblem& q, const AnnealParams& params, Rng& rng,
                         bool parallel) {
  const std::size_t n = q.num_bits();
  if (n < 1) throw InvalidParameter("anneal: empty bit vector");
  if (params.n_steps < 1 || params.num_reads < 1 || params.sweeps_per_step < 1)
    throw InvalidParameter("anneal: n_steps, sweeps_per_step and num_reads must be >= 1");

  const std::vector<double> w = dense_couplings(q);

  double beta_min = 1.0, beta_max = 1.0;
  if (q.coefficient_l1() > 0.0) {
    std::tie(beta_min, beta_max) =
        params.beta_override ? *params.beta_override : auto_beta_range(q);
    if (!(beta_min > 0.0) || !(beta_min < beta_max))
      throw InvalidParameter("anneal: need 0 < beta_min < beta_max");
  }
  // else: every flip costs zero, the walk accepts everything at any
  // temperature and the returned state is the first one seen.

  const std::uint64_t base = rng.next_u64();
  std::vector<Chain> chains(static_cast<std::size_t>(params.num_reads));

  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < params.num_reads; ++k)
      chains[static_cast<std::size_t>(k)] =
          run_chain(q, w, params.n_steps, params.sweeps_per_step, beta_min, beta_max,
                    derive_seed(base, static_cast<std::uint64_t>(k)));
  } else {
    for (long k = 0; k < params.num_reads; ++k)
      chains[static_cast<std::size_t>(k)] =
          run_chain(q, w, params.n_steps, params.sweeps_per_step, beta_min, beta_max,
                    derive_seed(base, static_cast<std::uint64_t>(k)));
  }

  // Lowest energy, first read winning ties: identical selection either way.
  std::size_t best = 0;
  for (std::size_t k = 1; k < chains.size(); ++k)
    if (chains[k].energy < chains[best].energy) best = k;

  return SampleResult{std::move(chains[best].q), chains[best].energy, params.num_reads};
}

}  // namespace

std::pair<double, double> auto_beta_range(const QuboProblem& q) {
  const std::size_t n = q.num_bits();
  std::vector<double> row_sum(n, 0.0);
  double min_abs = std::numeric_limits<double>::infinity();

  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::abs(q.diag(i));
    row_sum[i] += d;
    if (d > 0.0) min_abs = std::min(min_abs, d);
  }
  std::size_t idx = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j, ++idx) {
      const double c = std::abs(q.upper()[idx]);
      if (c == 0.0) continue;
      row_sum[i] += c;
      row_sum[j] += c;
      min_abs = std::min(min_abs, c);
    }

  const double de_max = *std::max_element(row_sum.begin(), row_sum.end());
  if (!(de_max > 0.0)) throw EmptyProblem("auto_beta_range: all coefficients are zero");

  double beta_min = kLn2 / de_max;
  double beta_max = kLn100 / min_abs;
  if (beta_max <= beta_min) beta_max = 2.0 * beta_min;
  return {beta_min, beta_max};
}

SampleResult anneal(const QuboProblem& q, const AnnealParams& params, Rng& rng) {
  return anneal_impl(q, params, rng, true);
}

SampleResult anneal_serial(const QuboProblem& q, const AnnealParams& params, Rng& rng) {
  return anneal_impl(q, params, rng, false);
}

SampleResult exhaustive_ground_state(const QuboProblem& q) {
  const std::size_t n = q.num_bits();
  if (n > 24) throw TooLarge("exhaustive_ground_state: more than 24 bits");
  if (n < 1) throw InvalidParameter("exhaustive_ground_state: empty bit vector");

  const std::vector<double> w = dense_couplings(q);
  BitVec state(n, 0);
  std::vector<double> phi(q.diagonal());
  double e = 0.0;

  // Gray-code walk: state after step k is gray(k) = k ^ (k >> 1), so every
  // state is visited once with a single flip per step. The running energy is
  // corrected against the exact quadratic form whenever a state competes for
  // the minimum, so the result and its tie-break are exact.
  std::uint32_t best_value = 0;  // state 0 has the lowest possible binary value
  double best_e = 0.0;           // exact energy of the all-zero state
  BitVec best = state;

  const double guard = 1e-9 * (1.0 + q.coefficient_l1());
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < total; ++k) {
    const std::size_t i = static_cast<std::size_t>(std::countr_zero(k));
    e += (state[i] ? -1.0 : 1.0) * phi[i];
    const double sign = state[i] ? -1.0 : 1.0;
    state[i] ^= 1;
    const double* row = w.data() + i * n;
    for (std::size_t j = 0; j < n; ++j) phi[j] += sign * row[j];

    if ((k & 0xfff) == 0) e = energy(q, state);  // periodic drift reset
    if (e <= best_e + guard) {
      const double exact = energy(q, state);
      const std::uint32_t value = static_cast<std::uint32_t>(k ^ (k >> 1));
      if (exact < best_e || (exact == best_e && value < best_value)) {
        best_e = exact;
        best_value = value;
        best = state;
      }
    }
  }
  return SampleResult{std::move(best), best_e, 1};
}

}  // namespace annpde
