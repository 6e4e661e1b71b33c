// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <utility>

#include "annpde/qubo.hpp"
#include "annpde/rng.hpp"

namespace annpde {

struct AnnealParams {
  long n_steps = 1000;       // temperature steps; the knob that plays the role of annealing time
  long sweeps_per_step = 1;  // full bit passes per temperature
  long num_reads = 1;        // independent restarts, best-of selection
  std::optional<std::pair<double, double>> beta_override;  // (beta_min, beta_max)
};

struct SampleResult {
  BitVec q;
  double energy = 0.0;  // always energy(Q, q) of the returned state, recomputed exactly
  long reads_taken = 0;
};

/// Geometric schedule endpoints from the coefficient table:
///   beta_min = ln(2) / dE_max,  beta_max = ln(100) / dE_min,
/// with dE_max = max_i (|diag_i| + sum_j |coup_ij|) and dE_min the smallest
/// nonzero |coefficient|. Throws EmptyProblem when every coefficient is zero.
std::pair<double, double> auto_beta_range(const QuboProblem& q);

/// Single-bit Metropolis simulated annealing. Each read starts from random
/// bits and walks n_steps geometrically spaced temperatures, sweeping all
/// bits in order at each one (flip attempts per read = n_steps *
/// sweeps_per_step * num_bits). Returns the lowest-energy state seen across
/// all reads. Bit-for-bit deterministic for a fixed rng state; reads run in
/// parallel with sub-seeds derived from one base draw.
SampleResult anneal(const QuboProblem& q, const AnnealParams& params, Rng& rng);

/// Same contract and identical output as anneal(); reads run sequentially.
/// Kept as the reference implementation for tests and benchmarks.
SampleResult anneal_serial(const QuboProblem& q, const AnnealParams& params, Rng& rng);

/// Exact minimum over all 2^num_bits states (Gray-code walk); ties broken
/// by the lowest binary value of q (bit i has weight 2^i). Test oracle.
/// Throws TooLarge when num_bits > 24.
SampleResult exhaustive_ground_state(const QuboProblem& q);

/// Minimal sampler contract consumed by the eigensolver: QUBO in, low-energy
/// state out. Alternative backends (e.g. hardware Ising machine clients)
/// implement this same interface.
class Sampler {
 public:
  virtual ~Sampler() = default;
  virtual SampleResult sample(const QuboProblem& q, Rng& rng) = 0;
};

class SimulatedAnnealer final : public Sampler {
 public:
  explicit SimulatedAnnealer(AnnealParams params, bool parallel_reads = true)
      : params_(std::move(params)), parallel_(parallel_reads) {}

  SampleResult sample(const QuboProblem& q, Rng& rng) override {
    return parallel_ ? anneal(q, params_, rng) : anneal_serial(q, params_, rng);
  }

  const AnnealParams& params() const { return params_; }

 private:
  AnnealParams params_;
  bool parallel_;
};

class ExhaustiveSampler final : public Sampler {
 public:
  SampleResult sample(const QuboProblem& q, Rng&) override { return exhaustive_ground_state(q); }
};

}  // namespace annpde
