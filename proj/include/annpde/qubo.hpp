// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "annpde/linalg.hpp"

namespace annpde {

using BitVec = std::vector<std::uint8_t>;

/// Fixed-point encoding of an n-component real vector into n*b bits.
/// Component i is decoded from its b bits q[i*b .. i*b+b-1] as
///   x_i = -q_0 + q_1/2 + q_2/4 + ... + q_{b-1}/2^{b-1},
/// a two's-complement-style grid of 2^b values spaced 2^{1-b} apart in
/// [-1, 1 - 2^{1-b}]. Bit layout is component-major.
struct BinaryEncoding {
  std::size_t dim = 0;           // vector dimension n
  std::size_t bits = 0;          // bits per component b
  std::vector<double> weights;   // (-1, 1/2, 1/4, ..., 2^{1-b})

  std::size_t total_bits() const { return dim * bits; }
  /// Grid spacing 2^{1-b}.
  double resolution() const { return weights.size() > 1 ? weights.back() : 1.0; }
};

BinaryEncoding make_encoding(std::size_t n, std::size_t b);

/// scale * (I_n (x) p) q. Component i uses bits [i*b, (i+1)*b).
Vector decode(const BitVec& q, const BinaryEncoding& enc, double scale);

/// Quadratic form over binary variables:
///   E(q) = sum_i diag[i] q_i + sum_{i<j} coupling(i,j) q_i q_j.
/// Couplings are stored once per unordered pair (upper triangle) with the
/// symmetric factor pre-combined; linear terms are folded onto the diagonal
/// (q_i^2 == q_i).
class QuboProblem {
 public:
  QuboProblem() = default;
  explicit QuboProblem(std::size_t num_bits)
      : n_(num_bits), diag_(num_bits, 0.0), upper_(num_bits * (num_bits - 1) / 2, 0.0) {}

  std::size_t num_bits() const { return n_; }

  double diag(std::size_t i) const { return diag_[i]; }
  void add_diag(std::size_t i, double v) { diag_[i] += v; }

  /// Combined coefficient of q_i q_j, i != j.
  double coupling(std::size_t i, std::size_t j) const { return upper_[pair_index(i, j)]; }
  void add_coupling(std::size_t i, std::size_t j, double v) { upper_[pair_index(i, j)] += v; }

  const std::vector<double>& diagonal() const { return diag_; }
  const std::vector<double>& upper() const { return upper_; }

  /// Sum of |coefficient| over all terms; 0 for the empty problem.
  double coefficient_l1() const;

 private:
  std::size_t pair_index(std::size_t i, std::size_t j) const;

  std::size_t n_ = 0;
  std::vector<double> diag_;
  std::vector<double> upper_;
};

/// E(Q, q). Throws LengthMismatch.
double energy(const QuboProblem& q, const BitVec& bits);

/// QUBO whose energy equals x^T C x with x = decode(q, enc, 1), i.e. the
/// bit-space image P^T C P of C under P = I_n (x) p.
QuboProblem build_initial_qubo(const SymMatrix& c, const BinaryEncoding& enc);

/// QUBO whose energy equals 2r v^T C x + r^2 x^T C x with x = decode(q, enc, 1);
/// the update-direction objective of the descent stage, linear part folded
/// into the diagonal.
QuboProblem build_descent_qubo(const SymMatrix& c, const Vector& v, double r,
                               const BinaryEncoding& enc);

}  // namespace annpde
