// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

namespace annpde {

using Vector = std::vector<double>;

/// Dense symmetric matrix, row-major. Symmetry is enforced structurally:
/// set() writes both mirror entries, so entries(i,j) == entries(j,i) holds
/// exactly at all times. Problem sizes in this library are tiny (n <= 49
/// unknowns), so dense storage is the right trade.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t order) : order_(order), a_(order * order, 0.0) {}

  static SymMatrix identity(std::size_t order);
  /// c * x x^T (exactly symmetric by construction).
  static SymMatrix scaled_outer(double c, const Vector& x);

  std::size_t order() const { return order_; }

  double operator()(std::size_t i, std::size_t j) const { return a_[i * order_ + j]; }

  /// Writes entry (i, j) and its mirror (j, i).
  void set(std::size_t i, std::size_t j, double value);

  const double* row(std::size_t i) const { return a_.data() + i * order_; }

 private:
  std::size_t order_ = 0;
  std::vector<double> a_;
};

double dot(const Vector& x, const Vector& y);
double norm(const Vector& v);
Vector matvec(const SymMatrix& m, const Vector& v);
/// v^T M v
double quad_form(const SymMatrix& m, const Vector& v);

/// Direct solve of K u = f for symmetric positive-definite K via Cholesky
/// factorization. This is the classical reference solver the annealing
/// pipeline is measured against.
///
/// Throws NotPositiveDefinite when a pivot drops to <= 1e-14 times the
/// largest diagonal entry of K.
Vector cholesky_solve(const SymMatrix& k, const Vector& f);

/// (v^T A v) / (v^T B v). Throws DegenerateDenominator when
/// v^T B v <= 1e-14 * |v|^2.
double rayleigh_quotient(const SymMatrix& a, const SymMatrix& b, const Vector& v);

/// v / |v|. Throws ZeroVector when |v| < 1e-12.
Vector normalize(const Vector& v);

}  // namespace annpde
