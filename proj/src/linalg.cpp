// SPDX-License-Identifier: Apache-2.0
#include "annpde/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "annpde/errors.hpp"

namespace annpde {

SymMatrix SymMatrix::identity(std::size_t order) {
  SymMatrix m(order);
  for (std::size_t i = 0; i < order; ++i) m.set(i, i, 1.0);
  return m;
}

SymMatrix SymMatrix::scaled_outer(double c, const Vector& x) {
  SymMatrix m(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i; j < x.size(); ++j) m.set(i, j, c * x[i] * x[j]);
  return m;
}

void SymMatrix::set(std::size_t i, std::size_t j, double value) {
  if (i >= order_ || j >= order_) throw DimensionMismatch("SymMatrix::set: index out of range");
  if (!std::isfinite(value)) throw InvalidParameter("SymMatrix::set: non-finite entry");
  a_[i * order_ + j] = value;
  a_[j * order_ + i] = value;
}

double dot(const Vector& x, const Vector& y) {
  if (x.size() != y.size()) throw LengthMismatch("dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double norm(const Vector& v) { return std::sqrt(dot(v, v)); }

Vector matvec(const SymMatrix& m, const Vector& v) {
  if (m.order() != v.size()) throw DimensionMismatch("matvec: dimension mismatch");
  Vector out(v.size(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double* row = m.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) s += row[j] * v[j];
    out[i] = s;
  }
  return out;
}

double quad_form(const SymMatrix& m, const Vector& v) { return dot(v, matvec(m, v)); }

Vector cholesky_solve(const SymMatrix& k, const Vector& f) {
  const std::size_t n = k.order();
  if (f.size() != n) throw DimensionMismatch("cholesky_solve: rhs length != matrix order");

  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, k(i, i));

  // Lower-triangular factor, row-major.
  std::vector<double> l(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = k(i, j);
      for (std::size_t p = 0; p < j; ++p) s -= l[i * n + p] * l[j * n + p];
      if (i == j) {
        if (s <= 1e-14 * max_diag)
          throw NotPositiveDefinite("cholesky_solve: pivot " + std::to_string(s) +
                                    " at row " + std::to_string(i));
        l[i * n + i] = std::sqrt(s);
      } else {
        l[i * n + j] = s / l[j * n + j];
      }
    }
  }

  // L y = f, then L^T u = y.
  Vector u(f);
  for (std::size_t i = 0; i < n; ++i) {
    double s = u[i];
    for (std::size_t p = 0; p < i; ++p) s -= l[i * n + p] * u[p];
    u[i] = s / l[i * n + i];
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double s = u[ii];
    for (std::size_t p = ii + 1; p < n; ++p) s -= l[p * n + ii] * u[p];
    u[ii] = s / l[ii * n + ii];
  }
  return u;
}

double rayleigh_quotient(const SymMatrix& a, const SymMatrix& b, const Vector& v) {
  if (a.order() != b.order() || a.order() != v.size())
    throw DimensionMismatch("rayleigh_quotient: dimension mismatch");
  const double denom = quad_form(b, v);
  if (denom <= 1e-14 * dot(v, v))
    throw DegenerateDenominator("rayleigh_quotient: v^T B v too small");
  return quad_form(a, v) / denom;
}

Vector normalize(const Vector& v) {
  const double len = norm(v);
  if (len < 1e-12) throw ZeroVector("normalize: zero vector");
  Vector out(v);
  for (double& x : out) x /= len;
  return out;
}

}  // namespace annpde
