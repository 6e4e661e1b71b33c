// SPDX-License-Identifier: Apache-2.0
#include "annpde/qubo.hpp"

#include <cmath>

#include "annpde/errors.hpp"

namespace annpde {

BinaryEncoding make_encoding(std::size_t n, std::size_t b) {
  if (n < 1 || b < 1) throw InvalidParameter("make_encoding: need n >= 1 and b >= 1");
  BinaryEncoding enc;
  enc.dim = n;
  enc.bits = b;
  enc.weights.resize(b);
  enc.weights[0] = -1.0;
  for (std::size_t k = 1; k < b; ++k) enc.weights[k] = std::ldexp(1.0, -static_cast<int>(k));
  return enc;
}

Vector decode(const BitVec& q, const BinaryEncoding& enc, double scale) {
  if (q.size() != enc.total_bits()) throw LengthMismatch("decode: bit vector length != n*b");
  Vector x(enc.dim, 0.0);
  for (std::size_t i = 0; i < enc.dim; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < enc.bits; ++k)
      if (q[i * enc.bits + k]) s += enc.weights[k];
    x[i] = scale * s;
  }
  return x;
}

std::size_t QuboProblem::pair_index(std::size_t i, std::size_t j) const {
  if (i == j || i >= n_ || j >= n_) throw InvalidParameter("QuboProblem: bad coupling index");
  if (i > j) std::swap(i, j);
  return i * (2 * n_ - i - 1) / 2 + (j - i - 1);
}

double QuboProblem::coefficient_l1() const {
  double s = 0.0;
  for (double d : diag_) s += std::abs(d);
  for (double c : upper_) s += std::abs(c);
  return s;
}

double energy(const QuboProblem& q, const BitVec& bits) {
  if (bits.size() != q.num_bits()) throw LengthMismatch("energy: bit vector length mismatch");
  const std::size_t n = q.num_bits();
  double e = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!bits[i]) continue;
    e += q.diag(i);
    for (std::size_t j = i + 1; j < n; ++j)
      if (bits[j]) e += q.coupling(i, j);
  }
  return e;
}

QuboProblem build_initial_qubo(const SymMatrix& c, const BinaryEncoding& enc) {
  if (c.order() != enc.dim) throw DimensionMismatch("build_initial_qubo: order(C) != n");
  const std::size_t b = enc.bits;
  QuboProblem q(enc.total_bits());
  // M = P^T C P with M[(i,k),(j,l)] = C(i,j) p_k p_l; diagonal absorbs q^2 = q.
  for (std::size_t a = 0; a < q.num_bits(); ++a) {
    const std::size_t i = a / b, k = a % b;
    for (std::size_t be = a; be < q.num_bits(); ++be) {
      const std::size_t j = be / b, l = be % b;
      const double m = c(i, j) * enc.weights[k] * enc.weights[l];
      if (m == 0.0) continue;
      if (a == be)
        q.add_diag(a, m);
      else
        q.add_coupling(a, be, 2.0 * m);
    }
  }
  return q;
}

QuboProblem build_descent_qubo(const SymMatrix& c, const Vector& v, double r,
                               const BinaryEncoding& enc) {
  if (c.order() != enc.dim || v.size() != enc.dim)
    throw DimensionMismatch("build_descent_qubo: dimension mismatch");
  const std::size_t b = enc.bits;
  const Vector g = matvec(c, v);  // (v^T C)^T
  QuboProblem q(enc.total_bits());
  const double r2 = r * r;
  for (std::size_t a = 0; a < q.num_bits(); ++a) {
    const std::size_t i = a / b, k = a % b;
    q.add_diag(a, 2.0 * r * g[i] * enc.weights[k] + r2 * c(i, i) * enc.weights[k] * enc.weights[k]);
    for (std::size_t be = a + 1; be < q.num_bits(); ++be) {
      const std::size_t j = be / b, l = be % b;
      const double m = r2 * c(i, j) * enc.weights[k] * enc.weights[l];
      if (m != 0.0) q.add_coupling(a, be, 2.0 * m);
    }
  }
  return q;
}

}  // namespace annpde
