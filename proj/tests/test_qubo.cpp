// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "annpde/errors.hpp"
#include "annpde/qubo.hpp"
#include "test_util.hpp"

using namespace annpde;

namespace {

/// All bit vectors of length n, in numeric order (bit 0 = q[0]).
BitVec nth_state(std::size_t n, std::uint32_t k) {
  BitVec q(n, 0);
  for (std::size_t i = 0; i < n; ++i) q[i] = (k >> i) & 1u;
  return q;
}

}  // namespace

TEST_CASE("make_encoding weight rows") {
  const BinaryEncoding e13 = make_encoding(1, 3);
  CHECK(e13.weights == std::vector<double>{-1.0, 0.5, 0.25});

  const BinaryEncoding e41 = make_encoding(4, 1);
  CHECK(e41.weights == std::vector<double>{-1.0});
  CHECK(e41.total_bits() == 4);
  // single-bit components take values in {-1, 0}
  CHECK(decode({1, 0, 1, 0}, e41, 1.0) == Vector{-1.0, 0.0, -1.0, 0.0});

  // largest decodable value for b = 4 is 1 - 1/8
  const BinaryEncoding e14 = make_encoding(1, 4);
  CHECK(decode({0, 1, 1, 1}, e14, 1.0)[0] == doctest::Approx(0.875).epsilon(1e-15));

  CHECK_THROWS_AS(make_encoding(0, 3), InvalidParameter);
  CHECK_THROWS_AS(make_encoding(2, 0), InvalidParameter);
}

TEST_CASE("decode") {
  const BinaryEncoding enc = make_encoding(1, 3);
  CHECK(decode({0, 0, 0}, enc, 1.0) == Vector{0.0});
  CHECK(decode({1, 0, 1}, enc, 1.0)[0] == doctest::Approx(-0.75).epsilon(1e-15));

  const BinaryEncoding enc22 = make_encoding(2, 2);
  const Vector x = decode({0, 1, 1, 0}, enc22, 0.5);
  CHECK(x[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(x[1] == doctest::Approx(-0.5).epsilon(1e-15));

  CHECK_THROWS_AS(decode({0, 0}, enc, 1.0), LengthMismatch);
}

TEST_CASE("decode output stays within scale * [-1, 1 - 2^{1-b}]") {
  Rng rng(21);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 1 + rng.next_u64() % 4;
    const std::size_t b = 1 + rng.next_u64() % 5;
    const BinaryEncoding enc = make_encoding(n, b);
    const double scale = rng.next_uniform() * 2.0 + 1e-3;
    BitVec q(enc.total_bits());
    for (auto& bit : q) bit = rng.next_bit();

    const double hi = scale * (1.0 - std::ldexp(1.0, 1 - static_cast<int>(b)));
    for (double x : decode(q, enc, scale)) {
      CHECK(x >= -scale - 1e-15);
      CHECK(x <= hi + 1e-15);
    }
  }
}

TEST_CASE("build_initial_qubo on 1x1 pencils") {
  SymMatrix c(1);
  c.set(0, 0, 1.0);

  const QuboProblem q1 = build_initial_qubo(c, make_encoding(1, 1));
  CHECK(q1.num_bits() == 1);
  CHECK(q1.diag(0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(energy(q1, {1}) == doctest::Approx(1.0).epsilon(1e-15));

  const QuboProblem q2 = build_initial_qubo(c, make_encoding(1, 2));
  const double expected[4] = {0.0, 1.0, 0.25, 0.25};  // q in {00, 10, 01, 11}
  for (std::uint32_t k = 0; k < 4; ++k)
    CHECK(energy(q2, nth_state(2, k)) == doctest::Approx(expected[k]).epsilon(1e-14));
}

TEST_CASE("build_initial_qubo reproduces the quadratic form for every state") {
  Rng rng(22);
  for (int rep = 0; rep < 25; ++rep) {
    const BinaryEncoding enc = make_encoding(2, 2);
    const SymMatrix c = testutil::random_sym(2, rng);
    const QuboProblem q = build_initial_qubo(c, enc);
    for (std::uint32_t k = 0; k < 16; ++k) {
      const BitVec bits = nth_state(4, k);
      const Vector x = decode(bits, enc, 1.0);
      CHECK(energy(q, bits) == doctest::Approx(quad_form(c, x)).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(build_initial_qubo(SymMatrix::identity(3), make_encoding(2, 2)),
                  DimensionMismatch);
}

TEST_CASE("build_descent_qubo matches its defining expression") {
  SUBCASE("zero state has zero energy") {
    Rng rng(23);
    const SymMatrix c = testutil::random_sym(3, rng);
    const QuboProblem q = build_descent_qubo(c, {1.0, 0.0, 0.0}, 0.5, make_encoding(3, 2));
    CHECK(energy(q, BitVec(6, 0)) == 0.0);
  }

  SUBCASE("1x1 identity example") {
    SymMatrix c(1);
    c.set(0, 0, 1.0);
    const QuboProblem q = build_descent_qubo(c, {1.0}, 1.0, make_encoding(1, 1));
    CHECK(energy(q, {1}) == doctest::Approx(-1.0).epsilon(1e-15));  // 2*1*(-1) + 1
  }

  SUBCASE("exhaustive comparison on random problems") {
    Rng rng(24);
    for (int rep = 0; rep < 25; ++rep) {
      const BinaryEncoding enc = make_encoding(2, 2);
      const SymMatrix c = testutil::random_sym(2, rng);
      const Vector v = normalize(testutil::random_vec(2, rng));
      const double r = rng.next_uniform() + 0.1;
      const QuboProblem q = build_descent_qubo(c, v, r, enc);
      for (std::uint32_t k = 0; k < 16; ++k) {
        const BitVec bits = nth_state(4, k);
        const Vector x = decode(bits, enc, 1.0);
        const double expected = 2.0 * r * dot(v, matvec(c, x)) + r * r * quad_form(c, x);
        CHECK(energy(q, bits) == doctest::Approx(expected).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("energy") {
  QuboProblem q(2);
  q.add_diag(0, 1.0);
  q.add_diag(1, 1.0);
  q.add_coupling(0, 1, -3.0);
  CHECK(energy(q, {0, 0}) == 0.0);
  CHECK(energy(q, {1, 0}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(energy(q, {1, 1}) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK_THROWS_AS(energy(q, {1}), LengthMismatch);
}
