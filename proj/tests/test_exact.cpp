#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "ptcalc/exact.hpp"

using namespace ptcalc;

namespace {

Cyclotomic z(int p, long long j) { return cyc_root_power(p, j); }
Cyclotomic one(int p) { return Cyclotomic(p, 1); }

}  // namespace

TEST(Cyclotomic, RootPowerReduction) {
  EXPECT_EQ(z(5, 0), one(5));
  EXPECT_EQ(z(5, 5), one(5));
  // x^2 = -1 - x mod 1 + x + x^2
  EXPECT_EQ(z(3, 2), Cyclotomic(3, -1) - z(3, 1));
  const Cyclotomic w = z(3, 2);
  const auto c = w.coords();
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0], -1);
  EXPECT_EQ(c[1], -1);
  EXPECT_EQ(z(7, -1), z(7, 6));
}

TEST(Cyclotomic, RejectsBadConductor) {
  EXPECT_THROW(z(4, 1), InputError);
  EXPECT_THROW(z(9, 1), InputError);
  EXPECT_THROW(z(2, 1), InputError);
  EXPECT_THROW(z(1, 0), InputError);
}

TEST(Cyclotomic, Multiplication) {
  for (int p : {3, 5, 7, 11}) {
    EXPECT_EQ(cyc_mul(z(p, 1), z(p, p - 1)), one(p));
    const Cyclotomic w = z(p, 1) + z(p, -1);
    EXPECT_EQ(cyc_mul(w, one(p)), w);
  }
  EXPECT_EQ(cyc_mul(z(5, 1) + z(5, 4), z(5, 2) + z(5, 3)), Cyclotomic(5, -1));
  EXPECT_THROW(cyc_mul(z(5, 1), z(7, 1)), InputError);
}

TEST(Cyclotomic, MultiplicationMatchesExponentArithmetic) {
  std::mt19937_64 rng(7);
  for (int p : {3, 5, 7, 11}) {
    for (int trial = 0; trial < 50; ++trial) {
      Cyclotomic a(p), b(p), c(p);
      for (int e = 0; e < p; ++e) {
        a += z(p, e) * Rational(static_cast<long long>(rng() % 7) - 3);
        b += z(p, e) * Rational(static_cast<long long>(rng() % 5) - 2, 1 + static_cast<long long>(rng() % 3));
        c += z(p, e) * Rational(static_cast<long long>(rng() % 3));
      }
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_TRUE(oracle::close(oracle::numeric(a * b), oracle::numeric(a) * oracle::numeric(b), 1e-6L));
    }
  }
}

TEST(Cyclotomic, GaloisAction) {
  const Cyclotomic a = z(7, 1) + z(7, 6);
  EXPECT_EQ(galois_apply(a, 1), a);
  EXPECT_EQ(galois_apply(a, 2), z(7, 2) + z(7, 5));
  EXPECT_EQ(galois_apply(z(7, 1), 6), z(7, 6));
  EXPECT_THROW(galois_apply(a, 7), InputError);
  EXPECT_THROW(galois_apply(a, 0), InputError);
  // sigma_k acts on the complex value as zeta -> zeta^k
  for (int p : {5, 7, 11})
    for (int k = 1; k < p; ++k)
      for (int j = 0; j < p; ++j)
        EXPECT_TRUE(oracle::close(oracle::numeric(galois_apply(z(p, j) + z(p, 2 * j) * Rational(3), k)),
                                  oracle::root(p, j * k) + 3.0L * oracle::root(p, 2 * j * k)));
}

TEST(Cyclotomic, FullTrace) {
  EXPECT_EQ(trace_full(one(5)), 4);
  for (int p : {3, 5, 7, 11, 13}) {
    EXPECT_EQ(trace_full(z(p, 1)), -1);
    for (long long j = -2 * p; j <= 2 * p; ++j) EXPECT_EQ(trace_full(z(p, j)), j % p == 0 ? p - 1 : -1);
  }
  EXPECT_EQ(trace_full(z(7, 1) + z(7, -1)), -2);
}

TEST(Cyclotomic, FullTraceIsSumOfEmbeddings) {
  for (int p : {3, 5, 7}) {
    Cyclotomic a = z(p, 1) * Rational(2, 3) + z(p, 2) * Rational(-5) + one(p) * Rational(1, 2);
    Cyclotomic sum(p);
    for (int k = 1; k < p; ++k) sum += galois_apply(a, k);
    ASSERT_TRUE(sum.is_rational());
    EXPECT_EQ(sum.rational_value(), trace_full(a));
  }
}

TEST(Cyclotomic, RealTrace) {
  for (int p : {3, 5, 7, 11}) EXPECT_EQ(trace_real(z(p, 1) + z(p, -1)), -1);
  EXPECT_EQ(trace_real(Cyclotomic(5, 2)), 4);
  EXPECT_THROW(trace_real(z(5, 1)), InputError);
  const Cyclotomic w = z(11, 3) + z(11, 8) + one(11) * Rational(7, 2);
  EXPECT_EQ(trace_real(w) * 2, trace_full(w));
}

TEST(Cyclotomic, Formatting) {
  EXPECT_EQ(Cyclotomic(5).to_string(), "0");
  EXPECT_EQ(z(3, 2).to_string(), "-1 - z");
  EXPECT_EQ((z(7, 2) * Rational(3, 2)).to_string(), "3/2*z^2");
}
