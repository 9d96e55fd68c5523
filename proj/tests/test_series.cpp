#include <gtest/gtest.h>

#include <random>

#include "ckbound/ckbound.hpp"

using namespace ckbound;

namespace {

QSeries from_longs(std::initializer_list<long> values) {
  std::vector<Rational> c;
  for (long v : values) c.emplace_back(v);
  return QSeries(std::move(c));
}

QSeries random_series(std::mt19937_64& rng, std::size_t order, bool unit) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
  std::vector<Rational> c(order + 1);
  for (auto& x : c) x = Rational(num(rng), den(rng));
  if (unit) c[0] = 1;
  return QSeries(std::move(c));
}

}  // namespace

TEST(Series, MultiplicationTruncatesToSmallerOrder) {
  const QSeries a = from_longs({1, 1, 1, 1});
  const QSeries b = from_longs({1, -1});
  const QSeries p = a * b;
  EXPECT_EQ(p.order(), 1u);
  EXPECT_EQ(p[0], 1);
  EXPECT_EQ(p[1], 0);
}

TEST(Series, InverseOfOneMinusTIsGeometric) {
  const QSeries inv = invert(from_longs({1, -1, 0, 0, 0, 0}));
  for (std::size_t i = 0; i <= 5; ++i) EXPECT_EQ(inv[i], 1);
}

TEST(Series, InvertRejectsZeroConstant) {
  try {
    invert(from_longs({0, 1}));
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroConstantTerm);
  }
}

TEST(Series, ExpTakesLogBack) {
  std::mt19937_64 rng(20240601);
  for (int trial = 0; trial < 20; ++trial) {
    const QSeries f = random_series(rng, 12, true);
    EXPECT_EQ(exp(log(f)), f);
  }
}

TEST(Series, SquareRootSquaresBack) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const QSeries f = random_series(rng, 10, true);
    const QSeries root = rational_power(f, Rational(1, 2));
    EXPECT_EQ(root * root, f);
  }
}

TEST(Series, ExpandMatchesRecurrence) {
  // 1/(1 - t - t^2) gives Fibonacci numbers
  const QSeries fib = expand(RationalFunction({1}, {1, -1, -1}), 30);
  Integer a = 1, b = 1;
  for (std::size_t i = 0; i <= 30; ++i) {
    EXPECT_EQ(fib[i], a) << "i=" << i;
    const Integer next = a + b;
    a = b;
    b = next;
  }
}

TEST(Series, ExpandRejectsZeroDenominatorConstant) {
  try {
    expand(RationalFunction({1}, {0, 1}), 4);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroDenominatorConstant);
  }
}

TEST(Series, BinomialPowerBothPathsAgree) {
  std::mt19937_64 rng(11);
  const QSeries a = random_series(rng, 40, false);
  for (std::size_t k : {1u, 2u, 3u, 7u}) {
    for (long e : {-60L, -5L, -1L, 0L, 1L, 4L, 60L}) {
      // oracle: repeated multiplication by the polynomial (1 - t^k)^{sign}
      QSeries expected = a;
      const QSeries factor = e >= 0 ? QSeries::one(40) - QSeries::monomial(1, k, 40)
                                    : invert(QSeries::one(40) - QSeries::monomial(1, k, 40));
      for (long i = 0; i < std::abs(e); ++i) expected = expected * factor;
      EXPECT_EQ(mul_binomial_power(a, k, e), expected) << "k=" << k << " e=" << e;
    }
  }
}

TEST(Series, HugeBinomialExponent) {
  Integer e;
  mpz_ui_pow_ui(e.get_mpz_t(), 10, 30);
  const QSeries s = mul_binomial_power(QSeries::one(3), 1, Integer(-e));
  // (1-t)^{-e} = 1 + e t + e(e+1)/2 t^2 + ...
  EXPECT_EQ(s[1], e);
  EXPECT_EQ(s[2], Rational(e * (e + 1) / 2));
}

TEST(Series, CoefficientwiseComparisonReportsFirstViolation) {
  const auto cmp = compare_coefficientwise(from_longs({1, 2, 5, 1}), from_longs({1, 3, 4, 0}), 3);
  EXPECT_FALSE(cmp.holds);
  ASSERT_TRUE(cmp.first_violation.has_value());
  EXPECT_EQ(*cmp.first_violation, 2u);
}

TEST(Series, PartialSums) {
  const QSeries s = partial_sums(from_longs({1, 2, 3, 4}));
  EXPECT_EQ(s, from_longs({1, 3, 6, 10}));
}

TEST(Series, TruncationCannotExtend) {
  EXPECT_THROW(from_longs({1, 2}).truncated(5), Error);
}

TEST(Interval, KappaThreeEnclosesDoubleValue) {
  const double expected = 1.0 + 2.0 / std::log(3.0);
  const Interval k = kappa_interval(3);
  EXPECT_LE(k.lo_double(), expected + 1e-15);
  EXPECT_GE(k.hi_double(), expected - 1e-15);
  EXPECT_EQ(k.upper_decimal(30).substr(0, 28), k.lower_decimal(30).substr(0, 28));
}

TEST(Interval, DecimalRoundingDirections) {
  const Interval third = Interval::from_rational(Rational(1, 3));
  EXPECT_EQ(third.upper_decimal(4), "0.3334");
  EXPECT_EQ(third.lower_decimal(4), "0.3333");
}
