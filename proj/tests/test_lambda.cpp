#include <gtest/gtest.h>

#include "ckbound/ckbound.hpp"

using namespace ckbound;

namespace {

// Number of multisets of size i drawn from a set of size a, by enumeration.
long multisets(long a, long i) {
  if (i == 0) return 1;
  if (a == 0) return 0;
  long total = 0;
  for (long take = 0; take <= i; ++take) total += multisets(a - 1, i - take);
  return total;
}

}  // namespace

TEST(Lambda, SymmetricPowerCountsMultisets) {
  for (long a = 0; a <= 6; ++a) {
    for (unsigned long i = 0; i <= 6; ++i) {
      EXPECT_EQ(symmetric_power(Integer(a), i), multisets(a, static_cast<long>(i)))
          << "a=" << a << " i=" << i;
    }
  }
}

TEST(Lambda, SymmetricPowersOfNegativeAreSignedBinomials) {
  // sum_i s^i(-m) t^i = (1-t)^m
  for (long m = 0; m <= 5; ++m) {
    const QSeries expected = expand(RationalFunction(poly_pow({1, -1}, static_cast<unsigned>(m)), {1}), 8);
    for (unsigned long i = 0; i <= 8; ++i) EXPECT_EQ(symmetric_power(Integer(-m), i), expected[i]);
  }
}

TEST(Lambda, ClassArithmetic) {
  const C2Class x{3, 2};
  EXPECT_EQ(x.dim(), 5);
  EXPECT_EQ(x.sgn(), 1);
  EXPECT_EQ(x.fixed_dim(), 3);
  const C2Class xi{0, 1};
  EXPECT_EQ(xi * xi, (C2Class{1, 0}));
}

TEST(Lambda, SignRepresentationPowers) {
  // Sym^k of the sign representation is trivial for even k, sign for odd k
  const C2Class xi{0, 1};
  for (unsigned long k = 0; k <= 6; ++k) {
    const C2Class s = symmetric_power(xi, k);
    EXPECT_EQ(s, (k % 2 == 0 ? C2Class{1, 0} : C2Class{0, 1}));
  }
}

TEST(Lambda, SublemmaGrid) {
  for (long a = -8; a <= 8; ++a) {
    for (long b = -8; b <= 8; ++b) {
      const auto r = verify_sublemma_sgn({a, b}, 64);
      EXPECT_TRUE(r.holds) << "a=" << a << " b=" << b;
    }
  }
}

TEST(Lambda, DimensionChecksFromExtraction) {
  // 1/(1 - 4t + t^2): e_1 = 4, e_2 = 5
  const ExponentVector ev = extract_exponents(expand(RationalFunction({1}, {1, -4, 1}), 8));
  EXPECT_EQ(ev.at(1), 4);
  EXPECT_EQ(ev.at(2), 5);
}
