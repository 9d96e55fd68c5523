#pragma once

// The representation ring Z[xi]/(xi^2 - 1) of the group of order two, with
// its symmetric-power operations and the dim / sgn specializations.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ckbound/series.hpp"

namespace ckbound {

/// a + b*xi, where xi is the class of the sign representation.
struct C2Class {
  Integer a;
  Integer b;

  Integer dim() const { return a + b; }
  Integer sgn() const { return a - b; }

  /// Dimension of the invariant subspace, (dim + sgn) / 2 = a.
  Integer fixed_dim() const {
    Integer twice = dim() + sgn();
    return twice / 2;
  }

  bool is_effective() const { return a >= 0 && b >= 0; }

  friend C2Class operator+(const C2Class& x, const C2Class& y) {
    return {x.a + y.a, x.b + y.b};
  }
  friend C2Class operator-(const C2Class& x, const C2Class& y) {
    return {x.a - y.a, x.b - y.b};
  }
  friend C2Class operator*(const C2Class& x, const C2Class& y) {
    return {x.a * y.a + x.b * y.b, x.a * y.b + x.b * y.a};
  }
  friend bool operator==(const C2Class& x, const C2Class& y) {
    return x.a == y.a && x.b == y.b;
  }
};

/// s^i on the lambda-ring Z: C(a+i-1, i) for a >= 0 and (-1)^i C(m, i) for a = -m.
inline Integer symmetric_power(const Integer& a, unsigned long i) {
  Integer result;
  if (a >= 0) {
    Integer top = a + static_cast<unsigned long>(i) - 1;
    if (i == 0) return 1;
    mpz_bin_ui(result.get_mpz_t(), top.get_mpz_t(), i);
  } else {
    Integer m = -a;
    mpz_bin_ui(result.get_mpz_t(), m.get_mpz_t(), i);
    if (i % 2 == 1) result = -result;
  }
  return result;
}

/// s^k(a + b xi) = sum_{i+j=k} s^i(a) s^j(b) xi^j.
inline C2Class symmetric_power(const C2Class& c, unsigned long k) {
  C2Class out{0, 0};
  for (unsigned long j = 0; j <= k; ++j) {
    Integer term = symmetric_power(c.a, k - j) * symmetric_power(c.b, j);
    if (j % 2 == 0) {
      out.a += term;
    } else {
      out.b += term;
    }
  }
  return out;
}

/// (1-t)^{-c} = sum_k s^k(c) t^k, split into its 1- and xi-components.
struct ClassSeries {
  QSeries trivial;
  QSeries sign;

  QSeries dim_image() const { return trivial + sign; }
  QSeries sgn_image() const { return trivial - sign; }
};

inline ClassSeries power_series_with_class_exponent(const C2Class& c, std::size_t order) {
  std::vector<Rational> trivial(order + 1), sign(order + 1);
  for (std::size_t k = 0; k <= order; ++k) {
    C2Class s = symmetric_power(c, k);
    trivial[k] = s.a;
    sign[k] = s.b;
  }
  return {QSeries(std::move(trivial)), QSeries(std::move(sign))};
}

struct SublemmaReport {
  bool holds = true;
  std::optional<std::size_t> first_mismatch;
};

/// Checks sgn((1-t)^{-a-b xi}) = (1-t)^{-a} (1+t)^{-b} against an
/// independent rational-function expansion of the right-hand side.
inline SublemmaReport verify_sublemma_sgn(const C2Class& c, std::size_t order) {
  const IntPoly one_minus_t{1, -1};
  const IntPoly one_plus_t{1, 1};
  IntPoly num{1}, den{1};
  auto absorb = [&](const Integer& e, const IntPoly& base) {
    IntPoly& side = e >= 0 ? den : num;
    side = poly_mul(side, poly_pow(base, static_cast<unsigned>(Integer(abs(e)).get_ui())));
  };
  absorb(c.a, one_minus_t);
  absorb(c.b, one_plus_t);
  const QSeries expected = expand(RationalFunction(num, den), order);
  const QSeries actual = power_series_with_class_exponent(c, order).sgn_image();

  for (std::size_t i = 0; i <= order; ++i) {
    if (actual[i] != expected[i]) return {false, i};
  }
  return {};
}

}  // namespace ckbound
