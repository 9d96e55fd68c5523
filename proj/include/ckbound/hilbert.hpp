#pragma once

// Local and global Hilbert series of the Selmer algebras attached to a
// hyperbolic curve, built from its arithmetic invariants.

#include <cstddef>
#include <string>
#include <vector>

#include "ckbound/report.hpp"
#include "ckbound/series.hpp"

namespace ckbound {

struct BadPrime {
  long ell = 0;
  long n_ell = 1;  ///< irreducible components on the special fibre at ell
  bool in_S = false;
};

/// Arithmetic invariants of a curve Y = X \ D over Q.
struct CurveData {
  long g = 0;             ///< genus
  long n = 0;             ///< degree of D
  long r = 0;             ///< Mordell-Weil rank of the Jacobian
  long s = 0;             ///< #S
  long rho = 1;           ///< rank of the rational Neron-Severi group
  long d_closed = 0;      ///< number of closed points of D
  long n1 = 0;            ///< #D(R)
  long p = 0;             ///< auxiliary prime of good reduction
  long points_mod_p = 0;  ///< #Y(F_p)
  std::vector<BadPrime> bad_primes;
};

inline bool is_hyperbolic(long g, long n) { return g >= 0 && n >= 0 && 2 * g + n > 2; }

inline void require_hyperbolic(long g, long n) {
  if (g < 0 || n < 0) {
    throw Error(ErrorCode::InvalidCurveData, "g and n must be non-negative");
  }
  if (!is_hyperbolic(g, n)) {
    throw Error(ErrorCode::NotHyperbolic, "2g+n > 2 fails for g=" + std::to_string(g) +
                                              ", n=" + std::to_string(n));
  }
}

inline void require_valid_n1(long n, long n1) {
  if (n1 < 0 || n1 > n || (n - n1) % 2 != 0) {
    throw Error(ErrorCode::InvalidN1, "n1=" + std::to_string(n1) +
                                          " must satisfy 0 <= n1 <= n and n1 = n mod 2 (n=" +
                                          std::to_string(n) + ")");
  }
}

/// Checks everything the series constructions depend on.
inline void validate_series_params(const CurveData& c) {
  require_hyperbolic(c.g, c.n);
  require_valid_n1(c.n, c.n1);
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidCurveData, what); };
  if (c.r < 0 || c.s < 0 || c.d_closed < 0) fail("r, s and d_closed must be non-negative");
  // A genus-0 curve has trivial Jacobian: no rank and no Neron-Severi classes.
  if (c.g == 0 && (c.r != 0 || c.rho != 0)) fail("r and rho must be 0 when g = 0");
  if (c.g > 0 && c.rho < 1) fail("rho must be at least 1 when g > 0");
  if (c.d_closed > c.n) fail("d_closed must not exceed n");
  if (c.n == 0 && c.d_closed != 0) fail("d_closed must be 0 when n = 0");
}

/// Full validation, including the prime data used by the point-count bound.
inline void validate_curve(const CurveData& c) {
  validate_series_params(c);
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidCurveData, what); };
  if (c.p < 2) fail("p must be a prime");
  if (c.points_mod_p < 0) fail("points_mod_p must be non-negative");
  for (const auto& bp : c.bad_primes) {
    if (bp.ell < 2) fail("bad prime ell must be at least 2");
    if (bp.n_ell < 1) fail("n_ell must be at least 1");
    if (bp.ell == c.p) {
      fail(bp.in_S ? "p must not lie in S" : "p must be a prime of good reduction");
    }
  }
}

// ---------------------------------------------------------------------------
// Closed forms

/// (1 - g t) / (1 - 2g t - (n-1) t^2)
inline RationalFunction local_rational(long g, long n) {
  return RationalFunction({1, -g}, {1, -2 * g, -(n - 1)});
}

/// 1 / (1 - 2g t - (n-1) t^2), the dimension image of the motivic series.
inline RationalFunction motivic_rational(long g, long n) {
  return RationalFunction({1}, {1, -2 * g, -(n - 1)});
}

/// 1 + (n1-1) t^2
inline IntPoly real_points_factor(long n1) { return {1, 0, n1 - 1}; }

/// 1 / (1 + (n1-1) t^2), the sign image of the motivic series.
inline RationalFunction sgn_motivic_rational(long n1) {
  return RationalFunction({1}, real_points_factor(n1));
}

/// G(t) = (1 - 2g t^2 - (n-1) t^4) / ((1 + (n1-1) t^2)(1 - 2g t - (n-1) t^2)),
/// the product of the dimension and sign images divided by the dimension
/// image at t^2. HS_R(t)^2 = G(t) HS_R(t^2).
inline RationalFunction g_rational(long g, long n, long n1) {
  return RationalFunction({1, 0, -2 * g, 0, -(n - 1)},
                          poly_mul(real_points_factor(n1), {1, -2 * g, -(n - 1)}));
}

inline QSeries local_series(const CurveData& c, std::size_t order) {
  require_hyperbolic(c.g, c.n);
  return expand(local_rational(c.g, c.n), order);
}

inline QSeries motivic_dim_series(const CurveData& c, std::size_t order) {
  require_hyperbolic(c.g, c.n);
  return expand(motivic_rational(c.g, c.n), order);
}

inline QSeries sgn_motivic_series(const CurveData& c, std::size_t order) {
  require_hyperbolic(c.g, c.n);
  require_valid_n1(c.n, c.n1);
  return expand(sgn_motivic_rational(c.n1), order);
}

inline QSeries g_series(const CurveData& c, std::size_t order) {
  require_hyperbolic(c.g, c.n);
  require_valid_n1(c.n, c.n1);
  return expand(g_rational(c.g, c.n, c.n1), order);
}

// ---------------------------------------------------------------------------
// The real Hilbert series HS_R as a product of roots of G

/// Number of factors G(t^{2^j})^{1/2^{j+1}} that matter to the given order:
/// j = 0 .. ceil(log2(order+1)).
inline std::size_t hs_r_factor_count(std::size_t order) {
  std::size_t j = 0;
  while ((std::size_t{1} << j) < order + 1) ++j;
  return j + 1;
}

/// The truncated factors G(t^{2^j})^{1/2^{j+1}}; factors with 2^j > order are 1.
inline std::vector<QSeries> hs_r_factors(const CurveData& c, std::size_t order) {
  const QSeries g = g_series(c, order);
  std::vector<QSeries> factors;
  const std::size_t count = hs_r_factor_count(order);
  for (std::size_t j = 0; j < count; ++j) {
    const std::size_t step = std::size_t{1} << j;
    if (step > order) {
      factors.push_back(QSeries::one(order));
      continue;
    }
    Integer denom;
    mpz_ui_pow_ui(denom.get_mpz_t(), 2, j + 1);
    factors.push_back(rational_power(substitute_power(g, step), Rational(Integer(1), denom)));
  }
  return factors;
}

inline QSeries product(const std::vector<QSeries>& factors, std::size_t order) {
  QSeries acc = QSeries::one(order);
  for (const auto& f : factors) acc = acc * f;
  return acc;
}

inline QSeries hs_r(const CurveData& c, std::size_t order) {
  return product(hs_r_factors(c, order), order);
}

/// Exponent of (1 - t^2) in the global series: rho + #|D| - 1 - s.
inline long global_t2_exponent(const CurveData& c) { return c.rho + c.d_closed - 1 - c.s; }

/// (1-t)^{-r} (1-t^2)^{rho+#|D|-1-s} HS_loc / HS_R, from a precomputed HS_R.
inline QSeries global_series_from(const CurveData& c, const QSeries& hs_real) {
  validate_series_params(c);
  const std::size_t order = hs_real.order();
  QSeries out = local_series(c, order) * invert(hs_real);
  out = mul_binomial_power(out, 1, -c.r);
  return mul_binomial_power(out, 2, global_t2_exponent(c));
}

/// Global Hilbert series. Conditional on the Tate-Shafarevich and Bloch-Kato
/// conjectures; callers report it as conjectural.
inline QSeries global_series(const CurveData& c, std::size_t order) {
  validate_series_params(c);
  return global_series_from(c, hs_r(c, order));
}

/// Closed-form coefficientwise majorant of the global series:
/// (1-t)^{-r} (1-t^2)^{rho+#|D|-1-s} (1-gt) (1-2gt-(n-1)t^2)^{-1/2}
///   * ((1+(n1-1)t^2) / (1-2gt^2-(n-1)t^4))^{1/2}
inline QSeries global_bound_series(const CurveData& c, std::size_t order) {
  validate_series_params(c);
  const long g = c.g, n = c.n, n1 = c.n1;
  const QSeries quadratic = expand(RationalFunction({1, -2 * g, -(n - 1)}, {1}), order);
  const QSeries ratio =
      expand(RationalFunction(real_points_factor(n1), {1, 0, -2 * g, 0, -(n - 1)}), order);
  const QSeries linear = expand(RationalFunction({1, -g}, {1}), order);
  const Rational half(1, 2);
  QSeries out = linear * rational_power(quadratic, -half) * rational_power(ratio, half);
  out = mul_binomial_power(out, 1, -c.r);
  return mul_binomial_power(out, 2, global_t2_exponent(c));
}

// ---------------------------------------------------------------------------
// Product-form exponents

/// Exponents e_k of f = prod_{k>=1} (1 - t^k)^{-e_k}; values[k-1] = e_k.
struct ExponentVector {
  std::vector<Integer> values;

  std::size_t order() const { return values.size(); }
  const Integer& at(std::size_t k) const { return values.at(k - 1); }
  bool operator==(const ExponentVector&) const = default;
};

inline int mobius(std::size_t n) {
  int result = 1;
  for (std::size_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

/// Recovers e_k by Mobius inversion of L_m = m [t^m] log f = sum_{d|m} d e_d.
/// Throws NonIntegerExponent when f is not of product form.
inline ExponentVector extract_exponents(const QSeries& f) {
  if (f[0] != 1) throw Error(ErrorCode::ConstantTermNotOne, "extract_exponents needs f(0) = 1");
  const QSeries logf = log(f);
  const std::size_t order = f.order();
  std::vector<Rational> weighted(order + 1);
  for (std::size_t m = 1; m <= order; ++m) weighted[m] = logf[m] * static_cast<unsigned long>(m);

  ExponentVector ev;
  ev.values.reserve(order);
  Rational acc;
  for (std::size_t n = 1; n <= order; ++n) {
    acc = 0;
    for (std::size_t d = 1; d <= n; ++d) {
      if (n % d != 0) continue;
      const int mu = mobius(n / d);
      if (mu == 1) acc += weighted[d];
      if (mu == -1) acc -= weighted[d];
    }
    acc /= static_cast<unsigned long>(n);
    if (acc.get_den() != 1) {
      throw Error(ErrorCode::NonIntegerExponent,
                  "exponent e_" + std::to_string(n) + " = " + acc.get_str() + " is not an integer");
    }
    ev.values.push_back(acc.get_num());
  }
  return ev;
}

/// prod_{k} (1 - t^k)^{-e_k} truncated at order.
inline QSeries product_from_exponents(const ExponentVector& ev, std::size_t order) {
  QSeries acc = QSeries::one(order);
  for (std::size_t k = 1; k <= ev.order() && k <= order; ++k) {
    const Integer& e = ev.at(k);
    if (e != 0) acc = mul_binomial_power(acc, k, Integer(-e));
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Identity checks

/// HS_R(t)^2 = G(t) * HS_R(t^2), exactly.
inline VerifyReport verify_functional_equation(const CurveData& c, std::size_t order) {
  VerifyReport rep{"functional equation", {}};
  const QSeries h = hs_r(c, order);
  rep.add_equal("HS_R^2 = G * HS_R(t^2)", h * h, g_series(c, order) * substitute_power(h, 2));
  rep.add("HS_R(0) = 1", h[0] == 1);
  rep.add_nonnegative("HS_R >= 0", h);
  return rep;
}

/// Every factor G(t^{2^j})^{1/2^{j+1}} has constant term 1 and non-negative
/// coefficients; log G itself has non-negative coefficients.
inline VerifyReport verify_product_factors(const CurveData& c, std::size_t order) {
  VerifyReport rep{"product expansion", {}};
  rep.add_nonnegative("log G >= 0", log(g_series(c, order)));
  const auto factors = hs_r_factors(c, order);
  for (std::size_t j = 0; j < factors.size(); ++j) {
    const std::string tag = "factor j=" + std::to_string(j);
    rep.add(tag + " constant term 1", factors[j][0] == 1);
    rep.add_nonnegative(tag + " >= 0", factors[j]);
  }
  return rep;
}

/// HS_glob <= closed-form majorant, and majorant / HS_glob equals the tail
/// prod_{j>=1} G(t^{2^j})^{1/2^{j+1}}.
inline VerifyReport verify_global_majorant(const CurveData& c, std::size_t order) {
  VerifyReport rep{"global majorant", {}};
  const auto factors = hs_r_factors(c, order);
  const QSeries glob = global_series_from(c, product(factors, order));
  const QSeries bound = global_bound_series(c, order);
  rep.add_comparison("HS_glob <= majorant", compare_coefficientwise(glob, bound, order));
  const std::vector<QSeries> tail(factors.begin() + 1, factors.end());
  rep.add_equal("majorant = HS_glob * tail", bound, glob * product(tail, order));
  return rep;
}

/// The sign image 1/(1+(n1-1)t^2) factors as
/// prod (1-t^k)^{-dim V_k^sigma} prod (1+t^k)^{-dim V_k^{-sigma}},
/// with dim V_k from the motivic dimension series and dim V_k^sigma from HS_R.
inline VerifyReport verify_sign_factorization(const CurveData& c, std::size_t order) {
  VerifyReport rep{"sign factorization", {}};
  const ExponentVector dims = extract_exponents(motivic_dim_series(c, order));
  const ExponentVector fixed = extract_exponents(hs_r(c, order));
  QSeries acc = QSeries::one(order);
  for (std::size_t k = 1; k <= order; ++k) {
    const Integer plus = fixed.at(k);
    const Integer minus = dims.at(k) - fixed.at(k);
    acc = mul_binomial_power(acc, k, Integer(-plus));
    // (1+t^k)^{-m} = (1-t^{2k})^{-m} (1-t^k)^{m}
    acc = mul_binomial_power(acc, k, minus);
    if (2 * k <= order) acc = mul_binomial_power(acc, 2 * k, Integer(-minus));
  }
  rep.add_equal("sign image factorization", acc, sgn_motivic_series(c, order));
  return rep;
}

/// Product exponents of the global series: e_1 = r, e_2 - s = e_2(loc) - e_2(R)
/// + 1 - rho - #|D| >= 0, and e_k = e_k(loc) - e_k(R) >= 0 for k >= 3.
inline VerifyReport verify_global_exponents(const CurveData& c, std::size_t order) {
  VerifyReport rep{"global exponents", {}};
  const QSeries real = hs_r(c, order);
  const ExponentVector glob = extract_exponents(global_series_from(c, real));
  const ExponentVector loc = extract_exponents(local_series(c, order));
  const ExponentVector fixed = extract_exponents(real);
  if (order >= 1) rep.add("e_1 = r", glob.at(1) == c.r);
  if (order >= 2) {
    const Integer selmer2 = loc.at(2) - fixed.at(2) + 1 - c.rho - c.d_closed;
    rep.add("e_2 = s + H1f(V_2)", glob.at(2) == c.s + selmer2);
    rep.add("H1f(V_2) >= 0", selmer2 >= 0);
  }
  bool match = true, nonneg = true;
  for (std::size_t k = 3; k <= order; ++k) {
    match = match && glob.at(k) == loc.at(k) - fixed.at(k);
    nonneg = nonneg && glob.at(k) >= 0;
  }
  rep.add("e_k = e_k(loc) - e_k(R) for k >= 3", match);
  rep.add("e_k >= 0 for k >= 3", nonneg);
  return rep;
}

}  // namespace ckbound
