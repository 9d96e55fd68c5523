#pragma once

// The weight-m search for the partial-sum inequality between the global and
// local Hilbert series, the coefficientwise lemmas behind the cap
// M = 4^{r+s_bar+2}, and assembly of the explicit point-count bound.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ckbound/hilbert.hpp"
#include "ckbound/interval.hpp"
#include "ckbound/report.hpp"

namespace ckbound {

inline bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// kappa_p = rational_part + log_coefficient / log(p)

struct Kappa {
  long p = 0;
  Rational rational_part;
  Rational log_coefficient;
  std::string decimal_upper;  ///< certified upper rounding to 1e-6
};

inline Interval kappa_interval(long p, mpfr_prec_t prec = Interval::kDefaultPrecision) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  const Rational a = p == 2 ? Rational(2) : Rational(1);
  const Rational b = p == 2 ? Rational(2) : Rational(p - 1, p - 2);
  return Interval::from_rational(a, prec) +
         Interval::from_rational(b, prec) / log(Interval::from_long(p, prec));
}

inline Kappa kappa_p(long p) {
  const Interval value = kappa_interval(p);
  Kappa k;
  k.p = p;
  k.rational_part = p == 2 ? Rational(2) : Rational(1);
  k.log_coefficient = p == 2 ? Rational(2) : Rational(p - 1, p - 2);
  k.log_coefficient.canonicalize();
  k.decimal_upper = value.upper_decimal(6);
  return k;
}

// ---------------------------------------------------------------------------
// s_bar and the cap M

/// max{s + 1 - rho - #|D|, 0}, used by the cap M and the final bound.
inline long s_bar(const CurveData& c) { return std::max(c.s + 1 - c.rho - c.d_closed, 0L); }

/// max{s + 1 - rho, 0}, the variant appearing in the squared-series lemma.
inline long s_bar_squared(const CurveData& c) { return std::max(c.s + 1 - c.rho, 0L); }

/// 4^{r + s_bar + 2}.
inline std::uint64_t m_cap(long r, long sbar) {
  const long e = r + sbar + 2;
  if (e < 0 || 2 * e >= 63) {
    throw Error(ErrorCode::BudgetExceeded, "cap 4^" + std::to_string(e) + " is out of range");
  }
  return std::uint64_t{1} << (2 * e);
}

inline std::uint64_t m_cap(const CurveData& c) { return m_cap(c.r, s_bar(c)); }

// ---------------------------------------------------------------------------
// Minimal m

struct MinimalM {
  std::size_t m = 0;
  Integer global_partial_sum;
  Integer local_partial_sum;
};

/// Smallest m <= cap with sum_{i<=m} c_i^glob < sum_{i<=m} c_i^loc. Series are
/// computed to doubling orders up to min(cap, budget).
inline MinimalM find_minimal_m(const CurveData& c, std::uint64_t cap, std::size_t budget) {
  validate_series_params(c);
  const std::size_t limit = static_cast<std::size_t>(std::min<std::uint64_t>(cap, budget));
  std::size_t order = std::min<std::size_t>(32, limit);
  while (true) {
    const QSeries loc = partial_sums(local_series(c, order));
    const QSeries glob = partial_sums(global_series(c, order));
    for (std::size_t m = 0; m <= order; ++m) {
      if (glob[m] < loc[m]) return {m, glob[m].get_num(), loc[m].get_num()};
    }
    if (order == limit) break;
    order = std::min(order * 2, limit);
  }
  if (cap > budget) {
    throw Error(ErrorCode::BudgetExceeded, "no m <= " + std::to_string(limit) +
                                               " within order budget " + std::to_string(budget));
  }
  throw Error(ErrorCode::NotFoundBelowCap, "no m <= " + std::to_string(cap));
}

// ---------------------------------------------------------------------------
// Coefficientwise lemmas

/// delta = 1 if g >= 1, 2 if g = 0.
inline std::size_t delta_for(long g) { return g >= 1 ? 1 : 2; }

/// 1/(1-t^delta) HS_loc <= 2 HS_loc, plus the case decompositions of
/// F = (1-2t^delta)(1-gt) / ((1-t^delta)(1-2gt-(n-1)t^2)).
inline VerifyReport verify_lemma_31(long g, long n, std::size_t order) {
  require_hyperbolic(g, n);
  VerifyReport rep{"lemma31", {}};
  const std::size_t delta = delta_for(g);
  const QSeries hs = expand(local_rational(g, n), order);
  const QSeries lhs = mul_binomial_power(hs, delta, -1);
  const QSeries rhs = Rational(2) * hs;
  rep.add_comparison("1/(1-t^delta) HS_loc <= 2 HS_loc", compare_coefficientwise(lhs, rhs, order));
  const QSeries f = rhs - lhs;
  rep.add_nonnegative("F >= 0", f);

  const QSeries one = QSeries::one(order);
  if (g == 0) {
    const QSeries f1 = binomial_power(2, -1, order);
    const QSeries f2 = one + expand(RationalFunction({0, 0, n - 3}, {1, 0, -(n - 1)}), order);
    rep.add_nonnegative("g=0 factor 1/(1-t^2)", f1);
    rep.add_nonnegative("g=0 factor 1+(n-3)t^2/(1-(n-1)t^2)", f2);
    rep.add_equal("g=0 F = product", f, f1 * f2);
  } else if (g == 1) {
    const QSeries f1 = one + expand(RationalFunction({0, 0, n - 1}, {1, -2, -(n - 1)}), order);
    rep.add_nonnegative("g=1 factor 1+(n-1)t^2/(1-2t-(n-1)t^2)", f1);
    rep.add_equal("g=1 F = factor", f, f1);
  } else {
    const QSeries f1 = binomial_power(2, -1, order);
    const QSeries f2 = one + expand(RationalFunction({0, g - 2}, {1, -g}), order);
    const QSeries f3 =
        one + expand(RationalFunction({0, 0, g * g + n - 1}, {1, -2 * g, -(n - 1)}), order);
    rep.add_nonnegative("g>=2 factor 1/(1-t^2)", f1);
    rep.add_nonnegative("g>=2 factor 1+(g-2)t/(1-gt)", f2);
    rep.add_nonnegative("g>=2 factor 1+(g^2+n-1)t^2/(1-2gt-(n-1)t^2)", f3);
    // The three displayed factors multiply to F/(1+t), so F = (1+t) * product.
    const QSeries one_plus_t = expand(RationalFunction({1, 1}, {1}), order);
    rep.add_equal("g>=2 F = (1+t) * product", f, one_plus_t * f1 * f2 * f3);
  }
  return rep;
}

/// (1-gt)^2 (1-(n1-1)t^2) / ((1-2gt-(n-1)t^2)(1-2gt^2-(n-1)t^4)) <= 2 HS_loc,
/// with the split F = A + B and the lower bound on F.
inline VerifyReport verify_lemma_32(long g, long n, long n1, std::size_t order) {
  require_hyperbolic(g, n);
  require_valid_n1(n, n1);
  VerifyReport rep{"lemma32", {}};
  const IntPoly quad{1, -2 * g, -(n - 1)};
  const IntPoly quartic{1, 0, -2 * g, 0, -(n - 1)};
  const IntPoly real_factor{1, 0, -(n1 - 1)};
  const IntPoly linear{1, -g};

  const QSeries hs = expand(local_rational(g, n), order);
  const QSeries lhs = expand(
      RationalFunction(poly_mul(poly_mul(linear, linear), real_factor), poly_mul(quad, quartic)),
      order);
  const QSeries rhs = Rational(2) * hs;
  rep.add_comparison("lhs <= 2 HS_loc", compare_coefficientwise(lhs, rhs, order));
  const QSeries f = rhs - lhs;

  const long c2 = 6 * g * g - 4 * g + n + n1 - 4;
  const long c3 = g * (3 * n - n1 + 2);
  rep.add("6g^2-4g+n+n1-4 >= 0", c2 >= 0, std::nullopt, std::to_string(c2));
  rep.add("g(3n-n1+2) >= 0", c3 >= 0, std::nullopt, std::to_string(c3));
  const QSeries a = expand(RationalFunction(poly_mul(linear, {1, 3 * g, 2}), quartic), order);
  const QSeries b = hs * expand(RationalFunction({0, 0, c2, c3}, quartic), order);
  rep.add_equal("F = A + B", f, a + b);

  const QSeries lower = expand(
      RationalFunction({1, 2 * g, 3 * g * g - 4 * g + n + n1 - 2, g * (3 * n - n1)}, quartic), order);
  rep.add_comparison("F >= lower", compare_coefficientwise(lower, f, order));
  rep.add_nonnegative("lower >= 0", lower);
  return rep;
}

/// The same inequality with the numerator 1 + (n1-1)t^2 that appears in the
/// square of the global majorant. Diagnostic only: it can fail for g = 0 with
/// all punctures real.
inline VerifyReport verify_squared_majorant_ratio(long g, long n, long n1, std::size_t order) {
  require_hyperbolic(g, n);
  require_valid_n1(n, n1);
  VerifyReport rep{"squared majorant ratio", {}};
  const IntPoly linear{1, -g};
  const QSeries lhs =
      expand(RationalFunction(poly_mul(poly_mul(linear, linear), real_points_factor(n1)),
                              poly_mul({1, -2 * g, -(n - 1)}, {1, 0, -2 * g, 0, -(n - 1)})),
             order);
  const QSeries rhs = Rational(2) * expand(local_rational(g, n), order);
  rep.add_comparison("lhs <= 2 HS_loc", compare_coefficientwise(lhs, rhs, order));
  return rep;
}

/// c_i^{(2)} >= ((i+2)/2) c_i for the coefficients of HS_loc and HS_loc^2.
inline VerifyReport verify_squared_local_growth(long g, long n, std::size_t order) {
  require_hyperbolic(g, n);
  VerifyReport rep{"squared local growth", {}};
  const QSeries hs = expand(local_rational(g, n), order);
  const QSeries sq = hs * hs;
  for (std::size_t i = 0; i <= order; ++i) {
    if (sq[i] * 2 < hs[i] * static_cast<unsigned long>(i + 2)) {
      rep.add("c2_i >= (i+2)/2 c_i", false, i);
      return rep;
    }
  }
  rep.add("c2_i >= (i+2)/2 c_i", true);
  return rep;
}

/// 1/(1-t^delta)^2 HS_glob^2 <= 2^{2r+2s_bar'+3} HS_loc with s_bar' = max{s+1-rho, 0}.
inline VerifyReport verify_lemma_33(const CurveData& c, std::size_t order) {
  validate_series_params(c);
  VerifyReport rep{"lemma33", {}};
  const long sb = s_bar_squared(c);
  const std::size_t delta = delta_for(c.g);
  const QSeries glob = global_series(c, order);
  const QSeries lhs = mul_binomial_power(glob * glob, delta, -2);
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, static_cast<unsigned long>(2 * c.r + 2 * sb + 3));
  const QSeries rhs = Rational(scale) * local_series(c, order);
  rep.add_comparison("HS_glob^2/(1-t^delta)^2 <= 2^(2r+2sbar+3) HS_loc",
                     compare_coefficientwise(lhs, rhs, order));
  const long sb_cap = s_bar(c);
  rep.add("s_bar variants", true, std::nullopt,
          "s_bar=" + std::to_string(sb) + ", cap s_bar=" + std::to_string(sb_cap) +
              (sb != sb_cap ? " (differ)" : ""));
  return rep;
}

// ---------------------------------------------------------------------------
// The g = n = 1 lower-bound lemma

/// 20 <= m <= (5/4)^{2r+2s-2} / (e^{1/21} pi), certified upper end.
inline Interval lower_bound_window_end(long r, long s) {
  const long e = 2 * r + 2 * s - 2;
  Interval base = Interval::from_rational(Rational(5, 4));
  Interval num = e >= 0 ? pow(base, static_cast<unsigned long>(e))
                        : Interval::from_long(1) / pow(base, static_cast<unsigned long>(-e));
  return num / (exp(Interval::from_rational(Rational(1, 21))) * Interval::pi());
}

struct LowerBoundLemmaReport {
  VerifyReport report;
  long window_lo = 20;
  long window_hi = 0;  ///< largest integer m allowed by the window
  std::size_t checked = 0;
  bool vacuous = false;
  bool truncated = false;  ///< window extends past the computed order
};

/// For g = n = 1 (rho = 1, one rational boundary point) checks that the
/// global partial sums dominate the local ones on the whole window.
inline LowerBoundLemmaReport verify_lower_bound_lemma(long r, long s, std::size_t order) {
  if (r < 0 || s < 0 || r + s < 1) {
    throw Error(ErrorCode::InvalidParams, "the lower-bound lemma needs r, s >= 0 and r + s >= 1");
  }
  LowerBoundLemmaReport out;
  out.report.name = "lower bound lemma r=" + std::to_string(r) + " s=" + std::to_string(s);
  const Interval w = lower_bound_window_end(r, s);
  const Integer hi = w.ceil_upper();
  // Integers strictly above hi - 1 might still be <= w only if w is an integer.
  out.window_hi = w.upper_at_most_integer(hi) && w.lower_at_least_integer(hi)
                      ? hi.get_si()
                      : hi.get_si() - 1;
  if (out.window_hi < out.window_lo) {
    out.vacuous = true;
    out.report.add("window empty", true, std::nullopt,
                   "upper end " + w.upper_decimal(4) + " < 20");
    return out;
  }
  const std::size_t last = std::min<std::size_t>(static_cast<std::size_t>(out.window_hi), order);
  out.truncated = static_cast<std::size_t>(out.window_hi) > order;
  if (last < 20) {
    out.report.add("window beyond order", true, std::nullopt, "no m <= order in window");
    return out;
  }
  CurveData c;
  c.g = 1;
  c.n = 1;
  c.n1 = 1;
  c.d_closed = 1;
  c.rho = 1;
  c.r = r;
  c.s = s;
  const QSeries glob = partial_sums(global_series(c, last));
  const QSeries loc = partial_sums(local_series(c, last));
  for (std::size_t m = 20; m <= last; ++m) {
    ++out.checked;
    if (glob[m] < loc[m]) {
      out.report.add("sum glob >= sum loc on window", false, m);
      return out;
    }
  }
  out.report.add("sum glob >= sum loc on window", true, std::nullopt,
                 "m in [20, " + std::to_string(last) + "]");
  return out;
}

/// C(2j, j) >= 4^j / (e^{1/42} sqrt(pi j)) for 1 <= j <= jmax, certified. The
/// report also records the form with exponent -(1/(6j) - 1/(24j+1)) obtained
/// from Robbins' two-sided factorial bounds.
inline VerifyReport verify_central_binomial_bound(std::size_t jmax) {
  VerifyReport rep{"central binomial bound", {}};
  const Interval pi = Interval::pi();
  const Interval e42 = exp(Interval::from_rational(Rational(1, 42)));
  std::vector<std::size_t> failures;
  std::optional<std::size_t> robbins_failure;
  for (std::size_t j = 1; j <= jmax; ++j) {
    Integer central;
    mpz_bin_uiui(central.get_mpz_t(), 2 * j, j);
    const Interval four_j = Interval::from_integer(Integer(1) << static_cast<mp_bitcnt_t>(2 * j));
    const Interval root = sqrt(pi * Interval::from_long(static_cast<long>(j)));
    const Interval stated = four_j / (e42 * root);
    if (!stated.upper_at_most_integer(central)) failures.push_back(j);

    const Rational gap = Rational(1, 6 * static_cast<long>(j)) - Rational(1, 24 * static_cast<long>(j) + 1);
    const Interval robbins = four_j / (exp(Interval::from_rational(gap)) * root);
    if (!robbins_failure && !robbins.upper_at_most_integer(central)) robbins_failure = j;
  }
  std::string detail;
  for (std::size_t j : failures) detail += (detail.empty() ? "fails at j=" : ",") + std::to_string(j);
  rep.add("C(2j,j) >= 4^j/(e^{1/42} sqrt(pi j))", failures.empty(),
          failures.empty() ? std::nullopt : std::optional<std::size_t>(failures.front()), detail);
  rep.add("C(2j,j) >= 4^j e^{-(1/(6j)-1/(24j+1))}/sqrt(pi j)", !robbins_failure, robbins_failure);
  return rep;
}

// ---------------------------------------------------------------------------
// Bound assembly

enum class BoundMode { ExactCoefficient, Simplified };

inline std::string to_string(BoundMode m) {
  return m == BoundMode::ExactCoefficient ? "exact-coefficient" : "simplified";
}

/// Product of all entries by balanced splitting.
inline Integer product_tree(std::vector<Integer> values) {
  if (values.empty()) return 1;
  while (values.size() > 1) {
    std::vector<Integer> next;
    next.reserve((values.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < values.size(); i += 2) next.push_back(values[i] * values[i + 1]);
    if (values.size() % 2 == 1) next.push_back(std::move(values.back()));
    values = std::move(next);
  }
  return values.front();
}

/// Coefficients c_0..c_{count-1} of HS_loc from c_i = 2g c_{i-1} + (n-1) c_{i-2}.
inline std::vector<Integer> local_coefficients(long g, long n, std::size_t count) {
  std::vector<Integer> c;
  c.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (i == 0) {
      c.emplace_back(1);
    } else if (i == 1) {
      c.emplace_back(g);
    } else {
      c.push_back(Integer(2 * g) * c[i - 1] + Integer(n - 1) * c[i - 2]);
    }
  }
  return c;
}

struct BoundFactors {
  Integer points_mod_p;
  Integer prod_outside_S;         ///< prod_{ell not in S} n_ell
  Integer prod_in_S;              ///< prod_{ell in S} (n_ell + n)
  long base = 0;                  ///< 4g + 2n - 2
  Integer base_power;             ///< base^M
  Integer coefficient_product;    ///< prod_{i<M} (c_i + 1)
  long simplified_base = 0;       ///< 2g + n
  Integer simplified_exponent;    ///< (M^2 - M) / 2
  Integer simplified_factor;      ///< (2g+n)^{(M^2-M)/2}
};

struct BoundReport {
  BoundMode mode = BoundMode::ExactCoefficient;
  std::size_t m_used = 0;
  std::uint64_t M_cap = 0;
  long s_bar = 0;
  long s_bar_squared = 0;
  Kappa kappa;
  BoundFactors factors;
  Integer bound_exact;
  std::size_t bound_exact_digits = 0;
  std::optional<double> bound_log10;  ///< empty when the bound is 0
  bool conjectural = true;
  /// Projective curves with s_bar = 0: the exponents 2^{2r+4}, 2^{4r+7}.
  std::optional<Integer> projective_base_exponent;
  std::optional<Integer> projective_coefficient_exponent;
};

/// Checks the S-prime data: every prime of S must be listed, once.
inline void require_bad_prime_data(const CurveData& c) {
  std::set<long> seen;
  long in_s = 0;
  for (const auto& bp : c.bad_primes) {
    if (!seen.insert(bp.ell).second) {
      throw Error(ErrorCode::InvalidCurveData, "prime " + std::to_string(bp.ell) + " listed twice");
    }
    if (bp.in_S) ++in_s;
  }
  if (in_s != c.s) {
    throw Error(ErrorCode::MissingBadPrimeData,
                "s=" + std::to_string(c.s) + " but " + std::to_string(in_s) +
                    " primes of S are listed in bad_primes");
  }
}

/// ceil(kappa_p * value), with kappa_p evaluated at enough precision that the
/// result is the ceiling of an enclosure of width below one.
inline Integer scaled_ceiling(long p, const Integer& value) {
  if (value == 0) return 0;
  const auto bits = static_cast<mpfr_prec_t>(mpz_sizeinbase(value.get_mpz_t(), 2) + 64);
  const Interval product = kappa_interval(p, bits) * Interval::from_integer(value, bits);
  return product.ceil_upper();
}

inline std::optional<double> certified_log10(const Integer& value) {
  if (value <= 0) return std::nullopt;
  const auto bits = static_cast<mpfr_prec_t>(std::max<std::size_t>(mpz_sizeinbase(value.get_mpz_t(), 2), 64) + 64);
  return log10(Interval::from_integer(value, bits)).hi_double();
}

inline BoundReport compute_bound(const CurveData& c, BoundMode mode, std::size_t budget) {
  validate_curve(c);
  if (!is_prime(c.p)) throw Error(ErrorCode::NotPrime, std::to_string(c.p) + " is not prime");
  require_bad_prime_data(c);

  BoundReport rep;
  rep.mode = mode;
  rep.s_bar = s_bar(c);
  rep.s_bar_squared = s_bar_squared(c);
  rep.M_cap = m_cap(c);
  if (rep.M_cap > budget) {
    throw Error(ErrorCode::BudgetExceeded, "M=" + std::to_string(rep.M_cap) +
                                               " exceeds order budget " + std::to_string(budget));
  }
  const auto M = static_cast<std::size_t>(rep.M_cap);
  rep.m_used = find_minimal_m(c, rep.M_cap, budget).m;
  rep.kappa = kappa_p(c.p);

  BoundFactors& f = rep.factors;
  f.points_mod_p = c.points_mod_p;
  f.prod_outside_S = 1;
  f.prod_in_S = 1;
  for (const auto& bp : c.bad_primes) {
    if (bp.in_S) {
      f.prod_in_S *= bp.n_ell + c.n;
    } else {
      f.prod_outside_S *= bp.n_ell;
    }
  }
  f.base = 4 * c.g + 2 * c.n - 2;
  mpz_ui_pow_ui(f.base_power.get_mpz_t(), static_cast<unsigned long>(f.base), M);

  const std::vector<Integer> coeffs = local_coefficients(c.g, c.n, M);
  std::vector<Integer> plus_one;
  plus_one.reserve(M);
  Integer power_bound = 1;
  for (std::size_t i = 0; i < M; ++i) {
    if (coeffs[i] < 0 || coeffs[i] > power_bound) {
      throw std::logic_error("c_i <= (2g+n)^i violated at i=" + std::to_string(i));
    }
    power_bound *= 2 * c.g + c.n;
    plus_one.push_back(coeffs[i] + 1);
  }
  f.coefficient_product = product_tree(std::move(plus_one));
  f.simplified_base = 2 * c.g + c.n;
  f.simplified_exponent = Integer(static_cast<unsigned long>(M)) * (M - 1) / 2;
  mpz_pow_ui(f.simplified_factor.get_mpz_t(), Integer(f.simplified_base).get_mpz_t(),
             f.simplified_exponent.get_ui());
  if (f.coefficient_product > f.simplified_factor) {
    throw std::logic_error("coefficient product exceeds (2g+n)^{(M^2-M)/2}");
  }

  const Integer common = f.points_mod_p * f.prod_outside_S * f.prod_in_S * f.base_power;
  const Integer& chosen =
      mode == BoundMode::ExactCoefficient ? f.coefficient_product : f.simplified_factor;
  rep.bound_exact = scaled_ceiling(c.p, common * chosen);
  rep.bound_exact_digits = rep.bound_exact == 0 ? 1 : rep.bound_exact.get_str().size();
  rep.bound_log10 = certified_log10(rep.bound_exact);

  if (c.n == 0 && rep.s_bar == 0) {
    rep.projective_base_exponent = Integer(1) << static_cast<mp_bitcnt_t>(2 * c.r + 4);
    rep.projective_coefficient_exponent = Integer(1) << static_cast<mp_bitcnt_t>(4 * c.r + 7);
  }
  return rep;
}

}  // namespace ckbound
