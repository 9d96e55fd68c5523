#pragma once

// Punctured CM elliptic curves and the thrice-punctured line: partition
// numbers, the metabelian Hilbert series, the weight-m crossings and the
// resulting point-count bound.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "ckbound/bounds.hpp"
#include "ckbound/hilbert.hpp"
#include "ckbound/interval.hpp"
#include "ckbound/report.hpp"

namespace ckbound {

namespace detail {

using IntSeries = std::vector<Integer>;

/// Multiplies by 1/(1-t^k) in place.
inline void divide_by_binomial(IntSeries& v, std::size_t k) {
  for (std::size_t i = k; i < v.size(); ++i) v[i] += v[i - k];
}

inline IntSeries convolve(const IntSeries& a, const IntSeries& b, std::size_t order) {
  IntSeries out(order + 1, 0);
  for (std::size_t i = 0; i <= order && i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j <= order && j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

inline std::optional<std::size_t> first_strictly_below(const IntSeries& a, const IntSeries& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] < b[i]) return i;
  }
  return std::nullopt;
}

/// Runs `scan(order)` on doubling orders 64, 128, ... up to budget.
template <class Scan>
std::size_t doubling_search(std::size_t budget, const std::string& what, Scan scan) {
  std::size_t order = std::min<std::size_t>(64, budget);
  while (true) {
    if (auto m = scan(order)) return *m;
    if (order >= budget) break;
    order = std::min(order * 2, budget);
  }
  throw Error(ErrorCode::BudgetExceeded,
              what + ": no crossing within order budget " + std::to_string(budget));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Partition numbers

struct PartitionTable {
  std::vector<Integer> p_values;  ///< unrestricted partitions
  std::vector<Integer> q_values;  ///< partitions into odd parts

  std::size_t size() const { return p_values.size(); }
};

inline PartitionTable partition_numbers(std::size_t n_max) {
  PartitionTable t;
  t.p_values.assign(n_max + 1, 0);
  t.p_values[0] = 1;
  for (std::size_t n = 1; n <= n_max; ++n) {
    Integer acc = 0;
    for (std::size_t k = 1;; ++k) {
      const std::size_t g1 = k * (3 * k - 1) / 2;
      if (g1 > n) break;
      const std::size_t g2 = k * (3 * k + 1) / 2;
      Integer term = t.p_values[n - g1];
      if (g2 <= n) term += t.p_values[n - g2];
      if (k % 2 == 1) {
        acc += term;
      } else {
        acc -= term;
      }
    }
    t.p_values[n] = acc;
  }
  t.q_values.assign(n_max + 1, 0);
  t.q_values[0] = 1;
  for (std::size_t k = 1; k <= n_max; k += 2) detail::divide_by_binomial(t.q_values, k);
  return t;
}

/// "0.1234" -> 1234/10000.
inline Rational decimal_to_rational(const std::string& text) {
  std::string digits;
  std::size_t scale = 0;
  bool seen_point = false;
  bool negative = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (i == 0 && (ch == '-' || ch == '+')) {
      negative = ch == '-';
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else if (ch >= '0' && ch <= '9') {
      digits += ch;
      if (seen_point) ++scale;
    } else {
      throw Error(ErrorCode::SchemaViolation, "not a decimal: '" + text + "'");
    }
  }
  if (digits.empty()) throw Error(ErrorCode::SchemaViolation, "not a decimal: '" + text + "'");
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, scale);
  Rational q(Integer(digits, 10), den);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

/// A constant fitted over n in [range_lo, range_hi], rounded to the safe side.
struct EmpiricalConstant {
  Rational value;
  std::string decimal;
  std::size_t range_lo = 1;
  std::size_t range_hi = 0;
};

/// e^{pi sqrt(2n/3)} / n, the Hardy-Ramanujan shape of p(n).
inline Interval partition_shape(std::size_t n) {
  const Interval x = Interval::from_rational(Rational(2 * static_cast<long>(n), 3));
  return exp(Interval::pi() * sqrt(x)) / Interval::from_long(static_cast<long>(n));
}

/// e^{pi sqrt(4n/3)} / n^2, the shape of b_n.
inline Interval convolution_shape(std::size_t n) {
  const Interval x = Interval::from_rational(Rational(4 * static_cast<long>(n), 3));
  const Interval nn = Interval::from_long(static_cast<long>(n));
  return exp(Interval::pi() * sqrt(x)) / (nn * nn);
}

inline constexpr int kConstantDigits = 10;

inline EmpiricalConstant lower_constant(const std::vector<Integer>& values, std::size_t n_max,
                                        Interval (*shape)(std::size_t)) {
  std::optional<Interval> best;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const Interval ratio = Interval::from_integer(values.at(n)) / shape(n);
    if (!best || mpfr_less_p(ratio.lo(), best->lo())) best = ratio;
  }
  if (!best) throw Error(ErrorCode::InvalidParams, "empty range for a fitted constant");
  const std::string dec = best->lower_decimal(kConstantDigits);
  return {decimal_to_rational(dec), dec, 1, n_max};
}

inline EmpiricalConstant upper_constant(const std::vector<Integer>& values, std::size_t n_max,
                                        Interval (*shape)(std::size_t)) {
  std::optional<Interval> best;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const Interval ratio = Interval::from_integer(values.at(n)) / shape(n);
    if (!best || mpfr_greater_p(ratio.hi(), best->hi())) best = ratio;
  }
  if (!best) throw Error(ErrorCode::InvalidParams, "empty range for a fitted constant");
  const std::string dec = best->upper_decimal(kConstantDigits);
  return {decimal_to_rational(dec), dec, 1, n_max};
}

/// b_n = sum_k p(k) p(n-k), the coefficients of f(t)^2.
inline std::vector<Integer> partition_square(const PartitionTable& t, std::size_t order) {
  return detail::convolve(t.p_values, t.p_values, order);
}

struct PartitionConstants {
  EmpiricalConstant C0;  ///< p(n) >= C0 e^{pi sqrt(2n/3)} / n
  EmpiricalConstant C1;  ///< p(n) <= C1 e^{pi sqrt(2n/3)} / n
  EmpiricalConstant C2;  ///< b_n >= C2 e^{pi sqrt(4n/3)} / n^2
};

inline PartitionConstants fit_partition_constants(const PartitionTable& t, std::size_t n_max) {
  if (n_max < 1 || n_max >= t.size()) {
    throw Error(ErrorCode::InvalidParams, "fit range exceeds the partition table");
  }
  const std::vector<Integer> b = partition_square(t, n_max);
  return {lower_constant(t.p_values, n_max, partition_shape),
          upper_constant(t.p_values, n_max, partition_shape),
          lower_constant(b, n_max, convolution_shape)};
}

/// C0 e^{...}/n <= p(n) <= C1 e^{...}/n for 1 <= n <= n_max, certified.
inline VerifyReport verify_partition_sandwich(const PartitionTable& t, const Rational& c0,
                                              const Rational& c1, std::size_t n_max) {
  VerifyReport rep{"Hardy-Ramanujan sandwich", {}};
  const Interval lo_c = Interval::from_rational(c0);
  const Interval hi_c = Interval::from_rational(c1);
  std::optional<std::size_t> low_fail, high_fail;
  for (std::size_t n = 1; n <= n_max && n < t.size(); ++n) {
    const Interval shape = partition_shape(n);
    const Interval p = Interval::from_integer(t.p_values[n]);
    if (!low_fail && !(lo_c * shape).certainly_leq(p)) low_fail = n;
    if (!high_fail && !p.certainly_leq(hi_c * shape)) high_fail = n;
  }
  rep.add("C0 e^{pi sqrt(2n/3)}/n <= p(n)", !low_fail, low_fail);
  rep.add("p(n) <= C1 e^{pi sqrt(2n/3)}/n", !high_fail, high_fail);
  return rep;
}

// ---------------------------------------------------------------------------
// Hilbert series of the metabelian quotient

/// (e_1, ..., e_order) with e_k = fn(k).
template <class Fn>
ExponentVector exponents_from(std::size_t order, Fn fn) {
  ExponentVector ev;
  for (std::size_t k = 1; k <= order; ++k) ev.values.emplace_back(fn(k));
  return ev;
}

inline ExponentVector cm_local_exponents(std::size_t order) {
  return exponents_from(order, [](std::size_t k) { return k <= 2 ? 1L : 2L; });
}

inline ExponentVector cm_global_exponents(long r, long s, std::size_t order) {
  if (r < 0 || s < 0) throw Error(ErrorCode::InvalidParams, "r and s must be >= 0");
  return exponents_from(order, [&](std::size_t k) { return k == 1 ? r : k == 2 ? s : 1L; });
}

/// (1-t)^{-1} (1-t^2)^{-1} prod_{k>=3} (1-t^k)^{-2}.
inline QSeries cm_local_series(std::size_t order) {
  return product_from_exponents(cm_local_exponents(order), order);
}

/// (1-t)^{-r} (1-t^2)^{-s} prod_{k>=3} (1-t^k)^{-1}.
inline QSeries cm_global_series(long r, long s, std::size_t order) {
  return product_from_exponents(cm_global_exponents(r, s, order), order);
}

namespace detail {

/// Coefficients of prod_k (1-t^k)^{-e_k} with small non-negative exponents.
inline IntSeries int_product(const ExponentVector& ev, std::size_t order) {
  IntSeries v(order + 1, 0);
  v[0] = 1;
  for (std::size_t k = 1; k <= order && k <= ev.order(); ++k) {
    const long e = ev.at(k).get_si();
    for (long i = 0; i < e; ++i) divide_by_binomial(v, k);
  }
  return v;
}

}  // namespace detail

/// B_i = [t^i] (1/(1-t)) HS'_loc.
inline std::vector<Integer> cm_local_partial_sums(std::size_t order) {
  auto v = detail::int_product(cm_local_exponents(order), order);
  detail::divide_by_binomial(v, 1);
  return v;
}

/// b_n = sum_k p(k) p(n-k) against the coefficients of (1-t)^{-1}(1-t^2)^{-1} HS'_loc.
inline VerifyReport verify_partition_square_identity(const PartitionTable& t, std::size_t order) {
  VerifyReport rep{"b_n identity", {}};
  std::vector<Integer> b(order + 1, 0);
  for (std::size_t n = 0; n <= order; ++n) {
    for (std::size_t k = 0; k <= n; ++k) b[n] += t.p_values.at(k) * t.p_values.at(n - k);
  }
  QSeries lhs = mul_binomial_power(mul_binomial_power(cm_local_series(order), 1, -1), 2, -1);
  rep.add_equal("(1-t)^{-1}(1-t^2)^{-1} HS'_loc = f^2", lhs, QSeries::from_integers(b));
  return rep;
}

// ---------------------------------------------------------------------------
// Crossings

namespace detail {

/// a~ = (1-t)^{-r'} f and b = f^2 from a partition table.
inline std::pair<IntSeries, IntSeries> relaxed_pair(const PartitionTable& t, long r_prime,
                                                    std::size_t order) {
  IntSeries a(t.p_values.begin(), t.p_values.begin() + static_cast<long>(order) + 1);
  for (long i = 0; i < r_prime; ++i) divide_by_binomial(a, 1);
  return {a, convolve(t.p_values, t.p_values, order)};
}

}  // namespace detail

inline void require_r_prime(long r_prime) {
  if (r_prime < 2) {
    throw Error(ErrorCode::InvalidParams, "r' = " + std::to_string(r_prime) + " must be >= 2");
  }
}

/// Smallest m with a~_m < b_m.
inline std::size_t cm_find_minimal_m(long r_prime, std::size_t budget) {
  require_r_prime(r_prime);
  return detail::doubling_search(budget, "cm find-m", [&](std::size_t order) {
    const PartitionTable t = partition_numbers(order);
    const auto [a, b] = detail::relaxed_pair(t, r_prime, order);
    return detail::first_strictly_below(a, b);
  });
}

/// Smallest m with a_m < b_m for a = (1-t)^{-r}(1-t^2)^{-s} f.
inline std::size_t cm_find_minimal_m_unrelaxed(long r, long s, std::size_t budget) {
  require_r_prime(r + s);
  return detail::doubling_search(budget, "cm find-m (unrelaxed)", [&](std::size_t order) {
    const PartitionTable t = partition_numbers(order);
    detail::IntSeries a(t.p_values.begin(), t.p_values.end());
    for (long i = 0; i < r; ++i) detail::divide_by_binomial(a, 1);
    for (long i = 0; i < s; ++i) detail::divide_by_binomial(a, 2);
    return detail::first_strictly_below(a, partition_square(t, order));
  });
}

/// Smallest m with sum_{i<=m} c'^glob_i < sum_{i<=m} c'^loc_i.
inline std::size_t cm_find_minimal_m_partial_sums(long r, long s, std::size_t budget) {
  require_r_prime(r + s);
  return detail::doubling_search(budget, "cm find-m (partial sums)", [&](std::size_t order) {
    auto glob = detail::int_product(cm_global_exponents(r, s, order), order);
    detail::divide_by_binomial(glob, 1);
    return detail::first_strictly_below(glob, cm_local_partial_sums(order));
  });
}

/// a_n <= a~_n for n <= order.
inline VerifyReport verify_relaxation(long r, long s, std::size_t order) {
  VerifyReport rep{"relaxation", {}};
  const PartitionTable t = partition_numbers(order);
  detail::IntSeries a(t.p_values.begin(), t.p_values.end());
  for (long i = 0; i < r; ++i) detail::divide_by_binomial(a, 1);
  for (long i = 0; i < s; ++i) detail::divide_by_binomial(a, 2);
  const auto [relaxed, b] = detail::relaxed_pair(t, r + s, order);
  const auto bad = detail::first_strictly_below(relaxed, a);
  rep.add("a_n <= a~_n", !bad, bad);
  return rep;
}

/// The coefficient inequalities used to compare a~ and b with partition shapes.
inline VerifyReport verify_partition_inequalities(const PartitionTable& t, long r_prime_max,
                                                  std::size_t a_order, std::size_t b_order,
                                                  const Rational& c2) {
  VerifyReport rep{"partition inequalities", {}};
  if (b_order >= t.size() || a_order >= t.size()) {
    throw Error(ErrorCode::InvalidParams, "order exceeds the partition table");
  }
  for (long rp = 0; rp <= r_prime_max; ++rp) {
    const auto [a, b] = detail::relaxed_pair(t, rp, a_order);
    std::optional<std::size_t> bad;
    for (std::size_t n = 0; n <= a_order && !bad; ++n) {
      Integer bound;
      mpz_pow_ui(bound.get_mpz_t(), Integer(static_cast<unsigned long>(n + 1)).get_mpz_t(),
                 static_cast<unsigned long>(rp));
      if (a[n] > bound * t.p_values[n]) bad = n;
    }
    rep.add("a~_n <= (n+1)^r' p(n), r'=" + std::to_string(rp), !bad, bad);
  }

  const std::vector<Integer> b = partition_square(t, b_order);
  std::optional<std::size_t> middle_fail;
  for (std::size_t n = 0; n <= b_order && !middle_fail; ++n) {
    const Integer middle = n % 2 == 0
                               ? Integer(t.p_values[n / 2] * t.p_values[n / 2])
                               : Integer(2 * t.p_values[(n - 1) / 2] * t.p_values[(n + 1) / 2]);
    if (b[n] < middle) middle_fail = n;
  }
  rep.add("b_n >= middle term(s)", !middle_fail, middle_fail);

  const Interval c2i = Interval::from_rational(c2);
  std::optional<std::size_t> shape_fail;
  for (std::size_t n = 1; n <= a_order && !shape_fail; ++n) {
    if (!(c2i * convolution_shape(n)).certainly_leq(Interval::from_integer(b[n]))) shape_fail = n;
  }
  rep.add("b_n >= C2 e^{pi sqrt(4n/3)}/n^2", !shape_fail, shape_fail);

  const auto B = cm_local_partial_sums(a_order);
  const QSeries loc = cm_local_series(a_order);
  std::optional<std::size_t> chain_fail;
  for (std::size_t i = 1; i <= a_order && !chain_fail; ++i) {
    const Integer upper = Integer(static_cast<unsigned long>(i + 1)) * t.p_values[i] * t.p_values[i];
    if (!(loc[i] + 1 <= B[i] && B[i] <= b[i] && b[i] <= upper)) chain_fail = i;
  }
  rep.add("c'_i + 1 <= B_i <= b_i <= (i+1) p(i)^2", !chain_fail, chain_fail);
  return rep;
}

// ---------------------------------------------------------------------------
// The bound

struct CMData {
  long r = 0;
  long s = 0;
  long p = 0;
  long points_mod_p = 0;
  long t_bad = 0;
  bool unconditional = false;
  std::optional<long> r1;
  std::optional<Rational> C1;

  /// r + s, or r1 + s in the unconditional variant.
  long r_prime() const { return (unconditional ? r1.value_or(0) : r) + s; }
};

inline void validate_cm_data(const CMData& d) {
  if (d.r < 0 || d.s < 0 || d.t_bad < 0) {
    throw Error(ErrorCode::InvalidParams, "r, s, t_bad must be >= 0");
  }
  if (d.points_mod_p < 1) throw Error(ErrorCode::InvalidParams, "points_mod_p must be >= 1");
  if (d.unconditional && (!d.r1 || *d.r1 < 0)) {
    throw Error(ErrorCode::InvalidParams, "the unconditional variant needs r1 >= 0");
  }
  if (d.C1 && *d.C1 <= 0) throw Error(ErrorCode::InvalidParams, "C1 must be positive");
  require_r_prime(d.r_prime());
  if (!is_prime(d.p)) throw Error(ErrorCode::NotPrime, std::to_string(d.p) + " is not prime");
}

enum class CMBoundMode { ExactCoefficient, Asymptotic };

inline std::string to_string(CMBoundMode m) {
  return m == CMBoundMode::ExactCoefficient ? "exact-coefficient" : "asymptotic";
}

struct CMBoundReport {
  CMBoundMode mode = CMBoundMode::ExactCoefficient;
  long r_prime = 0;
  bool unconditional = false;
  bool conjectural = true;
  std::size_t m0 = 0;
  Kappa kappa_p;
  std::string kappa_upper;  ///< kappa_p (#E(F_p) - 1) 5^t, rounded up
  std::optional<Integer> bound_exact;
  std::optional<std::size_t> bound_exact_digits;
  double bound_log10 = 0;
  std::optional<double> exact_log10;
  std::optional<double> asymptotic_log10;
  std::optional<double> closed_form_log10;  ///< with the square-root sum bound, 1/m0! dropped
  std::optional<bool> c1_valid;              ///< C1 majorizes p(i) on 1..m0
};

/// log of kappa_p (#E-1) 5^t 4^{m0} (2 C1^2)^{m0} e^{2 pi sqrt(2/3) sum sqrt(i)} / m0!.
inline Interval cm_asymptotic_log(const CMData& d, std::size_t m0, const Rational& c1) {
  const Interval m = Interval::from_long(static_cast<long>(m0));
  Interval sum_root = Interval::from_long(0);
  Interval log_fact = Interval::from_long(0);
  for (std::size_t i = 1; i <= m0; ++i) {
    const Interval ii = Interval::from_long(static_cast<long>(i));
    sum_root = sum_root + sqrt(ii);
    log_fact = log_fact + log(ii);
  }
  const Interval c = Interval::pi() * sqrt(Interval::from_rational(Rational(2, 3)));
  const Interval two_c1_sq = Interval::from_rational(2 * c1 * c1);
  Interval total = log(kappa_interval(d.p)) + Interval::from_long(d.t_bad) * log(Interval::from_long(5)) +
                   m * log(Interval::from_long(4)) + m * log(two_c1_sq) - log_fact +
                   Interval::from_long(2) * c * sum_root;
  if (d.points_mod_p > 1) total = total + log(Interval::from_long(d.points_mod_p - 1));
  return total;
}

/// Same with sum sqrt(i) <= (2/3) m^{3/2} + (1/2) m^{1/2} and 1/m0! dropped.
inline Interval cm_closed_form_log(const CMData& d, std::size_t m0, const Rational& c1) {
  const Interval m = Interval::from_long(static_cast<long>(m0));
  const Interval root = sqrt(m);
  const Interval sum_bound = Interval::from_rational(Rational(2, 3)) * m * root +
                             Interval::from_rational(Rational(1, 2)) * root;
  const Interval c = Interval::pi() * sqrt(Interval::from_rational(Rational(2, 3)));
  Interval total = log(kappa_interval(d.p)) + Interval::from_long(d.t_bad) * log(Interval::from_long(5)) +
                   m * log(Interval::from_rational(8 * c1 * c1)) +
                   Interval::from_long(2) * c * sum_bound;
  if (d.points_mod_p > 1) total = total + log(Interval::from_long(d.points_mod_p - 1));
  return total;
}

inline CMBoundReport cm_bound(const CMData& d, CMBoundMode mode, std::size_t budget) {
  validate_cm_data(d);
  if (mode == CMBoundMode::Asymptotic && !d.C1) {
    throw Error(ErrorCode::MissingC1, "asymptotic mode needs a C1 value");
  }
  CMBoundReport rep;
  rep.mode = mode;
  rep.r_prime = d.r_prime();
  rep.unconditional = d.unconditional;
  rep.m0 = cm_find_minimal_m(rep.r_prime, budget);
  rep.kappa_p = kappa_p(d.p);

  Integer five_t;
  mpz_ui_pow_ui(five_t.get_mpz_t(), 5, static_cast<unsigned long>(d.t_bad));
  const Integer scale = Integer(d.points_mod_p - 1) * five_t;
  rep.kappa_upper = (kappa_interval(d.p) * Interval::from_integer(scale)).upper_decimal(6);

  const auto B = cm_local_partial_sums(rep.m0);
  std::vector<Integer> factors(B.begin() + 1, B.end());
  Integer four_m;
  mpz_ui_pow_ui(four_m.get_mpz_t(), 4, rep.m0);
  const Integer exact = scaled_ceiling(d.p, scale * four_m * product_tree(std::move(factors)));
  const std::optional<double> exact_log = certified_log10(exact);
  const Interval ln10 = log(Interval::from_long(10));

  if (d.C1) {
    const PartitionTable t = partition_numbers(rep.m0);
    const Interval c1 = Interval::from_rational(*d.C1);
    bool valid = true;
    for (std::size_t i = 1; i <= rep.m0 && valid; ++i) {
      valid = Interval::from_integer(t.p_values[i]).certainly_leq(c1 * partition_shape(i));
    }
    rep.c1_valid = valid;
    rep.asymptotic_log10 = (cm_asymptotic_log(d, rep.m0, *d.C1) / ln10).hi_double();
    rep.closed_form_log10 = (cm_closed_form_log(d, rep.m0, *d.C1) / ln10).hi_double();
  }
  rep.exact_log10 = exact_log;
  if (mode == CMBoundMode::ExactCoefficient) {
    rep.bound_exact = exact;
    rep.bound_exact_digits = exact.get_str().size();
    rep.bound_log10 = exact_log.value_or(-HUGE_VAL);
  } else {
    rep.bound_log10 = *rep.asymptotic_log10;
  }
  rep.conjectural = !d.unconditional;
  return rep;
}

/// sum_{i<=m} sqrt(i) <= (2/3) m^{3/2} + (1/2) m^{1/2} for m <= m_max, certified.
inline VerifyReport verify_sqrt_sum(std::size_t m_max) {
  VerifyReport rep{"square-root sum", {}};
  Interval sum = Interval::from_long(0);
  const Interval two_thirds = Interval::from_rational(Rational(2, 3));
  const Interval half = Interval::from_rational(Rational(1, 2));
  for (std::size_t m = 1; m <= m_max; ++m) {
    const Interval mm = Interval::from_long(static_cast<long>(m));
    const Interval root = sqrt(mm);
    sum = sum + root;
    if (!sum.certainly_leq(two_thirds * mm * root + half * root)) {
      rep.add("sum sqrt(i) <= (2/3)m^{3/2} + (1/2)m^{1/2}", false, m);
      return rep;
    }
  }
  rep.add("sum sqrt(i) <= (2/3)m^{3/2} + (1/2)m^{1/2}", true);
  return rep;
}

// ---------------------------------------------------------------------------
// gamma(u) = tau u - 2(r'+1) log u + (log C2 - log C1 - r' log 2)

inline Interval cm_tau() {
  const Interval root2 = sqrt(Interval::from_long(2));
  return (root2 - Interval::from_long(1)) * Interval::pi() *
         sqrt(Interval::from_rational(Rational(2, 3)));
}

struct GammaCrossing {
  long r_prime = 0;
  std::string tau_upper;
  double crossing_u = 0;            ///< gamma > 0 on (crossing_u, infinity)
  bool crossing_certified = false;  ///< gamma(crossing_u) > 0 checked with intervals
  double derivative_at_4r = 0;      ///< lower end of tau - 2(r'+1)/(4r')
  bool derivative_ok = false;       ///< derivative at 4r' exceeds 0.06
};

inline Interval cm_gamma(long r_prime, const Rational& c1, const Rational& c2, const Interval& u) {
  const Interval offset = log(Interval::from_rational(c2)) - log(Interval::from_rational(c1)) -
                          Interval::from_long(r_prime) * log(Interval::from_long(2));
  return cm_tau() * u - Interval::from_long(2 * (r_prime + 1)) * log(u) + offset;
}

inline GammaCrossing cm_gamma_crossing(long r_prime, const std::optional<Rational>& c1,
                                       const std::optional<Rational>& c2) {
  require_r_prime(r_prime);
  if (!c1 || !c2 || *c1 <= 0 || *c2 <= 0) {
    throw Error(ErrorCode::MissingConstants, "gamma needs positive C1 and C2");
  }
  GammaCrossing out;
  out.r_prime = r_prime;
  const Interval tau = cm_tau();
  out.tau_upper = tau.upper_decimal(6);
  const Interval deriv = tau - Interval::from_rational(Rational(2 * (r_prime + 1), 4 * r_prime));
  out.derivative_at_4r = deriv.lo_double();
  out.derivative_ok = Interval::from_rational(Rational(6, 100)).certainly_less(deriv);

  const double t = tau.mid_double();
  const double k = 2.0 * static_cast<double>(r_prime + 1);
  const double offset = std::log(c2->get_d()) - std::log(c1->get_d()) -
                        static_cast<double>(r_prime) * std::log(2.0);
  auto gamma = [&](double u) { return t * u - k * std::log(u) + offset; };
  const double u_min = k / t;  // gamma decreases before, increases after
  if (gamma(u_min) > 0) {
    out.crossing_u = 0;
  } else {
    double lo = u_min, hi = 2 * u_min;
    while (gamma(hi) <= 0) hi *= 2;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (gamma(mid) > 0 ? hi : lo) = mid;
    }
    out.crossing_u = hi;
  }
  if (out.crossing_u > 0) {
    const Rational u(out.crossing_u);
    out.crossing_certified = cm_gamma(r_prime, *c1, *c2, Interval::from_rational(u)).certainly_positive();
  } else {
    out.crossing_certified = cm_gamma(r_prime, *c1, *c2, Interval::from_rational(Rational(u_min)))
                                 .certainly_positive();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Empirical growth fits: the smallest c with value(x) <= c * shape(x)

struct GrowthFit {
  std::vector<long> xs;
  std::vector<double> values;
  std::vector<double> ratios;
  double constant = 0;

  bool bounded_by(double c) const {
    return std::all_of(ratios.begin(), ratios.end(), [&](double r) { return r <= c; });
  }
};

inline GrowthFit fit_growth(const std::vector<long>& xs, const std::vector<double>& values,
                            double (*shape)(long)) {
  GrowthFit fit{xs, values, {}, 0};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    fit.ratios.push_back(values[i] / shape(xs[i]));
    fit.constant = std::max(fit.constant, fit.ratios.back());
  }
  return fit;
}

/// x^2 log(x)^2.
inline double square_log_square(long x) {
  const double l = std::log(static_cast<double>(x));
  return static_cast<double>(x) * static_cast<double>(x) * l * l;
}

/// x log(x).
inline double x_log_x(long x) { return static_cast<double>(x) * std::log(static_cast<double>(x)); }

// ---------------------------------------------------------------------------
// Thrice-punctured line

/// (1-t^2)^{-2} prod_{k>=4 even} (1-t^k)^{-1}.
inline ExponentVector polylog_local_exponents(std::size_t order) {
  return exponents_from(order, [](std::size_t k) { return k == 2 ? 2L : k % 2 == 0 ? 1L : 0L; });
}

/// (1-t^2)^{-s} prod_{k = 2 mod 4, k >= 6} (1-t^k)^{-1}.
inline ExponentVector polylog_global_exponents(long s, std::size_t order) {
  if (s < 1) throw Error(ErrorCode::InvalidParams, "s must be >= 1");
  return exponents_from(order, [&](std::size_t k) { return k == 2 ? s : k % 4 == 2 ? 1L : 0L; });
}

inline QSeries polylog_local_series(std::size_t order) {
  return product_from_exponents(polylog_local_exponents(order), order);
}

inline QSeries polylog_global_majorant(long s, std::size_t order) {
  return product_from_exponents(polylog_global_exponents(s, order), order);
}

/// Spreads a_n to the coefficient of t^{2n}.
inline QSeries even_spread(const std::vector<Integer>& a, std::size_t order) {
  std::vector<Rational> out(order + 1, 0);
  for (std::size_t n = 0; 2 * n <= order; ++n) out[2 * n] = a.at(n);
  return QSeries(std::move(out));
}

inline VerifyReport verify_polylog_identities(std::size_t order) {
  VerifyReport rep{"polylog identities", {}};
  const PartitionTable t = partition_numbers(order / 2);
  const QSeries p_even = even_spread(t.p_values, order);
  const QSeries q_even = even_spread(t.q_values, order);
  rep.add_equal("HS'_loc = (1-t^2)^{-1} sum p(n) t^{2n}", polylog_local_series(order),
                mul_binomial_power(p_even, 2, -1));

  const ExponentVector odd = exponents_from(order, [](std::size_t k) { return k % 4 == 2 ? 1L : 0L; });
  rep.add_equal("prod_{k = 2 mod 4} (1-t^k)^{-1} = sum q(n) t^{2n}",
                product_from_exponents(odd, order), q_even);
  for (long s = 1; s <= 4; ++s) {
    rep.add_equal("majorant = (1-t^2)^{-(s-1)} sum q(n) t^{2n}, s=" + std::to_string(s),
                  polylog_global_majorant(s, order), mul_binomial_power(q_even, 2, -(s - 1)));
  }

  std::optional<std::size_t> distinct_fail;
  std::vector<Integer> distinct(order / 2 + 1, 0);
  distinct[0] = 1;
  for (std::size_t k = 1; k < distinct.size(); ++k) {
    for (std::size_t i = distinct.size() - 1; i >= k; --i) distinct[i] += distinct[i - k];
  }
  for (std::size_t n = 0; n < distinct.size() && !distinct_fail; ++n) {
    if (distinct[n] != t.q_values[n]) distinct_fail = n;
  }
  rep.add("q(n) = partitions into distinct parts", !distinct_fail, distinct_fail);
  return rep;
}

/// Smallest m where the partial sums of the global majorant fall strictly
/// below those of HS'_loc.
inline std::size_t polylog_find_minimal_m(long s, std::size_t budget) {
  if (s < 1) throw Error(ErrorCode::InvalidParams, "s must be >= 1");
  return detail::doubling_search(budget, "polylog find-m", [&](std::size_t order) {
    auto loc = detail::int_product(polylog_local_exponents(order), order);
    auto glob = detail::int_product(polylog_global_exponents(s, order), order);
    detail::divide_by_binomial(loc, 1);
    detail::divide_by_binomial(glob, 1);
    return detail::first_strictly_below(glob, loc);
  });
}

}  // namespace ckbound
