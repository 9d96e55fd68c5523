#pragma once

// Truncated formal power series with exact rational coefficients.
//
// A QSeries of order N is known modulo t^{N+1}. Every binary operation
// truncates to the smaller operand order; nothing ever extends precision.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ckbound/error.hpp"

namespace ckbound {

using Integer = mpz_class;
using Rational = mpq_class;

class QSeries {
 public:
  /// Zero series of the given order.
  explicit QSeries(std::size_t order) : coeffs_(order + 1) {}

  /// Takes ownership of coefficients 0..N; order becomes N.
  explicit QSeries(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) {
      throw Error(ErrorCode::InvalidParams, "series needs at least one coefficient");
    }
    for (auto& c : coeffs_) c.canonicalize();
  }

  static QSeries constant(const Rational& c, std::size_t order) {
    QSeries s(order);
    s.coeffs_[0] = c;
    return s;
  }

  static QSeries one(std::size_t order) { return constant(1, order); }

  /// c * t^k, truncated.
  static QSeries monomial(const Rational& c, std::size_t k, std::size_t order) {
    QSeries s(order);
    if (k <= order) s.coeffs_[k] = c;
    return s;
  }

  static QSeries from_integers(std::span<const Integer> values) {
    std::vector<Rational> coeffs(values.begin(), values.end());
    return QSeries(std::move(coeffs));
  }

  std::size_t order() const { return coeffs_.size() - 1; }
  const Rational& operator[](std::size_t i) const { return coeffs_.at(i); }
  std::span<const Rational> coeffs() const { return coeffs_; }

  QSeries truncated(std::size_t order) const {
    if (order > this->order()) {
      throw Error(ErrorCode::OrderTooSmall,
                  "cannot extend a series of order " + std::to_string(this->order()) +
                      " to order " + std::to_string(order));
    }
    return QSeries(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + order + 1));
  }

  bool is_integral() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const Rational& c) { return c.get_den() == 1; });
  }

  bool has_nonnegative_coefficients() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const Rational& c) { return sgn(c) >= 0; });
  }

  bool operator==(const QSeries& other) const { return coeffs_ == other.coeffs_; }

 private:
  std::vector<Rational> coeffs_;
};

// ---------------------------------------------------------------------------
// Ring operations

inline QSeries operator+(const QSeries& a, const QSeries& b) {
  const std::size_t order = std::min(a.order(), b.order());
  std::vector<Rational> c(order + 1);
  for (std::size_t i = 0; i <= order; ++i) c[i] = a[i] + b[i];
  return QSeries(std::move(c));
}

inline QSeries operator-(const QSeries& a) {
  std::vector<Rational> c(a.order() + 1);
  for (std::size_t i = 0; i <= a.order(); ++i) c[i] = -a[i];
  return QSeries(std::move(c));
}

inline QSeries operator-(const QSeries& a, const QSeries& b) {
  const std::size_t order = std::min(a.order(), b.order());
  std::vector<Rational> c(order + 1);
  for (std::size_t i = 0; i <= order; ++i) c[i] = a[i] - b[i];
  return QSeries(std::move(c));
}

inline QSeries operator*(const Rational& k, const QSeries& a) {
  std::vector<Rational> c(a.order() + 1);
  for (std::size_t i = 0; i <= a.order(); ++i) c[i] = k * a[i];
  return QSeries(std::move(c));
}

/// Cauchy product truncated at the smaller order. Zero coefficients of the
/// left operand are skipped, which makes products with sparse series such
/// as a(t^k) cheap.
inline QSeries operator*(const QSeries& a, const QSeries& b) {
  const std::size_t order = std::min(a.order(), b.order());
  std::vector<Rational> c(order + 1);
  Rational term;
  for (std::size_t i = 0; i <= order; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; i + j <= order; ++j) {
      if (sgn(b[j]) == 0) continue;
      term = a[i] * b[j];
      c[i + j] += term;
    }
  }
  return QSeries(std::move(c));
}

inline QSeries invert(const QSeries& a) {
  if (sgn(a[0]) == 0) {
    throw Error(ErrorCode::ZeroConstantTerm, "cannot invert a series with a(0) = 0");
  }
  const std::size_t order = a.order();
  std::vector<Rational> b(order + 1);
  const Rational inv0 = 1 / a[0];
  b[0] = inv0;
  Rational acc;
  for (std::size_t n = 1; n <= order; ++n) {
    acc = 0;
    for (std::size_t k = 1; k <= n; ++k) {
      if (sgn(a[k]) != 0) acc += a[k] * b[n - k];
    }
    b[n] = -acc * inv0;
  }
  return QSeries(std::move(b));
}

/// Division is always invert-then-multiply.
inline QSeries operator/(const QSeries& a, const QSeries& b) { return a * invert(b); }

/// Formal logarithm via n*b_n = n*a_n - sum_{k<n} k*b_k*a_{n-k}.
inline QSeries log(const QSeries& a) {
  if (a[0] != 1) throw Error(ErrorCode::ConstantTermNotOne, "log needs a(0) = 1");
  const std::size_t order = a.order();
  std::vector<Rational> b(order + 1);
  Rational acc;
  for (std::size_t n = 1; n <= order; ++n) {
    acc = Rational(static_cast<unsigned long>(n)) * a[n];
    for (std::size_t k = 1; k < n; ++k) {
      if (sgn(a[n - k]) != 0 && sgn(b[k]) != 0) {
        acc -= Rational(static_cast<unsigned long>(k)) * b[k] * a[n - k];
      }
    }
    b[n] = acc / static_cast<unsigned long>(n);
  }
  return QSeries(std::move(b));
}

/// Formal exponential via n*b_n = sum_{k=1}^n k*a_k*b_{n-k}.
inline QSeries exp(const QSeries& a) {
  if (sgn(a[0]) != 0) throw Error(ErrorCode::NonzeroConstantTerm, "exp needs a(0) = 0");
  const std::size_t order = a.order();
  std::vector<Rational> b(order + 1);
  b[0] = 1;
  Rational acc;
  for (std::size_t n = 1; n <= order; ++n) {
    acc = 0;
    for (std::size_t k = 1; k <= n; ++k) {
      if (sgn(a[k]) != 0) acc += Rational(static_cast<unsigned long>(k)) * a[k] * b[n - k];
    }
    b[n] = acc / static_cast<unsigned long>(n);
  }
  return QSeries(std::move(b));
}

/// a^q = exp(q log a) for a(0) = 1. Evaluated with the power recurrence
/// n*b_n = sum_{k=1}^n ((q+1)k - n) a_k b_{n-k}, which yields the same
/// coefficients without the intermediate log/exp denominators.
inline QSeries rational_power(const QSeries& a, const Rational& q) {
  if (a[0] != 1) throw Error(ErrorCode::ConstantTermNotOne, "rational_power needs a(0) = 1");
  const std::size_t order = a.order();
  std::vector<Rational> b(order + 1);
  b[0] = 1;
  const Rational q1 = q + 1;
  Rational acc, weight;
  for (std::size_t n = 1; n <= order; ++n) {
    acc = 0;
    for (std::size_t k = 1; k <= n; ++k) {
      if (sgn(a[k]) == 0 || sgn(b[n - k]) == 0) continue;
      weight = q1 * static_cast<unsigned long>(k);
      weight -= static_cast<unsigned long>(n);
      acc += weight * a[k] * b[n - k];
    }
    b[n] = acc / static_cast<unsigned long>(n);
  }
  return QSeries(std::move(b));
}

/// a(t^k), keeping the input order.
inline QSeries substitute_power(const QSeries& a, std::size_t k) {
  if (k == 0) throw Error(ErrorCode::InvalidParams, "substitute_power needs k >= 1");
  std::vector<Rational> c(a.order() + 1);
  for (std::size_t i = 0; i * k <= a.order(); ++i) c[i * k] = a[i];
  return QSeries(std::move(c));
}

/// (1 - t^k)^e for any integer e, by the binomial series.
inline QSeries binomial_power(std::size_t k, long e, std::size_t order) {
  if (k == 0) throw Error(ErrorCode::InvalidParams, "binomial_power needs k >= 1");
  std::vector<Rational> c(order + 1);
  Integer coeff;
  for (std::size_t i = 0; i * k <= order; ++i) {
    if (e >= 0) {
      if (static_cast<unsigned long>(e) < i) break;
      mpz_bin_uiui(coeff.get_mpz_t(), static_cast<unsigned long>(e), i);
      if (i % 2 == 1) coeff = -coeff;
    } else {
      mpz_bin_uiui(coeff.get_mpz_t(), static_cast<unsigned long>(-e) + i - 1, i);
    }
    c[i * k] = coeff;
  }
  return QSeries(std::move(c));
}

/// a * (1 - t^k)^e in O(order * |e|) by repeated multiplication or division
/// by (1 - t^k).
inline QSeries mul_binomial_power(const QSeries& a, std::size_t k, const Integer& e) {
  if (k == 0) throw Error(ErrorCode::InvalidParams, "mul_binomial_power needs k >= 1");
  std::vector<Rational> c(a.coeffs().begin(), a.coeffs().end());
  const std::size_t n = c.size();
  const std::size_t terms = (n - 1) / k;
  const Integer steps = abs(e);
  if (steps <= static_cast<unsigned long>(terms + 1)) {
    for (unsigned long step = 0; step < steps.get_ui(); ++step) {
      if (e < 0) {
        for (std::size_t i = k; i < n; ++i) c[i] += c[i - k];
      } else {
        for (std::size_t i = n; i-- > k;) c[i] -= c[i - k];
      }
    }
    return QSeries(std::move(c));
  }
  // (1 - x)^e = sum_j b_j x^j with b_j = b_{j-1} (j - 1 - e) / j
  std::vector<Integer> b(terms + 1);
  b[0] = 1;
  for (std::size_t j = 1; j <= terms; ++j) {
    b[j] = b[j - 1] * (Integer(static_cast<unsigned long>(j - 1)) - e);
    mpz_divexact_ui(b[j].get_mpz_t(), b[j].get_mpz_t(), static_cast<unsigned long>(j));
  }
  std::vector<Rational> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j * k <= i; ++j) out[i] += c[i - j * k] * b[j];
  }
  return QSeries(std::move(out));
}

inline QSeries mul_binomial_power(const QSeries& a, std::size_t k, long e) {
  return mul_binomial_power(a, k, Integer(e));
}

// ---------------------------------------------------------------------------
// Rational functions with integer coefficients

/// Integer polynomial, coefficients listed from t^0 upward.
using IntPoly = std::vector<Integer>;

inline IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

inline IntPoly poly_pow(const IntPoly& a, unsigned e) {
  IntPoly result{1};
  for (unsigned i = 0; i < e; ++i) result = poly_mul(result, a);
  return result;
}

class RationalFunction {
 public:
  RationalFunction(IntPoly numerator, IntPoly denominator)
      : numerator_(std::move(numerator)), denominator_(std::move(denominator)) {
    if (denominator_.empty() || denominator_[0] == 0) {
      throw Error(ErrorCode::ZeroDenominatorConstant,
                  "denominator must have a nonzero constant term");
    }
  }

  const IntPoly& numerator() const { return numerator_; }
  const IntPoly& denominator() const { return denominator_; }

 private:
  IntPoly numerator_;
  IntPoly denominator_;
};

/// Taylor expansion by long division: den_0 c_i = num_i - sum_{k>=1} den_k c_{i-k}.
inline QSeries expand(const RationalFunction& rf, std::size_t order) {
  const IntPoly& num = rf.numerator();
  const IntPoly& den = rf.denominator();
  std::vector<Rational> c(order + 1);
  Rational acc;
  for (std::size_t i = 0; i <= order; ++i) {
    acc = i < num.size() ? Rational(num[i]) : Rational(0);
    for (std::size_t k = 1; k < den.size() && k <= i; ++k) {
      if (den[k] != 0) acc -= den[k] * c[i - k];
    }
    c[i] = acc / den[0];
  }
  return QSeries(std::move(c));
}

// ---------------------------------------------------------------------------
// Coefficientwise comparison

struct ComparisonReport {
  bool holds = true;
  std::optional<std::size_t> first_violation;
};

/// Checks a_i <= b_i for all i <= up_to.
inline ComparisonReport compare_coefficientwise(const QSeries& a, const QSeries& b,
                                                std::size_t up_to) {
  if (up_to > std::min(a.order(), b.order())) {
    throw Error(ErrorCode::OrderTooSmall,
                "comparison up to " + std::to_string(up_to) + " exceeds operand order");
  }
  for (std::size_t i = 0; i <= up_to; ++i) {
    if (a[i] > b[i]) return {false, i};
  }
  return {};
}

/// Index of the first negative coefficient, if any.
inline std::optional<std::size_t> first_negative(const QSeries& a) {
  for (std::size_t i = 0; i <= a.order(); ++i) {
    if (sgn(a[i]) < 0) return i;
  }
  return std::nullopt;
}

/// Multiplication by 1/(1-t): partial sums.
inline QSeries partial_sums(const QSeries& a) { return mul_binomial_power(a, 1, -1); }

}  // namespace ckbound
