// Acceptance checks 1-12. One PASS/FAIL line per criterion, INFO lines for
// diagnostics. Exit status 1 if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "ckbound/ckbound.hpp"

using namespace ckbound;

namespace {

// Pinned tolerances and limits.
constexpr double kLocalSeconds = 1.0;
constexpr double kFunctionalEquationSeconds = 30.0;
constexpr double kMinimalMSeconds = 300.0;
constexpr std::size_t kMinimalMBudget = 1024;
constexpr std::size_t kPolylogBudget = 8192;
constexpr std::size_t kCMBudget = 4096;
constexpr std::size_t kLowerBoundOrder = 256;
constexpr double kExactTolerance = 0.0;  // every comparison is exact

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << id << ": " << detail << std::endl;
}

void info(const std::string& text) { std::cout << "INFO " << text << std::endl; }

std::vector<CurveData> grid(long r_hi, long s_hi) {
  Grid g = with_defaults({}, {{"r", {0, r_hi}}, {"s", {0, s_hi}}});
  return enumerate_curves(g);
}

std::string first_failure(const std::string& label, const VerifyReport& rep) {
  const CheckResult* f = rep.first_failure();
  if (!f) return {};
  std::string s = label + ": " + f->label;
  if (f->first_violation) s += " at i=" + std::to_string(*f->first_violation);
  if (!f->detail.empty()) s += " (" + f->detail + ")";
  return s;
}

std::string fixed(double x, int digits) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << x;
  return os.str();
}

// Fits on the first `head` points and tests the rest against that constant.
std::string holdout(const std::vector<long>& xs, const std::vector<double>& ms, std::size_t head) {
  if (xs.size() <= head) return "has no held-out points for";
  const GrowthFit train = fit_growth({xs.begin(), xs.begin() + head}, {ms.begin(), ms.begin() + head},
                                     square_log_square);
  const GrowthFit rest = fit_growth({xs.begin() + head, xs.end()}, {ms.begin() + head, ms.end()},
                                    square_log_square);
  return "(" + fixed(train.constant, 4) + (rest.bounded_by(train.constant) ? ") bounds" : ") does not bound");
}

void criterion1() {
  const auto start = Clock::now();
  bool ok = true;
  std::size_t cases = 0;
  for (long g = 0; g <= 3; ++g) {
    for (long n = 0; n <= 4; ++n) {
      if (!is_hyperbolic(g, n)) continue;
      ++cases;
      const QSeries s = expand(local_rational(g, n), 200);
      Integer prev2 = 1, prev1 = g;
      ok = ok && s[0] == 1 && s[1] == g;
      for (std::size_t i = 2; i <= 200 && ok; ++i) {
        const Integer c = 2 * g * prev1 + (n - 1) * prev2;
        ok = s[i] == c;
        prev2 = prev1;
        prev1 = c;
      }
    }
  }
  const double t = seconds_since(start);
  report(1, ok && t < kLocalSeconds,
         std::to_string(cases) + " (g,n) pairs to order 200, " + fixed(t, 3) + " s");
}

void criterion2() {
  const auto start = Clock::now();
  std::string fail;
  std::size_t cases = 0;
  for (const auto& c : enumerate_curves(with_defaults({}))) {
    ++cases;
    const auto rep = verify_functional_equation(c, 128);
    if (fail.empty()) fail = first_failure(curve_label(c), rep);
  }
  const double t = seconds_since(start);
  report(2, fail.empty() && t < kFunctionalEquationSeconds,
         (fail.empty() ? std::to_string(cases) + " curves to order 128" : fail) + ", " + fixed(t, 2) + " s");
}

void criterion3() {
  std::string fail;
  std::size_t cases = 0;
  for (const auto& c : enumerate_curves(with_defaults({}))) {
    ++cases;
    if (fail.empty()) fail = first_failure(curve_label(c), verify_product_factors(c, 128));
  }
  report(3, fail.empty(), fail.empty() ? std::to_string(cases) + " curves, every factor to order 128" : fail);
}

void criterion4() {
  std::string fail;
  std::size_t cases = 0;
  for (const auto& c : grid(2, 2)) {
    ++cases;
    if (fail.empty()) fail = first_failure(curve_label(c), verify_global_majorant(c, 128));
  }
  report(4, fail.empty(),
         fail.empty() ? std::to_string(cases) + " curves, r,s in 0..2, rho=1 (rho=0 for g=0), order 128" : fail);
}

void criterion5() {
  std::string fail;
  std::size_t cases = 0;
  for (long g = 0; g <= 3; ++g) {
    for (long n = 0; n <= 4; ++n) {
      if (!is_hyperbolic(g, n)) continue;
      ++cases;
      const std::string gn = "g=" + std::to_string(g) + " n=" + std::to_string(n);
      if (fail.empty()) fail = first_failure("lemma31 " + gn, verify_lemma_31(g, n, 200));
      if (fail.empty()) fail = first_failure("growth " + gn, verify_squared_local_growth(g, n, 200));
      for (long n1 = n % 2; n1 <= n && fail.empty(); n1 += 2) {
        fail = first_failure("lemma32 " + gn + " n1=" + std::to_string(n1), verify_lemma_32(g, n, n1, 200));
      }
    }
  }
  for (const auto& c : grid(2, 2)) {
    ++cases;
    if (fail.empty()) fail = first_failure("lemma33 " + curve_label(c), verify_lemma_33(c, 200));
  }
  report(5, fail.empty(), fail.empty() ? std::to_string(cases) + " cases to order 200" : fail);

  std::string variant;
  for (long g = 0; g <= 3; ++g) {
    for (long n = 0; n <= 4; ++n) {
      if (!is_hyperbolic(g, n)) continue;
      for (long n1 = n % 2; n1 <= n; n1 += 2) {
        const auto rep = verify_squared_majorant_ratio(g, n, n1, 200);
        if (!rep.holds()) {
          variant += " g=" + std::to_string(g) + ",n=" + std::to_string(n) + ",n1=" + std::to_string(n1) +
                     "@i=" + std::to_string(rep.first_failure()->first_violation.value_or(0));
        }
      }
    }
  }
  info("numerator 1+(n1-1)t^2 variant of the squared-ratio inequality fails at:" +
       (variant.empty() ? std::string(" none") : variant));
}

void criterion6() {
  const auto start = Clock::now();
  std::string fail;
  std::size_t cases = 0, largest = 0;
  for (const auto& c : grid(2, 2)) {
    if (c.r + s_bar(c) > 3) continue;
    ++cases;
    const auto cap = m_cap(c);
    try {
      const auto found = find_minimal_m(c, cap, kMinimalMBudget);
      largest = std::max(largest, found.m);
      if (found.m > cap && fail.empty()) fail = curve_label(c) + " m=" + std::to_string(found.m);
    } catch (const Error& e) {
      if (fail.empty()) fail = curve_label(c) + ": " + e.what();
    }
  }
  const double t = seconds_since(start);
  report(6, fail.empty() && t < kMinimalMSeconds,
         (fail.empty() ? std::to_string(cases) + " curves, largest m " + std::to_string(largest) : fail) + ", " +
             fixed(t, 2) + " s");
}

void criterion7() {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> pick(0, 5);
  std::uniform_int_distribution<long> value(-4, 9);
  bool ok = true;
  for (int trial = 0; trial < 100 && ok; ++trial) {
    ExponentVector ev;
    for (std::size_t k = 1; k <= 64; ++k) ev.values.emplace_back(pick(rng) == 0 ? value(rng) : 0);
    ok = extract_exponents(product_from_exponents(ev, 64)) == ev;
  }
  const ExponentVector dims = extract_exponents(expand(RationalFunction({1}, {1, -4, 1}), 16));
  const bool dim_ok = dims.at(1) == 4 && dims.at(2) == 5;
  report(7, ok && dim_ok,
         std::string("100 random round trips ") + (ok ? "exact" : "mismatch") + ", 1/(1-4t+t^2): e1=" +
             dims.at(1).get_str() + " e2=" + dims.at(2).get_str());
}

void criterion8() {
  std::string fail;
  for (long a = -8; a <= 8; ++a) {
    for (long b = -8; b <= 8; ++b) {
      const auto r = verify_sublemma_sgn({a, b}, 64);
      if (!r.holds && fail.empty()) fail = "a=" + std::to_string(a) + " b=" + std::to_string(b);
    }
  }
  report(8, fail.empty(), fail.empty() ? "289 pairs |a|,|b| <= 8 to order 64" : "fails at " + fail);
}

void criterion9() {
  std::string fail;
  std::size_t cases = 0;
  for (auto c : grid(2, 2)) {
    c.p = 3;
    c.points_mod_p = 4;
    for (long i = 0; i < c.s; ++i) c.bad_primes.push_back({5 + 2 * i, 2, true});
    if (m_cap(c) > 256) continue;
    ++cases;
    const auto exact = compute_bound(c, BoundMode::ExactCoefficient, 4096);
    const auto simple = compute_bound(c, BoundMode::Simplified, 4096);
    if (exact.bound_exact > simple.bound_exact && fail.empty()) fail = curve_label(c);
  }
  CurveData g2;
  g2.g = 2;
  g2.rho = 1;
  g2.p = 3;
  g2.points_mod_p = 4;
  const auto rep = compute_bound(g2, BoundMode::Simplified, 4096);
  const bool g2_ok = rep.M_cap == 16 && rep.factors.simplified_exponent == 120 &&
                     rep.projective_base_exponent && *rep.projective_base_exponent == 16;
  report(9, fail.empty() && g2_ok,
         (fail.empty() ? std::to_string(cases) + " curves exact <= simplified" : "exact > simplified at " + fail) +
             "; g=2,n=0,r=0: M=" + std::to_string(rep.M_cap) +
             " exponent=" + rep.factors.simplified_exponent.get_str());
}

void criterion10() {
  bool ok = extract_exponents(cm_local_series(64)) == cm_local_exponents(64);
  for (long r = 0; r <= 3; ++r) {
    for (long s = 0; s <= 3; ++s) ok = ok && extract_exponents(cm_global_series(r, s, 64)) == cm_global_exponents(r, s, 64);
  }
  const PartitionTable t = partition_numbers(256);
  const bool bn = verify_partition_square_identity(t, 128).holds();
  const PartitionConstants k = fit_partition_constants(t, 128);
  const bool sandwich = verify_partition_sandwich(t, k.C0.value, k.C1.value, 128).holds();
  const bool ineq = verify_partition_inequalities(t, 12, 128, 256, k.C2.value).holds();

  std::vector<long> xs;
  std::vector<double> ms;
  for (long rp = 2; rp <= 12; ++rp) {
    xs.push_back(rp);
    ms.push_back(static_cast<double>(cm_find_minimal_m(rp, kCMBudget)));
  }
  const GrowthFit fit = fit_growth(xs, ms, square_log_square);
  const bool fit_ok = fit.bounded_by(fit.constant);
  std::string crossings;
  for (double m : ms) crossings += (crossings.empty() ? "" : ",") + std::to_string(static_cast<long>(m));
  report(10, ok && bn && sandwich && ineq && fit_ok,
         std::string("exponents ") + (ok ? "ok" : "bad") + ", b_n " + (bn ? "ok" : "bad") + ", C2=" + k.C2.decimal +
             " inequalities " + (sandwich && ineq ? "ok" : "bad") + ", m(2..12)=" + crossings +
             " <= " + fixed(fit.constant, 4) + " r'^2 log^2 r'");
  info("cm holdout: constant fitted on r'=2..6 " + holdout(xs, ms, 5) + " r'=7..12");
  info("C0=" + k.C0.decimal + " C1=" + k.C1.decimal + " C2=" + k.C2.decimal +
       "; tau=" + cm_tau().upper_decimal(6));
}

void criterion11() {
  const bool ids = verify_polylog_identities(64).holds();
  std::vector<long> xs;
  std::vector<double> ms;
  std::string err;
  for (long s = 2; s <= 12; ++s) {
    try {
      ms.push_back(static_cast<double>(polylog_find_minimal_m(s, kPolylogBudget)));
      xs.push_back(s);
    } catch (const Error& e) {
      if (err.empty()) err = "s=" + std::to_string(s) + ": " + e.what();
    }
  }
  const GrowthFit fit = fit_growth(xs, ms, square_log_square);
  std::string crossings, ratios;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    crossings += (i ? "," : "") + std::to_string(static_cast<long>(ms[i]));
    ratios += (i ? "," : "") + fixed(fit.ratios[i], 2);
  }
  report(11, ids && err.empty() && fit.bounded_by(fit.constant),
         std::string("identities ") + (ids ? "ok" : "bad") + ", m(2..12)=" + crossings + " <= " +
             fixed(fit.constant, 4) + " s^2 log^2 s" + (err.empty() ? "" : "; " + err));
  info("polylog m(s)/(s^2 log^2 s) for s=2..12: " + ratios);
  info("polylog holdout: constant fitted on s=2..6 " + holdout(xs, ms, 5) + " s=7..12");
}

void criterion12() {
  const VerifyReport stirling = verify_central_binomial_bound(64);
  std::size_t windows = 0, checked = 0;
  std::string fail;
  bool truncated = false;
  for (long r = 0; r <= 8; ++r) {
    for (long s = 0; s <= 8; ++s) {
      if (r + s < 1) continue;
      const auto lb = verify_lower_bound_lemma(r, s, kLowerBoundOrder);
      if (lb.vacuous) continue;
      ++windows;
      checked += lb.checked;
      truncated = truncated || lb.truncated;
      if (fail.empty()) fail = first_failure("r=" + std::to_string(r) + " s=" + std::to_string(s), lb.report);
    }
  }
  const CheckResult& stated = stirling.checks.at(0);
  const CheckResult& robbins = stirling.checks.at(1);
  report(12, stated.holds && fail.empty(),
         "C(2j,j) >= 4^j/(e^{1/42} sqrt(pi j)) j<=64: " +
             (stated.holds ? std::string("holds") : stated.detail) + "; partial-sum reversal on " +
             std::to_string(windows) + " windows, " + std::to_string(checked) + " m values: " +
             (fail.empty() ? "holds" : fail) + (truncated ? " (truncated)" : ""));
  info(std::string("Robbins form C(2j,j) >= 4^j e^{-(1/(6j)-1/(24j+1))}/sqrt(pi j), j<=64: ") +
       (robbins.holds ? "holds" : "fails"));
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                    criterion5, criterion6, criterion7, criterion8,
                                                    criterion9, criterion10, criterion11, criterion12};
  for (const auto& run : criteria) {
    try {
      run();
    } catch (const std::exception& e) {
      ++failures;
      std::cout << "FAIL (exception) " << e.what() << std::endl;
    }
  }
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail")
            << " (tolerance " << kExactTolerance << ", exact arithmetic)" << std::endl;
  return failures == 0 ? 0 : 1;
}
