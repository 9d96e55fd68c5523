#pragma once

// Named verification suites run over parameter grids such as "r=0..2,s=0..2".

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ckbound/bounds.hpp"
#include "ckbound/cm_appendix.hpp"
#include "ckbound/hilbert.hpp"
#include "ckbound/lambda_c2.hpp"

namespace ckbound {

struct Range {
  long lo = 0;
  long hi = 0;
};

/// Keys g, n, n1, r, s, rho, d mapped to inclusive ranges.
using Grid = std::map<std::string, Range>;

inline long parse_long(const std::string& text, const std::string& context) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw Error(ErrorCode::InvalidParams, "bad integer '" + text + "' in " + context);
  }
  return v;
}

/// "r=0..2,s=1" -> {r: [0,2], s: [1,1]}.
inline Grid parse_grid(const std::string& spec) {
  static const std::vector<std::string> keys{"g", "n", "n1", "r", "s", "rho", "d"};
  Grid grid;
  std::size_t start = 0;
  while (start < spec.size()) {
    std::size_t end = spec.find(',', start);
    if (end == std::string::npos) end = spec.size();
    const std::string item = spec.substr(start, end - start);
    start = end + 1;
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::InvalidParams, "grid item '" + item + "' lacks '='");
    const std::string key = item.substr(0, eq);
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw Error(ErrorCode::InvalidParams, "unknown grid key '" + key + "'");
    }
    const std::string value = item.substr(eq + 1);
    const std::size_t dots = value.find("..");
    Range range;
    if (dots == std::string::npos) {
      range.lo = range.hi = parse_long(value, item);
    } else {
      range.lo = parse_long(value.substr(0, dots), item);
      range.hi = parse_long(value.substr(dots + 2), item);
    }
    if (range.lo > range.hi) throw Error(ErrorCode::InvalidParams, "empty range in '" + item + "'");
    grid[key] = range;
  }
  return grid;
}

/// Fills keys missing from `grid` with the defaults g=0..3, n=0..4, r=0, s=0, rho=1.
inline Grid with_defaults(Grid grid, const Grid& overrides = {}) {
  Grid defaults{{"g", {0, 3}}, {"n", {0, 4}}, {"r", {0, 0}}, {"s", {0, 0}}, {"rho", {1, 1}}};
  for (const auto& [k, v] : overrides) defaults[k] = v;
  for (const auto& [k, v] : defaults) grid.try_emplace(k, v);
  return grid;
}

/// All hyperbolic curves of the grid with every valid n1. Without a "d" key
/// the number of closed boundary points is n1 + (n - n1)/2. Genus 0 always
/// takes r = rho = 0.
inline std::vector<CurveData> enumerate_curves(const Grid& grid) {
  std::vector<CurveData> out;
  auto range = [&](const char* key) { return grid.at(key); };
  for (long g = range("g").lo; g <= range("g").hi; ++g) {
    for (long n = range("n").lo; n <= range("n").hi; ++n) {
      if (!is_hyperbolic(g, n)) continue;
      for (long n1 = n % 2; n1 <= n; n1 += 2) {
        if (grid.count("n1") && (n1 < grid.at("n1").lo || n1 > grid.at("n1").hi)) continue;
        for (long r = range("r").lo; r <= range("r").hi; ++r) {
          if (g == 0 && r != 0) continue;
          for (long s = range("s").lo; s <= range("s").hi; ++s) {
            const Range rhos = g == 0 ? Range{0, 0} : range("rho");
            for (long rho = rhos.lo; rho <= rhos.hi; ++rho) {
              const Range d = grid.count("d") ? grid.at("d") : Range{n1 + (n - n1) / 2, n1 + (n - n1) / 2};
              for (long dc = d.lo; dc <= std::min(d.hi, n); ++dc) {
                CurveData c;
                c.g = g;
                c.n = n;
                c.n1 = n1;
                c.r = r;
                c.s = s;
                c.rho = rho;
                c.d_closed = dc;
                out.push_back(c);
              }
            }
          }
        }
      }
    }
  }
  return out;
}

inline std::string curve_label(const CurveData& c) {
  return "g=" + std::to_string(c.g) + " n=" + std::to_string(c.n) + " n1=" + std::to_string(c.n1) +
         " r=" + std::to_string(c.r) + " s=" + std::to_string(c.s) + " rho=" + std::to_string(c.rho) +
         " d=" + std::to_string(c.d_closed);
}

struct SuiteCase {
  std::string label;
  VerifyReport report;
};

struct SuiteResult {
  std::string suite;
  std::size_t order = 0;
  std::vector<SuiteCase> cases;

  bool holds() const {
    return std::all_of(cases.begin(), cases.end(), [](const SuiteCase& c) { return c.report.holds(); });
  }
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"funceq",  "product",    "cor210",   "lemma31",
                                              "lemma32", "lemma33",    "lowerbound", "sublemma",
                                              "cm",      "polylog"};
  return names;
}

namespace detail {

template <class Fn>
void per_curve(SuiteResult& out, const std::vector<CurveData>& curves, Fn fn) {
  for (const auto& c : curves) out.cases.push_back({curve_label(c), fn(c)});
}

/// Distinct (g, n) or (g, n, n1) projections of a curve list, in order.
inline std::vector<CurveData> distinct_by(const std::vector<CurveData>& curves, bool with_n1) {
  std::vector<CurveData> out;
  for (const auto& c : curves) {
    const bool seen = std::any_of(out.begin(), out.end(), [&](const CurveData& o) {
      return o.g == c.g && o.n == c.n && (!with_n1 || o.n1 == c.n1);
    });
    if (!seen) out.push_back(c);
  }
  return out;
}

}  // namespace detail

inline SuiteResult run_suite(const std::string& name, const Grid& user_grid, std::size_t order) {
  SuiteResult out{name, order, {}};
  if (name == "funceq" || name == "product") {
    const auto curves = enumerate_curves(with_defaults(user_grid));
    detail::per_curve(out, curves, [&](const CurveData& c) {
      if (name == "product") return verify_product_factors(c, order);
      VerifyReport rep = verify_functional_equation(c, order);
      rep.append(verify_sign_factorization(c, order));
      return rep;
    });
  } else if (name == "cor210") {
    const auto curves = enumerate_curves(with_defaults(user_grid, {{"r", {0, 2}}, {"s", {0, 2}}}));
    detail::per_curve(out, curves, [&](const CurveData& c) {
      VerifyReport rep = verify_global_majorant(c, order);
      rep.append(verify_global_exponents(c, order));
      return rep;
    });
  } else if (name == "lemma31") {
    for (const auto& c : detail::distinct_by(enumerate_curves(with_defaults(user_grid)), false)) {
      out.cases.push_back({"g=" + std::to_string(c.g) + " n=" + std::to_string(c.n),
                           verify_lemma_31(c.g, c.n, order)});
    }
  } else if (name == "lemma32") {
    for (const auto& c : detail::distinct_by(enumerate_curves(with_defaults(user_grid)), true)) {
      out.cases.push_back({"g=" + std::to_string(c.g) + " n=" + std::to_string(c.n) +
                               " n1=" + std::to_string(c.n1),
                           verify_lemma_32(c.g, c.n, c.n1, order)});
    }
  } else if (name == "lemma33") {
    const auto curves = enumerate_curves(with_defaults(user_grid, {{"r", {0, 2}}, {"s", {0, 2}}}));
    detail::per_curve(out, curves, [&](const CurveData& c) { return verify_lemma_33(c, order); });
    for (const auto& c : detail::distinct_by(curves, false)) {
      out.cases.push_back({"growth g=" + std::to_string(c.g) + " n=" + std::to_string(c.n),
                           verify_squared_local_growth(c.g, c.n, order)});
    }
  } else if (name == "lowerbound") {
    const Grid g = with_defaults(user_grid, {{"r", {0, 8}}, {"s", {0, 8}}});
    for (long r = g.at("r").lo; r <= g.at("r").hi; ++r) {
      for (long s = g.at("s").lo; s <= g.at("s").hi; ++s) {
        if (r + s < 1) continue;
        auto lb = verify_lower_bound_lemma(r, s, order);
        out.cases.push_back({"r=" + std::to_string(r) + " s=" + std::to_string(s), std::move(lb.report)});
      }
    }
    out.cases.push_back({"central binomial j<=64", verify_central_binomial_bound(64)});
  } else if (name == "sublemma") {
    VerifyReport rep{"sublemma", {}};
    for (long a = -8; a <= 8; ++a) {
      for (long b = -8; b <= 8; ++b) {
        const auto r = verify_sublemma_sgn({a, b}, order);
        rep.add("a=" + std::to_string(a) + " b=" + std::to_string(b), r.holds, r.first_mismatch);
      }
    }
    out.cases.push_back({"|a|,|b| <= 8", std::move(rep)});
  } else if (name == "cm") {
    VerifyReport ex{"exponents", {}};
    ex.add("local exponents (1,1,2,2,...)",
           extract_exponents(cm_local_series(order)) == cm_local_exponents(order));
    for (long r = 0; r <= 2; ++r) {
      for (long s = 0; s <= 2; ++s) {
        ex.add("global exponents r=" + std::to_string(r) + " s=" + std::to_string(s),
               extract_exponents(cm_global_series(r, s, order)) == cm_global_exponents(r, s, order));
      }
    }
    out.cases.push_back({"exponents", std::move(ex)});
    const PartitionTable t = partition_numbers(std::max<std::size_t>(2 * order, 256));
    out.cases.push_back({"b_n identity", verify_partition_square_identity(t, order)});
    for (long r = 0; r <= 3; ++r) {
      for (long s = 0; s <= 3; ++s) {
        if (r + s < 2) continue;
        out.cases.push_back({"relaxation r=" + std::to_string(r) + " s=" + std::to_string(s),
                             verify_relaxation(r, s, std::min<std::size_t>(order, 64))});
      }
    }
    const PartitionConstants k = fit_partition_constants(t, order);
    out.cases.push_back({"sandwich n<=" + std::to_string(order),
                         verify_partition_sandwich(t, k.C0.value, k.C1.value, order)});
    out.cases.push_back({"partition inequalities",
                         verify_partition_inequalities(t, 6, order, std::max<std::size_t>(2 * order, 256), k.C2.value)});
    out.cases.push_back({"square-root sum m<=10^4", verify_sqrt_sum(10000)});
  } else if (name == "polylog") {
    out.cases.push_back({"identities", verify_polylog_identities(order)});
  } else {
    throw Error(ErrorCode::UnknownSuite, "unknown suite '" + name + "'");
  }
  return out;
}

/// Runs one suite, or every suite for "all".
inline std::vector<SuiteResult> run_suites(const std::string& name, const Grid& grid, std::size_t order) {
  std::vector<SuiteResult> out;
  if (name == "all") {
    for (const auto& s : suite_names()) out.push_back(run_suite(s, grid, order));
  } else {
    out.push_back(run_suite(name, grid, order));
  }
  return out;
}

}  // namespace ckbound
