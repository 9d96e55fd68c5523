#pragma once

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ckbound/ckbound.hpp"

namespace ckbound::cli {

enum ExitCode { kSuccess = 0, kVerificationFailure = 1, kUsageError = 2, kBudgetExceeded = 3 };

inline constexpr std::size_t kDefaultBudget = 4096;
inline constexpr long kDefaultSeed = 20240601;

/// Default order budget, overridden by CKBOUND_BUDGET.
inline std::size_t default_budget() {
  if (const char* env = std::getenv("CKBOUND_BUDGET")) {
    const long v = parse_long(env, "CKBOUND_BUDGET");
    if (v < 1) throw Error(ErrorCode::InvalidParams, "CKBOUND_BUDGET must be >= 1");
    return static_cast<std::size_t>(v);
  }
  return kDefaultBudget;
}

inline Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidParams, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::SchemaViolation, path + ": " + e.what());
  }
}

struct Options {
  std::optional<std::size_t> order;
  std::string format = "text";
  long seed = kDefaultSeed;
  std::optional<std::size_t> budget;

  std::size_t order_or(std::size_t fallback) const { return order.value_or(fallback); }
  std::size_t budget_value() const { return budget ? *budget : default_budget(); }
  bool json() const { return format == "json"; }
};

struct CurveParams {
  long g = 0, n = 0, r = 0, s = 0;
  std::optional<long> n1, d, rho;

  void add_to(CLI::App* app) {
    app->add_option("--g", g, "genus");
    app->add_option("--n", n, "number of punctures");
    app->add_option("--n1", n1, "real punctures (default n mod 2)");
    app->add_option("--r", r, "rank");
    app->add_option("--s", s, "number of primes in S");
    app->add_option("--rho", rho, "Neron-Severi rank (default 1, or 0 when g = 0)");
    app->add_option("--d", d, "closed boundary points (default n1 + (n-n1)/2)");
  }

  CurveData curve() const {
    CurveData c;
    c.g = g;
    c.n = n;
    c.n1 = n1.value_or(n % 2);
    c.r = r;
    c.s = s;
    c.rho = rho.value_or(g == 0 ? 0 : 1);
    c.d_closed = d.value_or(c.n1 + (n - c.n1) / 2);
    return c;
  }
};

inline void print_series(std::ostream& out, const QSeries& s, const std::string& kind, bool conjectural,
                         bool json) {
  if (json) {
    Json j = series_to_json(s);
    j["kind"] = kind;
    j["conjectural"] = conjectural;
    out << j.dump(2) << "\n";
    return;
  }
  std::size_t width = 1;
  for (const auto& c : s.coeffs()) width = std::max(width, c.get_str().size());
  out << "# " << kind << (conjectural ? " (conjectural)" : "") << "\n";
  for (std::size_t i = 0; i <= s.order(); ++i) {
    out << std::setw(5) << i << "  " << std::setw(static_cast<int>(width)) << s[i].get_str() << "\n";
  }
}

inline void print_report_text(std::ostream& out, const VerifyReport& r, const std::string& indent) {
  for (const auto& c : r.checks) {
    out << indent << (c.holds ? "PASS " : "FAIL ") << c.label;
    if (c.first_violation) out << " (first violation at " << *c.first_violation << ")";
    if (!c.detail.empty()) out << " [" << c.detail << "]";
    out << "\n";
  }
}

inline void print_bound_text(std::ostream& out, const BoundReport& r) {
  const BoundFactors& f = r.factors;
  auto digits = [](const Integer& z) { return std::to_string(z.get_str().size()) + " digits"; };
  out << "mode: " << to_string(r.mode) << "\n"
      << "m: " << r.m_used << "\n"
      << "M: " << r.M_cap << "\n"
      << "s_bar: " << r.s_bar << " (squared-series variant " << r.s_bar_squared << ")\n"
      << "kappa_p: " << r.kappa.rational_part.get_str() << " + " << r.kappa.log_coefficient.get_str()
      << "/log(" << r.kappa.p << ") <= " << r.kappa.decimal_upper << "\n"
      << "points mod p: " << f.points_mod_p.get_str() << "\n"
      << "prod n_ell outside S: " << f.prod_outside_S.get_str() << "\n"
      << "prod (n_ell+n) in S: " << f.prod_in_S.get_str() << "\n"
      << "(4g+2n-2)^M: " << f.base << "^" << r.M_cap << " (" << digits(f.base_power) << ")\n"
      << "prod (c_i+1): " << digits(f.coefficient_product) << "\n"
      << "(2g+n)^((M^2-M)/2): " << f.simplified_base << "^" << f.simplified_exponent.get_str() << " ("
      << digits(f.simplified_factor) << ")\n"
      << "bound digits: " << r.bound_exact_digits << "\n"
      << "bound log10: " << (r.bound_log10 ? std::to_string(*r.bound_log10) : "-inf") << "\n";
  if (r.bound_exact_digits <= 200) out << "bound: " << r.bound_exact.get_str() << "\n";
  if (r.projective_base_exponent) {
    out << "projective exponents: 2^(2r+4)=" << r.projective_base_exponent->get_str()
        << ", 2^(4r+7)=" << r.projective_coefficient_exponent->get_str() << "\n";
  }
  out << "conjectural: " << (r.conjectural ? "true" : "false") << "\n";
}

inline void print_cm_bound_text(std::ostream& out, const CMBoundReport& r) {
  auto opt = [](const std::optional<double>& v) { return v ? std::to_string(*v) : std::string("n/a"); };
  out << "mode: " << to_string(r.mode) << "\n"
      << "r': " << r.r_prime << (r.unconditional ? " (unconditional)" : "") << "\n"
      << "m0: " << r.m0 << "\n"
      << "kappa_p: " << r.kappa_p.decimal_upper << "\n"
      << "kappa: " << r.kappa_upper << "\n"
      << "bound log10: " << r.bound_log10 << "\n"
      << "exact log10: " << opt(r.exact_log10) << "\n"
      << "asymptotic log10: " << opt(r.asymptotic_log10) << "\n"
      << "closed form log10: " << opt(r.closed_form_log10) << "\n";
  if (r.c1_valid) out << "C1 valid on 1..m0: " << (*r.c1_valid ? "true" : "false") << "\n";
  if (r.bound_exact && r.bound_exact_digits && *r.bound_exact_digits <= 200) {
    out << "bound: " << r.bound_exact->get_str() << "\n";
  }
  out << "conjectural: " << (r.conjectural ? "true" : "false") << "\n";
}

inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::BudgetExceeded: return kBudgetExceeded;
    case ErrorCode::NotFoundBelowCap: return kVerificationFailure;
    default: return kUsageError;
  }
}

/// Runs the command line `args` (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Explicit Chabauty-Kim bounds: Hilbert series, minimal weights and point counts"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--order", opt.order, "truncation order");
  app.add_option("--format", opt.format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", opt.seed, "seed for randomized checks");
  app.add_option("--budget", opt.budget, "order budget (default 4096 or CKBOUND_BUDGET)")
      ->check(CLI::PositiveNumber);

  // series
  auto* series = app.add_subcommand("series", "expand a Hilbert series");
  std::string kind;
  CurveParams series_params;
  series->add_option("--kind", kind, "series kind")
      ->required()
      ->check(CLI::IsMember({"local", "global", "hsr", "G", "cm-local", "cm-global", "polylog-local"}));
  series_params.add_to(series);

  // bound
  auto* bound = app.add_subcommand("bound", "assemble the point-count bound for a curve");
  std::string bound_input, bound_mode = "exact";
  bound->add_option("--input", bound_input, "CurveData JSON file")->required();
  bound->add_option("--mode", bound_mode, "coefficient factor")
      ->check(CLI::IsMember({"exact", "exact-coefficient", "simplified"}));

  // find-m
  auto* find_m = app.add_subcommand("find-m", "smallest m with the partial-sum inequality");
  std::string find_input;
  std::optional<std::uint64_t> find_cap;
  CurveParams find_params;
  find_m->add_option("--input", find_input, "CurveData JSON file");
  find_m->add_option("--cap", find_cap, "largest m to try (default 4^(r+s_bar+2))");
  find_params.add_to(find_m);

  // verify
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite, grid_spec;
  verify->add_option("--suite", suite, "suite name or 'all'")->required();
  verify->add_option("--grid", grid_spec, "parameter grid, e.g. r=0..2,s=0..2");

  // extract-exponents
  auto* extract = app.add_subcommand("extract-exponents", "exponents e_k with f = prod (1-t^k)^{-e_k}");
  std::string extract_input, extract_kind;
  CurveParams extract_params;
  extract->add_option("--input", extract_input, "series JSON file");
  extract->add_option("--kind", extract_kind, "series kind instead of a file")
      ->check(CLI::IsMember({"local", "global", "cm-local", "cm-global", "polylog-local"}));
  extract_params.add_to(extract);

  // cm
  auto* cm = app.add_subcommand("cm", "punctured CM elliptic curves");
  cm->require_subcommand(1);
  cm->fallthrough();
  auto* cm_find = cm->add_subcommand("find-m", "smallest m with a~_m < b_m");
  long cm_r = 0, cm_s = 0;
  std::optional<long> cm_r1;
  bool cm_unrelaxed = false;
  cm_find->add_option("--r", cm_r, "rank")->required();
  cm_find->add_option("--s", cm_s, "number of primes in S")->required();
  cm_find->add_option("--r1", cm_r1, "unconditional rank r1 used in place of r");
  cm_find->add_flag("--unrelaxed", cm_unrelaxed, "also report the a_m and partial-sum crossings");
  auto* cm_bound_cmd = cm->add_subcommand("bound", "point-count bound for a CM curve");
  std::string cm_input, cm_mode = "exact";
  cm_bound_cmd->add_option("--input", cm_input, "CMData JSON file")->required();
  cm_bound_cmd->add_option("--mode", cm_mode, "exact or asymptotic")
      ->check(CLI::IsMember({"exact", "exact-coefficient", "asymptotic"}));

  // polylog
  auto* polylog = app.add_subcommand("polylog", "thrice-punctured line");
  polylog->require_subcommand(1);
  polylog->fallthrough();
  auto* poly_find = polylog->add_subcommand("find-m", "smallest m for the polylog quotient");
  long poly_s = 1;
  poly_find->add_option("--s", poly_s, "number of primes in S")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    const bool json = opt.json();
    if (series->parsed()) {
      const std::size_t order = opt.order_or(16);
      const CurveData c = series_params.curve();
      QSeries s(0);
      bool conjectural = false;
      if (kind == "local") {
        require_hyperbolic(c.g, c.n);
        s = local_series(c, order);
      } else if (kind == "global") {
        validate_series_params(c);
        s = global_series(c, order);
        conjectural = true;
      } else if (kind == "hsr") {
        require_hyperbolic(c.g, c.n);
        require_valid_n1(c.n, c.n1);
        s = hs_r(c, order);
      } else if (kind == "G") {
        require_hyperbolic(c.g, c.n);
        require_valid_n1(c.n, c.n1);
        s = g_series(c, order);
      } else if (kind == "cm-local") {
        s = cm_local_series(order);
      } else if (kind == "cm-global") {
        s = cm_global_series(c.r, c.s, order);
        conjectural = true;
      } else {
        s = polylog_local_series(order);
      }
      print_series(out, s, kind, conjectural, json);
      return kSuccess;
    }

    if (bound->parsed()) {
      const CurveData c = curve_from_json(read_json(bound_input));
      const BoundMode mode = bound_mode == "simplified" ? BoundMode::Simplified : BoundMode::ExactCoefficient;
      const BoundReport r = compute_bound(c, mode, opt.budget_value());
      if (json) {
        out << bound_report_to_json(r).dump(2) << "\n";
      } else {
        print_bound_text(out, r);
      }
      return kSuccess;
    }

    if (find_m->parsed()) {
      CurveData c = find_input.empty() ? find_params.curve() : curve_from_json(read_json(find_input));
      validate_series_params(c);
      const std::uint64_t cap = find_cap.value_or(m_cap(c));
      const MinimalM m = find_minimal_m(c, cap, opt.budget_value());
      if (json) {
        out << Json{{"m", m.m},
                    {"cap", cap},
                    {"global_partial_sum", m.global_partial_sum.get_str()},
                    {"local_partial_sum", m.local_partial_sum.get_str()},
                    {"conjectural", true}}
                   .dump(2)
            << "\n";
      } else {
        out << "m: " << m.m << " (cap " << cap << ")\n"
            << "partial sums: global " << m.global_partial_sum.get_str() << " < local "
            << m.local_partial_sum.get_str() << "\n";
      }
      return kSuccess;
    }

    if (verify->parsed()) {
      const Grid grid = parse_grid(grid_spec);
      const auto results = run_suites(suite, grid, opt.order_or(64));
      bool ok = true;
      Json all = Json::array();
      for (const auto& r : results) {
        ok = ok && r.holds();
        if (json) {
          all.push_back(suite_to_json(r));
          continue;
        }
        out << (r.holds() ? "PASS " : "FAIL ") << "suite " << r.suite << " (order " << r.order << ", "
            << r.cases.size() << " cases)\n";
        for (const auto& c : r.cases) {
          if (c.report.holds()) continue;
          out << "  case " << c.label << "\n";
          print_report_text(out, c.report, "    ");
        }
      }
      if (json) out << Json{{"seed", opt.seed}, {"holds", ok}, {"suites", all}}.dump(2) << "\n";
      return ok ? kSuccess : kVerificationFailure;
    }

    if (extract->parsed()) {
      QSeries s(0);
      const std::size_t order = opt.order_or(16);
      if (!extract_input.empty()) {
        s = series_from_json(read_json(extract_input));
      } else if (!extract_kind.empty()) {
        const CurveData c = extract_params.curve();
        if (extract_kind == "local") {
          require_hyperbolic(c.g, c.n);
          s = local_series(c, order);
        } else if (extract_kind == "global") {
          validate_series_params(c);
          s = global_series(c, order);
        } else if (extract_kind == "cm-local") {
          s = cm_local_series(order);
        } else if (extract_kind == "cm-global") {
          s = cm_global_series(c.r, c.s, order);
        } else {
          s = polylog_local_series(order);
        }
      } else {
        throw Error(ErrorCode::InvalidParams, "extract-exponents needs --input or --kind");
      }
      const ExponentVector ev = extract_exponents(s);
      if (json) {
        out << exponents_to_json(ev).dump(2) << "\n";
      } else {
        for (std::size_t k = 1; k <= ev.order(); ++k) out << "e" << k << " = " << ev.at(k).get_str() << "\n";
      }
      return kSuccess;
    }

    if (cm_find->parsed()) {
      const long r_used = cm_r1.value_or(cm_r);
      const std::size_t budget = opt.budget_value();
      const std::size_t m = cm_find_minimal_m(r_used + cm_s, budget);
      Json j{{"r_prime", r_used + cm_s}, {"m_tilde", m}, {"unconditional", cm_r1.has_value()}};
      if (cm_unrelaxed) {
        j["m_a"] = cm_find_minimal_m_unrelaxed(r_used, cm_s, budget);
        j["m_partial_sums"] = cm_find_minimal_m_partial_sums(r_used, cm_s, budget);
      }
      if (json) {
        out << j.dump(2) << "\n";
      } else {
        for (const auto& [k, v] : j.items()) out << k << ": " << v.dump() << "\n";
      }
      return kSuccess;
    }

    if (cm_bound_cmd->parsed()) {
      const CMData d = cm_data_from_json(read_json(cm_input));
      const CMBoundMode mode = cm_mode == "asymptotic" ? CMBoundMode::Asymptotic : CMBoundMode::ExactCoefficient;
      const CMBoundReport r = cm_bound(d, mode, opt.budget_value());
      if (json) {
        out << cm_bound_report_to_json(r).dump(2) << "\n";
      } else {
        print_cm_bound_text(out, r);
      }
      return kSuccess;
    }

    if (poly_find->parsed()) {
      const std::size_t m = polylog_find_minimal_m(poly_s, opt.budget_value());
      if (json) {
        out << Json{{"s", poly_s}, {"m", m}}.dump(2) << "\n";
      } else {
        out << "m: " << m << "\n";
      }
      return kSuccess;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  err << app.help();
  return kUsageError;
}

}  // namespace ckbound::cli
