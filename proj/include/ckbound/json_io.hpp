#pragma once

// JSON schemas for series, curve inputs and reports. Big integers and exact
// rationals are written as strings.

#include <json.hpp>

#include <string>

#include "ckbound/bounds.hpp"
#include "ckbound/cm_appendix.hpp"
#include "ckbound/hilbert.hpp"
#include "ckbound/verify.hpp"

namespace ckbound {

using Json = nlohmann::json;

namespace detail {

inline const Json& require_field(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw Error(ErrorCode::SchemaViolation, where + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw Error(ErrorCode::SchemaViolation, where + ": missing field '" + key + "'");
  return *it;
}

inline long require_int(const Json& j, const std::string& key, const std::string& where) {
  const Json& v = require_field(j, key, where);
  if (!v.is_number_integer()) {
    throw Error(ErrorCode::SchemaViolation, where + ": field '" + key + "' must be an integer");
  }
  return v.get<long>();
}

inline bool require_bool(const Json& j, const std::string& key, const std::string& where) {
  const Json& v = require_field(j, key, where);
  if (!v.is_boolean()) {
    throw Error(ErrorCode::SchemaViolation, where + ": field '" + key + "' must be a boolean");
  }
  return v.get<bool>();
}

inline std::string require_string(const Json& j, const std::string& key, const std::string& where) {
  const Json& v = require_field(j, key, where);
  if (!v.is_string()) {
    throw Error(ErrorCode::SchemaViolation, where + ": field '" + key + "' must be a string");
  }
  return v.get<std::string>();
}

inline Integer parse_integer(const std::string& text, const std::string& key) {
  Integer z;
  if (text.empty() || z.set_str(text, 10) != 0) {
    throw Error(ErrorCode::SchemaViolation, "field '" + key + "' is not a decimal integer");
  }
  return z;
}

inline Rational parse_rational(const std::string& text, const std::string& key) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0 || q.get_den() == 0) {
    throw Error(ErrorCode::SchemaViolation, "field '" + key + "' is not a rational \"p/q\"");
  }
  q.canonicalize();
  return q;
}

inline Integer require_bigint(const Json& j, const std::string& key, const std::string& where) {
  return parse_integer(require_string(j, key, where), key);
}

inline std::optional<double> optional_double(const Json& j, const std::string& key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) throw Error(ErrorCode::SchemaViolation, "field '" + key + "' must be a number");
  return it->get<double>();
}

inline Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Series

inline Json series_to_json(const QSeries& s) {
  Json coeffs = Json::array();
  for (const auto& c : s.coeffs()) coeffs.push_back(c.get_str());
  return {{"order", s.order()}, {"coeffs", coeffs}};
}

inline QSeries series_from_json(const Json& j) {
  const long order = detail::require_int(j, "order", "series");
  const Json& coeffs = detail::require_field(j, "coeffs", "series");
  if (!coeffs.is_array() || order < 0 || coeffs.size() != static_cast<std::size_t>(order) + 1) {
    throw Error(ErrorCode::SchemaViolation, "series: 'coeffs' must be an array of order+1 entries");
  }
  std::vector<Rational> values;
  for (const auto& c : coeffs) {
    if (!c.is_string()) throw Error(ErrorCode::SchemaViolation, "series: coefficients must be strings \"p/q\"");
    values.push_back(detail::parse_rational(c.get<std::string>(), "coeffs"));
  }
  return QSeries(std::move(values));
}

inline Json exponents_to_json(const ExponentVector& ev) {
  Json values = Json::array();
  for (std::size_t k = 1; k <= ev.order(); ++k) values.push_back(ev.at(k).get_str());
  return {{"order", ev.order()}, {"exponents", values}};
}

// ---------------------------------------------------------------------------
// Inputs

inline CurveData curve_from_json(const Json& j) {
  const std::string where = "CurveData";
  CurveData c;
  c.g = detail::require_int(j, "g", where);
  c.n = detail::require_int(j, "n", where);
  c.r = detail::require_int(j, "r", where);
  c.s = detail::require_int(j, "s", where);
  c.rho = detail::require_int(j, "rho", where);
  c.d_closed = detail::require_int(j, "d_closed", where);
  c.n1 = detail::require_int(j, "n1", where);
  c.p = detail::require_int(j, "p", where);
  c.points_mod_p = detail::require_int(j, "points_mod_p", where);
  const Json& bad = detail::require_field(j, "bad_primes", where);
  if (!bad.is_array()) throw Error(ErrorCode::SchemaViolation, where + ": 'bad_primes' must be an array");
  for (const auto& b : bad) {
    BadPrime bp;
    bp.ell = detail::require_int(b, "ell", "bad_primes[]");
    bp.n_ell = detail::require_int(b, "n_ell", "bad_primes[]");
    bp.in_S = detail::require_bool(b, "in_S", "bad_primes[]");
    c.bad_primes.push_back(bp);
  }
  return c;
}

inline Json curve_to_json(const CurveData& c) {
  Json bad = Json::array();
  for (const auto& b : c.bad_primes) bad.push_back({{"ell", b.ell}, {"n_ell", b.n_ell}, {"in_S", b.in_S}});
  return {{"g", c.g},   {"n", c.n},   {"r", c.r},   {"s", c.s},
          {"rho", c.rho}, {"d_closed", c.d_closed}, {"n1", c.n1}, {"p", c.p},
          {"points_mod_p", c.points_mod_p}, {"bad_primes", bad}};
}

inline CMData cm_data_from_json(const Json& j) {
  const std::string where = "CMData";
  CMData d;
  d.r = detail::require_int(j, "r", where);
  d.s = detail::require_int(j, "s", where);
  d.p = detail::require_int(j, "p", where);
  d.points_mod_p = detail::require_int(j, "points_mod_p", where);
  d.t_bad = detail::require_int(j, "t_bad", where);
  if (j.contains("unconditional")) d.unconditional = detail::require_bool(j, "unconditional", where);
  if (j.contains("r1") && !j.at("r1").is_null()) d.r1 = detail::require_int(j, "r1", where);
  if (j.contains("C1") && !j.at("C1").is_null()) {
    const Json& c1 = j.at("C1");
    if (c1.is_string()) {
      d.C1 = decimal_to_rational(c1.get<std::string>());
    } else if (c1.is_number()) {
      d.C1 = decimal_to_rational(c1.dump());
    } else {
      throw Error(ErrorCode::SchemaViolation, where + ": field 'C1' must be a decimal");
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// Reports

inline Json kappa_to_json(const Kappa& k) {
  return {{"p", k.p},
          {"rational_part", k.rational_part.get_str()},
          {"log_coefficient", k.log_coefficient.get_str()},
          {"decimal_upper", k.decimal_upper}};
}

inline Kappa kappa_from_json(const Json& j) {
  Kappa k;
  k.p = detail::require_int(j, "p", "kappa_p");
  k.rational_part = detail::parse_rational(detail::require_string(j, "rational_part", "kappa_p"), "rational_part");
  k.log_coefficient = detail::parse_rational(detail::require_string(j, "log_coefficient", "kappa_p"), "log_coefficient");
  k.decimal_upper = detail::require_string(j, "decimal_upper", "kappa_p");
  return k;
}

inline Json bound_report_to_json(const BoundReport& r) {
  const BoundFactors& f = r.factors;
  Json factors = {{"points_mod_p", f.points_mod_p.get_str()},
                  {"prod_outside_S", f.prod_outside_S.get_str()},
                  {"prod_in_S", f.prod_in_S.get_str()},
                  {"base", f.base},
                  {"base_power", f.base_power.get_str()},
                  {"coefficient_product", f.coefficient_product.get_str()},
                  {"simplified_base", f.simplified_base},
                  {"simplified_exponent", f.simplified_exponent.get_str()},
                  {"simplified_factor", f.simplified_factor.get_str()}};
  Json j = {{"mode", to_string(r.mode)},
            {"m", r.m_used},
            {"M", r.M_cap},
            {"s_bar", r.s_bar},
            {"s_bar_squared", r.s_bar_squared},
            {"kappa_p", kappa_to_json(r.kappa)},
            {"factors", factors},
            {"bound_exact", r.bound_exact.get_str()},
            {"bound_exact_digits", r.bound_exact_digits},
            {"bound_log10", detail::optional_json(r.bound_log10)},
            {"conjectural", r.conjectural}};
  if (r.projective_base_exponent) {
    j["projective_exponents"] = {{"base", r.projective_base_exponent->get_str()},
                                 {"coefficient", r.projective_coefficient_exponent->get_str()}};
  }
  return j;
}

inline BoundReport bound_report_from_json(const Json& j) {
  const std::string where = "BoundReport";
  BoundReport r;
  const std::string mode = detail::require_string(j, "mode", where);
  if (mode != "exact-coefficient" && mode != "simplified") {
    throw Error(ErrorCode::SchemaViolation, where + ": unknown mode '" + mode + "'");
  }
  r.mode = mode == "simplified" ? BoundMode::Simplified : BoundMode::ExactCoefficient;
  r.m_used = static_cast<std::size_t>(detail::require_int(j, "m", where));
  r.M_cap = static_cast<std::uint64_t>(detail::require_int(j, "M", where));
  r.s_bar = detail::require_int(j, "s_bar", where);
  r.s_bar_squared = detail::require_int(j, "s_bar_squared", where);
  r.kappa = kappa_from_json(detail::require_field(j, "kappa_p", where));
  const Json& f = detail::require_field(j, "factors", where);
  r.factors.points_mod_p = detail::require_bigint(f, "points_mod_p", "factors");
  r.factors.prod_outside_S = detail::require_bigint(f, "prod_outside_S", "factors");
  r.factors.prod_in_S = detail::require_bigint(f, "prod_in_S", "factors");
  r.factors.base = detail::require_int(f, "base", "factors");
  r.factors.base_power = detail::require_bigint(f, "base_power", "factors");
  r.factors.coefficient_product = detail::require_bigint(f, "coefficient_product", "factors");
  r.factors.simplified_base = detail::require_int(f, "simplified_base", "factors");
  r.factors.simplified_exponent = detail::require_bigint(f, "simplified_exponent", "factors");
  r.factors.simplified_factor = detail::require_bigint(f, "simplified_factor", "factors");
  r.bound_exact = detail::require_bigint(j, "bound_exact", where);
  r.bound_exact_digits = static_cast<std::size_t>(detail::require_int(j, "bound_exact_digits", where));
  r.bound_log10 = detail::optional_double(j, "bound_log10");
  r.conjectural = detail::require_bool(j, "conjectural", where);
  if (j.contains("projective_exponents")) {
    const Json& e = j.at("projective_exponents");
    r.projective_base_exponent = detail::require_bigint(e, "base", "projective_exponents");
    r.projective_coefficient_exponent = detail::require_bigint(e, "coefficient", "projective_exponents");
  }
  return r;
}

inline Json cm_bound_report_to_json(const CMBoundReport& r) {
  Json j = {{"mode", to_string(r.mode)},
            {"r_prime", r.r_prime},
            {"unconditional", r.unconditional},
            {"conjectural", r.conjectural},
            {"m0", r.m0},
            {"kappa_p", kappa_to_json(r.kappa_p)},
            {"kappa", r.kappa_upper},
            {"bound_log10", r.bound_log10},
            {"exact_log10", detail::optional_json(r.exact_log10)},
            {"asymptotic_log10", detail::optional_json(r.asymptotic_log10)},
            {"closed_form_log10", detail::optional_json(r.closed_form_log10)}};
  j["bound_exact"] = r.bound_exact ? Json(r.bound_exact->get_str()) : Json(nullptr);
  j["bound_exact_digits"] = r.bound_exact_digits ? Json(*r.bound_exact_digits) : Json(nullptr);
  j["c1_valid"] = r.c1_valid ? Json(*r.c1_valid) : Json(nullptr);
  return j;
}

inline CMBoundReport cm_bound_report_from_json(const Json& j) {
  const std::string where = "CMBoundReport";
  CMBoundReport r;
  const std::string mode = detail::require_string(j, "mode", where);
  if (mode != "exact-coefficient" && mode != "asymptotic") {
    throw Error(ErrorCode::SchemaViolation, where + ": unknown mode '" + mode + "'");
  }
  r.mode = mode == "asymptotic" ? CMBoundMode::Asymptotic : CMBoundMode::ExactCoefficient;
  r.r_prime = detail::require_int(j, "r_prime", where);
  r.unconditional = detail::require_bool(j, "unconditional", where);
  r.conjectural = detail::require_bool(j, "conjectural", where);
  r.m0 = static_cast<std::size_t>(detail::require_int(j, "m0", where));
  r.kappa_p = kappa_from_json(detail::require_field(j, "kappa_p", where));
  r.kappa_upper = detail::require_string(j, "kappa", where);
  r.bound_log10 = detail::optional_double(j, "bound_log10").value_or(-HUGE_VAL);
  r.exact_log10 = detail::optional_double(j, "exact_log10");
  r.asymptotic_log10 = detail::optional_double(j, "asymptotic_log10");
  r.closed_form_log10 = detail::optional_double(j, "closed_form_log10");
  if (j.contains("bound_exact") && !j.at("bound_exact").is_null()) {
    r.bound_exact = detail::require_bigint(j, "bound_exact", where);
  }
  if (j.contains("bound_exact_digits") && !j.at("bound_exact_digits").is_null()) {
    r.bound_exact_digits = static_cast<std::size_t>(detail::require_int(j, "bound_exact_digits", where));
  }
  if (j.contains("c1_valid") && !j.at("c1_valid").is_null()) {
    r.c1_valid = detail::require_bool(j, "c1_valid", where);
  }
  return r;
}

inline Json verify_report_to_json(const VerifyReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json item = {{"label", c.label}, {"holds", c.holds}};
    item["first_violation"] = c.first_violation ? Json(*c.first_violation) : Json(nullptr);
    if (!c.detail.empty()) item["detail"] = c.detail;
    checks.push_back(item);
  }
  return {{"name", r.name}, {"holds", r.holds()}, {"checks", checks}};
}

inline Json suite_to_json(const SuiteResult& s) {
  Json cases = Json::array();
  for (const auto& c : s.cases) cases.push_back({{"case", c.label}, {"report", verify_report_to_json(c.report)}});
  return {{"suite", s.suite}, {"order", s.order}, {"holds", s.holds()}, {"cases", cases}};
}

}  // namespace ckbound
