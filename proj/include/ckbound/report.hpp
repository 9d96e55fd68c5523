#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ckbound/series.hpp"

namespace ckbound {

struct CheckResult {
  std::string label;
  bool holds = true;
  std::optional<std::size_t> first_violation;
  std::string detail;
};

/// Outcome of a verification: named checks, each with its first counterexample.
struct VerifyReport {
  std::string name;
  std::vector<CheckResult> checks;

  bool holds() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.holds; });
  }

  const CheckResult* first_failure() const {
    for (const auto& c : checks) {
      if (!c.holds) return &c;
    }
    return nullptr;
  }

  void add(std::string label, bool holds, std::optional<std::size_t> at = std::nullopt,
           std::string detail = {}) {
    checks.push_back({std::move(label), holds, at, std::move(detail)});
  }

  void add_comparison(std::string label, const ComparisonReport& cmp) {
    add(std::move(label), cmp.holds, cmp.first_violation);
  }

  void add_nonnegative(std::string label, const QSeries& s) {
    auto neg = first_negative(s);
    add(std::move(label), !neg.has_value(), neg);
  }

  void add_equal(std::string label, const QSeries& a, const QSeries& b) {
    const std::size_t order = std::min(a.order(), b.order());
    for (std::size_t i = 0; i <= order; ++i) {
      if (a[i] != b[i]) {
        add(std::move(label), false, i);
        return;
      }
    }
    add(std::move(label), true);
  }

  void append(const VerifyReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }
};

}  // namespace ckbound
