#pragma once

#include "shiftconv/curve_registry.hpp"
#include "shiftconv/numeric.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace shiftconv {

struct PrecisionConfig {
  int digits = kDefaultDigits;
  long series_n_max = 40;
  std::int64_t direct_terms = 100000;
  std::int64_t kloosterman_c_max = 10000;

  /// Throws Error unless digits >= 30 and every count is positive.
  void validate() const;
};

struct Check {
  std::string id;         // e.g. "newform_regression"
  int criterion = 0;      // acceptance criterion number
  std::string label;      // curve the check belongs to
  bool passed = false;
  bool gating = true;
  Real measured;
  Real tolerance;
  double seconds = 0;
  std::string detail;

  std::string key() const { return id + "/" + label; }
};

struct VerifyReport {
  PrecisionConfig config;
  std::vector<Check> checks;

  bool all_passed() const;
  std::vector<const Check*> failures() const;
  /// Numbers are rendered as decimal strings.
  nlohmann::json to_json() const;
};

/// Runs the acceptance suite. With a label filter only the checks of that
/// curve are run. Failures are collected, never thrown.
VerifyReport verify_all(const PrecisionConfig& config, const std::optional<std::string>& label = std::nullopt,
                        const std::optional<CurveRegistry>& registry = std::nullopt);

/// One line per check: PASS/FAIL, criterion, id, label, measured vs tolerance.
std::string format_line(const Check& check);

}  // namespace shiftconv
