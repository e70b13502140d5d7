// Acceptance suite: one line per criterion, then the individual checks.
//
// Exit status is 0 when the failing gating checks are exactly the known
// failures listed below. A new failure, or a known failure that starts
// passing, makes the run fail.

#include "shiftconv/verify.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <set>
#include <string>

using namespace shiftconv;

namespace {

const std::map<std::string, std::string> kKnownFailures{
    {"eta_quotient/36a1",
     "the tabulated N=36 quotient has weight 1; q d/dq Z^+ matches eta(6t)^3 eta(12t) eta(18t)^3 / eta(36t)^3"},
    {"f_infinity/27a1", "the q^27 coefficient of the indicator is -15, not the tabulated -12"},
};

const std::map<int, std::string> kCriteria{
    {1, "newform regression for 27a1"},
    {2, "S(Lambda) for 11a1"},
    {3, "Z^+ coefficients of 11a1"},
    {4, "Z^+ rationals for the CM levels"},
    {5, "q d/dq Z^+ equals the tabulated eta quotients"},
    {6, "Eisenstein indicator coefficients"},
    {7, "closed form for N = 11 (and the other squarefree levels)"},
    {8, "closed form for the CM levels"},
    {9, "Poincare reconstruction of f for N = 11"},
    {10, "property suite"},
    {11, "non-infinite indicator coefficients vanish"},
    {12, "N = 49 experiment (report only)"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance suite"};
  PrecisionConfig config;
  app.add_option("--digits", config.digits, "Working precision")->capture_default_str();
  app.add_option("--terms", config.direct_terms, "Terms of the direct sums")->capture_default_str();
  app.add_option("--c-max", config.kloosterman_c_max, "Kloosterman modulus cutoff")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  const VerifyReport report = verify_all(config);

  std::map<int, std::vector<const Check*>> by_criterion;
  for (const auto& c : report.checks) by_criterion[c.criterion].push_back(&c);

  std::set<std::string> failing;
  for (const auto* c : report.failures()) failing.insert(c->key());

  std::cout << "acceptance at " << config.digits << " digits, " << config.direct_terms << " direct terms, c_max "
            << config.kloosterman_c_max << "\n";
  for (const auto& [n, title] : kCriteria) {
    const auto& checks = by_criterion[n];
    bool pass = !checks.empty();
    bool report_only = true;
    std::string known;
    for (const auto* c : checks) {
      report_only = report_only && !c->gating;
      if (c->gating && !c->passed) {
        pass = false;
        if (kKnownFailures.count(c->key())) known += (known.empty() ? "" : "; ") + kKnownFailures.at(c->key());
      }
    }
    std::cout << "criterion " << n << ": " << (pass ? "PASS" : "FAIL") << (report_only ? " (report)" : "") << "  "
              << title;
    if (!known.empty()) std::cout << "  [known: " << known << "]";
    std::cout << "\n";
  }

  std::cout << "\nchecks:\n";
  for (const auto& c : report.checks) std::cout << "  " << format_line(c) << "\n";

  int unexpected = 0;
  for (const auto& key : failing)
    if (!kKnownFailures.count(key)) {
      std::cout << "unexpected failure: " << key << "\n";
      ++unexpected;
    }
  for (const auto& [key, why] : kKnownFailures)
    if (!failing.count(key)) {
      std::cout << "known failure no longer fails: " << key << "\n";
      ++unexpected;
    }
  std::cout << (unexpected == 0 ? "result: only the known failures remain" : "result: acceptance broken") << "\n";
  return unexpected == 0 ? 0 : 1;
}
