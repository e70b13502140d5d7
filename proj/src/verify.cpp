#include "shiftconv/verify.hpp"

#include "shiftconv/arith.hpp"
#include "shiftconv/eisenstein_basis.hpp"
#include "shiftconv/lattice.hpp"
#include "shiftconv/newform.hpp"
#include "shiftconv/poincare.hpp"
#include "shiftconv/shifted_conv.hpp"
#include "shiftconv/weierstrass_mock.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <map>
#include <numeric>
#include <sstream>

namespace shiftconv {

void PrecisionConfig::validate() const {
  if (digits < kMinimumDigits)
    throw Error("digits must be at least " + std::to_string(kMinimumDigits) + " (got " + std::to_string(digits) + ")");
  if (series_n_max <= 0) throw Error("series_n_max must be positive");
  if (direct_terms <= 0) throw Error("direct_terms must be positive");
  if (kloosterman_c_max <= 0) throw Error("kloosterman_c_max must be positive");
}

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed || !c.gating; });
}

std::vector<const Check*> VerifyReport::failures() const {
  std::vector<const Check*> out;
  for (const auto& c : checks)
    if (!c.passed && c.gating) out.push_back(&c);
  return out;
}

nlohmann::json VerifyReport::to_json() const {
  nlohmann::json j;
  j["config"] = {{"digits", std::to_string(config.digits)},
                 {"series_n_max", std::to_string(config.series_n_max)},
                 {"direct_terms", std::to_string(config.direct_terms)},
                 {"kloosterman_c_max", std::to_string(config.kloosterman_c_max)}};
  j["checks"] = nlohmann::json::array();
  int passed = 0;
  for (const auto& c : checks) {
    passed += c.passed;
    std::ostringstream secs;
    secs << std::fixed << std::setprecision(3) << c.seconds;
    j["checks"].push_back({{"id", c.id},
                           {"criterion", std::to_string(c.criterion)},
                           {"label", c.label},
                           {"passed", c.passed},
                           {"gating", c.gating},
                           {"measured", to_decimal(c.measured, 12)},
                           {"tolerance", to_decimal(c.tolerance, 6)},
                           {"seconds", secs.str()},
                           {"detail", c.detail}});
  }
  j["summary"] = {{"total", std::to_string(checks.size())},
                  {"passed", std::to_string(passed)},
                  {"gating_failures", std::to_string(failures().size())}};
  j["all_passed"] = all_passed();
  return j;
}

std::string format_line(const Check& c) {
  std::ostringstream os;
  os << (c.passed ? "PASS" : "FAIL") << (c.gating ? "" : " (report)") << "  [" << std::setw(2) << c.criterion
     << "] " << c.id << " " << c.label << ": measured " << to_decimal(c.measured, 6) << " tol "
     << to_decimal(c.tolerance, 3) << " (" << std::fixed << std::setprecision(2) << c.seconds << " s)";
  if (!c.detail.empty()) os << " - " << c.detail;
  return os.str();
}

namespace {

using Clock = std::chrono::steady_clock;

Real tol(double x) { return Real(x); }

Real abs_c(const Complex& z) { return abs(z); }

std::string dec(const Real& x, int d = 8) { return to_decimal(x, d); }

class Runner {
 public:
  Runner(const PrecisionConfig& config, std::optional<std::string> label, CurveRegistry registry)
      : config_(config), label_(std::move(label)), registry_(std::move(registry)) {}

  VerifyReport run() {
    VerifyReport report;
    report.config = config_;
    newform_regression();
    s_lambda_value();
    zhat_values();
    zhat_rationals();
    eta_quotients();
    infinity_indicators();
    theorem_squarefree();
    theorem_cm();
    poincare_reconstruction();
    property_suite();
    beta_vanishing();
    level_49_experiment();
    report.checks = std::move(checks_);
    return report;
  }

 private:
  bool wanted(const std::string& label) const { return !label_ || *label_ == label; }

  // Runs body when the label passes the filter; exceptions become failed checks.
  void check(const std::string& id, int criterion, const std::string& label,
             const std::function<void(Check&)>& body, bool gating = true) {
    if (!wanted(label)) return;
    Check c;
    c.id = id;
    c.criterion = criterion;
    c.label = label;
    c.gating = gating;
    c.measured = 0;
    c.tolerance = 0;
    const auto start = Clock::now();
    try {
      body(c);
    } catch (const std::exception& e) {
      c.passed = false;
      c.detail = std::string("error: ") + e.what();
    }
    c.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    checks_.push_back(std::move(c));
  }

  static void judge(Check& c, const Real& measured, const Real& tolerance) {
    c.measured = measured;
    c.tolerance = tolerance;
    c.passed = measured <= tolerance;
  }

  const EllipticCurveModel& curve(const std::string& label) const { return registry_.at(label); }

  long n_max() const { return config_.series_n_max; }

  const CurveData& data(const std::string& label) {
    auto it = data_.find(label);
    if (it == data_.end()) it = data_.emplace(label, prepare_curve(curve(label), n_max(), config_.digits)).first;
    return it->second;
  }

  const std::vector<DirectValue>& direct(const std::string& label, std::int64_t h_max) {
    auto it = direct_.find(label);
    if (it == direct_.end() || static_cast<std::int64_t>(it->second.size()) < h_max)
      it = direct_.insert_or_assign(label, d_direct_range(curve(label), h_max, config_.direct_terms)).first;
    return it->second;
  }

  std::int64_t h_max() const { return std::min<std::int64_t>(30, n_max()); }

  void newform_regression() {
    check("newform_regression", 1, "27a1", [&](Check& c) {
      const auto start = Clock::now();
      const auto a = an_table(curve("27a1"), 19);
      const double secs = std::chrono::duration<double>(Clock::now() - start).count();
      const std::map<int, int> expected{{1, 1}, {4, -2}, {7, -1}, {13, 5}, {16, 4}, {19, -7}};
      int mismatches = 0;
      for (int n = 1; n <= 19; ++n) {
        const auto e = expected.count(n) ? expected.at(n) : 0;
        if (a[static_cast<std::size_t>(n)] != e) ++mismatches;
      }
      judge(c, mismatches, 0);
      if (secs >= 1.0) c.passed = false;
      c.detail = "coefficients through q^19 mismatching; runtime " + std::to_string(secs) + " s (limit 1 s)";
    });
  }

  void s_lambda_value() {
    check("s_lambda", 2, "11a1", [&](Check& c) {
      const auto start = Clock::now();
      const Lattice lat = complete_lattice(curve("11a1"), config_.digits);
      const double secs = std::chrono::duration<double>(Clock::now() - start).count();
      judge(c, abs_c(lat.s_lambda - Complex(Real("0.38124"), Real(0))), tol(5e-5));
      if (secs >= 10.0) c.passed = false;
      c.detail = "S = " + to_decimal(lat.s_lambda, 12) + "; runtime " + std::to_string(secs) + " s (limit 10 s)";
    });
  }

  void zhat_values() {
    check("zhat_coefficients", 3, "11a1", [&](Check& c) {
      const auto& z = data("11a1").zhat;
      const std::vector<const char*> printed{"1", "0.9520", "1.547", "0.3493", "1.976", "-2.609"};
      Real worst = 0;
      std::string got;
      for (std::size_t n = 0; n < printed.size(); ++n) {
        const Complex v = z[static_cast<long>(n)];
        worst = std::max(worst, abs_c(v - Complex(Real(printed[n]), Real(0))));
        got += (n ? ", " : "") + dec(v.real(), 6);
      }
      judge(c, worst, tol(1e-3));
      c.detail = "q^0..q^5: " + got;
    });
  }

  void zhat_rationals() {
    const std::vector<std::pair<std::string, std::vector<std::pair<long, Rational>>>> table{
        {"27a1", {{2, Rational(1, 2)}, {5, Rational(1, 5)}, {8, Rational(3, 4)}, {11, Rational(-6, 11)}, {14, Rational(-1, 2)}}},
        {"32a1", {{3, Rational(2, 3)}, {7, Rational(1, 7)}, {11, Rational(-2, 11)}}},
        {"36a1", {{5, Rational(3, 5)}, {11, Rational(1, 11)}}},
    };
    for (const auto& [label, entries] : table) {
      check("zhat_rationals", 4, label, [&, label = label, entries = entries](Check& c) {
        const auto& z = data(label).zhat;
        Real worst = 0;
        for (const auto& [n, r] : entries) worst = std::max(worst, abs_c(z[n] - to_complex(r)));
        judge(c, worst, tol(1e-10));
        c.detail = std::to_string(entries.size()) + " tabulated rationals";
      });
    }
  }

  void eta_quotients() {
    for (const auto& [label, level] : std::vector<std::pair<std::string, int>>{{"27a1", 27}, {"32a1", 32}, {"36a1", 36}}) {
      check("eta_quotient", 5, label, [&, label = label, level = level](Check& c) {
        const long count = 40;
        const CurveData& d = data(label);
        const QSeries<Complex> z = d.zhat.order() >= count ? d.zhat : zhat_plus(curve(label), count, config_.digits);
        const QSeries<Complex> dz = q_derivative(z).truncated(count - 1);
        const EtaQuotient eq = *tabulated_eta_quotient(level);
        c.tolerance = tol(1e-8);
        const Fraction lead = eq.leading_exponent();
        if (lead.denominator() != 1 || eq.weight() != Fraction(2)) {
          c.measured = Real(std::numeric_limits<double>::infinity());
          c.passed = false;
          std::ostringstream os;
          os << "tabulated " << to_string(eq) << " has weight " << to_string(eq.weight()) << " and leading exponent "
             << to_string(lead)
             << ", so it cannot equal q d/dq Z^+ (weight 2, leading term -q^-1)";
          const auto found = match_eta_quotients(dz, {level / 6, level / 3, level / 2, level}, 8, tol(1e-8));
          if (!found.empty()) os << "; the weight-2 quotient that matches is " << to_string(found.front());
          c.detail = os.str();
          return;
        }
        const auto series = eta_quotient(eq, count);
        Real worst = 0;
        for (long k = 0; k < count; ++k) {
          const long e = lead.numerator() + k;
          worst = std::max(worst, abs_c(dz[e] - to_complex(series[k])));
        }
        judge(c, worst, c.tolerance);
        c.detail = "q d/dq Z^+ vs " + to_string(eq) + ", 40 coefficients";
      });
    }
  }

  void infinity_indicators() {
    check("f_infinity", 6, "11a1", [&](Check& c) {
      const auto& f = data("11a1").f_infinity;
      const std::vector<Rational> expected{1, Rational(1, 5), Rational(3, 5), Rational(4, 5),
                                           Rational(7, 5), Rational(6, 5), Rational(12, 5)};
      Real worst = 0;
      for (std::size_t n = 0; n < expected.size(); ++n)
        worst = std::max(worst, abs_c(f[static_cast<long>(n)] - to_complex(expected[n])));
      judge(c, worst, tol(1e-10));
      c.detail = "q^0..q^6";
    });
    check("f_infinity", 6, "27a1", [&](Check& c) {
      const auto& f = data("27a1").f_infinity;
      const std::vector<std::pair<long, long>> expected{{9, 3}, {18, 9}, {27, -12}};
      Real worst = 0;
      std::string got;
      for (const auto& [n, v] : expected) {
        worst = std::max(worst, abs_c(f[n] - Complex(Real(v), Real(0))));
        got += (got.empty() ? "" : ", ") + std::string("q^") + std::to_string(n) + " " + dec(f[n].real(), 10);
      }
      judge(c, worst, tol(1e-10));
      c.detail = got;
    });
  }

  Real identity_residual(const std::string& label, const Real& alpha, std::int64_t h_top, std::string* worst_h) {
    const auto closed = l_series_closed_form(data(label), alpha, h_top);
    const auto& dir = direct(label, h_top);
    Real worst = 0;
    for (std::int64_t h = 1; h <= h_top; ++h) {
      const Real r = abs(closed.entries[static_cast<std::size_t>(h - 1)].value - dir[static_cast<std::size_t>(h - 1)].value);
      if (r > worst) {
        worst = r;
        if (worst_h) *worst_h = "worst at h=" + std::to_string(h);
      }
    }
    return worst;
  }

  void theorem_squarefree() {
    const auto start = Clock::now();
    auto alpha = [&](const std::string& label) {
      const CurveData& d = data(label);
      return alpha_from_d1(d, direct(label, h_max())[0].value);
    };
    check("closed_form_printed", 7, "11a1", [&](Check& c) {
      const auto closed = l_series_closed_form(data("11a1"), alpha("11a1"), 5);
      const std::vector<const char*> printed{"-0.706", "-1.562", "-0.093", "-1.234", "2.024"};
      Real worst = 0;
      std::string got;
      for (std::size_t i = 0; i < printed.size(); ++i) {
        worst = std::max(worst, abs(closed.entries[i].value - Real(printed[i])));
        got += (i ? ", " : "") + dec(closed.entries[i].value, 6);
      }
      judge(c, worst, tol(3e-3));
      c.detail = "h=1..5: " + got;
    });
    check("closed_vs_direct", 7, "11a1", [&](Check& c) {
      std::string where;
      judge(c, identity_residual("11a1", alpha("11a1"), 5, &where), tol(0.02));
      const double secs = std::chrono::duration<double>(Clock::now() - start).count();
      if (secs >= 120.0) c.passed = false;
      c.detail = "h=1..5, " + std::to_string(config_.direct_terms) + " terms, " + where + "; criterion runtime " +
                 std::to_string(secs) + " s (limit 120 s)";
    });
    check("alpha", 7, "11a1", [&](Check& c) {
      const Real a = alpha("11a1");
      judge(c, abs(a - Real("0.00159")), tol(2e-3));
      c.detail = "alpha = " + dec(a, 8) + " from the averaged D(1;1) = " + dec(direct("11a1", h_max())[0].value, 10) +
                 "; the raw partial sum gives " + dec(alpha_from_d1(data("11a1"), direct("11a1", h_max())[0].raw), 8);
    });
    for (const char* label : {"14a1", "15a1", "17a1", "19a1", "21a1"}) {
      check("closed_vs_direct", 7, label, [&, label](Check& c) {
        std::string where;
        judge(c, identity_residual(label, alpha(label), 5, &where), tol(0.02));
        c.detail = "h=1..5, alpha = " + dec(alpha(label), 6) + ", " + where;
      });
    }
  }

  void theorem_cm() {
    for (const auto& [label, n0] : std::vector<std::pair<std::string, int>>{{"27a1", 3}, {"32a1", 4}, {"36a1", 6}}) {
      check("closed_vanishing", 8, label, [&, label = label, n0 = n0](Check& c) {
        const auto closed = l_series_closed_form(data(label), 0, h_max());
        Real worst = 0;
        for (const auto& e : closed.entries)
          if (e.h % n0 != 0) worst = std::max(worst, abs(e.value));
        judge(c, worst, tol(1e-6));
        c.detail = "h <= " + std::to_string(h_max()) + ", h not divisible by " + std::to_string(n0);
      });
      check("direct_vanishing", 8, label, [&, label = label, n0 = n0](Check& c) {
        const auto& dir = direct(label, h_max());
        int nonzero = 0;
        for (const auto& v : dir)
          if (v.h % n0 != 0 && (v.raw != 0 || v.value != 0)) ++nonzero;
        judge(c, nonzero, 0);
        c.detail = "direct sums that are not exactly zero";
      });
      check("closed_vs_direct", 8, label, [&, label = label, n0 = n0](Check& c) {
        std::string where;
        judge(c, identity_residual(label, 0, 12, &where), tol(0.02));
        c.detail = "h <= 12, " + where;
      });
    }
  }

  void poincare_reconstruction() {
    auto run = [&](Check& c, BesselArgument conv) {
      const auto start = Clock::now();
      const auto b = bp_coefficients(1, 2, 11, 10, config_.kloosterman_c_max, conv);
      const double secs = std::chrono::duration<double>(Clock::now() - start).count();
      const auto a = an_table(curve("11a1"), 10);
      const Real scale = data("11a1").lattice.volume / pi();
      Real worst = 0, tail = 0;
      for (const auto& p : b) {
        worst = std::max(worst, abs(scale * p.value - a[static_cast<std::size_t>(p.n)]));
        tail = std::max(tail, scale * p.tail_estimate);
      }
      judge(c, worst, tol(1e-2));
      if (secs >= 60.0) c.passed = false;
      c.detail = "n <= 10, c_max " + std::to_string(config_.kloosterman_c_max) + ", halving change " + dec(tail, 3) +
                 "; runtime " + std::to_string(secs) + " s (limit 60 s)";
    };
    check("poincare_classical", 9, "11a1", [&](Check& c) {
      run(c, BesselArgument::classical);
      c.detail = "Bessel argument 4 pi sqrt(mn)/c; " + c.detail;
    });
    check("poincare_printed", 9, "11a1", [&](Check& c) {
      run(c, BesselArgument::printed);
      c.detail = "Bessel argument 2 pi sqrt(mn)/c; " + c.detail;
    }, false);
  }

  void property_suite() {
    for (const auto& m : registry_.curves()) {
      const std::string& label = m.label;
      check("legendre_relation", 10, label, [&](Check& c) {
        const Lattice lat = data(label).lattice;
        const int exponent = config_.digits - 14;
        judge(c, legendre_residual(lat), ten_to_minus(exponent));
        c.detail = "|w1 e2 - w2 e1 + 2 pi i| at " + std::to_string(config_.digits) + " digits";
      });
      check("hasse_bound", 10, label, [&](Check& c) {
        const auto a = an_table(m, 10000);
        int violations = 0, primes = 0;
        for (auto p : primes_up_to(10000)) {
          if (m.conductor % p == 0) continue;
          ++primes;
          const auto ap = a[static_cast<std::size_t>(p)];
          if (static_cast<double>(ap) * static_cast<double>(ap) > 4.0 * static_cast<double>(p)) ++violations;
          if (p <= 200 && ap != ap_point_count(m, p)) ++violations;
        }
        judge(c, violations, 0);
        c.detail = std::to_string(primes) + " good primes <= 10^4";
      });
      check("multiplicativity", 10, label, [&](Check& c) {
        const std::int64_t top = 10000;
        const auto a = an_table(m, top);
        std::int64_t pairs = 0, violations = 0;
        for (std::int64_t x = 2; x * x <= top; ++x)
          for (std::int64_t y = x + 1; x * y <= top; ++y) {
            if (std::gcd(x, y) != 1) continue;
            ++pairs;
            if (a[static_cast<std::size_t>(x * y)] != a[static_cast<std::size_t>(x)] * a[static_cast<std::size_t>(y)])
              ++violations;
          }
        for (auto p : primes_up_to(100)) {
          const std::int64_t eps = m.conductor % p == 0 ? 0 : p;
          for (std::int64_t q = p; q * p <= top; q *= p)
            if (a[static_cast<std::size_t>(q * p)] != a[static_cast<std::size_t>(p)] * a[static_cast<std::size_t>(q)] -
                                                          eps * a[static_cast<std::size_t>(q / p)])
              ++violations;
        }
        judge(c, violations, 0);
        c.detail = std::to_string(pairs) + " coprime pairs with mn <= 10^4, plus prime-power recursion";
      });
      check("cusp_count", 10, label, [&](Check& c) {
        std::int64_t expected = 0;
        for (auto d : divisors(m.conductor)) expected += euler_phi(std::gcd(d, m.conductor / d));
        const auto cusps = enumerate_cusps(m.conductor);
        const auto got = static_cast<std::int64_t>(cusps.cusps.size());
        int clashes = 0;
        for (std::size_t i = 0; i < cusps.cusps.size(); ++i)
          for (std::size_t j = i + 1; j < cusps.cusps.size(); ++j)
            clashes += cusps_equivalent(cusps.cusps[i], cusps.cusps[j], m.conductor);
        judge(c, std::abs(got - expected) + clashes + std::abs(cusp_count(m.conductor) - expected), 0);
        c.detail = std::to_string(got) + " inequivalent cusps, divisor sum " + std::to_string(expected);
      });
      check("indicator_delta", 10, label, [&](Check& c) {
        const auto basis = indicator_basis(m.conductor, n_max());
        judge(c, basis.delta_residual, tol(1e-10));
        c.detail = std::to_string(basis.indicators.size()) + " indicators, condition number " +
                   dec(basis.condition_number, 4);
      });
    }
  }

  void beta_vanishing() {
    for (const char* label : {"11a1", "27a1"}) {
      check("beta_vanishing", 11, label, [&, label](Check& c) {
        const CurveData& d = data(label);
        const Real alpha = d.model.has_cm ? Real(0) : alpha_from_d1(d, direct(label, h_max())[0].value);
        const auto target = hol_projection_hat(d, alpha);
        const auto basis = indicator_basis(d.model.conductor, n_max());
        std::vector<long> rows(static_cast<std::size_t>(h_max() + 1));
        std::iota(rows.begin(), rows.end(), 0L);
        const BetaFit fit = fit_indicator_coefficients(target, d.f, basis, rows);
        Real worst = abs_c(fit.beta[0] - Complex(Real(1), Real(0)));
        for (std::size_t i = 1; i < fit.beta.size(); ++i) worst = std::max(worst, abs_c(fit.beta[i]));
        judge(c, worst, tol(1e-6));
        c.detail = "h = 0.." + std::to_string(h_max()) + ", " + std::to_string(fit.beta.size()) +
                   " indicators, fitted f coefficient " + dec(fit.beta_f.real(), 6) + ", condition number " +
                   dec(fit.condition_number, 4);
      });
    }
  }

  void level_49_experiment() {
    check("level_49_experiment", 12, "49a1", [&](Check& c) {
      const CurveData& d = data("49a1");
      const auto& dir = direct("49a1", h_max());
      const Real fitted = fit_alpha(d, dir);
      std::string at_zero, at_fit;
      const Real r0 = identity_residual("49a1", 0, h_max(), &at_zero);
      const Real r1 = identity_residual("49a1", fitted, h_max(), &at_fit);
      const Real r12 = identity_residual("49a1", 0, 12, nullptr);
      c.measured = r1;
      c.tolerance = tol(0.02);
      c.passed = true;
      c.detail = "fitted alpha " + dec(fitted, 6) + "; max |closed - direct| over h <= " + std::to_string(h_max()) +
                 ": " + dec(r0, 4) + " with alpha = 0 (" + at_zero + "), " + dec(r1, 4) + " with fitted alpha (" +
                 at_fit + "); " + dec(r12, 4) + " over h <= 12 with alpha = 0";
    }, false);
  }

  PrecisionConfig config_;
  std::optional<std::string> label_;
  CurveRegistry registry_;
  std::map<std::string, CurveData> data_;
  std::map<std::string, std::vector<DirectValue>> direct_;
  std::vector<Check> checks_;
};

}  // namespace

VerifyReport verify_all(const PrecisionConfig& config, const std::optional<std::string>& label,
                        const std::optional<CurveRegistry>& registry) {
  config.validate();
  PrecisionScope scope(config.digits);
  CurveRegistry reg = registry ? *registry : builtin_registry();
  if (label && !reg.find_label(*label)) throw Error("unknown curve label '" + *label + "'");
  return Runner(config, label, std::move(reg)).run();
}

}  // namespace shiftconv
