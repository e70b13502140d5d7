#include "shiftconv/newform.hpp"
#include "shiftconv/shifted_conv.hpp"
#include "shiftconv/verify.hpp"

#include <doctest.h>

using namespace shiftconv;

namespace {

// Plain double summation of the same series with the last-decade average.
std::pair<double, double> direct_oracle(const EllipticCurveModel& m, std::int64_t h, std::int64_t terms) {
  const auto a = an_table(m, terms + h);
  double partial = 0, window = 0;
  for (std::int64_t n = 1; n <= terms; ++n) {
    const double prod = static_cast<double>(a[static_cast<std::size_t>(n + h)] * a[static_cast<std::size_t>(n)]);
    partial += prod * (1.0 / static_cast<double>(n) - 1.0 / static_cast<double>(n + h));
    if (n > terms / 10) window += partial;
  }
  return {window / static_cast<double>(terms - terms / 10), partial};
}

}  // namespace

TEST_CASE("direct sums") {
  PrecisionScope ps(40);
  const auto reg = builtin_registry();
  const auto& e = reg.at("11a1");
  for (std::int64_t h : {1, 2, 7}) {
    const auto d = d_direct(e, h, 5000);
    const auto [mean, raw] = direct_oracle(e, h, 5000);
    CHECK(d.value.convert_to<double>() == doctest::Approx(mean).epsilon(1e-12));
    CHECK(d.raw.convert_to<double>() == doctest::Approx(raw).epsilon(1e-12));
    CHECK(d.n_terms == 5000);
  }
  const auto d1 = d_direct(e, 1, 100000);
  CHECK(abs(d1.value - Real("-0.7063")) < Real("0.01"));
  const auto d5 = d_direct(e, 5, 100000);
  CHECK(abs(d5.value - Real("2.026")) < Real("0.02"));
  for (std::int64_t h : {1, 2, 4, 5}) {
    const auto z = d_direct(reg.at("27a1"), h, 20000);
    CHECK(z.value == 0);
    CHECK(z.raw == 0);
  }
  CHECK_THROWS_AS(d_direct(e, 0, 100), Error);
}

TEST_CASE("support modulus") {
  CHECK(support_modulus(27) == 3);
  CHECK(support_modulus(32) == 4);
  CHECK(support_modulus(36) == 6);
  CHECK_FALSE(support_modulus(11));
  CHECK_FALSE(support_modulus(49));
}

TEST_CASE("closed form for 27a1") {
  PrecisionScope ps(40);
  const auto data = prepare_curve(builtin_registry().at("27a1"), 30, 40);
  CHECK(alpha_constant(data, 1000) == 0);
  const auto pi_hol = hol_projection_hat(data, 0);
  CHECK(abs(pi_hol[0] - Complex(Real(1), Real(0))) < ten_to_minus(30));
  for (long h = 1; h <= 30; ++h)
    if (h % 3 != 0) CHECK(abs(pi_hol[h]) < ten_to_minus(30));
  CHECK(abs(pi_hol[9] - Complex(Real(3), Real(0))) < ten_to_minus(30));
  CHECK(abs(pi_hol[18] - Complex(Real(9), Real(0))) < ten_to_minus(30));
  CHECK(assembly_residual(data, 0) < Real("1e-10"));
  const auto t = l_series_closed_form(data, 0, 30);
  REQUIRE(t.entries.size() == 30);
  CHECK(t.method == Method::closed_form);
  for (const auto& e : t.entries)
    if (e.h % 3 != 0) CHECK(abs(e.value) < Real("1e-6"));
  const auto dir = d_direct_range(data.model, 12, 100000);
  for (std::int64_t h : {3, 6, 9, 12})
    CHECK(abs(t.entries[static_cast<std::size_t>(h - 1)].value - dir[static_cast<std::size_t>(h - 1)].value) < Real("0.02"));
}

TEST_CASE("closed form for 11a1") {
  PrecisionScope ps(40);
  const auto data = prepare_curve(builtin_registry().at("11a1"), 30, 40);
  const Real alpha = alpha_constant(data, 100000);
  CHECK(abs(alpha - Real("0.00159")) < Real("2e-3"));
  const auto t = l_series_closed_form(data, alpha, 5);
  const std::vector<const char*> printed{"-0.706", "-1.562", "-0.093", "-1.234", "2.024"};
  for (std::size_t i = 0; i < 5; ++i) CHECK(abs(t.entries[i].value - Real(printed[i])) < Real("3e-3"));
  CHECK(abs(hol_projection_hat(data, alpha)[0] - Complex(Real(1), Real(0))) < ten_to_minus(30));
  const auto dir = d_direct_range(data.model, 30, 100000);
  CHECK(abs(fit_alpha(data, dir) - alpha) < Real("2e-3"));

  auto broken = data;
  broken.f_infinity = broken.f_infinity + QSeries<Complex>(0, {Complex(Real(1), Real(0))}, broken.f_infinity.order());
  CHECK_THROWS_AS(l_series_closed_form(broken, alpha, 5), Error);
}

TEST_CASE("indicator fit recovers beta") {
  PrecisionScope ps(40);
  const auto data = prepare_curve(builtin_registry().at("27a1"), 30, 40);
  const auto basis = indicator_basis(27, 30);
  std::vector<long> rows(31);
  for (long h = 0; h <= 30; ++h) rows[static_cast<std::size_t>(h)] = h;
  const auto fit = fit_indicator_coefficients(hol_projection_hat(data, 0), data.f, basis, rows);
  REQUIRE(fit.beta.size() == 6);
  CHECK(abs(fit.beta[0] - Complex(Real(1), Real(0))) < Real("1e-6"));
  for (std::size_t i = 1; i < fit.beta.size(); ++i) CHECK(abs(fit.beta[i]) < Real("1e-6"));
  CHECK(fit.cusp_labels.front() == "oo");
  CHECK_THROWS_AS(fit_indicator_coefficients(hol_projection_hat(data, 0), data.f, basis, {0, 1, 2}), Error);
}

TEST_CASE("precision config and filtered verification") {
  PrecisionConfig bad;
  bad.digits = 29;
  CHECK_THROWS_AS(bad.validate(), Error);
  PrecisionConfig zero;
  zero.direct_terms = 0;
  CHECK_THROWS_AS(zero.validate(), Error);

  PrecisionConfig quick;
  quick.direct_terms = 2000;
  quick.kloosterman_c_max = 50;
  quick.series_n_max = 30;
  const auto report = verify_all(quick, std::string("17a1"));
  REQUIRE_FALSE(report.checks.empty());
  for (const auto& c : report.checks) CHECK(c.label == "17a1");
  const auto j = report.to_json();
  CHECK(j["checks"][0]["measured"].is_string());
  CHECK(j["config"]["digits"] == "64");
  CHECK_THROWS_AS(verify_all(quick, std::string("99z1")), Error);
}
