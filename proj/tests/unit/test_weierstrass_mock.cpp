#include "shiftconv/curve_registry.hpp"
#include "shiftconv/newform.hpp"
#include "shiftconv/weierstrass_mock.hpp"

#include <doctest.h>

using namespace shiftconv;

namespace {

std::vector<std::int64_t> partitions(int n) {
  std::vector<std::int64_t> p(static_cast<std::size_t>(n + 1), 0);
  p[0] = 1;
  for (int k = 1; k <= n; ++k)
    for (int m = k; m <= n; ++m) p[static_cast<std::size_t>(m)] += p[static_cast<std::size_t>(m - k)];
  return p;
}

}  // namespace

TEST_CASE("eta quotient expansions") {
  // 1/eta = q^{-1/24} sum p(n) q^n
  const auto inv = eta_quotient(EtaQuotient{1, {{1, -1}}}, 40);
  CHECK(inv.shift() == Fraction(-1, 24));
  const auto p = partitions(40);
  for (long k = 0; k <= 40; ++k) CHECK(inv[k] == Rational(p[static_cast<std::size_t>(k)]));

  // eta(tau)^2 eta(11 tau)^2 is the newform of 11a1
  const auto f = eta_quotient(EtaQuotient{1, {{1, 2}, {11, 2}}}, 60);
  CHECK(f.shift() == Fraction(1));
  const auto a = an_table(builtin_registry().at("11a1"), 61);
  for (long k = 0; k <= 59; ++k) CHECK(f[k] == Rational(a[static_cast<std::size_t>(k + 1)]));

  const EtaQuotient q{-1, {{3, 1}, {9, 6}, {27, -3}}};
  CHECK(q.weight() == Fraction(2));
  CHECK(q.leading_exponent() == Fraction(-1));
  CHECK(to_string(q) == "-eta(3t)*eta(9t)^6*eta(27t)^-3");
}

TEST_CASE("Z^+ of 11a1") {
  PrecisionScope ps(64);
  const auto z = zhat_plus(builtin_registry().at("11a1"), 8, 64);
  CHECK(z.first() == -1);
  CHECK(abs(z[-1] - Complex(Real(1), Real(0))) < ten_to_minus(50));
  const std::vector<const char*> printed{"1", "0.9520", "1.547", "0.3493", "1.976", "-2.609"};
  for (long n = 0; n < 6; ++n) {
    CHECK(abs(z[n].real() - Real(printed[static_cast<std::size_t>(n)])) < Real("1e-3"));
    CHECK(abs(z[n].imag()) < ten_to_minus(40));
  }
  // frozen at 64 digits
  CHECK(abs(z[1].real() - Real("0.9520864195")) < Real("1e-9"));
  CHECK(abs(z[5].real() - Real("-2.609582716")) < Real("1e-9"));
}

TEST_CASE("Z^+ of the CM curves is rational") {
  PrecisionScope ps(64);
  const auto reg = builtin_registry();
  const auto z27 = zhat_plus(reg.at("27a1"), 14, 64);
  const std::vector<std::pair<long, Rational>> t27{
      {2, Rational(1, 2)}, {5, Rational(1, 5)}, {8, Rational(3, 4)}, {11, Rational(-6, 11)}, {14, Rational(-1, 2)}};
  for (const auto& [n, r] : t27) CHECK(abs(z27[n] - to_complex(r)) < ten_to_minus(50));
  // supports mod 3 of Z^+ (exponents -1 mod 3) for 27
  for (long n = 0; n <= 14; ++n)
    if ((n + 1) % 3 != 0) CHECK(abs(z27[n]) < ten_to_minus(50));
  const auto z32 = zhat_plus(reg.at("32a1"), 11, 64);
  CHECK(abs(z32[3] - to_complex(Rational(2, 3))) < ten_to_minus(50));
  CHECK(abs(z32[7] - to_complex(Rational(1, 7))) < ten_to_minus(50));
  CHECK(abs(z32[11] - to_complex(Rational(-2, 11))) < ten_to_minus(50));
  const auto z36 = zhat_plus(reg.at("36a1"), 11, 64);
  CHECK(abs(z36[5] - to_complex(Rational(3, 5))) < ten_to_minus(50));
  CHECK(abs(z36[11] - to_complex(Rational(1, 11))) < ten_to_minus(50));
  const auto z49 = zhat_plus(reg.at("49a1"), 4, 64);
  CHECK(abs(z49[0] - to_complex(Rational(-1, 2))) < ten_to_minus(40));
}

TEST_CASE("q d/dq Z^+ as eta quotients") {
  PrecisionScope ps(64);
  const auto reg = builtin_registry();
  for (int level : {27, 32}) {
    const auto eq = *tabulated_eta_quotient(level);
    const auto dz = q_derivative(zhat_plus(reg.by_conductor(level), 40, 64));
    const auto s = eta_quotient(eq, 40);
    for (long k = 0; k < 40; ++k) CHECK(abs(dz[k - 1] - to_complex(s[k])) < ten_to_minus(40));
  }
  // the tabulated N = 36 quotient has weight 1; the weight-2 match has exponent 3 on eta(18t)
  const auto printed36 = *tabulated_eta_quotient(36);
  CHECK(printed36.weight() == Fraction(1));
  const auto dz36 = q_derivative(zhat_plus(reg.by_conductor(36), 30, 64)).truncated(30);
  const auto found = match_eta_quotients(dz36, {6, 12, 18, 36}, 8, ten_to_minus(30));
  REQUIRE(found.size() == 1);
  CHECK(to_string(found[0]) == "-eta(6t)^3*eta(12t)*eta(18t)^3*eta(36t)^-3");
  CHECK_FALSE(tabulated_eta_quotient(11));
}

TEST_CASE("rational recognition") {
  PrecisionScope ps(40);
  CHECK(recognize_rational(Real(-6) / 11, 100, ten_to_minus(30)) == Rational(-6, 11));
  CHECK_FALSE(recognize_rational(sqrt(Real(2)), 100, ten_to_minus(30)));
}
