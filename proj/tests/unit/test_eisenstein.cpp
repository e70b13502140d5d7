#include "shiftconv/arith.hpp"
#include "shiftconv/curve_registry.hpp"
#include "shiftconv/eisenstein_basis.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace shiftconv;

namespace {

std::int64_t sigma1(std::int64_t n) {
  std::int64_t s = 0;
  for (std::int64_t d = 1; d <= n; ++d)
    if (n % d == 0) s += d;
  return s;
}

// gamma . (a/c) for gamma = [[p, q], [r, s]] in Gamma_0(N), normalized with c >= 0.
Cusp act(std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t s, const Cusp& x) {
  std::int64_t a = p * x.a + q * x.c, c = r * x.a + s * x.c;
  if (c < 0 || (c == 0 && a < 0)) {
    a = -a;
    c = -c;
  }
  return Cusp{a, c, 1};
}

// Weight-2 E2 combination sum_d x_d E2(dz) equal to delta at the cusps 1/c, c | N (N squarefree),
// solved exactly with the cusp values (gcd(c, d)/d)^2.
std::vector<Rational> squarefree_indicator(std::int64_t level, std::int64_t target_c) {
  const auto ds = divisors(level);
  const std::size_t n = ds.size();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t c = ds[i] == level ? 0 : ds[i];
    for (std::size_t j = 0; j < n; ++j) {
      const std::int64_t g = c == 0 ? ds[j] : std::gcd(c, ds[j]);
      m[i][j] = Rational(g * g, ds[j] * ds[j]);
    }
    m[i][n] = (c == target_c) ? 1 : 0;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (m[piv][col] == 0) ++piv;
    std::swap(m[piv], m[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const Rational f = m[r][col] / m[col][col];
      for (std::size_t k = col; k <= n; ++k) m[r][k] -= f * m[col][k];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n] / m[i][i];
  return x;
}

}  // namespace

TEST_CASE("cusp counts match the divisor sum") {
  for (int n : kSupportedConductors) {
    std::int64_t expected = 0;
    for (auto d : divisors(n)) expected += euler_phi(std::gcd(d, n / d));
    CHECK(cusp_count(n) == expected);
    CHECK(static_cast<std::int64_t>(enumerate_cusps(n).cusps.size()) == expected);
    CHECK(enumerate_cusps(n).cusps.front().is_infinity());
  }
  CHECK(enumerate_cusps(36).cusps.size() == 12);
}

TEST_CASE("cusp classes are invariant under Gamma_0(N)") {
  std::mt19937_64 rng(7);
  for (int n : kSupportedConductors) {
    const auto reps = enumerate_cusps(n).cusps;
    for (int trial = 0; trial < 40; ++trial) {
      const std::int64_t r = n * static_cast<std::int64_t>(rng() % 7 + 1) * (rng() % 2 ? 1 : -1);
      std::int64_t s = static_cast<std::int64_t>(rng() % 50) + 1;
      while (std::gcd(s, r) != 1) ++s;
      const auto [x, y] = bezout_unit(s, r);  // x s - y r = 1
      for (const auto& cusp : reps) {
        const Cusp image = act(x, y, r, s, cusp);
        CHECK(cusps_equivalent(cusp, image, n));
      }
    }
    // every fraction a/c with small c lies in exactly one class
    for (std::int64_t c = 0; c <= 2 * n; ++c)
      for (std::int64_t a = c == 0 ? 1 : -n; a <= (c == 0 ? 1 : n); ++a) {
        if (std::gcd(a, c) != 1) continue;
        int hits = 0;
        for (const auto& rep : reps) hits += cusps_equivalent(Cusp{a, c, 1}, rep, n);
        CHECK(hits == 1);
      }
  }
}

TEST_CASE("primitive characters") {
  CHECK(primitive_characters(3).size() == 1);
  CHECK(primitive_characters(4).size() == 1);
  CHECK(primitive_characters(5).size() == 3);
  CHECK(primitive_characters(7).size() == 5);
  for (const auto& chi : primitive_characters(7))
    for (int a = 1; a < 7; ++a)
      for (int b = 1; b < 7; ++b)
        CHECK((chi.value_exponent(a) + chi.value_exponent(b)) % chi.order == chi.value_exponent(a * b) % chi.order);
}

TEST_CASE("spanning sets have one form per cusp") {
  for (int n : kSupportedConductors)
    CHECK(raw_basis(n, 5).size() + twisted_basis(n, 5).size() == static_cast<std::size_t>(cusp_count(n)));
  CHECK(raw_basis(36, 5).size() == 9);
}

TEST_CASE("cusp value of E2(tz) is (gcd(c,t)/t)^2") {
  PrecisionScope ps(40);
  for (int n : {27, 36}) {
    for (auto t : divisors(n)) {
      EisensteinAtom atom;
      atom.t = t;
      const EisensteinDescriptor d{"E2(" + std::to_string(t) + "z)", {{Complex(Real(1), Real(0)), atom}}};
      for (const auto& cusp : enumerate_cusps(n).cusps) {
        const std::int64_t g = cusp.is_infinity() ? t : std::gcd(cusp.c, t);
        const auto v = cusp_constant(d, cusp, n);
        CHECK(abs(v.value - Complex(Real(g * g) / Real(t * t), Real(0))) < Real("1e-15"));
      }
    }
  }
}

TEST_CASE("indicator of infinity at squarefree levels") {
  PrecisionScope ps(40);
  for (int n : {11, 14, 15, 17, 19, 21}) {
    CAPTURE(n);
    const auto x = squarefree_indicator(n, 0);
    const auto ds = divisors(n);
    const auto f = infinity_indicator(n, 30);
    Rational c0 = 0;
    for (const auto& xi : x) c0 += xi;
    CHECK(abs(f[0] - to_complex(c0)) < ten_to_minus(30));
    for (std::int64_t k = 1; k <= 30; ++k) {
      Rational ck = 0;
      for (std::size_t i = 0; i < ds.size(); ++i)
        if (k % ds[i] == 0) ck += x[i] * (-24) * sigma1(k / ds[i]);
      CHECK(abs(f[k] - to_complex(ck)) < ten_to_minus(30));
    }
  }
  const auto f11 = infinity_indicator(11, 6);
  const std::vector<Rational> printed{1, Rational(1, 5), Rational(3, 5), Rational(4, 5), Rational(7, 5), Rational(6, 5),
                                      Rational(12, 5)};
  for (long k = 0; k <= 6; ++k) CHECK(abs(f11[k] - to_complex(printed[static_cast<std::size_t>(k)])) < ten_to_minus(30));
}

TEST_CASE("indicator of infinity at level 27") {
  PrecisionScope ps(40);
  const auto f = infinity_indicator(27, 30);
  // -(1/8) E2(9z) + (9/8) E2(27z)
  for (std::int64_t k = 0; k <= 30; ++k) {
    Rational expected = k == 0 ? Rational(1) : Rational(0);
    if (k > 0 && k % 9 == 0) expected += Rational(3) * sigma1(k / 9);
    if (k > 0 && k % 27 == 0) expected += Rational(-27) * sigma1(k / 27);
    CHECK(abs(f[k] - to_complex(expected)) < ten_to_minus(30));
  }
  CHECK(abs(f[27] - Complex(Real(-15), Real(0))) < ten_to_minus(30));
}

TEST_CASE("indicators are a partition of E2") {
  PrecisionScope ps(40);
  for (int n : kSupportedConductors) {
    CAPTURE(n);
    const auto basis = indicator_basis(n, 20);
    CHECK(basis.indicators.size() == static_cast<std::size_t>(cusp_count(n)));
    CHECK(basis.delta_residual < Real("1e-10"));
    for (std::int64_t k = 0; k <= 20; ++k) {
      Complex sum(Real(0), Real(0));
      for (const auto& ind : basis.indicators) sum += ind.series[k];
      const Real expected = k == 0 ? Real(1) : Real(-24 * sigma1(k));
      CHECK(abs(sum - Complex(expected, Real(0))) < ten_to_minus(25));
    }
    for (std::size_t i = 1; i < basis.indicators.size(); ++i)
      CHECK(abs(basis.indicators[i].series[0]) < ten_to_minus(25));
  }
}
