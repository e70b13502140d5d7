#include "shiftconv/lattice.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <doctest.h>

#include <cmath>
#include <complex>

using namespace shiftconv;

namespace {

using cd = std::complex<double>;

cd to_cd(const Complex& z) { return {z.real().convert_to<double>(), z.imag().convert_to<double>()}; }

// Largest real root of 4x^3 + b2 x^2 + 2 b4 x + b6 by bisection.
double largest_root(double b2, double b4, double b6) {
  auto g = [&](double x) { return ((4 * x + b2) * x + 2 * b4) * x + b6; };
  double hi = 1;
  while (g(hi) <= 0 || g(-hi) >= 0) hi *= 2;
  double lo = hi;
  while (g(lo) > 0) lo -= 0.01;
  for (int i = 0; i < 200; ++i) {
    const double mid = (lo + hi) / 2;
    (g(mid) > 0 ? hi : lo) = mid;
  }
  return hi;
}

// 2 * integral_{e1}^{oo} dx / sqrt(g(x)) with x = e1 + t^2.
double real_period_by_quadrature(const EllipticCurveModel& m) {
  const double b2 = static_cast<double>(m.b2()), b4 = static_cast<double>(m.b4()), b6 = static_cast<double>(m.b6());
  const double e1 = largest_root(b2, b4, b6);
  // g(x) = 4 (x - e1)(x^2 + p x + q)
  const double p = b2 / 4 + e1, q = 2 * b4 / 4 + e1 * p;
  boost::math::quadrature::exp_sinh<double> integrator;
  auto integrand = [&](double t) {
    const double x = e1 + t * t;
    return 1.0 / std::sqrt(x * x + p * x + q);
  };
  return 2 * integrator.integrate(integrand);
}

// G2(tau) = pi^2/3 + sum_{n != 0} pi^2 / sin^2(pi n tau).
cd g2_by_cosecants(cd tau) {
  const double pi = M_PI;
  cd sum = pi * pi / 3;
  for (int n = 1; n < 200; ++n) {
    const cd s = std::sin(pi * double(n) * tau);
    sum += 2.0 * pi * pi / (s * s);
  }
  return sum;
}

}  // namespace

TEST_CASE("AGM") {
  PrecisionScope ps(50);
  CHECK(abs(agm(1, sqrt(Real(2))) - Real("1.1981402347355922074399224922803238782272126632156515582636")) <
        ten_to_minus(45));
}

TEST_CASE("real period agrees with quadrature") {
  PrecisionScope ps(40);
  const auto reg = builtin_registry();
  for (const auto& m : reg.curves()) {
    CAPTURE(m.label);
    const Lattice lat = compute_periods(m, 40);
    const cd w1 = to_cd(lat.omega1), w2 = to_cd(lat.omega2);
    double smallest = 1e300;
    for (int a = -3; a <= 3; ++a)
      for (int b = -3; b <= 3; ++b) {
        const cd w = double(a) * w1 + double(b) * w2;
        if (std::abs(w.imag()) < 1e-12 && w.real() > 1e-6) smallest = std::min(smallest, w.real());
      }
    CHECK(smallest == doctest::Approx(real_period_by_quadrature(m)).epsilon(1e-10));
    CHECK(lat.tau.imag() > 0);
    CHECK(lat.volume > 0);
    CHECK(std::abs(lat.volume.convert_to<double>() - std::abs((std::conj(w1) * w2).imag())) < 1e-10);
    const std::size_t roots = two_division_roots(m).size();
    CHECK(roots == (m.discriminant() > 0 ? 3u : 1u));
  }
}

TEST_CASE("basis reduction lands in the fundamental domain") {
  PrecisionScope ps(30);
  const Complex w1(Real(1), Real(0)), w2(Real("5.3"), Real("0.2"));
  const auto r = reduce_basis(w1, w2);
  CHECK(abs(r.tau.real()) <= Real("0.5000001"));
  CHECK(abs(r.tau) >= Real("0.9999999"));
  CHECK(r.m[0] * r.m[3] - r.m[1] * r.m[2] == 1);
  const Complex back = Complex(Real(r.m[0]), Real(0)) * w1 + Complex(Real(r.m[1]), Real(0)) * w2;
  CHECK(abs(back - r.w1) < ten_to_minus(25));
}

TEST_CASE("S of 11a1 and the cosecant oracle") {
  PrecisionScope ps(64);
  const auto reg = builtin_registry();
  const Lattice e = complete_lattice(reg.at("11a1"), 64);
  CHECK(abs(e.s_lambda.real() - Real("0.38124")) < Real("5e-5"));
  for (const auto& m : reg.curves()) {
    CAPTURE(m.label);
    const Lattice lat = complete_lattice(m, 64);
    const cd w1 = to_cd(lat.omega1), w2 = to_cd(lat.omega2);
    const cd tau = w2 / w1;
    REQUIRE(tau.imag() > 0);
    const double vol = lat.volume.convert_to<double>();
    const cd s = g2_by_cosecants(tau) / (w1 * w1) - M_PI * std::conj(w1) / (vol * w1);
    CHECK(std::abs(s - to_cd(lat.s_lambda)) < 1e-9);
    CHECK(legendre_residual(lat) < ten_to_minus(50));
  }
}

TEST_CASE("lattice invariants recover c4 and c6") {
  PrecisionScope ps(50);
  const auto reg = builtin_registry();
  for (const auto& m : reg.curves()) {
    CAPTURE(m.label);
    const Lattice lat = compute_periods(m, 50);
    const auto g = eisenstein_numbers(lat, 6);
    REQUIRE(g.size() == 2);
    const Complex g2 = Complex(Real(60), Real(0)) * g[0], g3 = Complex(Real(140), Real(0)) * g[1];
    CHECK(abs(g2 - Complex(Real(m.c4().str()) / 12, Real(0))) < ten_to_minus(40));
    CHECK(abs(g3 - Complex(Real(m.c6().str()) / 216, Real(0))) < ten_to_minus(40));
  }
}

TEST_CASE("high-weight lattice sums satisfy the Weierstrass recursion") {
  PrecisionScope ps(64);
  const Lattice lat = compute_periods(builtin_registry().at("17a1"), 64);
  const auto g = eisenstein_numbers(lat, 30);
  REQUIRE(g.size() == 14);
  // p(z) = 1/z^2 + sum c_k z^{2k}, c_k = (2k+1) G_{2k+2}
  std::vector<Complex> c(15);
  for (int k = 1; k <= 14; ++k) c[k] = Complex(Real(2 * k + 1), Real(0)) * g[k - 1];
  for (int k = 3; k <= 14; ++k) {
    Complex sum(Real(0), Real(0));
    for (int m = 1; m <= k - 2; ++m) sum += c[m] * c[k - 1 - m];
    const Complex expected = sum * Complex(Real(3) / Real((2 * k + 3) * (k - 2)), Real(0));
    CHECK(abs(c[k] - expected) <= ten_to_minus(45) * (1 + abs(c[k])));
  }
}

TEST_CASE("Weierstrass functions") {
  PrecisionScope ps(50);
  const auto m = builtin_registry().at("11a1");
  const Lattice lat = complete_lattice(m, 50);
  const Complex z = Complex(Real("0.31"), Real(0)) * lat.omega1 + Complex(Real("0.17"), Real(0)) * lat.omega2;
  const auto v = weierstrass_at(lat, z);
  const Real g2 = Real(m.c4().str()) / 12, g3 = Real(m.c6().str()) / 216;
  const Complex lhs = v.wp_prime * v.wp_prime;
  const Complex rhs = Complex(Real(4), Real(0)) * v.wp * v.wp * v.wp - Complex(g2, Real(0)) * v.wp - Complex(g3, Real(0));
  CHECK(abs(lhs - rhs) < ten_to_minus(35) * (1 + abs(lhs)));
  const auto shifted = weierstrass_at(lat, z + lat.omega1);
  CHECK(abs(shifted.zeta - v.zeta - lat.eta1) < ten_to_minus(35));
  CHECK(abs(shifted.wp - v.wp) < ten_to_minus(35));
}
