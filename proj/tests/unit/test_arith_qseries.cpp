#include "shiftconv/arith.hpp"
#include "shiftconv/qseries.hpp"

#include <doctest.h>

#include <numeric>

using namespace shiftconv;

TEST_CASE("modular inverses and Bezout units") {
  for (std::int64_t m = 2; m <= 60; ++m)
    for (std::int64_t a = 1; a < m; ++a) {
      if (std::gcd(a, m) != 1) continue;
      CHECK(mod(a * mod_inverse(a, m), m) == 1);
      const auto [x, y] = bezout_unit(a, m);
      CHECK(a * x - m * y == 1);
    }
  CHECK(mod(-7, 5) == 3);
}

TEST_CASE("divisors, totient and primes agree with brute force") {
  for (std::int64_t n = 1; n <= 200; ++n) {
    std::vector<std::int64_t> d;
    std::int64_t phi = 0;
    for (std::int64_t k = 1; k <= n; ++k) {
      if (n % k == 0) d.push_back(k);
      if (std::gcd(k, n) == 1) ++phi;
    }
    CHECK(divisors(n) == d);
    CHECK(euler_phi(n) == phi);
    CHECK(is_prime(n) == (n > 1 && d.size() == 2));
  }
  CHECK(primes_up_to(30) == std::vector<std::int64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
  CHECK(prime_factors(36) == std::vector<std::int64_t>{2, 3});
  CHECK(is_squarefree(21));
  CHECK_FALSE(is_squarefree(27));
}

TEST_CASE("q-series arithmetic") {
  // 1/(1 - q) = 1 + q + q^2 + ...
  const QSeries<Rational> one_minus_q(0, {Rational(1), Rational(-1)}, 10);
  const auto geo = one_minus_q.inverse();
  for (long k = 0; k < 10; ++k) CHECK(geo[k] == 1);
  CHECK_THROWS_AS(geo[10], std::out_of_range);

  const auto sq = geo * geo;
  for (long k = 0; k < 10; ++k) CHECK(sq[k] == k + 1);
  CHECK(geo.pow(2)[7] == 8);
  CHECK(geo.pow(-1)[1] == -1);

  const auto d = q_derivative(geo);
  CHECK(d[3] == 3);
  const auto dil = geo.dilated(3);
  CHECK(dil[3] == 1);
  CHECK(dil[4] == 0);

  const QSeries<Rational> laurent(-1, {Rational(1), Rational(0), Rational(2)}, 5);
  CHECK(laurent.valuation() == -1);
  CHECK(q_derivative(laurent)[-1] == -1);
  CHECK(to_string(Fraction(-5, 2)) == "-5/2");
}
