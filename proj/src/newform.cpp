#include "shiftconv/newform.hpp"

#include "shiftconv/arith.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace shiftconv {

namespace {

// Affine points of y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over F_2.
std::int64_t affine_points_mod2(const EllipticCurveModel& m) {
  std::int64_t count = 0;
  for (std::int64_t x = 0; x < 2; ++x)
    for (std::int64_t y = 0; y < 2; ++y) {
      const std::int64_t lhs = y * y + m.a1 * x * y + m.a3 * y;
      const std::int64_t rhs = x * x * x + m.a2 * x * x + m.a4 * x + m.a6;
      if (mod(lhs - rhs, 2) == 0) ++count;
    }
  return count;
}

// For odd p the curve is (2y + a1 x + a3)^2 = g(x) with
// g = 4x^3 + b2 x^2 + 2 b4 x + b6, so a_p = -sum_x legendre(g(x)).
std::int64_t ap_odd(const EllipticCurveModel& m, std::int64_t p) {
  std::vector<signed char> chi(static_cast<std::size_t>(p), -1);
  chi[0] = 0;
  for (std::int64_t y = 1; y <= p / 2; ++y) chi[static_cast<std::size_t>(y * y % p)] = 1;

  const std::int64_t b2 = mod(m.b2(), p), b4 = mod(m.b4(), p), b6 = mod(m.b6(), p);
  auto g = [&](std::int64_t x) { return mod(((4 * x + b2) % p * x % p + 2 * b4) % p * x + b6, p); };
  // Forward differences of the cubic; the third difference is the constant 24.
  std::int64_t v = g(0);
  std::int64_t d1 = mod(g(1) - g(0), p);
  std::int64_t d2 = mod(g(2) - 2 * g(1) + g(0), p);
  const std::int64_t d3 = 24 % p;
  std::int64_t sum = 0;
  for (std::int64_t x = 0; x < p; ++x) {
    sum += chi[static_cast<std::size_t>(v)];
    v += d1;
    if (v >= p) v -= p;
    d1 += d2;
    if (d1 >= p) d1 -= p;
    d2 += d3;
    if (d2 >= p) d2 -= p;
  }
  return -sum;
}

using CacheKey = std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t, std::int64_t>;

std::mutex cache_mutex;
std::map<CacheKey, std::vector<std::int64_t>> cache;

std::vector<std::int64_t> build_table(const EllipticCurveModel& model, std::int64_t n_max) {
  const auto spf = smallest_prime_factors(n_max);
  std::vector<std::int64_t> a(static_cast<std::size_t>(n_max + 1), 0);
  if (n_max >= 1) a[1] = 1;
  const std::int64_t level = model.conductor;
  for (std::int64_t n = 2; n <= n_max; ++n) {
    const std::int64_t p = spf[static_cast<std::size_t>(n)];
    std::int64_t pk = p;
    while (n % (pk * p) == 0) pk *= p;
    const std::int64_t rest = n / pk;
    if (rest != 1) {
      a[n] = a[pk] * a[rest];
      continue;
    }
    if (n == p) {
      a[n] = ap_point_count(model, p);
    } else if (level % p == 0) {
      a[n] = a[p] * a[n / p];
    } else {
      a[n] = a[p] * a[n / p] - p * a[n / p / p];
    }
  }
  return a;
}

}  // namespace

std::int64_t ap_point_count(const EllipticCurveModel& model, std::int64_t p) {
  if (!is_prime(p)) throw Error("ap_point_count: " + std::to_string(p) + " is not prime");
  if (p == 2) return 2 + 1 - (affine_points_mod2(model) + 1);
  return ap_odd(model, p);
}

std::vector<std::int64_t> an_table(const EllipticCurveModel& model, std::int64_t n_max) {
  if (n_max < 1) throw Error("an_table: n_max must be positive");
  const CacheKey key{model.a1, model.a2, model.a3, model.a4, model.a6};
  {
    std::lock_guard lock(cache_mutex);
    auto it = cache.find(key);
    if (it != cache.end() && static_cast<std::int64_t>(it->second.size()) > n_max)
      return {it->second.begin(), it->second.begin() + n_max + 1};
  }
  auto table = build_table(model, n_max);
  std::lock_guard lock(cache_mutex);
  auto& slot = cache[key];
  if (slot.size() < table.size()) slot = table;
  return table;
}

QSeries<Rational> an_coefficients(const EllipticCurveModel& model, long n_max) {
  const auto a = an_table(model, n_max);
  std::vector<Rational> c;
  c.reserve(static_cast<std::size_t>(n_max + 1));
  for (long n = 0; n <= n_max; ++n) c.emplace_back(a[static_cast<std::size_t>(n)]);
  return QSeries<Rational>(0, std::move(c), n_max + 1);
}

QSeries<Rational> eichler_integral(const QSeries<Rational>& f) {
  if (f.valuation() < 1) throw Error("eichler_integral: series must vanish at q^0");
  std::vector<Rational> c;
  for (long n = 1; n < f.order(); ++n) c.push_back(f[n] / n);
  return QSeries<Rational>(1, std::move(c), f.order(), f.shift());
}

}  // namespace shiftconv
