#include "shiftconv/arith.hpp"

#include "shiftconv/numeric.hpp"

#include <numeric>
#include <utility>

namespace shiftconv {

namespace {

// Returns (g, x, y) with a*x + b*y = g.
struct Egcd {
  std::int64_t g, x, y;
};

Egcd extended_gcd(std::int64_t a, std::int64_t b) {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
    old_t = std::exchange(t, old_t - q * t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

}  // namespace

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  if (m == 1) return 0;
  const Egcd e = extended_gcd(mod(a, m), m);
  if (e.g != 1) throw Error("no inverse of " + std::to_string(a) + " modulo " + std::to_string(m));
  return mod(e.x, m);
}

std::pair<std::int64_t, std::int64_t> bezout_unit(std::int64_t a, std::int64_t b) {
  const Egcd e = extended_gcd(a, b);
  if (e.g != 1) throw Error("bezout_unit: arguments are not coprime");
  // a*x + b*y = 1  =>  a*x - b*(-y) = 1
  return {e.x, -e.y};
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> small, large;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d * d != n) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t result = n;
  for (std::int64_t p : prime_factors(n)) result = result / p * (p - 1);
  return result;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_squarefree(std::int64_t n) {
  for (std::int64_t p : prime_factors(n))
    if (n % (p * p) == 0) return false;
  return true;
}

std::vector<std::int32_t> smallest_prime_factors(std::int64_t n) {
  std::vector<std::int32_t> spf(static_cast<std::size_t>(n + 1), 0);
  for (std::int64_t i = 2; i <= n; ++i) {
    if (spf[i] != 0) continue;
    for (std::int64_t j = i; j <= n; j += i)
      if (spf[j] == 0) spf[j] = static_cast<std::int32_t>(i);
  }
  return spf;
}

std::vector<std::int64_t> primes_up_to(std::int64_t n) {
  std::vector<std::int64_t> out;
  if (n < 2) return out;
  const auto spf = smallest_prime_factors(n);
  for (std::int64_t i = 2; i <= n; ++i)
    if (spf[i] == i) out.push_back(i);
  return out;
}

}  // namespace shiftconv
