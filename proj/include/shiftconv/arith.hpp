#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace shiftconv {

/// Inverse of a modulo m (gcd(a, m) = 1 required), in [0, m).
std::int64_t mod_inverse(std::int64_t a, std::int64_t m);

/// Reduces a into [0, m).
inline std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::vector<std::int64_t> divisors(std::int64_t n);
std::int64_t euler_phi(std::int64_t n);
bool is_prime(std::int64_t n);
bool is_squarefree(std::int64_t n);
/// Distinct prime factors in increasing order.
std::vector<std::int64_t> prime_factors(std::int64_t n);

/// Smallest-prime-factor table for 0..n (entries 0 and 1 are 0).
std::vector<std::int32_t> smallest_prime_factors(std::int64_t n);
std::vector<std::int64_t> primes_up_to(std::int64_t n);

/// Solves a*x - b*y = 1 for gcd(a, b) = 1; returns (x, y).
std::pair<std::int64_t, std::int64_t> bezout_unit(std::int64_t a, std::int64_t b);

}  // namespace shiftconv
