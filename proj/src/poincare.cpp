#include "shiftconv/poincare.hpp"

#include "shiftconv/arith.hpp"
#include "shiftconv/bessel.hpp"

#include <numeric>

namespace shiftconv {

namespace {

constexpr int kGuardDigits = 10;

// cos(2 pi j / c) for j in [0, c), by rotation re-anchored every 64 steps.
std::vector<Real> cos_table(std::int64_t c) {
  std::vector<Real> out(static_cast<std::size_t>(c));
  const Real step_angle = 2 * pi() / c;
  const Real cs = cos(step_angle), sn = sin(step_angle);
  Real x = 1, y = 0;
  for (std::int64_t j = 0; j < c; ++j) {
    if (j % 64 == 0) {
      x = cos(step_angle * j);
      y = sin(step_angle * j);
    }
    out[static_cast<std::size_t>(j)] = x;
    const Real nx = x * cs - y * sn;
    y = x * sn + y * cs;
    x = nx;
  }
  return out;
}

// Units d mod c with their inverses.
struct Units {
  std::vector<std::int64_t> d, inv;
};

Units units_mod(std::int64_t c) {
  Units u;
  for (std::int64_t d = 0; d < c; ++d) {
    if (std::gcd(d, c) != 1) continue;
    u.d.push_back(d);
    u.inv.push_back(mod_inverse(d, c));
  }
  return u;
}

Real kloosterman_from_tables(std::int64_t m, std::int64_t n, std::int64_t c, const Units& u,
                             const std::vector<Real>& table, std::vector<std::int64_t>& counts) {
  counts.assign(static_cast<std::size_t>(c), 0);
  const std::int64_t mm = mod(m, c), nn = mod(n, c);
  for (std::size_t i = 0; i < u.d.size(); ++i)
    ++counts[static_cast<std::size_t>((mm * u.inv[i] + nn * u.d[i]) % c)];
  Real sum = 0;
  for (std::int64_t j = 0; j < c; ++j)
    if (counts[j] != 0) sum += table[static_cast<std::size_t>(j)] * counts[j];
  return sum;
}

void check_common(std::int64_t m, int k, std::int64_t level, std::int64_t c_max) {
  if (m < 1) throw Error("Poincare index m must be positive");
  if (k < 2 || k % 2 != 0) throw Error("Poincare weight k must be an even integer >= 2");
  if (level < 1) throw Error("level must be positive");
  if (c_max < 0) throw Error("c_max must be nonnegative");
}

// Accumulates sum over c = N, 2N, ... <= c_max of term(c, K(m_sign*m, n; c)) for every n,
// recording the partial sums at c_max / 2.
template <class Term>
void kloosterman_sweep(std::int64_t m_signed, std::int64_t level, const std::vector<std::int64_t>& ns,
                       std::int64_t c_max, std::vector<Real>& full, std::vector<Real>& half,
                       Term&& term) {
  full.assign(ns.size(), Real(0));
  half.assign(ns.size(), Real(0));
  std::vector<std::int64_t> counts;
  for (std::int64_t c = level; c <= c_max; c += level) {
    const Units u = units_mod(c);
    const std::vector<Real> table = cos_table(c);
    for (std::size_t i = 0; i < ns.size(); ++i) {
      const Real kl = kloosterman_from_tables(m_signed, ns[i], c, u, table, counts);
      if (kl != 0) full[i] += term(c, ns[i], kl);
    }
    if (c <= c_max / 2) half = full;
  }
}

std::vector<PoincareCoefficient> finish(const std::vector<std::int64_t>& ns, std::vector<Real>& full,
                                        std::vector<Real>& half, std::int64_t c_max) {
  std::vector<PoincareCoefficient> out;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    PoincareCoefficient p;
    p.n = ns[i];
    p.value = full[i];
    p.half_value = half[i];
    p.tail_estimate = abs(full[i] - half[i]);
    p.c_max = c_max;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

Complex kloosterman(std::int64_t m, std::int64_t n, std::int64_t c) {
  if (c < 1) throw Error("kloosterman: modulus must be positive");
  Complex sum(Real(0), Real(0));
  for (std::int64_t d = 0; d < c; ++d) {
    if (std::gcd(d, c) != 1) continue;
    const std::int64_t e = mod(mod(m, c) * mod_inverse(d, c) + mod(n, c) * d, c);
    sum += expi2pi(Real(e) / c);
  }
  return sum;
}

Real kloosterman_real(std::int64_t m, std::int64_t n, std::int64_t c) {
  if (c < 1) throw Error("kloosterman: modulus must be positive");
  std::vector<std::int64_t> counts;
  return kloosterman_from_tables(m, n, c, units_mod(c), cos_table(c), counts);
}

std::vector<PoincareCoefficient> bp_coefficients(std::int64_t m, int k, std::int64_t level,
                                                 std::int64_t n_max, std::int64_t c_max,
                                                 BesselArgument convention) {
  check_common(m, k, level, c_max);
  if (n_max < 1) throw Error("n_max must be positive");
  const int digits = working_digits();
  PrecisionScope scope(digits + kGuardDigits);
  std::vector<std::int64_t> ns;
  for (std::int64_t n = 1; n <= n_max; ++n) ns.push_back(n);
  const Real scale = convention == BesselArgument::printed ? 2 * pi() : 4 * pi();
  std::vector<Real> full, half;
  kloosterman_sweep(m, level, ns, c_max, full, half, [&](std::int64_t c, std::int64_t n, const Real& kl) {
    return bessel_j(k - 1, scale * sqrt(Real(m * n)) / c) * kl / c;
  });
  // i^{-k} = (-1)^{k/2} for even k.
  const Real sign = (k / 2) % 2 == 0 ? 1 : -1;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const Real factor = pow(Real(ns[i]) / m, Real(k - 1) / 2);
    const Real delta = ns[i] == m ? 1 : 0;
    full[i] = factor * (delta + 2 * pi() * sign * full[i]);
    half[i] = factor * (delta + 2 * pi() * sign * half[i]);
  }
  return finish(ns, full, half, c_max);
}

PoincareCoefficient bp_coefficient(std::int64_t m, int k, std::int64_t level, std::int64_t n,
                                   std::int64_t c_max, BesselArgument convention) {
  if (n < 1) throw Error("b_P index n must be positive");
  return bp_coefficients(m, k, level, n, c_max, convention).back();
}

std::vector<PoincareCoefficient> bq_coefficients(std::int64_t m, int k, std::int64_t level,
                                                 std::int64_t n_max, std::int64_t c_max) {
  check_common(m, k, level, c_max);
  if (n_max < 0) throw Error("n_max must be nonnegative");
  const int digits = working_digits();
  PrecisionScope scope(digits + kGuardDigits);
  std::vector<std::int64_t> ns;
  for (std::int64_t n = 0; n <= n_max; ++n) ns.push_back(n);
  std::vector<Real> full, half;
  kloosterman_sweep(-m, level, ns, c_max, full, half, [&](std::int64_t c, std::int64_t n, const Real& kl) {
    if (n == 0) return Real(kl / pow(Real(c), k));
    return Real(kl / c * bessel_i(k - 1, 4 * pi() * sqrt(Real(m * n)) / c));
  });
  // -(-1)^{k/2}
  const Real sign = (k / 2) % 2 == 0 ? -1 : 1;
  Real factorial = 1;
  for (int j = 2; j < k; ++j) factorial *= j;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    Real factor;
    if (ns[i] == 0)
      factor = sign * pow(2 * pi(), k) * pow(Real(m), k - 1) / factorial;
    else
      factor = sign * 2 * pi() * pow(Real(m) / ns[i], Real(k - 1) / 2);
    full[i] *= factor;
    half[i] *= factor;
  }
  return finish(ns, full, half, c_max);
}

PoincareCoefficient bq_coefficient(std::int64_t m, int k, std::int64_t level, std::int64_t n,
                                   std::int64_t c_max) {
  if (n < 0) throw Error("b_Q index n must be nonnegative");
  return bq_coefficients(m, k, level, n, c_max).back();
}

}  // namespace shiftconv
