#include "shiftconv/bessel.hpp"

#include <cmath>

namespace shiftconv {

namespace {

void check_args(int nu, const Real& x) {
  if (nu < 0) throw Error("Bessel order must be nonnegative");
  if (x < 0) throw Error("Bessel argument must be nonnegative");
}

// sum_m s^m (x/2)^(2m+nu) / (m! (m+nu)!), s = -1 for J and +1 for I.
Real power_series(int nu, const Real& x, int sign) {
  const int digits = working_digits();
  // J cancels terms as large as e^x; carry that many extra digits.
  const int guard = sign < 0 ? static_cast<int>(static_cast<double>(x) * 0.4343) + 10 : 5;
  PrecisionScope scope(digits + guard);
  const Real half = x / 2;
  const Real half2 = half * half;
  Real term = 1;
  for (int j = 1; j <= nu; ++j) term *= half / j;
  Real sum = term;
  const Real eps = ten_to_minus(digits + guard);
  for (int m = 1; m < 100000; ++m) {
    term *= half2 / (Real(m) * (m + nu));
    if (sign < 0) term = -term;
    sum += term;
    if (abs(term) <= eps * abs(sum) && Real(m) > half) return Real(sum);
  }
  throw Error("Bessel power series did not converge");
}

// Hankel coefficients a_k(nu) = prod_{j=1..k} (4nu^2 - (2j-1)^2) / (k! 8^k).
template <class F>
void hankel_terms(int nu, const Real& x, F&& accept) {
  const Real mu = Real(4) * nu * nu;
  Real a = 1;
  Real previous = -1;
  for (int k = 0; k < 100000; ++k) {
    const Real term = a / pow(x, k);
    const Real mag = abs(term);
    if (k > 0 && previous >= 0 && mag > previous) return;  // series starts diverging
    if (!accept(k, term)) return;
    previous = mag;
    a *= (mu - Real(2 * k + 1) * (2 * k + 1)) / (Real(k + 1) * 8);
    if (a == 0) {
      accept(k + 1, Real(0));
      return;
    }
  }
}

}  // namespace

Real bessel_crossover() {
  const double digits = working_digits() + 5;
  return Real(std::max(40.0, 1.1 * digits * std::log(10.0) / 2));
}

Real bessel_j_series(int nu, const Real& x) {
  check_args(nu, x);
  return power_series(nu, x, -1);
}

Real bessel_i_series(int nu, const Real& x) {
  check_args(nu, x);
  return power_series(nu, x, 1);
}

Real bessel_j_asymptotic(int nu, const Real& x) {
  check_args(nu, x);
  if (x == 0) throw Error("asymptotic Bessel expansion needs x > 0");
  const Real eps = ten_to_minus(working_digits() + 5);
  // J = sqrt(2/(pi x)) (P cos chi - Q sin chi); P takes even k with sign (-1)^(k/2),
  // Q takes odd k with sign (-1)^((k-1)/2).
  Real p = 0, q = 0;
  hankel_terms(nu, x, [&](int k, const Real& t) {
    const Real signed_t = ((k / 2) % 2 == 0) ? t : Real(-t);
    if (k % 2 == 0)
      p += signed_t;
    else
      q += signed_t;
    return abs(t) > eps;
  });
  const Real chi = x - (Real(2 * nu + 1) * pi()) / 4;
  return sqrt(2 / (pi() * x)) * (p * cos(chi) - q * sin(chi));
}

Real bessel_i_asymptotic(int nu, const Real& x) {
  check_args(nu, x);
  if (x == 0) throw Error("asymptotic Bessel expansion needs x > 0");
  const Real eps = ten_to_minus(working_digits() + 5);
  Real s = 0;
  hankel_terms(nu, x, [&](int k, const Real& t) {
    s += (k % 2 == 0) ? t : Real(-t);
    return abs(t) > eps;
  });
  return exp(x) / sqrt(2 * pi() * x) * s;
}

Real bessel_j(int nu, const Real& x) {
  return x < bessel_crossover() ? bessel_j_series(nu, x) : bessel_j_asymptotic(nu, x);
}

Real bessel_i(int nu, const Real& x) {
  return x < bessel_crossover() ? bessel_i_series(nu, x) : bessel_i_asymptotic(nu, x);
}

}  // namespace shiftconv
