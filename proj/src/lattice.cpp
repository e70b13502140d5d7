#include "shiftconv/lattice.hpp"

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/factorials.hpp>

#include <cmath>

namespace shiftconv {

namespace {

constexpr int kGuardDigits = 30;

Real norm2(const Complex& z) { return z.real() * z.real() + z.imag() * z.imag(); }

Real abs_c(const Complex& z) { return sqrt(norm2(z)); }

Complex i_unit() { return Complex(Real(0), Real(1)); }

Real factorial(int n) {
  Real f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// 2 zeta(2k) = (-1)^(k+1) B_{2k} (2 pi)^{2k} / (2k)!
Real two_zeta_even(int k) {
  const Real b = boost::math::bernoulli_b2n<Real>(k);
  Real v = b * pow(2 * pi(), 2 * k) / factorial(2 * k);
  return (k % 2 == 1) ? v : Real(-v);
}

Real eval_cubic(const EllipticCurveModel& m, const Real& x) {
  return ((4 * x + m.b2()) * x + 2 * m.b4()) * x + m.b6();
}

Real eval_cubic_derivative(const EllipticCurveModel& m, const Real& x) {
  return (12 * x + 2 * m.b2()) * x + 2 * m.b4();
}

Real newton_root(const EllipticCurveModel& m, Real x) {
  const Real eps = ten_to_minus(working_digits() - 2);
  for (int it = 0; it < 2000; ++it) {
    const Real step = eval_cubic(m, x) / eval_cubic_derivative(m, x);
    x -= step;
    if (abs(step) <= eps * (1 + abs(x))) {
      x -= eval_cubic(m, x) / eval_cubic_derivative(m, x);
      return x;
    }
  }
  throw Error("root iteration for the 2-division polynomial did not converge");
}

// Laurent data for zeta, p, p' around 0.
struct LaurentContext {
  std::vector<Complex> g;  // G_{2k}, element i has weight 4 + 2i
  Real radius;             // length of the shortest lattice vector
  Complex g2, g3;
};

LaurentContext laurent_context(const Lattice& lat, int weight_max) {
  LaurentContext ctx;
  ctx.g = eisenstein_numbers(lat, weight_max);
  ctx.radius = abs_c(reduce_basis(lat.omega1, lat.omega2).w1);
  ctx.g2 = Real(60) * ctx.g[0];
  ctx.g3 = Real(140) * ctx.g[1];
  return ctx;
}

int auto_weight(int digits) {
  // Terms decay like 16^(-2k) at |z| = radius / 16.
  const int two_k = static_cast<int>(std::ceil((digits + 5) * std::log(10.0) / std::log(16.0))) + 4;
  return two_k + (two_k % 2);
}

WeierstrassValues laurent_eval(const LaurentContext& ctx, const Complex& z) {
  const Complex z2 = z * z;
  const Complex inv = Real(1) / z;
  Complex zeta = inv, wp = inv * inv, wpp = Real(-2) * inv * inv * inv;
  Complex pw = z;  // z^(2k-3)
  for (std::size_t i = 0; i < ctx.g.size(); ++i) {
    const int k = static_cast<int>(i) + 2;
    const Complex& g = ctx.g[i];
    const Complex z_2k_3 = pw;
    const Complex z_2k_2 = pw * z;
    const Complex z_2k_1 = z_2k_2 * z;
    zeta -= g * z_2k_1;
    wp += Real(2 * k - 1) * g * z_2k_2;
    wpp += Real((2 * k - 1) * (2 * k - 2)) * g * z_2k_3;
    pw *= z2;
  }
  return {zeta, wp, wpp};
}

WeierstrassValues eval_by_doubling(const LaurentContext& ctx, const Complex& z, int& doublings) {
  Complex w = z;
  doublings = 0;
  const Real limit = ctx.radius / 16;
  while (abs_c(w) > limit) {
    w /= 2;
    ++doublings;
  }
  WeierstrassValues v = laurent_eval(ctx, w);
  for (int j = 0; j < doublings; ++j) {
    const Complex p2 = Real(6) * v.wp * v.wp - ctx.g2 / Real(2);
    const Complex p3 = Real(12) * v.wp * v.wp_prime;
    const Complex ratio = p2 / (Real(2) * v.wp_prime);
    const Complex zeta2 = Real(2) * v.zeta + ratio;
    const Complex wp2 = Real(-2) * v.wp + ratio * ratio;
    const Complex wpp2 =
        -v.wp_prime + (p2 / v.wp_prime) * (p3 * v.wp_prime - p2 * p2) / (Real(4) * v.wp_prime * v.wp_prime);
    v = {zeta2, wp2, wpp2};
  }
  return v;
}

Real tail_bound(const LaurentContext& ctx, const Complex& z, int doublings) {
  Complex w = z;
  for (int j = 0; j < doublings; ++j) w /= 2;
  const int next = 2 * static_cast<int>(ctx.g.size()) + 4;
  const Real ratio = abs_c(w) / ctx.radius;
  return Real(6) * pow(ratio, next) / abs_c(w) * pow(Real(2), doublings);
}

}  // namespace

Real agm(Real a, Real b) {
  const Real eps = ten_to_minus(working_digits());
  for (int it = 0; it < 1000; ++it) {
    if (abs(a - b) <= eps * abs(a)) return (a + b) / 2;
    const Real next_a = (a + b) / 2;
    b = sqrt(a * b);
    a = next_a;
  }
  throw Error("AGM iteration did not converge");
}

ReducedBasis reduce_basis(const Complex& omega1, const Complex& omega2) {
  ReducedBasis r;
  r.w1 = omega1;
  r.w2 = omega2;
  r.m = {1, 0, 0, 1};
  if ((r.w2 / r.w1).imag() <= 0) throw Error("reduce_basis: Im(omega2/omega1) must be positive");
  for (int it = 0; it < 10000; ++it) {
    Complex tau = r.w2 / r.w1;
    const Real shift = round(tau.real());
    if (shift != 0) {
      const auto n = static_cast<std::int64_t>(shift);
      r.w2 -= shift * r.w1;
      r.m[2] -= n * r.m[0];
      r.m[3] -= n * r.m[1];
      tau = r.w2 / r.w1;
    }
    if (norm2(tau) < 1 - ten_to_minus(working_digits() / 2)) {
      const Complex w1 = r.w1;
      r.w1 = r.w2;
      r.w2 = -w1;
      r.m = {r.m[2], r.m[3], -r.m[0], -r.m[1]};
      continue;
    }
    r.tau = tau;
    return r;
  }
  throw Error("lattice basis reduction did not terminate");
}

Lattice lattice_from_periods(const Complex& omega1, const Complex& omega2, int digits) {
  if (digits < kMinimumDigits)
    throw Error("precision must be at least " + std::to_string(kMinimumDigits) + " digits");
  Lattice lat;
  lat.precision_digits = digits;
  lat.omega1 = omega1;
  lat.omega2 = omega2;
  if ((omega2 / omega1).imag() < 0) lat.omega2 = -omega2;
  lat.tau = lat.omega2 / lat.omega1;
  if (lat.tau.imag() == 0) throw Error("periods are linearly dependent over R");
  lat.volume = abs((std::conj(lat.omega1) * lat.omega2).imag());
  return lat;
}

std::vector<Real> two_division_roots(const EllipticCurveModel& model) {
  const Real bound = 1 + std::max({std::abs(model.b2()) / 4.0, std::abs(model.b4()) / 2.0,
                                   std::abs(model.b6()) / 4.0});
  const Real e1 = newton_root(model, bound);
  if (model.discriminant() < 0) return {e1};
  // Deflate: p(x) = (x - e1)(4x^2 + B x + C).
  const Real B = model.b2() + 4 * e1;
  const Real C = 2 * model.b4() + B * e1;
  Real disc = B * B - 16 * C;
  if (disc < 0) disc = 0;
  const Real s = sqrt(disc);
  const Real e2 = newton_root(model, (-B + s) / 8);
  const Real e3 = newton_root(model, (-B - s) / 8);
  return {e1, e2, e3};
}

Lattice compute_periods(const EllipticCurveModel& model, int digits) {
  if (digits < kMinimumDigits)
    throw Error("precision must be at least " + std::to_string(kMinimumDigits) + " digits");
  PrecisionScope scope(digits + kGuardDigits);
  const auto roots = two_division_roots(model);
  Complex w1, w2;
  if (roots.size() == 3) {
    const Real &e1 = roots[0], &e2 = roots[1], &e3 = roots[2];
    w1 = Complex(pi() / agm(sqrt(e1 - e3), sqrt(e1 - e2)), Real(0));
    w2 = Complex(Real(0), pi() / agm(sqrt(e1 - e3), sqrt(e2 - e3)));
  } else {
    const Real& e1 = roots[0];
    const Real a = 3 * e1 + Real(model.b2()) / 4;
    const Real b = sqrt(3 * e1 * e1 + Real(model.b2()) / 2 * e1 + Real(model.b4()) / 2);
    const Real real_period = 2 * pi() / agm(2 * sqrt(b), sqrt(2 * b + a));
    w1 = Complex(real_period, Real(0));
    w2 = Complex(-real_period / 2, pi() / agm(2 * sqrt(b), sqrt(2 * b - a)));
  }
  return lattice_from_periods(w1, w2, digits);
}

std::vector<Complex> eisenstein_numbers(const Lattice& lat, int k_max) {
  if (k_max < 4) return {};
  PrecisionScope scope(lat.precision_digits + kGuardDigits);
  const ReducedBasis rb = reduce_basis(lat.omega1, lat.omega2);
  if (rb.tau.imag() <= 0) throw Error("eisenstein_numbers: Im(tau) must be positive");
  const Complex q = expi2pi(rb.tau.real()) * exp(-2 * pi() * rb.tau.imag());
  const Real abs_q = abs_c(q);
  const Real eps = ten_to_minus(working_digits() + 5);
  const Complex two_pi_i = Real(2) * pi() * i_unit();

  // q^m / (1 - q^m), extended on demand.
  std::vector<Complex> lambert{Complex(0)};
  Complex qm(Real(1), Real(0));
  auto lambert_term = [&](std::size_t m) -> const Complex& {
    while (lambert.size() <= m) {
      qm *= q;
      lambert.push_back(qm / (Real(1) - qm));
    }
    return lambert[m];
  };

  std::vector<Complex> out;
  for (int w = 4; w <= k_max; w += 2) {
    const int k = w / 2;
    const Real coef_abs = pow(2 * pi(), w) / factorial(w - 1);
    Complex sum(Real(0), Real(0));
    const double peak = (w - 1) / std::max(1e-30, -std::log(static_cast<double>(abs_q)));
    for (std::size_t m = 1;; ++m) {
      const Complex term = pow(Real(m), w - 1) * lambert_term(m);
      sum += term;
      if (static_cast<double>(m) > peak && coef_abs * abs_c(term) < eps) break;
      if (m > 1000000) throw Error("Lambert series for G_2k did not converge");
    }
    const Complex value = two_zeta_even(k) + Real(2) * pow(two_pi_i, w) / factorial(w - 1) * sum;
    out.push_back(value / pow(rb.w1, w));
  }
  return out;
}

WeierstrassValues weierstrass_at(const Lattice& lat, const Complex& z) {
  PrecisionScope scope(lat.precision_digits + kGuardDigits);
  const LaurentContext ctx = laurent_context(lat, auto_weight(working_digits()));
  int doublings = 0;
  return eval_by_doubling(ctx, z, doublings);
}

QuasiPeriods quasi_periods(const Lattice& lat, int k_max) {
  PrecisionScope scope(lat.precision_digits + kGuardDigits);
  const bool automatic = k_max == 0;
  if (automatic) k_max = auto_weight(working_digits());
  if (k_max < 6) throw Error("quasi_periods: k_max must be at least 6");
  const LaurentContext ctx = laurent_context(lat, k_max);
  const ReducedBasis rb = reduce_basis(lat.omega1, lat.omega2);

  int d1 = 0, d2 = 0;
  const Complex h1 = rb.w1 / Real(2), h2 = rb.w2 / Real(2);
  const Complex e1 = Real(2) * eval_by_doubling(ctx, h1, d1).zeta;
  const Complex e2 = Real(2) * eval_by_doubling(ctx, h2, d2).zeta;

  QuasiPeriods out;
  out.weight_max = 2 * static_cast<int>(ctx.g.size()) + 2;
  out.tail_estimate = std::max(tail_bound(ctx, h1, d1), tail_bound(ctx, h2, d2));
  if (out.tail_estimate > ten_to_minus(lat.precision_digits))
    throw Error("quasi_periods: Laurent truncation at weight " + std::to_string(out.weight_max) +
                " leaves an error estimate of " + to_decimal(out.tail_estimate, 6));
  // (w1, w2) = M (omega1, omega2) and the quasi-periods transform the same way.
  const auto& m = rb.m;
  out.eta1 = Real(m[3]) * e1 - Real(m[1]) * e2;
  out.eta2 = Real(-m[2]) * e1 + Real(m[0]) * e2;
  return out;
}

Complex s_lambda(const Lattice& lat) {
  if (!lat.has_quasi_periods) throw Error("s_lambda: quasi-periods have not been computed");
  PrecisionScope scope(lat.precision_digits + kGuardDigits);
  const Real c = pi() / lat.volume;
  const Complex s = (lat.eta1 - c * std::conj(lat.omega1)) / lat.omega1;
  const Complex second = lat.eta2 - s * lat.omega2 - c * std::conj(lat.omega2);
  const Real tol = ten_to_minus(lat.precision_digits - 10) * (1 + abs_c(lat.eta2));
  if (abs_c(second) > tol)
    throw Error("s_lambda: relation for omega2 fails with residual " + to_decimal(abs_c(second), 6));
  return s;
}

Real legendre_residual(const Lattice& lat) {
  PrecisionScope scope(lat.precision_digits + kGuardDigits);
  const Complex two_pi_i = Real(2) * pi() * i_unit();
  return abs_c(lat.omega1 * lat.eta2 - lat.omega2 * lat.eta1 + two_pi_i);
}

Lattice complete_lattice(Lattice lat) {
  const QuasiPeriods qp = quasi_periods(lat);
  lat.eta1 = qp.eta1;
  lat.eta2 = qp.eta2;
  lat.has_quasi_periods = true;
  lat.s_lambda = s_lambda(lat);
  return lat;
}

Lattice complete_lattice(const EllipticCurveModel& model, int digits) {
  return complete_lattice(compute_periods(model, digits));
}

}  // namespace shiftconv
