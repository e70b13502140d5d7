#include "shiftconv/weierstrass_mock.hpp"

#include "shiftconv/newform.hpp"

#include <functional>
#include <sstream>

namespace shiftconv {

namespace {

constexpr int kGuardDigits = 20;

QSeries<Complex> constant_series(const Complex& c, long order) { return QSeries<Complex>(0, {c}, order); }

// prod_{n>=1} (1 - q^n) = sum_j (-1)^j q^{j(3j-1)/2} over all integers j.
QSeries<Rational> euler_product(long n_max) {
  std::vector<Rational> c(static_cast<std::size_t>(n_max + 1), Rational(0));
  c[0] = 1;
  for (long j = 1; j * (3 * j - 1) / 2 <= n_max; ++j) {
    const int sign = (j % 2 == 0) ? 1 : -1;
    c[static_cast<std::size_t>(j * (3 * j - 1) / 2)] += sign;
    if (j * (3 * j + 1) / 2 <= n_max) c[static_cast<std::size_t>(j * (3 * j + 1) / 2)] += sign;
  }
  return QSeries<Rational>(0, std::move(c), n_max + 1);
}

}  // namespace

QSeries<Complex> zhat_plus(const QSeries<Rational>& eichler, const Lattice& lattice, long n_max) {
  if (n_max < 1) throw Error("zhat_plus: n_max must be positive");
  if (eichler.valuation() != 1 || eichler[1] != 1)
    throw Error("zhat_plus: the Eichler integral must start with q");
  if (eichler.order() < n_max + 3)
    throw Error("zhat_plus: Eichler integral is known only below q^" + std::to_string(eichler.order()));
  if (!lattice.has_quasi_periods) throw Error("zhat_plus: lattice quasi-periods are missing");
  PrecisionScope scope(lattice.precision_digits + kGuardDigits);
  const long order = n_max + 1;

  const QSeries<Rational> e_exact = eichler.truncated(n_max + 3);
  const QSeries<Complex> inv = to_complex(e_exact.inverse()).truncated(order);
  const QSeries<Complex> e = to_complex(e_exact.truncated(order));
  const QSeries<Complex> e2 = e * e;

  // Largest k with 2k + 1 <= n_max; E^{2k+1} starts at q^{2k+1}.
  const long k_top = (n_max - 1) / 2;
  QSeries<Complex> correction = QSeries<Complex>::zero(order);
  if (k_top >= 1) {
    const auto g = eisenstein_numbers(lattice, static_cast<int>(2 * k_top + 2));
    // g[i] has weight 4 + 2i, so G_{2k+2} = g[k-1].
    QSeries<Complex> acc = constant_series(g[static_cast<std::size_t>(k_top - 1)], order);
    for (long k = k_top - 1; k >= 1; --k)
      acc = constant_series(g[static_cast<std::size_t>(k - 1)], order) + (e2 * acc).truncated(order);
    correction = (e2 * e).truncated(order) * acc;
    correction = correction.truncated(order);
  }
  QSeries<Complex> out = inv - correction - e.scaled(lattice.s_lambda);
  return out.truncated(order);
}

QSeries<Complex> zhat_plus(const EllipticCurveModel& model, long n_max, int digits) {
  const Lattice lattice = complete_lattice(model, digits);
  return zhat_plus(eichler_integral(an_coefficients(model, n_max + 2)), lattice, n_max);
}

Fraction EtaQuotient::leading_exponent() const {
  Fraction e = 0;
  for (const auto& f : factors) e += Fraction(f.multiplier * f.exponent, 24);
  return e;
}

Fraction EtaQuotient::weight() const {
  Fraction w = 0;
  for (const auto& f : factors) w += Fraction(f.exponent, 2);
  return w;
}

QSeries<Rational> eta_quotient(const EtaQuotient& quotient, long n_max) {
  if (n_max < 0) throw Error("eta_quotient: n_max must be nonnegative");
  QSeries<Rational> product = QSeries<Rational>(0, {Rational(quotient.sign)}, n_max + 1);
  const QSeries<Rational> base = euler_product(n_max);
  for (const auto& f : quotient.factors) {
    if (f.multiplier <= 0) throw Error("eta multipliers must be positive");
    if (f.exponent == 0) continue;
    const QSeries<Rational> factor = base.dilated(f.multiplier).truncated(n_max + 1).pow(f.exponent);
    product = (product * factor).truncated(n_max + 1);
  }
  return QSeries<Rational>(product.first(), product.coefficients(), product.order(), quotient.leading_exponent());
}

std::optional<EtaQuotient> tabulated_eta_quotient(int level) {
  switch (level) {
    case 27:
      return EtaQuotient{-1, {{3, 1}, {9, 6}, {27, -3}}};
    case 32:
      return EtaQuotient{-1, {{4, 2}, {16, 6}, {32, -4}}};
    case 36:
      return EtaQuotient{-1, {{6, 3}, {12, 1}, {18, 1}, {36, -3}}};
    default:
      return std::nullopt;
  }
}

std::vector<EtaQuotient> match_eta_quotients(const QSeries<Complex>& target, const std::vector<long>& multipliers,
                                             long bound, const Real& tol) {
  if (target.shift().numerator() != 0) throw Error("match_eta_quotients: target must have integer exponents");
  const long lead = target.valuation();
  if (lead >= target.order()) return {};
  const long n_terms = target.order() - lead;
  std::vector<EtaQuotient> found;
  std::vector<long> r(multipliers.size(), -bound);
  std::function<void(std::size_t, long, long)> search = [&](std::size_t i, long weight2, long exponent24) {
    if (i == multipliers.size()) {
      if (weight2 != 4 || exponent24 != 24 * lead) return;
      EtaQuotient eq;
      for (std::size_t j = 0; j < multipliers.size(); ++j)
        if (r[j] != 0) eq.factors.push_back({multipliers[j], r[j]});
      const Real sign_real = target[lead].real() >= 0 ? 1 : -1;
      eq.sign = sign_real > 0 ? 1 : -1;
      auto agrees = [&](long terms) {
        const auto expansion = eta_quotient(eq, terms - 1);
        for (long k = 0; k < terms; ++k) {
          const Complex diff = target[lead + k] - Complex(to_real(expansion[k]), Real(0));
          if (abs(diff.real()) > tol || abs(diff.imag()) > tol) return false;
        }
        return true;
      };
      // A short prefix rejects almost every candidate cheaply.
      if (agrees(std::min<long>(n_terms, 8)) && agrees(n_terms)) found.push_back(eq);
      return;
    }
    for (long e = -bound; e <= bound; ++e) {
      r[i] = e;
      search(i + 1, weight2 + e, exponent24 + multipliers[i] * e);
    }
  };
  search(0, 0, 0);
  return found;
}

std::string to_string(const EtaQuotient& quotient) {
  std::ostringstream os;
  if (quotient.sign < 0) os << "-";
  bool first = true;
  for (const auto& f : quotient.factors) {
    if (!first) os << "*";
    first = false;
    os << "eta(" << (f.multiplier == 1 ? "" : std::to_string(f.multiplier)) << "t)";
    if (f.exponent != 1) os << "^" << f.exponent;
  }
  if (first) os << "1";
  return os.str();
}

std::optional<Rational> recognize_rational(const Real& x, long max_denominator, const Real& tol) {
  // Continued-fraction convergents h/k of x.
  Integer h_prev = 1, h = 0, k_prev = 0, k = 1;
  Real rest = x;
  std::optional<Rational> best;
  for (int it = 0; it < 200; ++it) {
    const Real fl = floor(rest);
    const Integer a = fl.convert_to<Integer>();
    Integer h_next = a * h_prev + h;
    Integer k_next = a * k_prev + k;
    h = h_prev;
    k = k_prev;
    h_prev = h_next;
    k_prev = k_next;
    if (k_prev > max_denominator) break;
    const Rational candidate(h_prev, k_prev);
    if (abs(to_real(candidate) - x) <= tol) return candidate;
    const Real frac = rest - fl;
    if (frac == 0) break;
    rest = 1 / frac;
  }
  return best;
}

}  // namespace shiftconv
