#pragma once

#include "shiftconv/numeric.hpp"

#include <boost/rational.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace shiftconv {

using Fraction = boost::rational<long>;

inline std::string to_string(const Fraction& f) {
  return f.denominator() == 1 ? std::to_string(f.numerator())
                              : std::to_string(f.numerator()) + "/" + std::to_string(f.denominator());
}

namespace detail {

inline bool is_zero(const Rational& c) { return c == 0; }
inline bool is_zero(const Real& c) { return c == 0; }
inline bool is_zero(const Complex& c) { return c.real() == 0 && c.imag() == 0; }

template <class C>
C from_fraction(const Fraction& f);
template <>
inline Rational from_fraction<Rational>(const Fraction& f) {
  return Rational(f.numerator(), f.denominator());
}
template <>
inline Real from_fraction<Real>(const Fraction& f) {
  return Real(f.numerator()) / f.denominator();
}
template <>
inline Complex from_fraction<Complex>(const Fraction& f) {
  return Complex(from_fraction<Real>(f), Real(0));
}

inline std::string render(const Rational& c, int) { return c.str(); }
inline std::string render(const Real& c, int digits) { return to_decimal(c, digits); }
inline std::string render(const Complex& c, int digits) {
  if (c.imag() == 0) return to_decimal(c.real(), digits);
  return "(" + to_decimal(c, digits) + ")";
}

}  // namespace detail

/// Truncated q-expansion  q^shift * sum_{first <= k < order} c_k q^k.
///
/// Coefficients below `first` are zero; coefficients at or beyond `order`
/// are unknown and never reported. Arithmetic propagates the truncation
/// order so that every reported coefficient is exact for the inputs.
template <class C>
class QSeries {
 public:
  using Coefficient = C;

  QSeries() = default;

  QSeries(long first, std::vector<C> coeffs, long order, Fraction shift = 0)
      : first_(first), order_(order), shift_(shift), coeffs_(std::move(coeffs)) {
    if (order_ < first_) order_ = first_;
    coeffs_.resize(static_cast<std::size_t>(order_ - first_), C{});
  }

  static QSeries zero(long order, Fraction shift = 0) { return QSeries(order, {}, order, shift); }

  static QSeries monomial(long exponent, C c, long order) {
    return QSeries(exponent, std::vector<C>{std::move(c)}, order);
  }

  long first() const { return first_; }
  long order() const { return order_; }
  const Fraction& shift() const { return shift_; }
  const std::vector<C>& coefficients() const { return coeffs_; }

  /// Index of the first nonzero coefficient, or order() when all known ones vanish.
  long valuation() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (!detail::is_zero(coeffs_[i])) return first_ + static_cast<long>(i);
    return order_;
  }

  /// Coefficient of q^(shift + k).
  C operator[](long k) const {
    if (k >= order_)
      throw std::out_of_range("coefficient index " + std::to_string(k) +
                              " is beyond the truncation order " + std::to_string(order_));
    if (k < first_) return C{};
    return coeffs_[static_cast<std::size_t>(k - first_)];
  }

  QSeries truncated(long new_order) const {
    if (new_order >= order_) return *this;
    std::vector<C> c;
    for (long k = first_; k < new_order; ++k) c.push_back((*this)[k]);
    return QSeries(std::min(first_, new_order), std::move(c), new_order, shift_);
  }

  template <class F>
  auto map(F f) const -> QSeries<decltype(f(std::declval<const C&>()))> {
    using D = decltype(f(std::declval<const C&>()));
    std::vector<D> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(f(c));
    return QSeries<D>(first_, std::move(out), order_, shift_);
  }

  QSeries operator-() const {
    return map([](const C& c) { return C(-c); });
  }

  QSeries scaled(const C& s) const {
    return map([&s](const C& c) { return C(c * s); });
  }

  friend QSeries operator+(const QSeries& a, const QSeries& b) { return combine(a, b, 1); }
  friend QSeries operator-(const QSeries& a, const QSeries& b) { return combine(a, b, -1); }

  friend QSeries operator*(const QSeries& a, const QSeries& b) {
    const long va = a.valuation();
    const long vb = b.valuation();
    const long order = std::min(va + b.order_, vb + a.order_);
    const long first = std::min(va + vb, order);
    std::vector<C> out(static_cast<std::size_t>(order - first), C{});
    for (long i = va; i < a.order_; ++i) {
      const C& ai = a.coeffs_[static_cast<std::size_t>(i - a.first_)];
      if (detail::is_zero(ai)) continue;
      for (long j = vb; j < b.order_ && i + j < order; ++j) {
        const C& bj = b.coeffs_[static_cast<std::size_t>(j - b.first_)];
        if (detail::is_zero(bj)) continue;
        out[static_cast<std::size_t>(i + j - first)] += ai * bj;
      }
    }
    return QSeries(first, std::move(out), order, a.shift_ + b.shift_);
  }

  friend QSeries operator*(const QSeries& a, const C& s) { return a.scaled(s); }
  friend QSeries operator*(const C& s, const QSeries& a) { return a.scaled(s); }

  /// Multiplicative inverse; the leading known coefficient must be invertible.
  QSeries inverse() const {
    const long v = valuation();
    if (v >= order_) throw Error("cannot invert a series with no known nonzero coefficient");
    const long n = order_ - v;
    const C lead = (*this)[v];
    std::vector<C> b(static_cast<std::size_t>(n), C{});
    b[0] = C(1) / lead;
    for (long k = 1; k < n; ++k) {
      C acc{};
      for (long j = 1; j <= k; ++j) {
        const C& uj = coeffs_[static_cast<std::size_t>(v + j - first_)];
        if (!detail::is_zero(uj)) acc += uj * b[static_cast<std::size_t>(k - j)];
      }
      b[static_cast<std::size_t>(k)] = -acc / lead;
    }
    return QSeries(-v, std::move(b), order_ - 2 * v, -shift_);
  }

  /// Integer power; negative exponents go through inverse().
  QSeries pow(long e) const {
    if (e == 0) throw Error("QSeries::pow requires a nonzero exponent");
    if (e < 0) return inverse().pow(-e);
    QSeries base = *this;
    QSeries result;
    bool have = false;
    while (e > 0) {
      if (e & 1) {
        result = have ? result * base : base;
        have = true;
      }
      e >>= 1;
      if (e > 0) base = base * base;
    }
    return result;
  }

  /// Substitutes q -> q^m.
  QSeries dilated(long m) const {
    if (m <= 0) throw Error("dilation factor must be positive");
    const long first = first_ * m;
    const long order = (order_ - 1) * m + 1;
    std::vector<C> out(static_cast<std::size_t>(order - first), C{});
    for (long k = first_; k < order_; ++k)
      out[static_cast<std::size_t>(k * m - first)] = coeffs_[static_cast<std::size_t>(k - first_)];
    return QSeries(first, std::move(out), order, shift_ * m);
  }

 private:
  static QSeries combine(const QSeries& a, const QSeries& b, int sign) {
    if (a.shift_ != b.shift_) throw Error("cannot add series with different exponent shifts");
    const long order = std::min(a.order_, b.order_);
    const long first = std::min({a.first_, b.first_, order});
    std::vector<C> out;
    out.reserve(static_cast<std::size_t>(order - first));
    for (long k = first; k < order; ++k) {
      if (sign > 0)
        out.push_back(a[k] + b[k]);
      else
        out.push_back(a[k] - b[k]);
    }
    return QSeries(first, std::move(out), order, a.shift_);
  }

  long first_ = 0;
  long order_ = 0;
  Fraction shift_ = 0;
  std::vector<C> coeffs_;
};

/// q d/dq: multiplies the coefficient of q^e by e.
template <class C>
QSeries<C> q_derivative(const QSeries<C>& f) {
  std::vector<C> out;
  out.reserve(f.coefficients().size());
  for (long k = f.first(); k < f.order(); ++k)
    out.push_back(f[k] * detail::from_fraction<C>(f.shift() + Fraction(k)));
  return QSeries<C>(f.first(), std::move(out), f.order(), f.shift());
}

inline QSeries<Complex> to_complex(const QSeries<Rational>& f) {
  return f.map([](const Rational& c) { return to_complex(c); });
}

/// Human-readable rendering, e.g. "q^-1 + 1/2*q^2 + O(q^17)".
template <class C>
std::string to_string(const QSeries<C>& f, int digits = 12, long max_terms = 40) {
  std::ostringstream os;
  long shown = 0;
  auto exponent = [&f](long k) {
    Fraction e = f.shift() + Fraction(k);
    if (e.denominator() == 1) return std::to_string(e.numerator());
    return std::to_string(e.numerator()) + "/" + std::to_string(e.denominator());
  };
  for (long k = f.first(); k < f.order() && shown < max_terms; ++k) {
    const C c = f[k];
    if (detail::is_zero(c)) continue;
    if (shown > 0) os << " + ";
    const std::string e = exponent(k);
    os << detail::render(c, digits);
    if (e != "0") os << "*q^" << e;
    ++shown;
  }
  if (shown > 0) os << " + ";
  os << "O(q^" << exponent(f.order()) << ")";
  return os.str();
}

}  // namespace shiftconv
