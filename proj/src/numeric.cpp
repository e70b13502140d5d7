#include "shiftconv/numeric.hpp"

#include <boost/math/constants/constants.hpp>

#include <sstream>

namespace shiftconv {

PrecisionScope::PrecisionScope(int digits) : saved_(Real::default_precision()) {
  if (digits < 10) throw Error("precision must be at least 10 digits");
  Real::default_precision(static_cast<unsigned>(digits));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

int working_digits() { return static_cast<int>(Real::default_precision()); }

Real pi() { return boost::math::constants::pi<Real>(); }

Real ten_to_minus(int digits) { return pow(Real(10), -digits); }

Real to_real(const Rational& q) {
  return Real(numerator(q)) / Real(denominator(q));
}

Complex to_complex(const Rational& q) { return Complex(to_real(q), Real(0)); }

std::string to_decimal(const Real& x, int digits) {
  if (digits <= 0) digits = working_digits();
  return x.str(digits);
}

std::string to_decimal(const Complex& z, int digits) {
  std::ostringstream os;
  os << to_decimal(z.real(), digits);
  if (z.imag() >= 0) os << '+';
  os << to_decimal(z.imag(), digits) << 'i';
  return os.str();
}

std::string to_decimal(const Rational& q) { return q.str(); }

Complex expi2pi(const Real& x) {
  Real angle = 2 * pi() * x;
  return Complex(cos(angle), sin(angle));
}

}  // namespace shiftconv
