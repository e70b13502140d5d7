#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <complex>
#include <stdexcept>
#include <string>

namespace shiftconv {

/// Working-precision real. The precision is runtime-configurable through
/// PrecisionScope; every value created inside a scope carries that precision.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;
using Complex = std::complex<Real>;
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

inline constexpr int kDefaultDigits = 64;
inline constexpr int kMinimumDigits = 30;

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sets the default decimal precision of Real for the lifetime of the object.
class PrecisionScope {
 public:
  explicit PrecisionScope(int digits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

int working_digits();

Real pi();
/// 10^(-digits) at the current precision.
Real ten_to_minus(int digits);

Real to_real(const Rational& q);
Complex to_complex(const Rational& q);
inline Complex to_complex(const Complex& z) { return z; }

/// Decimal rendering with `digits` significant digits (0 = working precision).
std::string to_decimal(const Real& x, int digits = 0);
std::string to_decimal(const Complex& z, int digits = 0);
std::string to_decimal(const Rational& q);

/// e^{2 pi i x}
Complex expi2pi(const Real& x);

}  // namespace shiftconv
