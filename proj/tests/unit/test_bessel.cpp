#include "shiftconv/bessel.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <doctest.h>

using namespace shiftconv;
using Oracle = boost::multiprecision::cpp_bin_float_50;

namespace {

Real from_oracle(const Oracle& x) { return Real(x.str(60)); }

Oracle to_oracle(const Real& x) { return Oracle(x.str(60)); }

}  // namespace

TEST_CASE("J and I agree with Boost.Math") {
  PrecisionScope ps(50);
  for (int nu : {0, 1, 2}) {
    for (const char* xs : {"0.001", "0.5", "3.7", "12.25", "41", "96.5", "180"}) {
      CAPTURE(nu);
      CAPTURE(xs);
      const Real x(xs);
      const Real j = bessel_j(nu, x);
      const Real j_ref = from_oracle(boost::math::cyl_bessel_j(nu, to_oracle(x)));
      CHECK(abs(j - j_ref) < ten_to_minus(40));
      const Real i = bessel_i(nu, x);
      const Real i_ref = from_oracle(boost::math::cyl_bessel_i(nu, to_oracle(x)));
      CHECK(abs(i - i_ref) <= ten_to_minus(40) * abs(i_ref));
    }
  }
}

TEST_CASE("series and asymptotic branches agree at the crossover") {
  for (int digits : {30, 50, 64}) {
    PrecisionScope ps(digits);
    const Real x = bessel_crossover();
    for (int nu : {0, 1}) {
      CAPTURE(digits);
      const Real js = bessel_j_series(nu, x), ja = bessel_j_asymptotic(nu, x);
      CHECK(abs(js - ja) < ten_to_minus(25));
      const Real is = bessel_i_series(nu, x), ia = bessel_i_asymptotic(nu, x);
      CHECK(abs(is - ia) < ten_to_minus(25) * abs(is));
    }
  }
}

TEST_CASE("small arguments") {
  PrecisionScope ps(40);
  CHECK(bessel_j(0, Real(0)) == 1);
  CHECK(bessel_j(1, Real(0)) == 0);
  CHECK(bessel_i(0, Real(0)) == 1);
}
