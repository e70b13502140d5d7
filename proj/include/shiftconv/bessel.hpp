#pragma once

#include "shiftconv/numeric.hpp"

namespace shiftconv {

/// Argument above which the Hankel asymptotic expansions are used at the
/// current working precision.
Real bessel_crossover();

/// J_nu(x) and I_nu(x) for integer order nu >= 0 and x >= 0.
Real bessel_j(int nu, const Real& x);
Real bessel_i(int nu, const Real& x);

Real bessel_j_series(int nu, const Real& x);
Real bessel_i_series(int nu, const Real& x);
Real bessel_j_asymptotic(int nu, const Real& x);
Real bessel_i_asymptotic(int nu, const Real& x);

}  // namespace shiftconv
