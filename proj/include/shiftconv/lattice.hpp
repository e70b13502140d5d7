#pragma once

#include "shiftconv/curve_registry.hpp"
#include "shiftconv/numeric.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace shiftconv {

/// Period lattice Z*omega1 + Z*omega2 with Im(omega2/omega1) > 0.
struct Lattice {
  Complex omega1, omega2;
  Complex tau;
  Real volume;
  Complex eta1, eta2;
  Complex s_lambda;
  int precision_digits = kDefaultDigits;
  bool has_quasi_periods = false;
};

/// Basis (w1, w2) = M (omega1, omega2) with w2/w1 in the standard fundamental domain.
struct ReducedBasis {
  Complex w1, w2, tau;
  std::array<std::int64_t, 4> m{1, 0, 0, 1};
};

ReducedBasis reduce_basis(const Complex& omega1, const Complex& omega2);

/// Orders the generators so that Im(omega2/omega1) > 0 and fills tau and volume.
Lattice lattice_from_periods(const Complex& omega1, const Complex& omega2, int digits);

/// Periods of the invariant differential via the arithmetic-geometric mean.
Lattice compute_periods(const EllipticCurveModel& model, int digits);

/// Real roots of 4x^3 + b2 x^2 + 2 b4 x + b6, in decreasing order (one or three).
std::vector<Real> two_division_roots(const EllipticCurveModel& model);

Real agm(Real a, Real b);

/// G_{2k}(Lattice) for 2k = 4, 6, ..., k_max; element i has weight 4 + 2i.
std::vector<Complex> eisenstein_numbers(const Lattice& lat, int k_max);

struct QuasiPeriods {
  Complex eta1, eta2;
  Real tail_estimate;
  int weight_max = 0;
};

/// eta_i = 2 zeta(omega_i / 2) from the Laurent expansion of zeta.
/// k_max = 0 chooses the truncation weight automatically.
QuasiPeriods quasi_periods(const Lattice& lat, int k_max = 0);

struct WeierstrassValues {
  Complex zeta, wp, wp_prime;
};

/// zeta, p and p' at z (z must not be a lattice point or a 2-torsion point).
WeierstrassValues weierstrass_at(const Lattice& lat, const Complex& z);

/// S with eta1 = S omega1 + (pi/vol) conj(omega1); checks the same relation for omega2.
Complex s_lambda(const Lattice& lat);

/// omega1 eta2 - omega2 eta1 + 2 pi i.
Real legendre_residual(const Lattice& lat);

/// Periods, quasi-periods and S in one call.
Lattice complete_lattice(const EllipticCurveModel& model, int digits);
Lattice complete_lattice(Lattice lat);

}  // namespace shiftconv
