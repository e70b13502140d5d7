#pragma once

#include "shiftconv/curve_registry.hpp"
#include "shiftconv/lattice.hpp"
#include "shiftconv/qseries.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace shiftconv {

/// Holomorphic part of the Weierstrass mock modular form,
/// 1/E - sum_{k>=1} G_{2k+2} E^{2k+1} - S E with E the Eichler integral,
/// with coefficients of q^-1 .. q^n_max.
QSeries<Complex> zhat_plus(const EllipticCurveModel& model, long n_max, int digits);
QSeries<Complex> zhat_plus(const QSeries<Rational>& eichler, const Lattice& lattice, long n_max);

struct EtaFactor {
  long multiplier;
  long exponent;
};

/// sign * prod eta(m tau)^r with leading exponent sum m r / 24.
struct EtaQuotient {
  int sign = 1;
  std::vector<EtaFactor> factors;

  Fraction leading_exponent() const;
  /// Weight sum r / 2.
  Fraction weight() const;
};

/// Expansion with integer-spaced coefficients for exponents shift + k, k <= n_max.
QSeries<Rational> eta_quotient(const EtaQuotient& quotient, long n_max);

/// The q d/dq Z^+ eta quotients listed for the CM levels 27, 32 and 36.
std::optional<EtaQuotient> tabulated_eta_quotient(int level);

/// Eta quotients over the given multipliers (exponents in [-bound, bound], weight 2)
/// whose expansion matches target (an integer-exponent series) within tol.
std::vector<EtaQuotient> match_eta_quotients(const QSeries<Complex>& target, const std::vector<long>& multipliers,
                                             long bound, const Real& tol);

std::string to_string(const EtaQuotient& quotient);

/// Best rational approximation with denominator <= max_denominator, returned
/// only when it lies within tol of x.
std::optional<Rational> recognize_rational(const Real& x, long max_denominator, const Real& tol);

}  // namespace shiftconv
