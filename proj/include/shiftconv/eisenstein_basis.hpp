#pragma once

#include "shiftconv/numeric.hpp"
#include "shiftconv/qseries.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace shiftconv {

/// Cusp a/c of Gamma_0(N) in lowest terms; infinity is 1/0.
struct Cusp {
  std::int64_t a = 1;
  std::int64_t c = 0;
  std::int64_t width = 1;

  bool is_infinity() const { return c == 0; }
  std::string label() const;
};

struct CuspSet {
  std::int64_t level = 0;
  std::vector<Cusp> cusps;  // infinity first
};

/// sum_{d | N} phi(gcd(d, N/d))
std::int64_t cusp_count(std::int64_t level);

CuspSet enumerate_cusps(std::int64_t level);

/// True when a1/c1 and a2/c2 are Gamma_0(N)-equivalent.
bool cusps_equivalent(const Cusp& x, const Cusp& y, std::int64_t level);

/// Primitive Dirichlet character mod f, chi(g^j) = zeta_order^(j * step) for a generator g.
struct DirichletCharacter {
  int modulus = 1;
  int order = 1;
  std::vector<int> exponent;  // exponent[n mod f] of zeta_order, -1 where gcd(n, f) > 1

  int value_exponent(std::int64_t n) const { return exponent[static_cast<std::size_t>(mod_positive(n))]; }
  std::string label() const;

 private:
  std::int64_t mod_positive(std::int64_t n) const {
    const std::int64_t r = n % modulus;
    return r < 0 ? r + modulus : r;
  }
};

/// Nontrivial primitive characters modulo f.
std::vector<DirichletCharacter> primitive_characters(int f);

/// Building block of the spanning set: E2(t z), or the twisted series
/// sum_n (sum_{d|n} chi(n/d) conj(chi)(d) d) q^{t n}.
struct EisensteinAtom {
  enum class Kind { e2, twisted };
  Kind kind = Kind::e2;
  std::int64_t t = 1;
  DirichletCharacter chi;  // twisted only

  std::string label() const;
};

/// Linear combination of atoms. Evaluation uses the completion
/// E2*(z) = E2(z) - 3/(pi Im z) of every E2 atom.
struct EisensteinDescriptor {
  std::string label;
  std::vector<std::pair<Complex, EisensteinAtom>> terms;
};

struct BasisElement {
  EisensteinDescriptor descriptor;
  QSeries<Complex> series;  // holomorphic q-expansion, coefficients known below order
};

/// {E2} and {E2(z) - d E2(dz) : d | N, d > 1}.
std::vector<BasisElement> raw_basis(std::int64_t level, long n_max);

/// Twisted series E^{chi,conj chi}(t z) for chi primitive mod f > 1 and t f^2 | N;
/// together with raw_basis these span the Eisenstein space at every supported level.
std::vector<BasisElement> twisted_basis(std::int64_t level, long n_max);

QSeries<Complex> atom_series(const EisensteinAtom& atom, long n_max);
QSeries<Complex> descriptor_series(const EisensteinDescriptor& d, long n_max);

/// Completed values of the descriptors at a point of the upper half-plane.
std::vector<Complex> evaluate_completed(const std::vector<EisensteinDescriptor>& forms, const Complex& z);

struct CuspConstant {
  Complex value;
  Complex coarse;     // estimate from the lower two ladder points
  Real disagreement;  // |value - coarse|
};

/// Constant term of the completed form slashed to the cusp, from a ladder of
/// large heights with the 1/Y term of the E2 completion extrapolated away.
/// ladder_scale stretches the default heights.
std::vector<CuspConstant> cusp_constants(const std::vector<EisensteinDescriptor>& forms, const Cusp& cusp,
                                         std::int64_t level, double ladder_scale = 1.0);
CuspConstant cusp_constant(const EisensteinDescriptor& form, const Cusp& cusp, std::int64_t level,
                           double ladder_scale = 1.0);

struct Indicator {
  Cusp cusp;
  EisensteinDescriptor descriptor;
  QSeries<Complex> series;
};

struct IndicatorBasis {
  std::int64_t level = 0;
  CuspSet cusps;
  std::vector<Indicator> indicators;  // same order as cusps
  Real condition_number;
  Real delta_residual;  // max |cusp_constant(F_i, rho_j) - delta_ij| on a fresh ladder
};

/// Indicators F^rho: 1 at rho and 0 at every other cusp.
IndicatorBasis indicator_basis(std::int64_t level, long n_max);

/// The indicator of the cusp at infinity.
QSeries<Complex> infinity_indicator(std::int64_t level, long n_max);

}  // namespace shiftconv
