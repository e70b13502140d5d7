#pragma once

#include "shiftconv/curve_registry.hpp"
#include "shiftconv/eisenstein_basis.hpp"
#include "shiftconv/lattice.hpp"
#include "shiftconv/qseries.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace shiftconv {

/// Everything the closed form needs for one curve, computed once.
struct CurveData {
  EllipticCurveModel model;
  Lattice lattice;
  QSeries<Rational> f;           // newform, coefficients through q^n_max+2
  QSeries<Complex> zhat;         // mock form, q^-1 .. q^n_max
  QSeries<Complex> f_infinity;   // Eisenstein indicator of infinity, q^0 .. q^n_max
  long n_max = 0;
};

CurveData prepare_curve(const EllipticCurveModel& model, long n_max, int digits);

struct DirectValue {
  std::int64_t h = 0;
  Real value;        // mean of the partial sums S_n, T/10 < n <= T
  Real raw;          // S_T
  Real error;        // half the spread of S_n over the same range
  std::int64_t n_terms = 0;
};

/// D(h; 1) = sum_{n<=T} a(n+h) a(n) (1/n - 1/(n+h)), the sign under which the
/// direct sums agree with the closed form.
DirectValue d_direct(const EllipticCurveModel& model, std::int64_t h, std::int64_t n_terms);
std::vector<DirectValue> d_direct_range(const EllipticCurveModel& model, std::int64_t h_max, std::int64_t n_terms);

/// 3, 4, 6 for the CM levels 27, 32, 36.
std::optional<int> support_modulus(int level);

/// (f Z^+)[1] - (pi/vol) D(1;1) - F^oo[1]; zero for the CM levels 27, 32, 36, 49.
Real alpha_constant(const CurveData& data, std::int64_t n_terms_for_d);
/// Same formula with a supplied D(1;1).
Real alpha_from_d1(const CurveData& data, const Real& d1);

/// alpha f + F^oo.
QSeries<Complex> hol_projection_hat(const CurveData& data, const Real& alpha);

enum class Method { direct, closed_form };

struct TableEntry {
  std::int64_t h = 0;
  Real value;
  Real error;
};

struct ShiftedConvolutionTable {
  std::string label;
  Method method = Method::direct;
  std::vector<TableEntry> entries;
  std::map<std::string, std::string> metadata;
};

/// (vol/pi)(f Z^+ - alpha f - F^oo) at q^1 .. q^h_max.
ShiftedConvolutionTable l_series_closed_form(const CurveData& data, const Real& alpha, std::int64_t h_max);
ShiftedConvolutionTable l_series_direct(const EllipticCurveModel& model, std::int64_t h_max, std::int64_t n_terms);

/// Largest |coefficient| of q^-1 and q^0 in f Z^+ - alpha f - F^oo.
Real assembly_residual(const CurveData& data, const Real& alpha);

struct BetaFit {
  Complex beta_f;                // coefficient of f
  std::vector<Complex> beta;     // one per indicator, in cusp order
  std::vector<std::string> cusp_labels;
  Real residual;                 // max row residual
  Real condition_number;
};

/// Least-squares fit target[h] ~ beta_f f[h] + sum_i beta_i F^{rho_i}[h] over the given rows.
BetaFit fit_indicator_coefficients(const QSeries<Complex>& target, const QSeries<Rational>& f,
                                   const IndicatorBasis& basis, const std::vector<long>& rows);

/// Least-squares alpha for the closed form against direct values (f Z^+ - F^oo - (pi/vol)D ~ alpha f).
Real fit_alpha(const CurveData& data, const std::vector<DirectValue>& direct);

}  // namespace shiftconv
