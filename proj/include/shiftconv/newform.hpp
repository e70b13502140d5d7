#pragma once

#include "shiftconv/curve_registry.hpp"
#include "shiftconv/qseries.hpp"

#include <cstdint>
#include <vector>

namespace shiftconv {

/// Trace of Frobenius a_p = p + 1 - #E~(F_p), counting every point of the
/// reduced curve (for bad p this equals p - #E^ns(F_p)).
std::int64_t ap_point_count(const EllipticCurveModel& model, std::int64_t p);

/// a(0..n_max) with a(0) = 0, built multiplicatively from point counts.
/// Tables are cached per model, so repeated calls are cheap.
std::vector<std::int64_t> an_table(const EllipticCurveModel& model, std::int64_t n_max);

/// f_E = sum a(n) q^n, exact coefficients known for n <= n_max.
QSeries<Rational> an_coefficients(const EllipticCurveModel& model, long n_max);

/// sum a(n)/n q^n.
QSeries<Rational> eichler_integral(const QSeries<Rational>& f);

}  // namespace shiftconv
