#pragma once

#include "shiftconv/numeric.hpp"

#include <cstdint>
#include <vector>

namespace shiftconv {

/// K(m, n; c) = sum over units d mod c of e^{2 pi i (m dbar + n d) / c}.
Complex kloosterman(std::int64_t m, std::int64_t n, std::int64_t c);

/// Real value of K(m, n; c) from a cosine table (K is always real).
Real kloosterman_real(std::int64_t m, std::int64_t n, std::int64_t c);

/// Scale A in the Bessel argument A sqrt(mn)/c of the Poincare coefficient.
enum class BesselArgument {
  printed,    // A = 2 pi
  classical,  // A = 4 pi
};

struct PoincareCoefficient {
  std::int64_t n = 0;
  Real value;
  Real half_value;     // same sum truncated at c_max / 2
  Real tail_estimate;  // |value - half_value|
  std::int64_t c_max = 0;
};

/// Fourier coefficient b_P(m, k, N; n) of the holomorphic Poincare series.
PoincareCoefficient bp_coefficient(std::int64_t m, int k, std::int64_t level, std::int64_t n,
                                   std::int64_t c_max,
                                   BesselArgument convention = BesselArgument::printed);

/// b_P(m, k, N; n) for n = 1..n_max, sharing the Kloosterman tables.
std::vector<PoincareCoefficient> bp_coefficients(std::int64_t m, int k, std::int64_t level,
                                                 std::int64_t n_max, std::int64_t c_max,
                                                 BesselArgument convention = BesselArgument::printed);

/// Coefficient b_Q(-m, k, N; n) of the holomorphic part of the Maass-Poincare
/// series with principal part q^{-m}; m >= 1 names the index -m.
PoincareCoefficient bq_coefficient(std::int64_t m, int k, std::int64_t level, std::int64_t n,
                                   std::int64_t c_max);

/// b_Q(-m, k, N; n) for n = 0..n_max.
std::vector<PoincareCoefficient> bq_coefficients(std::int64_t m, int k, std::int64_t level,
                                                 std::int64_t n_max, std::int64_t c_max);

}  // namespace shiftconv
