#include "shiftconv/shifted_conv.hpp"

#include "shiftconv/newform.hpp"
#include "shiftconv/weierstrass_mock.hpp"

#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

namespace shiftconv {

namespace {

using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

Real abs_c(const Complex& z) { return sqrt(z.real() * z.real() + z.imag() * z.imag()); }

Complex product_coefficient(const CurveData& data, std::int64_t h) {
  // (f Z^+)[h] = sum_{n>=1} a(n) Z^+[h - n]
  Complex sum(Real(0), Real(0));
  for (std::int64_t n = 1; n <= h + 1; ++n) {
    const Rational& a = data.f[n];
    if (a == 0) continue;
    sum += to_real(a) * data.zhat[h - n];
  }
  return sum;
}

void require_range(const CurveData& data, std::int64_t h) {
  if (h > data.n_max) throw Error("coefficient q^" + std::to_string(h) + " exceeds the prepared range q^" +
                                  std::to_string(data.n_max));
}

}  // namespace

CurveData prepare_curve(const EllipticCurveModel& model, long n_max, int digits) {
  if (n_max < 2) throw Error("prepare_curve: n_max must be at least 2");
  CurveData d;
  d.model = model;
  d.n_max = n_max;
  d.lattice = complete_lattice(model, digits);
  d.f = an_coefficients(model, n_max + 2);
  d.zhat = zhat_plus(eichler_integral(d.f), d.lattice, n_max);
  d.f_infinity = infinity_indicator(model.conductor, n_max);
  return d;
}

DirectValue d_direct(const EllipticCurveModel& model, std::int64_t h, std::int64_t n_terms) {
  return d_direct_range(model, h, n_terms).back();
}

std::vector<DirectValue> d_direct_range(const EllipticCurveModel& model, std::int64_t h_max, std::int64_t n_terms) {
  if (h_max < 1) throw Error("shift h must be positive");
  if (n_terms < 10) throw Error("direct summation needs at least 10 terms");
  const auto a = an_table(model, n_terms + h_max);
  const std::int64_t window_start = n_terms / 10;
  std::vector<DirectValue> out;
  for (std::int64_t h = 1; h <= h_max; ++h) {
    Real partial = 0, window_sum = 0, lo = 0, hi = 0;
    bool first = true;
    for (std::int64_t n = 1; n <= n_terms; ++n) {
      const std::int64_t prod = a[static_cast<std::size_t>(n + h)] * a[static_cast<std::size_t>(n)];
      if (prod != 0) partial += Real(prod * h) / (Real(n) * (n + h));
      if (n > window_start) {
        window_sum += partial;
        if (first || partial < lo) lo = partial;
        if (first || partial > hi) hi = partial;
        first = false;
      }
    }
    DirectValue v;
    v.h = h;
    v.n_terms = n_terms;
    v.raw = partial;
    v.value = window_sum / (n_terms - window_start);
    v.error = (hi - lo) / 2;
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<int> support_modulus(int level) {
  switch (level) {
    case 27:
      return 3;
    case 32:
      return 4;
    case 36:
      return 6;
    default:
      return std::nullopt;
  }
}

Real alpha_from_d1(const CurveData& data, const Real& d1) {
  require_range(data, 1);
  const Complex v = product_coefficient(data, 1) - (pi() / data.lattice.volume) * d1 - data.f_infinity[1];
  return v.real();
}

Real alpha_constant(const CurveData& data, std::int64_t n_terms_for_d) {
  if (data.model.has_cm) return 0;
  return alpha_from_d1(data, d_direct(data.model, 1, n_terms_for_d).value);
}

QSeries<Complex> hol_projection_hat(const CurveData& data, const Real& alpha) {
  const QSeries<Complex> f = to_complex(data.f).truncated(data.n_max + 1);
  return (f.scaled(Complex(alpha, Real(0))) + data.f_infinity).truncated(data.n_max + 1);
}

Real assembly_residual(const CurveData& data, const Real& alpha) {
  Real worst = 0;
  for (std::int64_t h = -1; h <= 0; ++h) {
    const Complex v = product_coefficient(data, h) - to_real(data.f[h]) * alpha - data.f_infinity[h];
    worst = std::max(worst, abs_c(v));
  }
  return worst;
}

ShiftedConvolutionTable l_series_closed_form(const CurveData& data, const Real& alpha, std::int64_t h_max) {
  require_range(data, h_max);
  const Real residual = assembly_residual(data, alpha);
  if (residual > Real(1e-10))
    throw Error("closed form: q^-1 and q^0 terms fail to cancel (residual " + to_decimal(residual, 6) + ")");
  ShiftedConvolutionTable t;
  t.label = data.model.label;
  t.method = Method::closed_form;
  const Real scale = data.lattice.volume / pi();
  for (std::int64_t h = 1; h <= h_max; ++h) {
    const Complex v = product_coefficient(data, h) - to_real(data.f[h]) * alpha - data.f_infinity[h];
    t.entries.push_back({h, scale * v.real(), abs(scale * v.imag())});
  }
  t.metadata["alpha"] = to_decimal(alpha);
  t.metadata["volume"] = to_decimal(data.lattice.volume);
  t.metadata["assembly_residual"] = to_decimal(residual, 6);
  t.metadata["series_n_max"] = std::to_string(data.n_max);
  return t;
}

ShiftedConvolutionTable l_series_direct(const EllipticCurveModel& model, std::int64_t h_max, std::int64_t n_terms) {
  ShiftedConvolutionTable t;
  t.label = model.label;
  t.method = Method::direct;
  for (const auto& v : d_direct_range(model, h_max, n_terms)) t.entries.push_back({v.h, v.value, v.error});
  t.metadata["n_terms"] = std::to_string(n_terms);
  t.metadata["value"] = "mean of partial sums over the last decade";
  return t;
}

BetaFit fit_indicator_coefficients(const QSeries<Complex>& target, const QSeries<Rational>& f,
                                   const IndicatorBasis& basis, const std::vector<long>& rows) {
  const auto n_rows = static_cast<Eigen::Index>(rows.size());
  const auto n_cols = static_cast<Eigen::Index>(basis.indicators.size() + 1);
  if (n_rows < n_cols) throw Error("beta fit needs at least as many rows as unknowns");
  Matrix a(n_rows, n_cols), b(n_rows, 1);
  for (Eigen::Index r = 0; r < n_rows; ++r) {
    const long h = rows[static_cast<std::size_t>(r)];
    a(r, 0) = to_complex(f[h]);
    for (Eigen::Index c = 1; c < n_cols; ++c) a(r, c) = basis.indicators[static_cast<std::size_t>(c - 1)].series[h];
    b(r, 0) = target[h];
  }
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Matrix x = svd.solve(b);
  BetaFit fit;
  const auto& sv = svd.singularValues();
  fit.condition_number = sv(n_cols - 1) == 0 ? Real(std::numeric_limits<double>::infinity())
                                             : Real(sv(0) / sv(n_cols - 1));
  fit.beta_f = x(0, 0);
  for (Eigen::Index c = 1; c < n_cols; ++c) {
    fit.beta.push_back(x(c, 0));
    fit.cusp_labels.push_back(basis.indicators[static_cast<std::size_t>(c - 1)].cusp.label());
  }
  const Matrix res = a * x - b;
  fit.residual = 0;
  for (Eigen::Index r = 0; r < n_rows; ++r) fit.residual = std::max(fit.residual, abs_c(res(r, 0)));
  return fit;
}

Real fit_alpha(const CurveData& data, const std::vector<DirectValue>& direct) {
  Real num = 0, den = 0;
  const Real c = pi() / data.lattice.volume;
  for (const auto& d : direct) {
    require_range(data, d.h);
    const Real a = to_real(data.f[d.h]);
    const Real r = (product_coefficient(data, d.h) - data.f_infinity[d.h]).real() - c * d.value;
    num += a * r;
    den += a * a;
  }
  if (den == 0) throw Error("fit_alpha: the newform vanishes on every supplied shift");
  return num / den;
}

}  // namespace shiftconv
