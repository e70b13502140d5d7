#include "shiftconv/curve_registry.hpp"
#include "shiftconv/eisenstein_basis.hpp"
#include "shiftconv/lattice.hpp"
#include "shiftconv/newform.hpp"
#include "shiftconv/shifted_conv.hpp"
#include "shiftconv/verify.hpp"
#include "shiftconv/weierstrass_mock.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace shiftconv;

namespace {

using Row = std::map<std::string, std::string>;

const EllipticCurveModel& curve(const std::string& label) {
  static const CurveRegistry reg = builtin_registry();
  return reg.at(label);
}

std::vector<Row> curves() {
  std::vector<Row> out;
  const CurveRegistry reg = builtin_registry();
  for (const auto& c : reg.curves())
    out.push_back({{"label", c.label},
                   {"conductor", std::to_string(c.conductor)},
                   {"ainvs", std::to_string(c.a1) + " " + std::to_string(c.a2) + " " + std::to_string(c.a3) + " " +
                                 std::to_string(c.a4) + " " + std::to_string(c.a6)},
                   {"discriminant", c.discriminant().str()},
                   {"cm", c.has_cm ? "true" : "false"}});
  return out;
}

Row lattice(const std::string& label, int digits) {
  PrecisionScope ps(digits);
  const Lattice lat = complete_lattice(curve(label), digits);
  return {{"omega1", to_decimal(lat.omega1)}, {"omega2", to_decimal(lat.omega2)}, {"tau", to_decimal(lat.tau)},
          {"eta1", to_decimal(lat.eta1)},     {"eta2", to_decimal(lat.eta2)},     {"S", to_decimal(lat.s_lambda)},
          {"volume", to_decimal(lat.volume)}};
}

std::vector<std::pair<long, std::string>> zhat(const std::string& label, long n_max, int digits) {
  PrecisionScope ps(digits);
  const auto z = zhat_plus(curve(label), n_max, digits);
  std::vector<std::pair<long, std::string>> out;
  for (long n = -1; n <= n_max; ++n) out.emplace_back(n, to_decimal(z[n]));
  return out;
}

std::vector<std::pair<long, std::string>> infinity(std::int64_t level, long n_max) {
  PrecisionScope ps(40);
  const auto f = infinity_indicator(level, n_max);
  std::vector<std::pair<long, std::string>> out;
  for (long n = 0; n <= n_max; ++n) out.emplace_back(n, to_decimal(f[n].real()));
  return out;
}

std::vector<Row> direct(const std::string& label, std::int64_t h_max, std::int64_t terms, int digits) {
  PrecisionScope ps(digits);
  std::vector<Row> out;
  for (const auto& v : d_direct_range(curve(label), h_max, terms))
    out.push_back({{"h", std::to_string(v.h)},
                   {"value", to_decimal(v.value)},
                   {"raw", to_decimal(v.raw)},
                   {"err", to_decimal(v.error, 6)}});
  return out;
}

std::pair<std::string, std::vector<Row>> closed(const std::string& label, std::int64_t h_max, std::int64_t terms,
                                                int digits) {
  PrecisionScope ps(digits);
  const auto& m = curve(label);
  const CurveData data = prepare_curve(m, std::max<long>(h_max, 2), digits);
  const Real alpha = m.has_cm ? Real(0) : alpha_from_d1(data, d_direct(m, 1, terms).value);
  std::vector<Row> rows;
  for (const auto& e : l_series_closed_form(data, alpha, h_max).entries)
    rows.push_back({{"h", std::to_string(e.h)}, {"value", to_decimal(e.value)}, {"err", to_decimal(e.error, 6)}});
  return {to_decimal(alpha), rows};
}

std::string verify(std::optional<std::string> label, int digits, std::int64_t terms, std::int64_t c_max) {
  PrecisionConfig config;
  config.digits = digits;
  config.direct_terms = terms;
  config.kloosterman_c_max = c_max;
  py::gil_scoped_release release;
  return verify_all(config, label).to_json().dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Shifted convolution values of genus-one newforms";
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);

  m.def("curves", &curves);
  m.def("coefficients", [](const std::string& label, std::int64_t n_max) { return an_table(curve(label), n_max); },
        py::arg("label"), py::arg("n_max"));
  m.def("lattice", &lattice, py::arg("label"), py::arg("digits") = kDefaultDigits);
  m.def("zhat", &zhat, py::arg("label"), py::arg("n_max"), py::arg("digits") = kDefaultDigits);
  m.def("infinity_indicator", &infinity, py::arg("level"), py::arg("n_max"));
  m.def("cusp_count", &cusp_count, py::arg("level"));
  m.def("direct", &direct, py::arg("label"), py::arg("h_max"), py::arg("terms") = 100000,
        py::arg("digits") = kDefaultDigits);
  m.def("closed_form", &closed, py::arg("label"), py::arg("h_max"), py::arg("terms") = 100000,
        py::arg("digits") = kDefaultDigits);
  m.def("verify", &verify, py::arg("label") = py::none(), py::arg("digits") = kDefaultDigits,
        py::arg("terms") = 100000, py::arg("c_max") = 10000);
}
