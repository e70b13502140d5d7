#include "shiftconv/arith.hpp"
#include "shiftconv/curve_registry.hpp"
#include "shiftconv/eisenstein_basis.hpp"
#include "shiftconv/lattice.hpp"
#include "shiftconv/newform.hpp"
#include "shiftconv/poincare.hpp"
#include "shiftconv/shifted_conv.hpp"
#include "shiftconv/verify.hpp"
#include "shiftconv/weierstrass_mock.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

using namespace shiftconv;
using nlohmann::json;

namespace {

enum class Format { text, json, csv };

struct Table {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::string, std::string>> metadata;

  json to_json() const {
    json j;
    j["title"] = title;
    json meta = json::object();
    for (const auto& [k, v] : metadata) meta[k] = v;
    j["metadata"] = meta;
    j["rows"] = json::array();
    for (const auto& r : rows) {
      json row;
      for (std::size_t i = 0; i < columns.size(); ++i) row[columns[i]] = r[i];
      j["rows"].push_back(row);
    }
    return j;
  }
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

void print_tables(const std::vector<Table>& tables, Format format) {
  if (format == Format::json) {
    if (tables.size() == 1) {
      std::cout << tables[0].to_json().dump(2) << "\n";
    } else {
      json arr = json::array();
      for (const auto& t : tables) arr.push_back(t.to_json());
      std::cout << arr.dump(2) << "\n";
    }
    return;
  }
  bool first = true;
  for (const auto& t : tables) {
    if (!first) std::cout << "\n";
    first = false;
    if (format == Format::csv) {
      for (const auto& [k, v] : t.metadata) std::cout << "# " << k << ": " << v << "\n";
      for (std::size_t i = 0; i < t.columns.size(); ++i) std::cout << (i ? "," : "") << csv_field(t.columns[i]);
      std::cout << "\n";
      for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) std::cout << (i ? "," : "") << csv_field(r[i]);
        std::cout << "\n";
      }
      continue;
    }
    if (!t.title.empty()) std::cout << t.title << "\n";
    for (const auto& [k, v] : t.metadata) std::cout << "  " << k << ": " << v << "\n";
    std::vector<std::size_t> width(t.columns.size());
    for (std::size_t i = 0; i < t.columns.size(); ++i) width[i] = t.columns[i].size();
    for (const auto& r : t.rows)
      for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
    auto line = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        std::cout << (i ? "  " : "") << r[i];
        if (i + 1 < r.size()) std::cout << std::string(width[i] - r[i].size(), ' ');
      }
      std::cout << "\n";
    };
    if (!t.rows.empty()) line(t.columns);
    for (const auto& r : t.rows) line(r);
  }
}

std::string str(const Real& x) { return to_decimal(x); }
std::string re(const Complex& z) { return to_decimal(z.real()); }
std::string im(const Complex& z) { return to_decimal(z.imag()); }

Table curves_table(const CurveRegistry& reg) {
  Table t{"curves", {"label", "N", "a1", "a2", "a3", "a4", "a6", "discriminant", "cm", "squarefree"}, {}, {}};
  for (const auto& c : reg.curves())
    t.rows.push_back({c.label, std::to_string(c.conductor), std::to_string(c.a1), std::to_string(c.a2),
                      std::to_string(c.a3), std::to_string(c.a4), std::to_string(c.a6), c.discriminant().str(),
                      c.has_cm ? "true" : "false", c.squarefree_level ? "true" : "false"});
  return t;
}

Table coeffs_table(const EllipticCurveModel& m, long n_max, bool eichler) {
  Table t{"newform coefficients of " + m.label, {"n", "a"}, {}, {{"label", m.label}}};
  if (eichler) t.columns.push_back("a/n");
  const auto a = an_table(m, n_max);
  for (long n = 1; n <= n_max; ++n) {
    std::vector<std::string> row{std::to_string(n), std::to_string(a[static_cast<std::size_t>(n)])};
    if (eichler) row.push_back(to_decimal(Rational(a[static_cast<std::size_t>(n)], n)));
    t.rows.push_back(row);
  }
  return t;
}

Table lattice_table(const EllipticCurveModel& m, int digits) {
  const Lattice lat = complete_lattice(m, digits);
  Table t{"period lattice of " + m.label, {"quantity", "real", "imag"}, {}, {{"label", m.label}}};
  t.metadata.emplace_back("digits", std::to_string(digits));
  for (const auto& [name, z] : std::vector<std::pair<std::string, Complex>>{{"omega1", lat.omega1},
                                                                             {"omega2", lat.omega2},
                                                                             {"tau", lat.tau},
                                                                             {"eta1", lat.eta1},
                                                                             {"eta2", lat.eta2},
                                                                             {"S", lat.s_lambda}})
    t.rows.push_back({name, re(z), im(z)});
  t.rows.push_back({"volume", str(lat.volume), "0"});
  t.rows.push_back({"legendre_residual", to_decimal(legendre_residual(lat), 6), "0"});
  return t;
}

std::vector<Table> mockform_tables(const EllipticCurveModel& m, long n_max, int digits, bool check_eta) {
  const auto z = zhat_plus(m, n_max, digits);
  Table t{"Z^+ of " + m.label, {"n", "real", "imag", "rational"}, {}, {{"label", m.label}}};
  for (long n = -1; n <= n_max; ++n) {
    const auto r = m.has_cm ? recognize_rational(z[n].real(), 1000, ten_to_minus(20)) : std::nullopt;
    t.rows.push_back({std::to_string(n), re(z[n]), im(z[n]), r ? to_decimal(*r) : ""});
  }
  std::vector<Table> out{t};
  if (!check_eta) return out;
  Table e{"eta quotients for q d/dq Z^+", {"source", "quotient", "weight", "leading_exponent", "max_error"}, {}, {}};
  const auto eq = tabulated_eta_quotient(m.conductor);
  if (!eq) throw Error("no tabulated eta quotient for level " + std::to_string(m.conductor));
  const auto dz = q_derivative(z);
  auto describe = [&](const std::string& source, const EtaQuotient& q) {
    std::string err = "n/a";
    if (q.leading_exponent().denominator() == 1) {
      const long lead = q.leading_exponent().numerator();
      const auto s = eta_quotient(q, n_max - lead);
      Real worst = 0;
      for (long k = 0; lead + k < dz.order(); ++k) worst = std::max(worst, Real(abs(dz[lead + k] - to_complex(s[k]))));
      err = to_decimal(worst, 6);
    }
    e.rows.push_back({source, to_string(q), to_string(q.weight()), to_string(q.leading_exponent()), err});
  };
  describe("tabulated", *eq);
  const long N = m.conductor;
  std::vector<long> mult;
  for (long d : divisors(N))
    if (d > 1) mult.push_back(d);
  if (mult.size() > 5) mult = {N / 6, N / 3, N / 2, N};
  for (const auto& q : match_eta_quotients(dz.truncated(n_max), mult, 8, ten_to_minus(20))) describe("search", q);
  out.push_back(e);
  return out;
}

std::vector<Table> eisenstein_tables(std::int64_t level, long n_max) {
  const auto basis = indicator_basis(level, n_max);
  Table cusps{"cusps of level " + std::to_string(level), {"cusp", "width"}, {}, {}};
  for (const auto& c : basis.cusps.cusps) cusps.rows.push_back({c.label(), std::to_string(c.width)});
  Table ind{"indicator Eisenstein series", {"cusp", "n", "real", "imag"}, {}, {}};
  ind.metadata = {{"level", std::to_string(level)},
                  {"condition_number", to_decimal(basis.condition_number, 6)},
                  {"delta_residual", to_decimal(basis.delta_residual, 6)}};
  for (const auto& f : basis.indicators) {
    for (long n = 0; n <= n_max; ++n)
      ind.rows.push_back({f.cusp.label(), std::to_string(n), re(f.series[n]), im(f.series[n])});
  }
  return {cusps, ind};
}

Table poincare_table(std::int64_t level, std::int64_t m, int k, long n_max, std::int64_t c_max,
                     const std::string& kind, BesselArgument conv) {
  Table t{"", {"n", "value", "half_c_max_value", "tail_estimate"}, {}, {}};
  std::vector<PoincareCoefficient> b;
  if (kind == "holomorphic") {
    t.title = "b_P(" + std::to_string(m) + ", " + std::to_string(k) + ", " + std::to_string(level) + "; n)";
    b = bp_coefficients(m, k, level, n_max, c_max, conv);
    t.metadata.emplace_back("bessel_argument", conv == BesselArgument::printed ? "2 pi sqrt(mn)/c" : "4 pi sqrt(mn)/c");
  } else {
    t.title = "b_Q(-" + std::to_string(m) + ", " + std::to_string(k) + ", " + std::to_string(level) + "; n)";
    b = bq_coefficients(m, k, level, n_max, c_max);
  }
  t.metadata.emplace_back("c_max", std::to_string(c_max));
  for (const auto& p : b)
    t.rows.push_back({std::to_string(p.n), str(p.value), str(p.half_value), to_decimal(p.tail_estimate, 6)});
  return t;
}

json table_json(const ShiftedConvolutionTable& t) {
  json j;
  j["label"] = t.label;
  j["method"] = t.method == Method::direct ? "direct" : "closed-form";
  j["entries"] = json::array();
  for (const auto& e : t.entries)
    j["entries"].push_back({{"h", std::to_string(e.h)}, {"value", str(e.value)}, {"err", to_decimal(e.error, 6)}});
  json meta = json::object();
  for (const auto& [k, v] : t.metadata) meta[k] = v;
  j["metadata"] = meta;
  return j;
}

Table lseries_as_table(const ShiftedConvolutionTable& t) {
  Table out{std::string(t.method == Method::direct ? "direct" : "closed-form") + " shifted convolution values of " +
                t.label,
            {"h", "value", "err"},
            {},
            {}};
  for (const auto& [k, v] : t.metadata) out.metadata.emplace_back(k, v);
  for (const auto& e : t.entries)
    out.rows.push_back({std::to_string(e.h), str(e.value), to_decimal(e.error, 6)});
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shifted convolution values of genus-one newforms"};
  app.require_subcommand(1);

  int digits = kDefaultDigits;
  std::string format_name = "text";
  std::optional<std::string> curve_file;
  app.add_option("--digits", digits, "Working precision in decimal digits")->capture_default_str();
  app.add_option("--format", format_name, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--curve-file", curve_file, "Curve table replacing the built-in one")->check(CLI::ExistingFile);

  std::string label = "11a1";
  long n_max = 20;
  auto* curves = app.add_subcommand("curves", "List the curve registry");

  auto* coeffs = app.add_subcommand("coeffs", "Newform coefficients a(n)");
  bool eichler = false;
  coeffs->add_option("--label", label, "Curve label")->capture_default_str();
  coeffs->add_option("--n-max", n_max, "Last coefficient")->capture_default_str()->check(CLI::PositiveNumber);
  coeffs->add_flag("--eichler", eichler, "Also print the Eichler integral coefficients a(n)/n");

  auto* lattice = app.add_subcommand("lattice", "Periods, quasi-periods and S of the period lattice");
  lattice->add_option("--label", label, "Curve label")->capture_default_str();

  auto* mock = app.add_subcommand("mockform", "Holomorphic part Z^+ of the Weierstrass mock modular form");
  bool check_eta = false;
  mock->add_option("--label", label, "Curve label")->capture_default_str();
  mock->add_option("--n-max", n_max, "Last coefficient")->capture_default_str()->check(CLI::PositiveNumber);
  mock->add_flag("--check-eta", check_eta, "Compare q d/dq Z^+ with the tabulated eta quotient (N = 27, 32, 36)");

  auto* eis = app.add_subcommand("eisenstein", "Cusps and indicator Eisenstein series of a level");
  std::int64_t level = 11;
  eis->add_option("--level", level, "Level N")->capture_default_str();
  eis->add_option("--n-max", n_max, "Last coefficient")->capture_default_str()->check(CLI::PositiveNumber);

  auto* poincare = app.add_subcommand("poincare", "Poincare series coefficients");
  std::int64_t index = 1, c_max = 10000;
  int weight = 2;
  std::string kind = "holomorphic", convention = "printed";
  long poincare_n = 10;
  poincare->add_option("--level", level, "Level N")->capture_default_str();
  poincare->add_option("--index", index, "Index m")->capture_default_str()->check(CLI::PositiveNumber);
  poincare->add_option("--weight", weight, "Even weight k")->capture_default_str();
  poincare->add_option("--n-max", poincare_n, "Last coefficient")->capture_default_str();
  poincare->add_option("--c-max", c_max, "Kloosterman modulus cutoff")->capture_default_str();
  poincare->add_option("--kind", kind, "holomorphic (b_P) or maass (b_Q with principal part q^-m)")
      ->check(CLI::IsMember({"holomorphic", "maass"}))
      ->capture_default_str();
  poincare->add_option("--bessel-argument", convention, "printed (2 pi) or classical (4 pi)")
      ->check(CLI::IsMember({"printed", "classical"}))
      ->capture_default_str();

  auto* lseries = app.add_subcommand("lseries", "Shifted convolution values D(h;1)");
  std::string method = "both";
  std::int64_t h_max = 30, terms = 100000;
  lseries->add_option("--label", label, "Curve label")->capture_default_str();
  lseries->add_option("--method", method, "direct, closed or both")
      ->check(CLI::IsMember({"direct", "closed", "both"}))
      ->capture_default_str();
  lseries->add_option("--h-max", h_max, "Largest shift")->capture_default_str()->check(CLI::PositiveNumber);
  lseries->add_option("--terms", terms, "Terms of the direct sum")->capture_default_str()->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
  PrecisionConfig config;
  std::optional<std::string> verify_label;
  verify->add_option("--label", verify_label, "Only run the checks of this curve");
  verify->add_option("--series-n-max", config.series_n_max, "q-series truncation")->capture_default_str();
  verify->add_option("--terms", config.direct_terms, "Terms of the direct sums")->capture_default_str();
  verify->add_option("--c-max", config.kloosterman_c_max, "Kloosterman modulus cutoff")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  const Format format = format_name == "json" ? Format::json : format_name == "csv" ? Format::csv : Format::text;
  try {
    if (digits < kMinimumDigits) throw Error("--digits must be at least " + std::to_string(kMinimumDigits));
    PrecisionScope scope(digits);
    const CurveRegistry reg = curve_file ? load_registry(std::filesystem::path(*curve_file)) : builtin_registry();

    if (*curves) {
      print_tables({curves_table(reg)}, format);
    } else if (*coeffs) {
      print_tables({coeffs_table(reg.at(label), n_max, eichler)}, format);
    } else if (*lattice) {
      print_tables({lattice_table(reg.at(label), digits)}, format);
    } else if (*mock) {
      print_tables(mockform_tables(reg.at(label), n_max, digits, check_eta), format);
    } else if (*eis) {
      print_tables(eisenstein_tables(level, n_max), format);
    } else if (*poincare) {
      const auto conv = convention == "printed" ? BesselArgument::printed : BesselArgument::classical;
      print_tables({poincare_table(level, index, weight, poincare_n, c_max, kind, conv)}, format);
    } else if (*lseries) {
      const auto& m = reg.at(label);
      std::vector<ShiftedConvolutionTable> tables;
      if (method != "closed") tables.push_back(l_series_direct(m, h_max, terms));
      if (method != "direct") {
        const CurveData data = prepare_curve(m, std::max<long>(h_max, 2), digits);
        const Real alpha = m.has_cm ? Real(0) : alpha_from_d1(data, d_direct(m, 1, terms).value);
        tables.push_back(l_series_closed_form(data, alpha, h_max));
      }
      if (format == Format::json) {
        if (tables.size() == 1) {
          std::cout << table_json(tables[0]).dump(2) << "\n";
        } else {
          json arr = json::array();
          for (const auto& t : tables) arr.push_back(table_json(t));
          std::cout << arr.dump(2) << "\n";
        }
      } else {
        std::vector<Table> out;
        for (const auto& t : tables) out.push_back(lseries_as_table(t));
        print_tables(out, format);
      }
    } else if (*verify) {
      config.digits = digits;
      const VerifyReport report = verify_all(config, verify_label, reg);
      if (format == Format::json) {
        std::cout << report.to_json().dump(2) << "\n";
      } else {
        for (const auto& c : report.checks) std::cout << format_line(c) << "\n";
        std::cout << (report.all_passed() ? "all gating checks passed" : "gating failures: " +
                                                                             std::to_string(report.failures().size()))
                  << "\n";
      }
      return report.all_passed() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
