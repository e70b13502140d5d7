#include "shiftconv/curve_registry.hpp"

#include "shiftconv/arith.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace shiftconv {

namespace {

constexpr const char* kBuiltinCurves =
#include "shiftconv/curves_data.inc"
    ;

std::vector<std::int64_t> prime_support(Integer n) {
  if (n < 0) n = -n;
  std::vector<std::int64_t> primes;
  for (std::int64_t p = 2; Integer(p) * p <= n; ++p) {
    if (n % p != 0) continue;
    primes.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) primes.push_back(static_cast<std::int64_t>(n));
  return primes;
}

}  // namespace

bool is_supported_conductor(int n) {
  return std::find(kSupportedConductors.begin(), kSupportedConductors.end(), n) !=
         kSupportedConductors.end();
}

Integer EllipticCurveModel::b8() const {
  const Integer A1 = a1, A2 = a2, A3 = a3, A4 = a4, A6 = a6;
  return A1 * A1 * A6 + 4 * A2 * A6 - A1 * A3 * A4 + A2 * A3 * A3 - A4 * A4;
}

Integer EllipticCurveModel::c4() const {
  const Integer B2 = b2(), B4 = b4();
  return B2 * B2 - 24 * B4;
}

Integer EllipticCurveModel::c6() const {
  const Integer B2 = b2(), B4 = b4(), B6 = b6();
  return -B2 * B2 * B2 + 36 * B2 * B4 - 216 * B6;
}

Integer EllipticCurveModel::discriminant() const {
  const Integer B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
  return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
}

ParseError::ParseError(const std::string& source, int line, const std::string& what)
    : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

EllipticCurveModel make_model(std::string label, int conductor, std::array<std::int64_t, 5> a) {
  EllipticCurveModel m;
  m.label = std::move(label);
  m.conductor = conductor;
  m.a1 = a[0];
  m.a2 = a[1];
  m.a3 = a[2];
  m.a4 = a[3];
  m.a6 = a[4];
  m.has_cm = conductor == 27 || conductor == 32 || conductor == 36 || conductor == 49;
  m.squarefree_level = conductor > 0 && is_squarefree(conductor);
  validate(m);
  return m;
}

void validate(const EllipticCurveModel& m) {
  const std::string who = "curve " + m.label + ": ";
  if (m.label.empty()) throw ValidationError("curve label must be nonempty");
  if (!is_supported_conductor(m.conductor))
    throw ValidationError(who + "conductor " + std::to_string(m.conductor) +
                          " is not one of the genus-one levels");
  const Integer disc = m.discriminant();
  if (disc == 0) throw ValidationError(who + "discriminant is zero");
  const bool cm = m.conductor == 27 || m.conductor == 32 || m.conductor == 36 || m.conductor == 49;
  if (m.has_cm != cm) throw ValidationError(who + "has_cm flag disagrees with the conductor");
  if (m.squarefree_level != is_squarefree(m.conductor))
    throw ValidationError(who + "squarefree_level flag disagrees with the conductor");
  // Primes of bad reduction of a minimal model are exactly the primes dividing N.
  if (prime_support(disc) != prime_factors(m.conductor))
    throw ValidationError(who + "primes dividing the discriminant do not match the conductor");
}

CurveRegistry::CurveRegistry(std::vector<EllipticCurveModel> curves) : curves_(std::move(curves)) {
  std::set<int> conductors;
  std::set<std::string> labels;
  for (const auto& c : curves_) {
    validate(c);
    if (!conductors.insert(c.conductor).second)
      throw ValidationError("duplicate conductor " + std::to_string(c.conductor));
    if (!labels.insert(c.label).second) throw ValidationError("duplicate label " + c.label);
  }
  for (int n : kSupportedConductors)
    if (!conductors.count(n)) throw ValidationError("missing conductor " + std::to_string(n));
  std::sort(curves_.begin(), curves_.end(),
            [](const auto& x, const auto& y) { return x.conductor < y.conductor; });
}

std::optional<EllipticCurveModel> CurveRegistry::find_label(const std::string& label) const {
  for (const auto& c : curves_)
    if (c.label == label) return c;
  return std::nullopt;
}

std::optional<EllipticCurveModel> CurveRegistry::find_conductor(int conductor) const {
  for (const auto& c : curves_)
    if (c.conductor == conductor) return c;
  return std::nullopt;
}

const EllipticCurveModel& CurveRegistry::at(const std::string& label) const {
  for (const auto& c : curves_)
    if (c.label == label) return c;
  throw Error("unknown curve label '" + label + "'");
}

const EllipticCurveModel& CurveRegistry::by_conductor(int conductor) const {
  for (const auto& c : curves_)
    if (c.conductor == conductor) return c;
  throw Error("no curve of conductor " + std::to_string(conductor));
}

CurveRegistry parse_registry(std::istream& in, const std::string& source) {
  std::vector<EllipticCurveModel> curves;
  std::set<int> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string label;
    if (!(fields >> label)) continue;
    long long n = 0;
    std::array<std::int64_t, 5> a{};
    if (!(fields >> n)) throw ParseError(source, lineno, "expected conductor after label");
    for (auto& ai : a) {
      long long v = 0;
      if (!(fields >> v))
        throw ParseError(source, lineno, "expected five integer coefficients a1 a2 a3 a4 a6");
      ai = v;
    }
    std::string extra;
    if (fields >> extra) throw ParseError(source, lineno, "unexpected trailing field '" + extra + "'");
    if (!seen.insert(static_cast<int>(n)).second)
      throw ValidationError(source + ":" + std::to_string(lineno) + ": duplicate conductor " +
                            std::to_string(n));
    try {
      curves.push_back(make_model(label, static_cast<int>(n), a));
    } catch (const ValidationError& e) {
      throw ValidationError(source + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return CurveRegistry(std::move(curves));
}

CurveRegistry load_registry(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open curve file " + path.string());
  return parse_registry(in, path.string());
}

CurveRegistry builtin_registry() {
  std::istringstream in(kBuiltinCurves);
  return parse_registry(in, "<built-in curves>");
}

CurveRegistry load_registry(const std::optional<std::filesystem::path>& path) {
  return path ? load_registry(*path) : builtin_registry();
}

}  // namespace shiftconv
