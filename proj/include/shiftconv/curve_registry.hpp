#pragma once

#include "shiftconv/numeric.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace shiftconv {

/// The conductors N with genus(X0(N)) = 1.
inline constexpr std::array<int, 10> kSupportedConductors{11, 14, 15, 17, 19, 21, 27, 32, 36, 49};

bool is_supported_conductor(int n);

/// Integral long Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
struct EllipticCurveModel {
  std::string label;
  int conductor = 0;
  std::int64_t a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
  bool has_cm = false;
  bool squarefree_level = false;

  std::int64_t b2() const { return a1 * a1 + 4 * a2; }
  std::int64_t b4() const { return 2 * a4 + a1 * a3; }
  std::int64_t b6() const { return a3 * a3 + 4 * a6; }
  Integer b8() const;
  Integer c4() const;
  Integer c6() const;
  Integer discriminant() const;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& source, int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Builds a model from its label, conductor and coefficients, deriving the
/// CM and squarefree flags from the conductor and validating every invariant.
EllipticCurveModel make_model(std::string label, int conductor, std::array<std::int64_t, 5> a);

/// Throws ValidationError naming the violated invariant.
void validate(const EllipticCurveModel& model);

/// Immutable set of one strong Weil model per supported conductor.
class CurveRegistry {
 public:
  explicit CurveRegistry(std::vector<EllipticCurveModel> curves);

  const std::vector<EllipticCurveModel>& curves() const { return curves_; }
  std::optional<EllipticCurveModel> find_label(const std::string& label) const;
  std::optional<EllipticCurveModel> find_conductor(int conductor) const;
  /// Like find_label but throws when absent.
  const EllipticCurveModel& at(const std::string& label) const;
  const EllipticCurveModel& by_conductor(int conductor) const;

 private:
  std::vector<EllipticCurveModel> curves_;
};

/// Parses the whitespace-separated curve format `label N a1 a2 a3 a4 a6`
/// (one record per line, `#` starts a comment).
CurveRegistry parse_registry(std::istream& in, const std::string& source = "<stream>");
CurveRegistry load_registry(const std::filesystem::path& path);
/// The shipped curve table compiled into the library.
CurveRegistry builtin_registry();
/// Loads `path` when given, otherwise the built-in table.
CurveRegistry load_registry(const std::optional<std::filesystem::path>& path);

}  // namespace shiftconv
