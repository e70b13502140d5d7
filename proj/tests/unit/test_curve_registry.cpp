#include "shiftconv/curve_registry.hpp"

#include <doctest.h>

#include <sstream>

using namespace shiftconv;

namespace {

const char* kTable =
    "11a1  11  0 -1  1 -10 -20\n"
    "14a1  14  1  0  1   4  -6\n"
    "15a1  15  1  1  1 -10 -10\n"
    "17a1  17  1 -1  1  -1 -14\n"
    "19a1  19  0  1  1  -9 -15\n"
    "21a1  21  1  0  0  -4  -1\n"
    "27a1  27  0  0  1   0  -7\n"
    "32a1  32  0  0  0   4   0\n"
    "36a1  36  0  0  0   0   1\n"
    "49a1  49  1 -1  0  -2  -1\n";

CurveRegistry parse(const std::string& text) {
  std::istringstream in(text);
  return parse_registry(in, "test");
}

}  // namespace

TEST_CASE("built-in registry") {
  const auto reg = builtin_registry();
  REQUIRE(reg.curves().size() == 10);
  const auto& e = reg.at("11a1");
  CHECK(e.conductor == 11);
  CHECK(e.discriminant() == -161051);
  CHECK(e.c4() == 496);
  CHECK(e.c6() == 20008);
  CHECK_FALSE(e.has_cm);
  CHECK(e.squarefree_level);
  CHECK(reg.by_conductor(27).label == "27a1");
  CHECK(reg.by_conductor(49).has_cm);
  CHECK_FALSE(reg.find_label("11a2"));
  CHECK_THROWS_AS(reg.at("11a2"), Error);
  for (std::size_t i = 0; i < reg.curves().size(); ++i)
    CHECK(reg.curves()[i].conductor == kSupportedConductors[i]);
}

TEST_CASE("parsing a curve table") {
  CHECK(parse(kTable).curves().size() == 10);
  CHECK(parse(std::string("# comment\n\n") + kTable).curves().size() == 10);
}

TEST_CASE("parse errors carry the line number") {
  const std::string bad = std::string(kTable) + "99x 11 0 -1\n";
  try {
    parse(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 11);
  }
  CHECK_THROWS_AS(parse("11a1 11 0 -1 1 -10 -20 7\n"), ParseError);
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(parse(std::string(kTable) + "11a2 11 0 -1 1 -10 -20\n"), ValidationError);
  std::string missing(kTable);
  missing.erase(0, missing.find('\n') + 1);
  CHECK_THROWS_AS(parse(missing), ValidationError);
  // singular model
  CHECK_THROWS_AS(make_model("11x", 11, {0, 0, 0, 0, 0}), ValidationError);
  // unsupported conductor
  CHECK_THROWS_AS(make_model("37a1", 37, {0, 0, 1, -1, 0}), ValidationError);
  // 11a3 has the right conductor; a bad-prime mismatch is caught with another level
  CHECK_NOTHROW(make_model("11a3", 11, {0, -1, 1, 0, 0}));
  CHECK_THROWS_AS(make_model("14x", 14, {0, -1, 1, 0, 0}), ValidationError);
  auto m = make_model("27a1", 27, {0, 0, 1, 0, -7});
  m.has_cm = false;
  CHECK_THROWS_AS(validate(m), ValidationError);
}
