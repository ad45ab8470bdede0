#include <doctest.h>

#include "dilhof/engine.hpp"
#include "dilhof/errors.hpp"
#include "dilhof/triangle.hpp"

using namespace dilhof;

namespace {

// The first eight rows, transcribed cell by cell.
const char* const kFigure[] = {
    "{1}",
    "{1} {2}",
    "{1} {2} {3}",
    "{1} {2:3} {3:4} {4}",
    "{1} {2:3} {3:4} {4:5} {5}",
    "{1} {2:3} {3:4} {4:5} {5:6} {6}",
    "{1} {2:4} {3:5} {4:6} {5:7} {6:7} {7}",
    "{1} {2:4} {3:6} {4:7} {5:7} {6:8} {7:8} {8}",
};

std::string row(const TriangleTable& t, Int n) {
  std::string s;
  for (Int i = 0; i < n; ++i) s += (i ? " " : "") + format_set(t.cell(i, n));
  return s;
}

}  // namespace

TEST_CASE("first eight rows") {
  const TriangleTable t = build_triangle(8);
  for (Int n = 1; n <= 8; ++n) {
    CAPTURE(n);
    CHECK(row(t, n) == kFigure[n - 1]);
  }
  CHECK(t.cell(1, 4) == std::vector<Int>{2, 3});
}

TEST_CASE("text layout") {
  const std::string expected =
      "1                                {1}\n"
      "2                             {1}    {2}\n"
      "3                         {1}    {2}    {3}\n"
      "4                    {1}    {2:3}    {3:4}    {4}\n"
      "5               {1}    {2:3}    {3:4}    {4:5}    {5}\n"
      "6           {1}    {2:3}    {3:4}    {4:5}    {5:6}    {6}\n"
      "7      {1}    {2:4}    {3:5}    {4:6}    {5:7}    {6:7}    {7}\n"
      "8  {1}    {2:4}    {3:6}    {4:7}    {5:7}    {6:8}    {7:8}    {8}\n";
  CHECK(render_triangle_text(build_triangle(8)) == expected);
}

TEST_CASE("json layout") {
  const std::string j = render_triangle_json(build_triangle(4));
  CHECK(j.find("\"schema\":\"dilhof.triangle/1\"") != std::string::npos);
  CHECK(j.find("{\"n\":4,\"i\":1,\"values\":[2,3]}") != std::string::npos);
}

TEST_CASE("threads give the same table") {
  CHECK(build_triangle(14, 1) == build_triangle(14, 4));
}

TEST_CASE("brute force agreement") {
  // Direct oracle: run the engine on every member of F_n.
  const Int n_max = 10;
  const TriangleTable t = build_triangle(n_max);
  for (Int n = 1; n <= n_max; ++n) {
    std::vector<std::uint32_t> masks(static_cast<std::size_t>(n), 0);
    for (const auto& f : enumerate_Fm(n)) {
      const QTrace tr = compute_q(f);
      masks[static_cast<std::size_t>(f.back())] |= 1u << tr.q(n);
    }
    for (Int i = 0; i < n; ++i) REQUIRE(t.cell_mask(i, n) == masks[static_cast<std::size_t>(i)]);
  }
}

TEST_CASE("U sets") {
  CHECK(u_set(1, 4).values() == std::vector<Int>{2, 3, 4});
  CHECK(u_set(0, 9).values() == std::vector<Int>{1});
  CHECK(u_set(3, 10).size() == 7);
  CHECK_THROWS_AS(u_set(4, 4), IndexError);
  CHECK_THROWS_AS(u_set(-1, 4), IndexError);
}

TEST_CASE("containment and minimum checks") {
  const TriangleTable t = build_triangle(20, 2);
  const ContainmentReport c = check_containment(t);
  CHECK(c.ok());
  CHECK(c.violations.empty());
  CHECK(c.t1_mismatch.empty());
  CHECK(c.bad_predecessors.empty());
  CHECK(std::find(c.strict.begin(), c.strict.end(), CellRef{1, 4}) != c.strict.end());
  for (Int n = 1; n <= 12; ++n) CHECK(t.cell(0, n) == std::vector<Int>{1});

  const MinReport m = check_min(t);
  CHECK(m.ok());
  CHECK(min_witness(2, 6) == std::vector<Int>{0, 0, 0, 0, 1, 2});
  CHECK(compute_q(min_witness(2, 6)).q(6) == 3);
}

TEST_CASE("cap") {
  CHECK_THROWS_AS(build_triangle(25), CapExceeded);
  CHECK_THROWS_AS(build_triangle(12, 1, 10), CapExceeded);
  CHECK_THROWS_AS(build_triangle(0), InvalidParameter);
}

TEST_CASE("format_set") {
  CHECK(format_set({4}) == "{4}");
  CHECK(format_set({2, 3, 4}) == "{2:4}");
  CHECK(format_set({2, 4, 5}) == "{2,4,5}");
}
