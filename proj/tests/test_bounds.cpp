#include "flatband/bounds.hpp"

#include <doctest.h>

#include <cmath>

using namespace flatband;

TEST_CASE("bracket formulas") {
  CHECK(theorem1_lower(TorusSpec(4, 4, 4)) == 48);
  CHECK(theorem1_lower(TorusSpec(4, 4, 6)) == 144);
  CHECK(theorem1_lower(TorusSpec(4, 6, 8)) == 4416);
  CHECK(theorem1_upper(TorusSpec(4, 4, 4)) == 3145728);
  CHECK(theorem1_upper(TorusSpec(4, 4, 6)) == 1084358656);
  CHECK(theorem1_upper(TorusSpec(4, 6, 8)) == BigInt("28441509363712"));
  CHECK(theorem1_upper(TorusSpec(6, 6, 6)) == BigInt("206158430208"));
  CHECK(theorem2_lower(TorusSpec(4, 4, 4)) == 16);
  CHECK(theorem2_lower(TorusSpec(4, 4, 6)) == 64);
  CHECK(theorem2_lower(TorusSpec(8, 6, 4)) == 4096);
}

TEST_CASE("brackets are ordered and monotone") {
  const int ext[] = {4, 6, 8, 10};
  for (int a : ext)
    for (int b : ext)
      for (int c : ext) {
        const TorusSpec s(a, b, c);
        CHECK(theorem1_lower(s) <= theorem1_upper(s));
        CHECK(theorem2_lower(s) <= theorem1_lower(s));
        if (a < 10) {
          const TorusSpec g(a + 2, b, c);
          CHECK(theorem1_lower(s) <= theorem1_lower(g));
          CHECK(theorem1_upper(s) <= theorem1_upper(g));
          CHECK(theorem2_lower(s) <= theorem2_lower(g));
        }
        const double area = static_cast<double>(s.L2() * s.L3());
        const double lo = log_big(theorem1_lower(s)) / area;
        const double hi = log_big(theorem1_upper(s)) / area;
        CHECK(lo > 0.1);
        CHECK(hi < 2.0);
      }
}

TEST_CASE("report assembly") {
  const TorusSpec s(4, 4, 4);
  const CountResult full{200, 4208, 0.01, true};
  const auto r = assemble_report(s, full, std::size_t{16}, true);
  CHECK(r.lower_confirmed);
  CHECK(r.upper_confirmed);
  CHECK(r.span_confirmed);
  REQUIRE(r.s4.has_value());
  CHECK(*r.s4 == doctest::Approx(std::log(200.0)));
  CHECK(r.s4_lower == doctest::Approx(std::log(48.0)));

  const CountResult injected{10, 1, 0.0, true};
  try {
    assemble_report(s, injected);
    FAIL("expected a bracket violation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BracketViolation);
  }
  const CountResult partial{10, 1, 0.0, false};
  const auto p = assemble_report(s, partial);
  CHECK_FALSE(p.lower_confirmed);
  CHECK(p.upper_confirmed);
  const CountResult too_many{BigInt("3145729"), 1, 0.0, false};
  CHECK_THROWS_AS(assemble_report(s, too_many), Error);
  CHECK_THROWS_AS(assemble_report(s, std::nullopt, std::size_t{15}, true), Error);
  CHECK_FALSE(assemble_report(s, std::nullopt, std::size_t{15}, false).span_confirmed);
}
