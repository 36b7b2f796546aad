#include "catch_amalgamated.hpp"

#include <fstream>

#include "kblow/scenario.hpp"
#include "kblow/suites.hpp"

using namespace kblow;

namespace {

Scenario parse(const std::string& text) { return parse_scenario_text(text, "test.scn"); }

const char* kMinimal = R"(
torus_rank 2
model M zero_section
  v 1,0
  w 0,1
end
check comparison
  models M
end
)";

}  // namespace

TEST_CASE("parses the shipped default scenario") {
  std::ifstream in(std::string(KBLOW_SOURCE_DIR) + "/scenarios/default.scn");
  REQUIRE(in.good());
  Scenario sc = parse_scenario(in, "default.scn");
  CHECK(sc.torus_rank == 3);
  CHECK(sc.seed == 0);
  CHECK(sc.truncation == 12);
  CHECK(sc.models.size() == 12);
  CHECK(sc.diagonals.size() == 10);
  CHECK(sc.components.size() == 5);
  CHECK(sc.localizations.size() == 3);
  CHECK(sc.sequences.size() == 2);
  CHECK(sc.checks.size() == 8);
}

TEST_CASE("minimal scenario round trip") {
  Scenario sc = parse(kMinimal);
  CHECK(sc.model("M").rank() == 0);
  CHECK(sc.checks.size() == 1);
  auto run = run_scenario(sc, "inline");
  CHECK(run.all_pass());
}

TEST_CASE("rational literals") {
  Scenario sc = parse(R"(
torus_rank 2
sequence Q
  step M 1 -1:0,1 / 1,0
  initial 1
  terminal_empty true
end
model M zero_section
  v 1,0 0,1
end
check approx
  sequences Q
end
)");
  const auto& adjust = sc.sequences.at("Q").steps.at(0).second;
  const VarShape shape{2, 0};
  auto t1 = ExponentVector::var(shape, 0);
  auto t2 = ExponentVector::var(shape, 1);
  CHECK(equivalent(adjust, RationalClass(LaurentPoly::one_minus(t2), {t1})));
}

TEST_CASE("parse errors carry the source position") {
  auto check_error = [](const std::string& text, const std::string& fragment) {
    try {
      parse(text);
      FAIL("expected a parse error for: " << fragment);
    } catch (const parse_error& e) {
      INFO(e.what());
      CHECK(std::string(e.what()).find("test.scn:") == 0);
      CHECK(std::string(e.what()).find(fragment) != std::string::npos);
    }
  };

  check_error("model M zero_section\nend\n", "torus_rank");
  check_error("torus_rank\n", "needs a value");
  check_error("torus_rank 2\ndiagonal D\n  r 3\n  twist\nend\n", "missing argument");
  check_error("torus_rank 2\nmodel M bogus\nend\n", "zero_section or chart");
  check_error("torus_rank 2\nmodel M zero_section\n  w 1,0,0\nend\n", "torus rank");
  check_error("torus_rank 2\nmodel M zero_section\n  w 1,x\nend\n", "integer");
  check_error("torus_rank 2\ncheck bogus\nend\n", "unknown suite");
  check_error("torus_rank 2\nmodel M zero_section\n  w 1,0\n", "unterminated");
  check_error("torus_rank 2\nwibble 3\n", "unexpected token");
  check_error(
      "torus_rank 2\nmodel M zero_section\n  w 1,0\nend\nmodel M zero_section\n  w 0,1\nend\n",
      "duplicate");
  check_error("torus_rank 2\nmodel M chart\n  v 1,0\nend\n", "unknown chart model key");
}

TEST_CASE("dangling references are rejected at parse time") {
  CHECK_THROWS_AS(parse(R"(
torus_rank 2
sequence Q
  step NOPE 1
  initial 1
  terminal_empty true
end
)"),
                  kb_error);

  CHECK_THROWS_AS(parse(R"(
torus_rank 2
localization L
  components NOPE
  total 1
end
)"),
                  kb_error);
}

TEST_CASE("suite filter and unknown suites") {
  Scenario sc = parse(kMinimal);
  auto all = run_scenario(sc, "inline");
  CHECK(all.suites.size() == 1);
  auto none = run_scenario(sc, "inline", {"lattice"});
  CHECK(none.suites.empty());
  CheckSpec bogus;
  bogus.suite = "not-a-suite";
  CHECK_THROWS_AS(run_suite(sc, bogus), kb_error);
}

TEST_CASE("scenario-driven localization totals") {
  Scenario sc = parse(R"(
torus_rank 1
component A
  intrinsic 1
  w 1
end
component B
  intrinsic 1
  w -1
end
localization L
  components A B
  total 1
end
check localization
  localizations L
  grid 5
end
)");
  auto run = run_scenario(sc, "inline");
  REQUIRE(run.suites.size() == 1);
  CHECK(run.all_pass());
}
