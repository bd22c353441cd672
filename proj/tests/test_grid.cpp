#include "replaygen/grid.hpp"

#include <sstream>
#include <string>

#include "doctest.h"

namespace replaygen {
namespace {

TEST_CASE("fast battery fills the whole table and passes") {
  GridResult g = run_grid(true);
  REQUIRE(g.cells.size() == 12);
  CHECK(g.all_ok);

  // Row-major over notions x families, with the expected verdict pattern.
  const char* want[12][3] = {
      {"uniform", "finite", "achievable"},
      {"uniform", "countable", "achievable"},
      {"uniform", "general", "achievable"},
      {"nonuniform", "finite", "achievable"},
      {"nonuniform", "countable", "forced-failure"},
      {"nonuniform", "general", "forced-failure"},
      {"limit", "finite", "achievable"},
      {"limit", "countable", "achievable"},
      {"limit", "general", "forced-failure"},
      {"proper", "finite", "forced-failure"},
      {"proper", "countable", "forced-failure"},
      {"proper", "general", "forced-failure"},
  };
  const bool demo[12] = {true, true, false, true, true,  false,
                         true, true, true,  true, true, false};
  for (int i = 0; i < 12; ++i) {
    CAPTURE(i);
    const GridCell& c = g.cells[i];
    CHECK(c.notion == want[i][0]);
    CHECK(c.family == want[i][1]);
    CHECK(c.expected == want[i][2]);
    CHECK(c.demonstrated == demo[i]);
    CHECK(c.ok);
    if (c.demonstrated) {
      CHECK(c.evidence.size() == 16);  // run fingerprint
      CHECK_FALSE(c.detail.empty());
    } else {
      CHECK(c.evidence.empty());
    }
  }
}

TEST_CASE("csv layout") {
  GridCell c{"limit",  "general", "forced-failure", true, true, "abc123",
             "composite_g vs separation_killer"};
  GridResult g;
  g.cells.push_back(c);
  g.all_ok = true;
  std::istringstream in(grid_csv(g));
  std::string line;
  std::getline(in, line);
  CHECK(line == "notion,family,expected,demonstrated,ok,evidence,detail");
  std::getline(in, line);
  CHECK(line ==
        "limit,general,forced-failure,yes,yes,abc123,"
        "\"composite_g vs separation_killer\"");
}

TEST_CASE("cell json carries the schema tag") {
  GridCell c{"proper", "countable", "forced-failure", true, true, "deadbeef",
             "x"};
  auto j = cell_json(c);
  CHECK(j["schema"] == "replaygen/v1");
  CHECK(j["kind"] == "grid_cell");
  CHECK(j["notion"] == "proper");
  CHECK(j["ok"] == true);
}

}  // namespace
}  // namespace replaygen
