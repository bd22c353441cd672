#ifndef REPLAYGEN_GRID_HPP
#define REPLAYGEN_GRID_HPP

#include <string>
#include <vector>

#include "json.hpp"

namespace replaygen {

// One cell of the notion-by-family table. Demonstrated cells carry a run:
// achievable cells must produce a winning verdict, forced-failure cells a
// holding certificate. The rest are theory-only and carry a note.
struct GridCell {
  std::string notion;    // uniform | nonuniform | limit | proper
  std::string family;    // finite | countable | general
  std::string expected;  // achievable | forced-failure
  bool demonstrated = false;
  bool ok = false;
  std::string evidence;  // manifest hash for demonstrated cells
  std::string detail;
};

struct GridResult {
  std::vector<GridCell> cells;
  bool all_ok = false;
};

// Runs the whole battery. fast trims horizons for smoke use; the full
// battery is what the reported table stands on.
GridResult run_grid(bool fast = false);

std::string grid_csv(const GridResult& g);
nlohmann::ordered_json cell_json(const GridCell& c);

}  // namespace replaygen

#endif
