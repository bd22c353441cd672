#ifndef REPLAYGEN_REGISTRY_HPP
#define REPLAYGEN_REGISTRY_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "replaygen/adversary.hpp"
#include "replaygen/classes.hpp"
#include "replaygen/generator.hpp"
#include "replaygen/proper.hpp"

namespace replaygen {

// A runnable class id plus whatever the uniform wrapper needs to know.
struct ClassEntry {
  std::string id;
  HypothesisClass cls;
  int d_star = 0;  // distinct-example threshold; 0 = not uniformly playable
};

// Ids: split3, horns, meet0, hard-chain, proper-four, chain, generic-<seed>.
ClassEntry class_by_id(const std::string& id);
std::vector<std::string> known_class_ids();

// Ids: wp, baseline, wrapper, composite. The wrapper needs a class with a
// known threshold; the composite ignores the class entirely.
std::unique_ptr<Generator> generator_by_id(const std::string& id,
                                           const ClassEntry& ce);

// Ids: greedy, critical.
std::unique_ptr<ProperGenerator> proper_generator_by_id(
    const std::string& id, const HypothesisClass& cls);

struct AdversaryConfig {
  std::string id;            // fair, inject, nonuniform-killer, separation-killer
  int target_index = 1;
  int inject_rate = 250;     // permille, for inject
  std::uint64_t seed = 0;
  std::string pick = "recent";  // or "random"
  int killer_d = 3;
  int stall_cap = 2000;
};

std::unique_ptr<Adversary> adversary_by_id(const AdversaryConfig& cfg,
                                           const ClassEntry& ce);

}  // namespace replaygen

#endif
