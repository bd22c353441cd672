#include "replaygen/registry.hpp"

#include <stdexcept>

#include "replaygen/wp.hpp"

namespace replaygen {

namespace {

const char kGenericPrefix[] = "generic-";

}  // namespace

ClassEntry class_by_id(const std::string& id) {
  if (id == "split3" || id == "horns" || id == "meet0") {
    for (FiniteDemo& demo : make_uniform_demo_classes()) {
      if (demo.cls.name() == id) return {id, demo.cls, demo.d_star};
    }
  }
  if (id == "hard-chain") return {id, make_nonuniform_hard_class(), 0};
  if (id == "proper-four") return {id, make_proper_replay_class(), 0};
  if (id == "chain") return {id, make_uniform_chain_class(), 1};
  if (id.rfind(kGenericPrefix, 0) == 0) {
    std::string tail = id.substr(sizeof(kGenericPrefix) - 1);
    std::size_t used = 0;
    std::uint64_t seed = std::stoull(tail, &used);
    if (used != tail.size()) {
      throw std::invalid_argument("bad seed in class id: " + id);
    }
    return {id, make_generic_countable(seed), 0};
  }
  throw std::invalid_argument("unknown class id: " + id);
}

std::vector<std::string> known_class_ids() {
  return {"split3", "horns",        "meet0", "hard-chain",
          "proper-four", "chain", "generic-<seed>"};
}

std::unique_ptr<Generator> generator_by_id(const std::string& id,
                                           const ClassEntry& ce) {
  if (id == "wp") return make_wp_generator(ce.cls);
  if (id == "baseline") return make_baseline_generator(ce.cls);
  if (id == "composite") return std::make_unique<CompositeGenerator>();
  if (id == "wrapper") {
    if (ce.d_star <= 0) {
      throw std::invalid_argument("class " + ce.id +
                                  " has no uniform threshold");
    }
    std::unique_ptr<Generator> base;
    if (ce.id == "chain") {
      base = std::make_unique<ChainUniformBase>();
    } else {
      base = std::make_unique<ClosureUniformBase>(ce.cls);
    }
    return std::make_unique<EchoUniformGenerator>(std::move(base), ce.d_star);
  }
  throw std::invalid_argument("unknown generator id: " + id);
}

std::unique_ptr<ProperGenerator> proper_generator_by_id(
    const std::string& id, const HypothesisClass& cls) {
  if (id == "greedy") return std::make_unique<GreedyProperGenerator>();
  if (id == "critical") return std::make_unique<CriticalProperGenerator>(cls);
  throw std::invalid_argument("unknown proper generator id: " + id);
}

std::unique_ptr<Adversary> adversary_by_id(const AdversaryConfig& cfg,
                                           const ClassEntry& ce) {
  auto target = [&]() {
    int max = ce.cls.is_finite() ? *ce.cls.size() : cfg.target_index;
    if (cfg.target_index < 1 || cfg.target_index > max) {
      throw std::invalid_argument("target index out of range for " + ce.id);
    }
    return ce.cls.at(cfg.target_index);
  };
  if (cfg.id == "fair") return std::make_unique<FairEnumerator>(target());
  if (cfg.id == "inject") {
    ReplayInjector::Pick pick;
    if (cfg.pick == "recent") {
      pick = ReplayInjector::Pick::kMostRecent;
    } else if (cfg.pick == "random") {
      pick = ReplayInjector::Pick::kRandom;
    } else {
      throw std::invalid_argument("pick must be recent or random");
    }
    if (cfg.inject_rate < 0 || cfg.inject_rate > 999) {
      throw std::invalid_argument("inject rate must be 0..999 permille");
    }
    return std::make_unique<ReplayInjector>(
        std::make_unique<FairEnumerator>(target()), cfg.inject_rate, cfg.seed,
        pick);
  }
  if (cfg.id == "nonuniform-killer") {
    if (cfg.killer_d < 1) throw std::invalid_argument("killer d must be >= 1");
    return std::make_unique<NonuniformKiller>(cfg.killer_d);
  }
  if (cfg.id == "separation-killer") {
    if (cfg.stall_cap < 1) throw std::invalid_argument("stall cap must be >= 1");
    return std::make_unique<SeparationKiller>(cfg.stall_cap);
  }
  throw std::invalid_argument("unknown adversary id: " + cfg.id);
}

}  // namespace replaygen
