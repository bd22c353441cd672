#include "replaygen/registry.hpp"

#include <stdexcept>

#include "doctest.h"
#include "replaygen/engine.hpp"

namespace replaygen {
namespace {

TEST_CASE("class ids resolve with their thresholds") {
  CHECK(class_by_id("split3").d_star == 1);
  CHECK(class_by_id("horns").d_star == 4);
  CHECK(class_by_id("meet0").d_star == 2);
  CHECK(class_by_id("chain").d_star == 1);
  CHECK(class_by_id("hard-chain").d_star == 0);
  CHECK(class_by_id("proper-four").d_star == 0);
  CHECK(class_by_id("proper-four").cls.is_finite());
  CHECK_FALSE(class_by_id("hard-chain").cls.is_finite());
}

TEST_CASE("generic ids parse their seed strictly") {
  ClassEntry a = class_by_id("generic-7");
  CHECK(a.id == "generic-7");
  CHECK(a.cls.name() == "generic_7");
  CHECK_FALSE(a.cls.is_finite());
  CHECK(a.d_star == 0);
  CHECK_THROWS_AS(class_by_id("generic-"), std::invalid_argument);
  CHECK_THROWS_AS(class_by_id("generic-7x"), std::invalid_argument);
  CHECK_THROWS_AS(class_by_id("no-such-class"), std::invalid_argument);
}

TEST_CASE("generator ids pick the right machinery") {
  ClassEntry horns = class_by_id("horns");
  ClassEntry chain = class_by_id("chain");
  ClassEntry hard = class_by_id("hard-chain");

  CHECK(generator_by_id("wp", horns)->name() == "wp(horns)");
  CHECK(generator_by_id("baseline", hard)->name() ==
        "baseline_limit(nonuniform_hard)");
  CHECK(generator_by_id("composite", hard)->name() == "composite_g");
  CHECK(generator_by_id("wrapper", horns)->name() ==
        "echo_uniform(closure_uniform(horns))");
  CHECK(generator_by_id("wrapper", chain)->name() ==
        "echo_uniform(chain_uniform)");

  // No threshold, no wrapper.
  CHECK_THROWS_AS(generator_by_id("wrapper", hard), std::invalid_argument);
  CHECK_THROWS_AS(generator_by_id("bogus", horns), std::invalid_argument);
}

TEST_CASE("proper generator ids") {
  HypothesisClass cls = class_by_id("proper-four").cls;
  CHECK(proper_generator_by_id("greedy", cls)->name() == "greedy_proper");
  CHECK(proper_generator_by_id("critical", cls)->name() == "critical_proper");
  CHECK_THROWS_AS(proper_generator_by_id("wp", cls), std::invalid_argument);
}

TEST_CASE("adversary ids validate their knobs") {
  ClassEntry horns = class_by_id("horns");
  ClassEntry hard = class_by_id("hard-chain");

  AdversaryConfig fair;
  fair.id = "fair";
  fair.target_index = 2;
  CHECK(adversary_by_id(fair, horns)->name() ==
        "fair(" + horns.cls.at(2).name() + ")");
  fair.target_index = 99;
  CHECK_THROWS_AS(adversary_by_id(fair, horns), std::invalid_argument);
  fair.target_index = 0;
  CHECK_THROWS_AS(adversary_by_id(fair, hard), std::invalid_argument);
  fair.target_index = 99;  // countable classes take any positive index
  CHECK_NOTHROW(adversary_by_id(fair, hard));

  AdversaryConfig inj;
  inj.id = "inject";
  inj.inject_rate = 500;
  inj.pick = "random";
  inj.seed = 9;
  CHECK(adversary_by_id(inj, horns)->name() ==
        "inject[500,random](fair(" + horns.cls.at(1).name() + "))");
  inj.pick = "sideways";
  CHECK_THROWS_AS(adversary_by_id(inj, horns), std::invalid_argument);
  inj.pick = "recent";
  inj.inject_rate = 1000;
  CHECK_THROWS_AS(adversary_by_id(inj, horns), std::invalid_argument);

  AdversaryConfig killer;
  killer.id = "nonuniform-killer";
  killer.killer_d = 4;
  CHECK(adversary_by_id(killer, hard)->name() == "nonuniform_killer[d=4]");
  killer.killer_d = 0;
  CHECK_THROWS_AS(adversary_by_id(killer, hard), std::invalid_argument);

  AdversaryConfig sep;
  sep.id = "separation-killer";
  CHECK(adversary_by_id(sep, hard)->name() == "separation_killer");
  sep.stall_cap = 0;
  CHECK_THROWS_AS(adversary_by_id(sep, hard), std::invalid_argument);

  AdversaryConfig bad;
  bad.id = "chaos";
  CHECK_THROWS_AS(adversary_by_id(bad, horns), std::invalid_argument);
}

TEST_CASE("registry pieces play a whole game") {
  ClassEntry ce = class_by_id("meet0");
  auto gen = generator_by_id("wrapper", ce);
  AdversaryConfig cfg;
  cfg.id = "inject";
  cfg.target_index = 2;
  cfg.inject_rate = 300;
  cfg.seed = 5;
  auto adv = adversary_by_id(cfg, ce);

  Transcript tr = run_game(*gen, *adv, 60);
  Hypothesis target = ce.cls.at(2);
  CHECK(retag_transcript(tr, target) == 0);
  ScoreParams p;
  p.d_star = ce.d_star;
  Verdict v = score_transcript(tr, target, Notion::kUniform, p);
  CHECK(v.success);
}

}  // namespace
}  // namespace replaygen
