#include "replaygen/engine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "replaygen/errors.hpp"
#include "replaygen/support_spec.hpp"
#include "replaygen/symbolic_set.hpp"

namespace replaygen {
namespace {

// First round of the final quiet window, for a run of `rounds` rounds.
int tail_start(int rounds, double quiet_tail) {
  if (rounds <= 0) return 1;
  int window = std::max(1, static_cast<int>(std::ceil(quiet_tail * rounds)));
  return rounds - window + 1;
}

}  // namespace

const char* step_tag_name(StepTag tag) {
  switch (tag) {
    case StepTag::kSupport: return "support";
    case StepTag::kReplay: return "replay";
    case StepTag::kIllegal: return "illegal";
  }
  return "?";
}

const char* outcome_name(RunOutcome o) {
  switch (o) {
    case RunOutcome::kCompleted: return "completed";
    case RunOutcome::kAdversaryHalted: return "adversary_halted";
    case RunOutcome::kProtocolViolation: return "protocol_violation";
    case RunOutcome::kNonHaltingRound: return "non_halting_round";
  }
  return "?";
}

const char* notion_name(Notion n) {
  switch (n) {
    case Notion::kUniform: return "uniform";
    case Notion::kNonuniform: return "nonuniform";
    case Notion::kLimit: return "limit";
  }
  return "?";
}

StepTag validate_step(const Hypothesis& target,
                      const std::vector<Element>& prior_outputs,
                      const Element& x) {
  if (target.contains(x)) return StepTag::kSupport;
  for (const Element& o : prior_outputs) {
    if (o == x) return StepTag::kReplay;
  }
  return StepTag::kIllegal;
}

Transcript run_game(Generator& gen, Adversary& adv, int horizon) {
  Transcript tr;
  tr.generator_id = gen.name();
  tr.adversary_id = adv.name();
  tr.horizon = horizon;
  std::vector<Element> outputs;
  outputs.reserve(static_cast<std::size_t>(std::max(horizon, 0)));
  for (int t = 1; t <= horizon; ++t) {
    std::optional<Element> x = adv.produce(outputs);
    if (!x) {
      tr.outcome = RunOutcome::kAdversaryHalted;
      return tr;
    }
    try {
      Element o = gen.step(*x);
      tr.rounds.push_back({t, *x, StepTag::kIllegal, o, gen.last_queries()});
      outputs.push_back(o);
    } catch (const QueryBudgetExceeded& e) {
      tr.outcome = RunOutcome::kNonHaltingRound;
      tr.detail = e.what();
      return tr;
    } catch (const ProtocolViolation& e) {
      tr.outcome = RunOutcome::kProtocolViolation;
      tr.detail = e.what();
      return tr;
    }
  }
  return tr;
}

int retag_transcript(Transcript& tr, const Hypothesis& target) {
  tr.target_id = target.name();
  int illegal = 0;
  IndexSet seen_outputs;
  for (RoundRecord& r : tr.rounds) {
    if (target.contains(r.example)) {
      r.tag = StepTag::kSupport;
    } else if (seen_outputs.count(r.example.index()) > 0) {
      r.tag = StepTag::kReplay;
    } else {
      r.tag = StepTag::kIllegal;
      ++illegal;
    }
    seen_outputs.insert(r.output.index());
  }
  return illegal;
}

std::int64_t transcript_frontier(const Transcript& tr,
                                 const Hypothesis& target) {
  IndexSet presented;
  for (const RoundRecord& r : tr.rounds) presented.insert(r.example.index());
  std::int64_t covered = 0;
  std::int64_t limit = static_cast<std::int64_t>(presented.size());
  for (SymbolicCursor c(target.support().set()); !c.done(); c.next()) {
    if (covered >= limit) break;
    if (presented.count(c.index()) == 0) break;
    ++covered;
  }
  return covered;
}

Verdict score_transcript(const Transcript& tr, const Hypothesis& target,
                         Notion notion, const ScoreParams& params) {
  Verdict v;
  v.notion = notion;
  v.rounds = static_cast<int>(tr.rounds.size());

  IndexSet seen_outputs;
  IndexSet presented;
  int illegal = 0;
  for (const RoundRecord& r : tr.rounds) {
    if (!target.contains(r.example) &&
        seen_outputs.count(r.example.index()) == 0) {
      ++illegal;
    }
    presented.insert(r.example.index());
    if (v.trigger_round == 0 && params.d_star > 0 &&
        static_cast<int>(presented.size()) >= params.d_star) {
      v.trigger_round = r.t;
    }
    bool mistake = !target.contains(r.output) ||
                   presented.count(r.output.index()) > 0;
    if (mistake) {
      v.mistake_times.push_back(r.t);
      v.last_mistake = r.t;
    }
    seen_outputs.insert(r.output.index());
    v.max_round_queries = std::max(v.max_round_queries, r.queries);
  }
  v.legal_for_target = illegal == 0;
  v.clean_tail =
      v.rounds > 0 && v.last_mistake < tail_start(v.rounds, params.quiet_tail);
  v.frontier = transcript_frontier(tr, target);
  v.enumeration_ok =
      params.min_frontier <= 0 || v.frontier >= params.min_frontier;

  switch (notion) {
    case Notion::kUniform: {
      bool post_trigger_clean =
          v.trigger_round > 0 && v.last_mistake < v.trigger_round;
      v.success = v.legal_for_target && post_trigger_clean;
      break;
    }
    case Notion::kNonuniform:
      v.success = v.legal_for_target && v.clean_tail;
      break;
    case Notion::kLimit:
      v.success = v.legal_for_target && v.clean_tail && v.enumeration_ok;
      break;
  }
  return v;
}

ProperTranscript run_proper_game(ProperGenerator& gen, ProperAdversary& adv,
                                 const HypothesisClass& cls, int horizon,
                                 std::int64_t query_budget) {
  ProperTranscript tr;
  tr.generator_id = gen.name();
  tr.adversary_id = adv.name();
  tr.class_id = cls.name();
  tr.horizon = horizon;

  ClassOracle backing(cls);
  CountingOracle oracle(backing, query_budget);
  std::vector<int> outputs;
  std::set<int> named;  // distinct guesses so far, for the sure flags
  for (int t = 1; t <= horizon; ++t) {
    std::optional<Element> x = adv.produce(outputs);
    if (!x) {
      tr.outcome = RunOutcome::kAdversaryHalted;
      return tr;
    }
    bool sure = true;
    for (int g : named) {
      if (cls.at(g).contains(*x)) {
        sure = false;
        break;
      }
    }
    oracle.begin_round(t);
    int out = 0;
    try {
      out = gen.step(x->index(), sure, oracle);
    } catch (const QueryBudgetExceeded& e) {
      tr.outcome = RunOutcome::kNonHaltingRound;
      tr.detail = e.what();
      return tr;
    }
    if (out < 1 || (cls.is_finite() && out > *cls.size())) {
      tr.outcome = RunOutcome::kProtocolViolation;
      tr.detail = "round " + std::to_string(t) + " named index " +
                  std::to_string(out) + " outside the class";
      return tr;
    }
    tr.rounds.push_back(
        {t, *x, StepTag::kIllegal, sure, out, oracle.fresh_this_round()});
    outputs.push_back(out);
    named.insert(out);
  }
  return tr;
}

int retag_proper_transcript(ProperTranscript& tr, const HypothesisClass& cls,
                            const Hypothesis& target) {
  tr.target_id = target.name();
  int illegal = 0;
  std::set<int> named;
  for (ProperRoundRecord& r : tr.rounds) {
    if (target.contains(r.example)) {
      r.tag = StepTag::kSupport;
    } else {
      r.tag = StepTag::kIllegal;
      for (int g : named) {
        if (cls.at(g).contains(r.example)) {
          r.tag = StepTag::kReplay;
          break;
        }
      }
      if (r.tag == StepTag::kIllegal) ++illegal;
    }
    named.insert(r.output_index);
  }
  return illegal;
}

ProperVerdict score_proper_transcript(const ProperTranscript& tr,
                                      const HypothesisClass& cls,
                                      const Hypothesis& target,
                                      double quiet_tail) {
  ProperVerdict v;
  v.rounds = static_cast<int>(tr.rounds.size());

  std::set<int> named;
  int illegal = 0;
  std::map<int, bool> inside;  // named index -> support sits inside target
  for (const ProperRoundRecord& r : tr.rounds) {
    bool legal = target.contains(r.example);
    if (!legal) {
      for (int g : named) {
        if (cls.at(g).contains(r.example)) {
          legal = true;
          break;
        }
      }
    }
    if (!legal) ++illegal;

    auto it = inside.find(r.output_index);
    if (it == inside.end()) {
      it = inside.emplace(r.output_index,
                          subset_query(cls.at(r.output_index), target))
               .first;
    }
    if (!it->second) {
      v.mistake_times.push_back(r.t);
      v.last_mistake = r.t;
    }
    v.max_round_queries = std::max(v.max_round_queries, r.queries);
    named.insert(r.output_index);
  }
  v.legal_for_target = illegal == 0;
  v.clean_tail =
      v.rounds > 0 && v.last_mistake < tail_start(v.rounds, quiet_tail);
  v.success = v.legal_for_target && v.clean_tail;
  return v;
}

KillerCertificate certify_nonuniform_killer(const Transcript& tr,
                                            const HypothesisClass& hard_cls,
                                            int d) {
  KillerCertificate cert;
  Hypothesis roof = hard_cls.at(1);
  Hypothesis chain = hard_cls.at(d + 1);

  Transcript copy = tr;
  cert.legal_for_roof = retag_transcript(copy, roof) == 0;
  cert.legal_for_chain = retag_transcript(copy, chain) == 0;

  IndexSet presented;
  for (const RoundRecord& r : tr.rounds) {
    presented.insert(r.example.index());
    if (r.t < d) continue;
    bool miss_roof =
        !roof.contains(r.output) || presented.count(r.output.index()) > 0;
    bool miss_chain =
        !chain.contains(r.output) || presented.count(r.output.index()) > 0;
    if (!miss_roof && !miss_chain) cert.uncovered_rounds.push_back(r.t);
  }
  cert.dichotomy = cert.legal_for_roof && cert.legal_for_chain &&
                   cert.uncovered_rounds.empty() &&
                   static_cast<int>(tr.rounds.size()) >= d;
  return cert;
}

SeparationCertificate certify_separation(const Transcript& tr,
                                         const SeparationKiller& killer) {
  SeparationCertificate cert;
  Hypothesis target = killer.resolved_target();
  cert.target_name = target.name();
  cert.outcome = killer.outcome();

  Transcript copy = tr;
  cert.stream_legal = retag_transcript(copy, target) == 0;

  Verdict v = score_transcript(tr, target, Notion::kLimit);
  cert.total_mistakes = v.mistake_times.size();

  std::set<std::int64_t> escapes(killer.j_values().begin(),
                                 killer.j_values().end());
  for (const RoundRecord& r : tr.rounds) {
    if (r.output.is_int() && escapes.count(r.output.value()) > 0 &&
        !target.contains(r.output)) {
      cert.escape_mistake_rounds.push_back(r.t);
    }
  }
  return cert;
}

ProperKillerCertificate certify_proper_killer(const ProperTranscript& tr,
                                              const HypothesisClass& cls,
                                              const std::vector<int>& duals,
                                              double quiet_tail) {
  ProperKillerCertificate cert;
  for (int dual : duals) {
    Hypothesis target = cls.at(dual);
    ProperTranscript copy = tr;
    if (retag_proper_transcript(copy, cls, target) != 0) continue;
    cert.legal_duals.push_back(dual);

    ProperVerdict v = score_proper_transcript(tr, cls, target, quiet_tail);
    int start = tail_start(v.rounds, quiet_tail);
    std::set<int> when(v.mistake_times.begin(), v.mistake_times.end());
    bool all_tail = v.rounds > 0;
    for (int t = start; t <= v.rounds; ++t) {
      all_tail = all_tail && when.count(t) > 0;
    }
    if (all_tail) cert.persisting_duals.push_back(dual);
  }
  cert.holds = !cert.persisting_duals.empty();
  return cert;
}

}  // namespace replaygen
