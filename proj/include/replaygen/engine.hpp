#ifndef REPLAYGEN_ENGINE_HPP
#define REPLAYGEN_ENGINE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "replaygen/adversary.hpp"
#include "replaygen/classes.hpp"
#include "replaygen/element.hpp"
#include "replaygen/generator.hpp"
#include "replaygen/proper.hpp"

namespace replaygen {

// How one presented example squares with a target: inside its support,
// a repeat of an earlier output, or neither (which indicts the stream,
// not the generator).
enum class StepTag { kSupport, kReplay, kIllegal };

enum class RunOutcome {
  kCompleted,         // horizon reached
  kAdversaryHalted,   // the stream rested early
  kProtocolViolation, // the generator broke the game contract
  kNonHaltingRound,   // a round blew its question budget
};

enum class Notion { kUniform, kNonuniform, kLimit };

const char* step_tag_name(StepTag tag);
const char* outcome_name(RunOutcome o);
const char* notion_name(Notion n);

StepTag validate_step(const Hypothesis& target,
                      const std::vector<Element>& prior_outputs,
                      const Element& x);

struct RoundRecord {
  int t = 0;
  Element example = Element::integer(0);
  StepTag tag = StepTag::kIllegal;  // meaningful after retagging
  Element output = Element::integer(0);
  std::int64_t queries = 0;
};

struct Transcript {
  std::string generator_id;
  std::string adversary_id;
  std::string class_id;
  std::string target_id;
  std::uint64_t seed = 0;
  int horizon = 0;
  RunOutcome outcome = RunOutcome::kCompleted;
  std::string detail;
  std::vector<RoundRecord> rounds;
};

// Plays generator against adversary for at most `horizon` rounds. Tags are
// left unset: targets may only be resolvable after the fact, so legality is
// stamped by retag_transcript.
Transcript run_game(Generator& gen, Adversary& adv, int horizon);

// Recomputes every round's tag against the given target and stamps its name
// into the transcript. Returns the number of illegal steps.
int retag_transcript(Transcript& tr, const Hypothesis& target);

struct ScoreParams {
  int d_star = 0;             // uniform notion: distinct-example threshold
  double quiet_tail = 0.25;   // final fraction that must be mistake-free
  std::int64_t min_frontier = 0;  // 0 = no enumeration demand
};

struct Verdict {
  Notion notion = Notion::kLimit;
  int rounds = 0;
  bool legal_for_target = false;
  std::vector<int> mistake_times;
  int last_mistake = 0;   // 0 = spotless
  int trigger_round = 0;  // uniform notion; 0 = threshold never reached
  bool clean_tail = false;
  std::int64_t frontier = 0;  // covered support prefix, canonical order
  bool enumeration_ok = false;
  std::int64_t max_round_queries = 0;
  bool success = false;
};

// Judges a finished run against a target. A mistake is an output outside
// the target support or one already presented as an example by that round.
Verdict score_transcript(const Transcript& tr, const Hypothesis& target,
                         Notion notion, const ScoreParams& params = {});

// Covered-prefix measurement on its own: how far the presented examples
// reach into the target support without a gap.
std::int64_t transcript_frontier(const Transcript& tr,
                                 const Hypothesis& target);

// --- Index-naming games ----------------------------------------------------

struct ProperRoundRecord {
  int t = 0;
  Element example = Element::integer(0);
  StepTag tag = StepTag::kIllegal;
  bool sure = false;  // example sits outside every earlier named support
  int output_index = 0;
  std::int64_t queries = 0;
};

struct ProperTranscript {
  std::string generator_id;
  std::string adversary_id;
  std::string class_id;
  std::string target_id;
  std::uint64_t seed = 0;
  int horizon = 0;
  RunOutcome outcome = RunOutcome::kCompleted;
  std::string detail;
  std::vector<ProperRoundRecord> rounds;
};

// Plays an index-naming generator against the stream. Membership questions
// go through a caching budget meter; sure flags are computed here, not
// trusted from the adversary.
ProperTranscript run_proper_game(ProperGenerator& gen, ProperAdversary& adv,
                                 const HypothesisClass& cls, int horizon,
                                 std::int64_t query_budget = 1'000'000);

// Legality for index-naming streams: inside the target support, or inside
// some support the generator itself named earlier.
int retag_proper_transcript(ProperTranscript& tr, const HypothesisClass& cls,
                            const Hypothesis& target);

struct ProperVerdict {
  int rounds = 0;
  bool legal_for_target = false;
  std::vector<int> mistake_times;  // named support does not sit inside the target
  int last_mistake = 0;
  bool clean_tail = false;
  std::int64_t max_round_queries = 0;
  bool success = false;
};

ProperVerdict score_proper_transcript(const ProperTranscript& tr,
                                      const HypothesisClass& cls,
                                      const Hypothesis& target,
                                      double quiet_tail = 0.25);

// --- Forced-failure certificates -------------------------------------------

// Echo-stream dichotomy on the chain-with-roof class: the stream must stay
// legal for both the roof and the d-th chain member, and from round d on
// every output must miss at least one of them.
struct KillerCertificate {
  bool legal_for_roof = false;
  bool legal_for_chain = false;
  std::vector<int> uncovered_rounds;  // rounds >= d fine for both targets
  bool dichotomy = false;
};
KillerCertificate certify_nonuniform_killer(const Transcript& tr,
                                            const HypothesisClass& hard_cls,
                                            int d);

// Marker-block run, judged against the member the killer resolves to.
// Escape rounds are the ones whose output became some J_k; each is checked
// to really miss the resolved support.
struct SeparationCertificate {
  std::string target_name;
  SeparationKiller::Outcome outcome = SeparationKiller::Outcome::kRunning;
  bool stream_legal = false;
  std::vector<int> escape_mistake_rounds;
  std::size_t total_mistakes = 0;
};
SeparationCertificate certify_separation(const Transcript& tr,
                                         const SeparationKiller& killer);

// Index-naming trap: at least one of the offered dual targets must accept
// the whole stream while the generator keeps missing it through the final
// stretch.
struct ProperKillerCertificate {
  std::vector<int> legal_duals;
  std::vector<int> persisting_duals;  // legal and mistaken on every tail round
  bool holds = false;
};
ProperKillerCertificate certify_proper_killer(const ProperTranscript& tr,
                                              const HypothesisClass& cls,
                                              const std::vector<int>& duals,
                                              double quiet_tail = 0.25);

}  // namespace replaygen

#endif
