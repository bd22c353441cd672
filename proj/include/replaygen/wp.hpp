#ifndef REPLAYGEN_WP_HPP
#define REPLAYGEN_WP_HPP

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "replaygen/classes.hpp"
#include "replaygen/generator.hpp"

namespace replaygen {

// --- Definitional forms of the per-round bookkeeping -----------------------
//
// These compute each quantity straight from its defining formula, with no
// caching. The generator below reproduces them incrementally; tests pin the
// two against each other.

// S grows by x only when x is not an earlier output (an output echoed back
// could be the adversary recycling us, so it proves nothing).
IndexSet update_sure_set(const IndexSet& s, const IndexSet& o,
                         const Element& x);

// For every ordered pair i > j of live indices, the least element of
// supp(h_i) restricted to canonical index <= m that is in neither
// supp(h_j) nor o. Pairs with an empty difference are absent.
std::map<std::pair<int, int>, Element> witness_set(const std::vector<int>& v,
                                                   CanonicalIndex m,
                                                   const IndexSet& o,
                                                   const HypothesisClass& cls);

// h_n is critical at (t, m): the sure set fits inside supp(h_n), and for
// every smaller index whose support also holds the sure set, the prefix of
// supp(h_n) up to m is covered by that support's prefix together with o.
bool is_tm_critical(int n, int t, CanonicalIndex m, const IndexSet& s,
                    const IndexSet& o, const HypothesisClass& cls);

// --- Incremental generator -------------------------------------------------

struct WpRoundTrace {
  int t = 0;
  bool sure = false;           // x_t joined the sure set this round
  bool fallback = false;       // no live hypothesis; echoed least sure element
  CanonicalIndex m = 0;        // prefix bound after the round
  int critical_index = 0;      // chosen n, 0 on fallback
  std::int64_t queries = 0;    // oracle charge for the round
  std::vector<int> live;       // consistent indices after the round
};

// Limit generator over a countable (or finite) class. Two modes:
//
//  - kWitnessProtected: only examples that cannot be echoes of previous
//    outputs count as sure, pair differences are taken modulo previous
//    outputs, and candidate witnesses are barred from being output.
//  - kTrustEverything: every example counts as sure and outputs play no
//    role in pair differences or criticality. This is the rule the replay
//    adversary punishes; it is kept as the contrast baseline.
//
// Internals are incremental but match the definitional forms above: live
// indices only ever shrink for a given index, each ordered pair's witness
// candidate is computed once when the pair forms (outputs can never
// invalidate it because candidates are barred from being output), and the
// critical index for a prefix bound m is the largest live n whose pair
// candidates all sit above m.
class WpGenerator : public Generator {
 public:
  enum class Mode { kWitnessProtected, kTrustEverything };

  explicit WpGenerator(HypothesisClass cls,
                       Mode mode = Mode::kWitnessProtected,
                       std::int64_t query_cap = 1'000'000);

  const std::string& name() const override { return name_; }
  Element step(const Element& x) override;
  std::int64_t last_queries() const override { return trace_.queries; }

  Mode mode() const { return mode_; }
  const IndexSet& sure_indices() const { return s_idx_; }
  const IndexSet& output_indices() const { return o_idx_; }
  CanonicalIndex prefix_m() const { return m_; }
  const std::vector<int>& live_indices() const { return active_; }
  const WpRoundTrace& last_trace() const { return trace_; }
  // Current witness candidates across all live pairs, ascending.
  std::vector<CanonicalIndex> witness_indices() const;

 private:
  static constexpr CanonicalIndex kNoCandidate = -1;
  static constexpr CanonicalIndex kNoMinimum =
      std::numeric_limits<CanonicalIndex>::max();

  struct PairBook {
    // (lower index, witness candidate) pairs, unordered; pairs whose
    // difference is empty carry kNoCandidate. Flat on purpose: one entry is
    // appended per live index per admission, so node containers here turn
    // into an allocation per pair and dominate long runs.
    std::vector<std::pair<int, CanonicalIndex>> cands;
    CanonicalIndex min_cand = kNoMinimum;  // least real candidate, cached
  };

  void charge(std::int64_t n);
  bool sure_add(const Element& x);
  void drop_witness(CanonicalIndex cand);
  void evict(int n);
  void admit_upto(int t);
  Element fallback_output();
  CanonicalIndex rank(int n) const;
  Element scan_support(int n);

  HypothesisClass cls_;
  Mode mode_;
  std::int64_t query_cap_;
  std::string name_;

  int t_ = 0;
  CanonicalIndex m_ = 0;
  IndexSet s_idx_;
  IndexSet o_idx_;
  SymbolicSet s_set_;
  SymbolicSet o_set_;  // outputs as runs, for bulk subtraction
  std::vector<int> active_;  // ascending
  std::unordered_map<int, PairBook> books_;
  std::unordered_map<CanonicalIndex, int> witness_count_;
  WpRoundTrace trace_;
};

std::unique_ptr<WpGenerator> make_wp_generator(HypothesisClass cls,
                                               std::int64_t query_cap =
                                                   1'000'000);
std::unique_ptr<WpGenerator> make_baseline_generator(HypothesisClass cls,
                                                     std::int64_t query_cap =
                                                         1'000'000);

}  // namespace replaygen

#endif
