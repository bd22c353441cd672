#ifndef REPLAYGEN_CLASSES_HPP
#define REPLAYGEN_CLASSES_HPP

#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "replaygen/support_spec.hpp"

namespace replaygen {

// Finite or countably infinite indexed family of hypotheses. Indices are
// 1-based. Countable families materialize lazily; the maker must be pure so
// that index i names the same hypothesis on every call. Copies share one
// materialization cache.
class HypothesisClass {
 public:
  static HypothesisClass finite(std::string name,
                                std::vector<Hypothesis> members);
  static HypothesisClass countable(std::string name,
                                   std::function<Hypothesis(int)> make_at);

  const std::string& name() const { return st_->name; }
  bool is_finite() const { return st_->size.has_value(); }
  std::optional<int> size() const { return st_->size; }
  // Largest index a round-t player may consult: min(t, size).
  int max_index_at(int t) const;
  const Hypothesis& at(int index) const;  // throws on bad index

  // Index of the member with this name, for finite classes.
  std::optional<int> index_of(const std::string& hyp_name) const;

 private:
  struct State {
    std::string name;
    std::optional<int> size;
    std::function<Hypothesis(int)> make_at;
    mutable std::mutex mu;
    mutable std::deque<Hypothesis> cache;
  };
  HypothesisClass() : st_(std::make_shared<State>()) {}
  std::shared_ptr<State> st_;
};

// Chain h_1 ⊂ h_2 ⊂ ... with a maximal element placed first:
//   index 1      -> h_inf, support {1, 2, 3, ...}
//   index n + 1  -> h_n,   support {1..n} ∪ {x < 0}
// Natural numbers start at 1 here; 0 is in no member except via the negative
// ray of the finite-level members (which also excludes it: {x < 0}).
HypothesisClass make_nonuniform_hard_class();

// Four hypotheses over Z, indexed h1-, h2-, h1+, h2+:
//   hi-: {x <= 0} ∪ {i},  hi+: {x >= 0} ∪ {-i}.
HypothesisClass make_proper_replay_class();

// Marker-block families over Z ∪ markers. Kind 1 has support
// {b} ∪ A ∪ {x > j} with j > b; kind 2 has {x < b} ∪ A with b ∉ A.
// Both carry markers *^1..*^b. A is a finite set of integers.
Hypothesis make_separation_hypothesis(std::int64_t b, int kind,
                                      const std::set<std::int64_t>& a_extra,
                                      std::optional<std::int64_t> j);

// The all-markers hypothesis.
Hypothesis marker_hypothesis();

// Deterministic pseudo-random countable family: member i combines a seeded
// finite set of at most min(i, 8) integers with one seeded ray.
HypothesisClass make_generic_countable(std::uint64_t seed);

// Chain {x > 0} ⊃ ... with index i -> {x > i - 1}; uniformly generatable.
HypothesisClass make_uniform_chain_class();

// Member of the family {{x > 0} ∪ A : A ⊆ negatives}; pass the finite A.
Hypothesis make_positive_plus(const std::set<std::int64_t>& negatives);

// Three small finite classes with known distinct-example thresholds for the
// uniform wrapper: returns {class, threshold d_star} triples.
struct FiniteDemo {
  HypothesisClass cls;
  int d_star;
};
std::vector<FiniteDemo> make_uniform_demo_classes();

}  // namespace replaygen

#endif
