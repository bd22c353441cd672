#ifndef REPLAYGEN_PROPER_HPP
#define REPLAYGEN_PROPER_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "replaygen/classes.hpp"

namespace replaygen {

// Membership questions "is instance j in supp(h_i)?". Class-backed games
// answer from supports; the table-builder game answers from its own table.
class MembershipOracle {
 public:
  virtual ~MembershipOracle() = default;
  virtual bool member(int hyp_index, CanonicalIndex instance) = 0;
};

class ClassOracle : public MembershipOracle {
 public:
  explicit ClassOracle(HypothesisClass cls) : cls_(std::move(cls)) {}
  bool member(int i, CanonicalIndex j) override {
    return cls_.at(i).contains(deindex(j));
  }

 private:
  HypothesisClass cls_;
};

struct QueryRecord {
  int t;
  int hyp;
  CanonicalIndex instance;
  bool answer;
};

// Caches answers so only first-time questions reach the wrapped oracle, and
// meters those against a per-round budget.
class CountingOracle : public MembershipOracle {
 public:
  explicit CountingOracle(MembershipOracle& base,
                          std::int64_t round_budget = 1'000'000);
  bool member(int i, CanonicalIndex j) override;

  void begin_round(int t);
  std::int64_t fresh_this_round() const { return fresh_; }
  std::int64_t total_fresh() const { return total_; }
  const std::vector<QueryRecord>& log() const { return log_; }

 private:
  MembershipOracle& base_;
  std::int64_t budget_;
  std::map<std::pair<int, CanonicalIndex>, bool> cache_;
  std::vector<QueryRecord> log_;
  int t_ = 0;
  std::int64_t fresh_ = 0;
  std::int64_t total_ = 0;
};

// A generator restricted to naming one of the class members each round.
// The harness supplies the sure flag (false when the example could be an
// echo of an earlier named support).
class ProperGenerator {
 public:
  virtual ~ProperGenerator() = default;
  virtual const std::string& name() const = 0;
  virtual int step(CanonicalIndex example, bool sure,
                   MembershipOracle& oracle) = 0;
};

// Smallest index whose support holds every sure example; 1 when none does.
// Consistency never returns once lost, so each (index, example) pair is
// checked at most once across the whole run.
class GreedyProperGenerator : public ProperGenerator {
 public:
  GreedyProperGenerator() = default;
  const std::string& name() const override {
    static const std::string n = "greedy_proper";
    return n;
  }
  int step(CanonicalIndex example, bool sure, MembershipOracle& oracle) override;

 private:
  struct HypState {
    std::size_t checked = 0;
    bool dead = false;
  };
  int t_ = 0;
  std::vector<CanonicalIndex> sure_;
  IndexSet sure_seen_;
  std::vector<HypState> hyps_;  // slot i-1 for index i
};

// Largest consistent index whose support sits inside every smaller
// consistent support; needs subset questions, so it is tied to a concrete
// class rather than a membership oracle.
class CriticalProperGenerator : public ProperGenerator {
 public:
  explicit CriticalProperGenerator(HypothesisClass cls);
  const std::string& name() const override {
    static const std::string n = "critical_proper";
    return n;
  }
  int step(CanonicalIndex example, bool sure, MembershipOracle& oracle) override;

 private:
  bool nested(int n, int i);

  HypothesisClass cls_;
  int t_ = 0;
  std::vector<CanonicalIndex> sure_;
  IndexSet sure_seen_;
  std::vector<bool> dead_;
  std::vector<std::size_t> checked_;
  std::map<std::pair<int, int>, bool> nested_cache_;
};

}  // namespace replaygen

#endif
