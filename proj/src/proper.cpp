#include "replaygen/proper.hpp"

#include "replaygen/errors.hpp"
#include "replaygen/support_spec.hpp"

namespace replaygen {

CountingOracle::CountingOracle(MembershipOracle& base, std::int64_t round_budget)
    : base_(base), budget_(round_budget) {}

void CountingOracle::begin_round(int t) {
  t_ = t;
  fresh_ = 0;
}

bool CountingOracle::member(int i, CanonicalIndex j) {
  auto key = std::make_pair(i, j);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  if (fresh_ + 1 > budget_) {
    throw QueryBudgetExceeded("round " + std::to_string(t_) +
                              " asked more than " + std::to_string(budget_) +
                              " fresh membership questions");
  }
  bool ans = base_.member(i, j);
  cache_.emplace(key, ans);
  ++fresh_;
  ++total_;
  log_.push_back({t_, i, j, ans});
  return ans;
}

int GreedyProperGenerator::step(CanonicalIndex example, bool sure,
                                MembershipOracle& oracle) {
  ++t_;
  if (sure && sure_seen_.insert(example).second) sure_.push_back(example);
  if (static_cast<int>(hyps_.size()) < t_) hyps_.resize(t_);
  for (int i = 1; i <= t_; ++i) {
    HypState& st = hyps_[static_cast<std::size_t>(i - 1)];
    if (st.dead) continue;
    while (st.checked < sure_.size()) {
      if (!oracle.member(i, sure_[st.checked])) {
        st.dead = true;
        break;
      }
      ++st.checked;
    }
    if (!st.dead) return i;
  }
  return 1;
}

CriticalProperGenerator::CriticalProperGenerator(HypothesisClass cls)
    : cls_(std::move(cls)) {}

bool CriticalProperGenerator::nested(int n, int i) {
  auto key = std::make_pair(n, i);
  auto it = nested_cache_.find(key);
  if (it != nested_cache_.end()) return it->second;
  bool ans = subset_query(cls_.at(n), cls_.at(i));
  nested_cache_.emplace(key, ans);
  return ans;
}

int CriticalProperGenerator::step(CanonicalIndex example, bool sure,
                                  MembershipOracle& oracle) {
  ++t_;
  if (sure && sure_seen_.insert(example).second) sure_.push_back(example);
  int limit = cls_.max_index_at(t_);
  if (static_cast<int>(dead_.size()) < limit) {
    dead_.resize(static_cast<std::size_t>(limit), false);
    checked_.resize(static_cast<std::size_t>(limit), 0);
  }
  std::vector<int> live;
  for (int i = 1; i <= limit; ++i) {
    std::size_t k = static_cast<std::size_t>(i - 1);
    if (dead_[k]) continue;
    while (checked_[k] < sure_.size()) {
      if (!oracle.member(i, sure_[checked_[k]])) {
        dead_[k] = true;
        break;
      }
      ++checked_[k];
    }
    if (!dead_[k]) live.push_back(i);
  }
  if (live.empty()) return 1;
  for (auto it = live.rbegin(); it != live.rend(); ++it) {
    int n = *it;
    bool ok = true;
    for (int i : live) {
      if (i >= n) break;
      if (!nested(n, i)) {
        ok = false;
        break;
      }
    }
    if (ok) return n;
  }
  return live.front();  // unreachable: the least live index always passes
}

}  // namespace replaygen
