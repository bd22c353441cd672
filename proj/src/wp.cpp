#include "replaygen/wp.hpp"

#include <algorithm>
#include <stdexcept>

#include "replaygen/errors.hpp"

namespace replaygen {

IndexSet update_sure_set(const IndexSet& s, const IndexSet& o,
                         const Element& x) {
  IndexSet out = s;
  if (o.count(x.index()) == 0) out.insert(x.index());
  return out;
}

std::map<std::pair<int, int>, Element> witness_set(const std::vector<int>& v,
                                                   CanonicalIndex m,
                                                   const IndexSet& o,
                                                   const HypothesisClass& cls) {
  std::map<std::pair<int, int>, Element> w;
  if (m < 1) return w;
  for (int i : v) {
    std::vector<Element> upper = cls.at(i).support().prefix(m);
    for (int j : v) {
      if (j >= i) continue;
      IndexSet cover;
      for (const Element& e : cls.at(j).support().prefix(m)) {
        cover.insert(e.index());
      }
      for (const Element& e : upper) {
        if (cover.count(e.index()) || o.count(e.index())) continue;
        w.emplace(std::make_pair(i, j), e);  // ascending walk: first hit is least
        break;
      }
    }
  }
  return w;
}

bool is_tm_critical(int n, int t, CanonicalIndex m, const IndexSet& s,
                    const IndexSet& o, const HypothesisClass& cls) {
  if (n < 1 || n > t) throw std::invalid_argument("index outside 1..t");
  auto consistent = [&](int i) {
    const Hypothesis& h = cls.at(i);
    for (CanonicalIndex idx : s) {
      if (!h.contains(deindex(idx))) return false;
    }
    return true;
  };
  if (!consistent(n)) return false;
  if (m < 1) return true;
  std::vector<Element> mine = cls.at(n).support().prefix(m);
  for (int i = 1; i < n; ++i) {
    if (!consistent(i)) continue;
    IndexSet cover;
    for (const Element& e : cls.at(i).support().prefix(m)) {
      cover.insert(e.index());
    }
    for (const Element& e : mine) {
      if (cover.count(e.index()) == 0 && o.count(e.index()) == 0) return false;
    }
  }
  return true;
}

WpGenerator::WpGenerator(HypothesisClass cls, Mode mode, std::int64_t query_cap)
    : cls_(std::move(cls)), mode_(mode), query_cap_(query_cap) {
  name_ = (mode_ == Mode::kWitnessProtected ? std::string("wp(")
                                            : std::string("baseline_limit(")) +
          cls_.name() + ")";
}

void WpGenerator::charge(std::int64_t n) {
  trace_.queries += n;
  if (trace_.queries > query_cap_) {
    throw QueryBudgetExceeded("round " + std::to_string(t_) + " spent more than " +
                              std::to_string(query_cap_) +
                              " membership evaluations");
  }
}

bool WpGenerator::sure_add(const Element& x) {
  if (mode_ == Mode::kWitnessProtected && o_idx_.count(x.index()) > 0) {
    return false;
  }
  if (!s_idx_.insert(x.index()).second) return false;
  if (x.is_marker()) {
    s_set_.markers.add_point(x.level());
  } else {
    s_set_.ints.add_point(x.value());
  }
  return true;
}

void WpGenerator::drop_witness(CanonicalIndex cand) {
  auto wc = witness_count_.find(cand);
  if (wc != witness_count_.end() && --wc->second == 0) {
    witness_count_.erase(wc);
  }
}

void WpGenerator::evict(int n) {
  auto own = books_.find(n);
  if (own != books_.end()) {
    for (const auto& [lo, cand] : own->second.cands) {
      if (cand != kNoCandidate) drop_witness(cand);
    }
    books_.erase(own);
  }
  for (int hi : active_) {
    if (hi <= n) continue;
    auto bit = books_.find(hi);
    if (bit == books_.end()) continue;
    PairBook& book = bit->second;
    auto ce = std::find_if(book.cands.begin(), book.cands.end(),
                           [n](const auto& p) { return p.first == n; });
    if (ce == book.cands.end()) continue;
    const CanonicalIndex cand = ce->second;
    *ce = book.cands.back();
    book.cands.pop_back();
    if (cand != kNoCandidate) {
      drop_witness(cand);
      if (cand == book.min_cand) {
        book.min_cand = kNoMinimum;
        for (const auto& [lo, c] : book.cands) {
          if (c != kNoCandidate && c < book.min_cand) book.min_cand = c;
        }
      }
    }
  }
  active_.erase(std::find(active_.begin(), active_.end(), n));
}

void WpGenerator::admit_upto(int t) {
  if (cls_.max_index_at(t) < t) return;  // finite class already exhausted
  const Hypothesis& h = cls_.at(t);
  charge(static_cast<std::int64_t>(s_idx_.size()));
  if (!s_set_.subset_of(h.support().set())) return;
  PairBook book;
  book.cands.reserve(active_.size());
  static const SymbolicSet kNothing;
  const SymbolicSet& skip =
      mode_ == Mode::kWitnessProtected ? o_set_ : kNothing;
  for (int lo : active_) {
    // Same candidate min_difference would walk to, but by interval jumps:
    // long stretches of own outputs inside a pair difference are common and
    // testing them one element at a time would dominate the round.
    charge(1);
    std::optional<Element> cand = min_canonical_difference(
        h.support().set(), cls_.at(lo).support().set(), skip);
    if (cand) {
      const CanonicalIndex ci = cand->index();
      book.cands.emplace_back(lo, ci);
      if (ci < book.min_cand) book.min_cand = ci;
      ++witness_count_[ci];
    } else {
      book.cands.emplace_back(lo, kNoCandidate);
    }
  }
  books_.emplace(t, std::move(book));
  active_.push_back(t);
}

Element WpGenerator::fallback_output() {
  if (s_idx_.empty()) {
    throw ProtocolViolation("round " + std::to_string(t_) +
                            ": no consistent hypothesis and no sure example");
  }
  CanonicalIndex best = *s_idx_.begin();
  for (CanonicalIndex i : s_idx_) best = std::min(best, i);
  return deindex(best);
}

CanonicalIndex WpGenerator::rank(int n) const {
  auto it = books_.find(n);
  return it == books_.end() ? kNoMinimum : it->second.min_cand;
}

Element WpGenerator::scan_support(int n) {
  // Sure examples and own outputs are subtracted as runs up front; only the
  // witness bar still needs a per-candidate test, and witnesses are few.
  SymbolicSet rest =
      SymbolicSet::difference(cls_.at(n).support().set(), s_set_);
  rest = SymbolicSet::difference(rest, o_set_);
  std::int64_t probes = 0;
  std::optional<Element> e;
  for (SymbolicCursor c(rest); !c.done(); c.next()) {
    ++probes;
    if (mode_ == Mode::kWitnessProtected && witness_count_.count(c.index())) {
      continue;
    }
    e = c.element();
    break;
  }
  charge(probes);
  if (!e) throw std::logic_error("infinite support ran out of elements");
  return *e;
}

Element WpGenerator::step(const Element& x) {
  ++t_;
  trace_ = WpRoundTrace{};
  trace_.t = t_;
  trace_.sure = sure_add(x);
  if (trace_.sure) {
    std::vector<int> dead;
    for (int n : active_) {
      charge(1);
      if (!cls_.at(n).contains(x)) dead.push_back(n);
    }
    for (int n : dead) evict(n);
  }
  admit_upto(t_);

  Element out = Element::integer(0);
  if (active_.empty()) {
    trace_.fallback = true;
    out = fallback_output();
  } else {
    m_ = std::max(m_, x.index());
    // Literal rule: bump m until the largest index that is critical at m has
    // an unexcluded support element inside the prefix. Exclusions do not
    // move while m grows within a round, so the first productive m for each
    // candidate index is known in advance and the walk can jump straight to
    // it; each index is visited at most once, largest first.
    CanonicalIndex mc = m_ + 1;
    bool found = false;
    for (auto it = active_.rbegin(); it != active_.rend(); ++it) {
      int n = *it;
      CanonicalIndex r = rank(n);
      if (r <= mc) continue;  // already lost criticality at this prefix
      Element cand = scan_support(n);
      if (cand.index() < r) {
        m_ = std::max(mc, cand.index());
        trace_.critical_index = n;
        out = cand;
        found = true;
        break;
      }
      mc = r;  // n sheds criticality before its candidate becomes visible
    }
    if (!found) {
      throw std::logic_error("no critical index produced an output");
    }
  }
  o_idx_.insert(out.index());
  if (out.is_marker()) {
    o_set_.markers.add_point(out.level());
  } else {
    o_set_.ints.add_point(out.value());
  }
  trace_.m = m_;
  trace_.live = active_;
  return out;
}

std::vector<CanonicalIndex> WpGenerator::witness_indices() const {
  std::vector<CanonicalIndex> out;
  out.reserve(witness_count_.size());
  for (const auto& [idx, cnt] : witness_count_) {
    if (cnt > 0) out.push_back(idx);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::unique_ptr<WpGenerator> make_wp_generator(HypothesisClass cls,
                                               std::int64_t query_cap) {
  return std::make_unique<WpGenerator>(std::move(cls),
                                       WpGenerator::Mode::kWitnessProtected,
                                       query_cap);
}

std::unique_ptr<WpGenerator> make_baseline_generator(HypothesisClass cls,
                                                     std::int64_t query_cap) {
  return std::make_unique<WpGenerator>(std::move(cls),
                                       WpGenerator::Mode::kTrustEverything,
                                       query_cap);
}

}  // namespace replaygen
