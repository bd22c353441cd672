#include "replaygen/classes.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace replaygen {

HypothesisClass HypothesisClass::finite(std::string name,
                                        std::vector<Hypothesis> members) {
  if (members.empty()) throw std::invalid_argument("empty hypothesis class");
  std::unordered_set<std::string> seen;
  for (const Hypothesis& h : members) {
    if (!seen.insert(h.name()).second) {
      throw std::invalid_argument("duplicate hypothesis name: " + h.name());
    }
  }
  HypothesisClass c;
  c.st_->name = std::move(name);
  c.st_->size = static_cast<int>(members.size());
  for (Hypothesis& h : members) c.st_->cache.push_back(std::move(h));
  return c;
}

HypothesisClass HypothesisClass::countable(
    std::string name, std::function<Hypothesis(int)> make_at) {
  if (!make_at) throw std::invalid_argument("null hypothesis maker");
  HypothesisClass c;
  c.st_->name = std::move(name);
  c.st_->make_at = std::move(make_at);
  return c;
}

int HypothesisClass::max_index_at(int t) const {
  if (t < 0) return 0;
  if (st_->size) return std::min(t, *st_->size);
  return t;
}

const Hypothesis& HypothesisClass::at(int index) const {
  if (index < 1) throw std::out_of_range("hypothesis index must be >= 1");
  if (st_->size && index > *st_->size) {
    throw std::out_of_range("hypothesis index past end of finite class");
  }
  std::lock_guard<std::mutex> lock(st_->mu);
  while (static_cast<int>(st_->cache.size()) < index) {
    st_->cache.push_back(st_->make_at(static_cast<int>(st_->cache.size()) + 1));
  }
  return st_->cache[static_cast<std::size_t>(index) - 1];
}

std::optional<int> HypothesisClass::index_of(
    const std::string& hyp_name) const {
  std::lock_guard<std::mutex> lock(st_->mu);
  for (std::size_t i = 0; i < st_->cache.size(); ++i) {
    if (st_->cache[i].name() == hyp_name) return static_cast<int>(i) + 1;
  }
  return std::nullopt;
}

HypothesisClass make_nonuniform_hard_class() {
  return HypothesisClass::countable("nonuniform_hard", [](int i) {
    if (i == 1) {
      return Hypothesis("h_inf", SupportBuilder().positives().build());
    }
    std::int64_t n = i - 1;
    return Hypothesis("h_" + std::to_string(n), SupportBuilder()
                                                    .include_int_range(1, n)
                                                    .ints_below(0)
                                                    .build());
  });
}

HypothesisClass make_proper_replay_class() {
  std::vector<Hypothesis> members;
  members.emplace_back("h1-",
                       SupportBuilder().nonpositives().include_int(1).build());
  members.emplace_back("h2-",
                       SupportBuilder().nonpositives().include_int(2).build());
  members.emplace_back("h1+",
                       SupportBuilder().nonnegatives().include_int(-1).build());
  members.emplace_back("h2+",
                       SupportBuilder().nonnegatives().include_int(-2).build());
  return HypothesisClass::finite("proper_replay", std::move(members));
}

namespace {

std::string int_set_str(const std::set<std::int64_t>& s) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (std::int64_t v : s) {
    if (!first) os << ",";
    os << v;
    first = false;
  }
  os << "}";
  return os.str();
}

}  // namespace

Hypothesis make_separation_hypothesis(std::int64_t b, int kind,
                                      const std::set<std::int64_t>& a_extra,
                                      std::optional<std::int64_t> j) {
  if (b < 0) throw std::invalid_argument("marker bound b must be >= 0");
  if (kind != 1 && kind != 2) throw std::invalid_argument("kind must be 1 or 2");
  SupportBuilder sb;
  std::ostringstream name;
  if (kind == 1) {
    if (!j) throw std::invalid_argument("kind 1 needs the ray cutoff j");
    if (*j <= b) throw std::invalid_argument("j must exceed b");
    sb.include_int(b).ints_above(*j);
    name << "sep1[b=" << b << ",j=" << *j << ",A=" << int_set_str(a_extra)
         << "]";
  } else {
    if (j) throw std::invalid_argument("j only applies to kind 1");
    if (a_extra.count(b) > 0) {
      throw std::invalid_argument("A must avoid b for kind 2");
    }
    sb.ints_below(b);
    name << "sep2[b=" << b << ",A=" << int_set_str(a_extra) << "]";
  }
  for (std::int64_t v : a_extra) sb.include_int(v);
  sb.markers_upto(b);
  return Hypothesis(name.str(), sb.build());
}

Hypothesis marker_hypothesis() {
  return Hypothesis("markers", SupportBuilder().all_markers().build());
}

HypothesisClass make_generic_countable(std::uint64_t seed) {
  std::string cname = "generic_" + std::to_string(seed);
  return HypothesisClass::countable(cname, [seed, cname](int i) {
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL +
                        static_cast<std::uint64_t>(i));
    SupportBuilder sb;
    int cap = std::min(i, 8);
    int k = static_cast<int>(rng() % static_cast<std::uint64_t>(cap + 1));
    for (int p = 0; p < k; ++p) {
      sb.include_int(static_cast<std::int64_t>(rng() % 61) - 30);
    }
    std::int64_t cutoff = static_cast<std::int64_t>(rng() % 21) - 10;
    if ((rng() & 1) == 0) {
      sb.ints_above(cutoff);
    } else {
      sb.ints_below(cutoff);
    }
    return Hypothesis(cname + "_h" + std::to_string(i), sb.build());
  });
}

HypothesisClass make_uniform_chain_class() {
  return HypothesisClass::countable("uniform_chain", [](int i) {
    return Hypothesis("c_" + std::to_string(i),
                      SupportBuilder().ints_above(i - 1).build());
  });
}

Hypothesis make_positive_plus(const std::set<std::int64_t>& negatives) {
  SupportBuilder sb;
  sb.positives();
  for (std::int64_t v : negatives) {
    if (v >= 0) throw std::invalid_argument("extra points must be negative");
    sb.include_int(v);
  }
  return Hypothesis("pos+" + int_set_str(negatives), sb.build());
}

std::vector<FiniteDemo> make_uniform_demo_classes() {
  std::vector<FiniteDemo> out;
  {
    // Pairwise disjoint supports: one genuine example pins the target.
    std::vector<Hypothesis> m;
    m.emplace_back("up", SupportBuilder().positives().build());
    m.emplace_back("down", SupportBuilder().ints_below(0).build());
    m.emplace_back("marks", SupportBuilder().all_markers().build());
    out.push_back({HypothesisClass::finite("split3", std::move(m)), 1});
  }
  {
    // Supports meet in {1,2,3}; any four distinct examples split them.
    std::vector<Hypothesis> m;
    m.emplace_back("low_horn", SupportBuilder()
                                   .ints_below(0)
                                   .include_int_range(1, 3)
                                   .build());
    m.emplace_back("high_horn", SupportBuilder().positives().build());
    out.push_back({HypothesisClass::finite("horns", std::move(m)), 4});
  }
  {
    // All pairwise intersections equal {0}; two distinct examples decide.
    std::vector<Hypothesis> m;
    m.emplace_back("mk0",
                   SupportBuilder().all_markers().include_int(0).build());
    m.emplace_back("right", SupportBuilder().nonnegatives().build());
    m.emplace_back("left", SupportBuilder().nonpositives().build());
    out.push_back({HypothesisClass::finite("meet0", std::move(m)), 2});
  }
  return out;
}

}  // namespace replaygen
