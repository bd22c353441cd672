#ifndef REPLAYGEN_SYMBOLIC_SET_HPP
#define REPLAYGEN_SYMBOLIC_SET_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "replaygen/element.hpp"

namespace replaygen {

// Closed interval of int64 values. lo == kNegInf / hi == kPosInf mark rays.
constexpr std::int64_t kNegInf = INT64_MIN;
constexpr std::int64_t kPosInf = INT64_MAX;

struct Interval {
  std::int64_t lo;
  std::int64_t hi;
  bool operator==(const Interval& o) const { return lo == o.lo && hi == o.hi; }
};

// Subset of Z kept as sorted, disjoint, non-adjacent closed intervals.
// Rays are intervals with an infinite endpoint, so "{x > 3}" is [4, +inf).
// All operations are exact interval arithmetic; nothing scans element by
// element, which keeps membership and subset decisions O(intervals).
class LinearSet {
 public:
  LinearSet() = default;

  static LinearSet whole();
  static LinearSet of_point(std::int64_t v);
  static LinearSet of_range(std::int64_t lo, std::int64_t hi);

  void add_point(std::int64_t v);
  void add_range(std::int64_t lo, std::int64_t hi);  // throws if lo > hi
  void add_up_ray(std::int64_t start);               // {x : x >= start}
  void add_down_ray(std::int64_t end);               // {x : x <= end}
  void remove_point(std::int64_t v);
  void remove_range(std::int64_t lo, std::int64_t hi);

  bool contains(std::int64_t v) const;
  bool empty() const { return ivs_.empty(); }
  bool infinite() const;
  bool whole_line() const;
  std::size_t piece_count() const { return ivs_.size(); }
  const std::vector<Interval>& pieces() const { return ivs_; }

  bool bounded_below() const;
  bool bounded_above() const;
  // Smallest / largest value; only valid when the side is bounded and nonempty.
  std::int64_t min_value() const;
  std::int64_t max_value() const;

  // Smallest set value >= v, if any.
  std::optional<std::int64_t> succ(std::int64_t v) const;
  // Largest set value <= v, if any.
  std::optional<std::int64_t> pred(std::int64_t v) const;

  static LinearSet difference(const LinearSet& a, const LinearSet& b);
  static LinearSet intersection(const LinearSet& a, const LinearSet& b);
  static LinearSet unite(const LinearSet& a, const LinearSet& b);
  bool subset_of(const LinearSet& b) const;
  bool operator==(const LinearSet& o) const { return ivs_ == o.ivs_; }

 private:
  void insert(Interval iv);
  std::vector<Interval> ivs_;
};

// Ascending walk over a LinearSet whose values are all >= some finite floor
// (used for the marker axis, where levels start at 1).
class AscendingCursor {
 public:
  explicit AscendingCursor(const LinearSet& s);
  bool done() const { return done_; }
  std::int64_t value() const { return v_; }
  void next();

 private:
  const LinearSet* s_;
  std::size_t at_;
  std::int64_t v_;
  bool done_;
};

// Walk over the integer axis in canonical-index order: 0, +1, -1, +2, -2, ...
// Internally merges an ascending cursor over the nonnegative part with a
// descending one over the negative part, comparing canonical indices.
class CanonicalIntCursor {
 public:
  explicit CanonicalIntCursor(const LinearSet& s);
  bool done() const;
  std::int64_t value() const;
  CanonicalIndex index() const;
  void next();

 private:
  void settle();
  const LinearSet* s_;
  std::optional<std::int64_t> pos_;  // next candidate >= 0
  std::optional<std::int64_t> neg_;  // next candidate <= -1
  bool on_pos_;
};

// Two-axis set: integer points plus marker levels. May be finite or empty;
// the UUS guarantee lives one layer up in SupportSpec.
struct SymbolicSet {
  LinearSet ints;
  LinearSet markers;  // subset of [1, +inf)

  bool contains(const Element& e) const;
  bool empty() const { return ints.empty() && markers.empty(); }
  bool infinite() const { return ints.infinite() || markers.infinite(); }

  static SymbolicSet difference(const SymbolicSet& a, const SymbolicSet& b);
  static SymbolicSet intersection(const SymbolicSet& a, const SymbolicSet& b);
  static SymbolicSet unite(const SymbolicSet& a, const SymbolicSet& b);
  bool subset_of(const SymbolicSet& b) const;
  bool operator==(const SymbolicSet& o) const {
    return ints == o.ints && markers == o.markers;
  }
};

// Canonical-order walk over both axes of a SymbolicSet.
class SymbolicCursor {
 public:
  explicit SymbolicCursor(const SymbolicSet& s);
  bool done() const;
  Element element() const;
  CanonicalIndex index() const;
  void next();

 private:
  CanonicalIntCursor ints_;
  AscendingCursor markers_;
  bool marker_turn() const;
};

// Least element of a \ (b ∪ c) in canonical order, by interval jumps: no
// allocation, and excluded runs are skipped whole rather than element by
// element. Cost is O(pieces) across the three sets.
std::optional<Element> min_canonical_difference(const SymbolicSet& a,
                                                const SymbolicSet& b,
                                                const SymbolicSet& c);

// First element of s, in canonical order, whose index is not rejected by
// `excluded`. Stops at `cap` (inclusive) when cap > 0. `probes`, when given,
// accumulates how many candidates were inspected.
template <typename ExcludeFn>
std::optional<Element> min_element_excluding(const SymbolicSet& s,
                                             ExcludeFn&& excluded,
                                             CanonicalIndex cap = 0,
                                             std::int64_t* probes = nullptr) {
  for (SymbolicCursor c(s); !c.done(); c.next()) {
    if (cap > 0 && c.index() > cap) break;
    if (probes) ++*probes;
    if (!excluded(c.index())) return c.element();
  }
  return std::nullopt;
}

}  // namespace replaygen

#endif
