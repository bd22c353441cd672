#include "replaygen/symbolic_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace replaygen {

namespace {

CanonicalIndex int_index(std::int64_t v) {
  if (v > kMaxElementMagnitude || v < -kMaxElementMagnitude) {
    throw std::overflow_error("integer value outside indexable range");
  }
  if (v == 0) return 2;
  if (v > 0) return 4 * v;
  return 4 * (-v) + 2;
}

}  // namespace

LinearSet LinearSet::whole() {
  LinearSet s;
  s.ivs_.push_back({kNegInf, kPosInf});
  return s;
}

LinearSet LinearSet::of_point(std::int64_t v) {
  LinearSet s;
  s.add_point(v);
  return s;
}

LinearSet LinearSet::of_range(std::int64_t lo, std::int64_t hi) {
  LinearSet s;
  s.add_range(lo, hi);
  return s;
}

void LinearSet::add_point(std::int64_t v) { insert({v, v}); }

void LinearSet::add_range(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("interval lo > hi");
  insert({lo, hi});
}

void LinearSet::add_up_ray(std::int64_t start) { insert({start, kPosInf}); }

void LinearSet::add_down_ray(std::int64_t end) { insert({kNegInf, end}); }

void LinearSet::remove_point(std::int64_t v) { remove_range(v, v); }

void LinearSet::remove_range(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("interval lo > hi");
  LinearSet cut;
  cut.insert({lo, hi});
  *this = difference(*this, cut);
}

void LinearSet::insert(Interval iv) {
  std::int64_t lo_key = (iv.lo == kNegInf) ? kNegInf : iv.lo - 1;
  std::int64_t hi_key = (iv.hi == kPosInf) ? kPosInf : iv.hi + 1;
  auto first = std::lower_bound(
      ivs_.begin(), ivs_.end(), lo_key,
      [](const Interval& a, std::int64_t k) { return a.hi < k; });
  auto last = first;
  while (last != ivs_.end() && last->lo <= hi_key) {
    iv.lo = std::min(iv.lo, last->lo);
    iv.hi = std::max(iv.hi, last->hi);
    ++last;
  }
  auto pos = ivs_.erase(first, last);
  ivs_.insert(pos, iv);
}

bool LinearSet::contains(std::int64_t v) const {
  auto it = std::lower_bound(
      ivs_.begin(), ivs_.end(), v,
      [](const Interval& a, std::int64_t k) { return a.hi < k; });
  return it != ivs_.end() && it->lo <= v;
}

bool LinearSet::infinite() const {
  return !ivs_.empty() &&
         (ivs_.front().lo == kNegInf || ivs_.back().hi == kPosInf);
}

bool LinearSet::whole_line() const {
  return ivs_.size() == 1 && ivs_[0].lo == kNegInf && ivs_[0].hi == kPosInf;
}

bool LinearSet::bounded_below() const {
  return ivs_.empty() || ivs_.front().lo != kNegInf;
}

bool LinearSet::bounded_above() const {
  return ivs_.empty() || ivs_.back().hi != kPosInf;
}

std::int64_t LinearSet::min_value() const {
  if (empty() || !bounded_below()) {
    throw std::logic_error("min_value on empty or downward-infinite set");
  }
  return ivs_.front().lo;
}

std::int64_t LinearSet::max_value() const {
  if (empty() || !bounded_above()) {
    throw std::logic_error("max_value on empty or upward-infinite set");
  }
  return ivs_.back().hi;
}

std::optional<std::int64_t> LinearSet::succ(std::int64_t v) const {
  auto it = std::lower_bound(
      ivs_.begin(), ivs_.end(), v,
      [](const Interval& a, std::int64_t k) { return a.hi < k; });
  if (it == ivs_.end()) return std::nullopt;
  return std::max(v, it->lo);
}

std::optional<std::int64_t> LinearSet::pred(std::int64_t v) const {
  auto it = std::upper_bound(
      ivs_.begin(), ivs_.end(), v,
      [](std::int64_t k, const Interval& a) { return k < a.lo; });
  if (it == ivs_.begin()) return std::nullopt;
  --it;
  return std::min(v, it->hi);
}

LinearSet LinearSet::difference(const LinearSet& a, const LinearSet& b) {
  LinearSet out;
  std::size_t j = 0;
  for (const Interval& av : a.ivs_) {
    std::int64_t cur = av.lo;
    bool open = true;
    while (j < b.ivs_.size() && b.ivs_[j].hi < cur) ++j;
    std::size_t k = j;
    for (; k < b.ivs_.size() && b.ivs_[k].lo <= av.hi; ++k) {
      if (b.ivs_[k].lo > cur) out.ivs_.push_back({cur, b.ivs_[k].lo - 1});
      if (b.ivs_[k].hi == kPosInf) {
        open = false;
        break;
      }
      cur = b.ivs_[k].hi + 1;
      if (cur > av.hi) {
        open = false;
        break;
      }
    }
    if (open && cur <= av.hi) out.ivs_.push_back({cur, av.hi});
  }
  return out;
}

LinearSet LinearSet::intersection(const LinearSet& a, const LinearSet& b) {
  LinearSet out;
  std::size_t i = 0, j = 0;
  while (i < a.ivs_.size() && j < b.ivs_.size()) {
    const Interval& x = a.ivs_[i];
    const Interval& y = b.ivs_[j];
    std::int64_t lo = std::max(x.lo, y.lo);
    std::int64_t hi = std::min(x.hi, y.hi);
    if (lo <= hi) out.ivs_.push_back({lo, hi});
    if (x.hi < y.hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

LinearSet LinearSet::unite(const LinearSet& a, const LinearSet& b) {
  LinearSet out = a;
  for (const Interval& iv : b.ivs_) out.insert(iv);
  return out;
}

bool LinearSet::subset_of(const LinearSet& b) const {
  for (const Interval& av : ivs_) {
    auto it = std::lower_bound(
        b.ivs_.begin(), b.ivs_.end(), av.hi,
        [](const Interval& x, std::int64_t k) { return x.hi < k; });
    if (it == b.ivs_.end() || it->lo > av.lo) return false;
  }
  return true;
}

AscendingCursor::AscendingCursor(const LinearSet& s) : s_(&s), at_(0) {
  done_ = s.empty();
  if (!done_) {
    if (!s.bounded_below()) {
      throw std::logic_error("ascending cursor needs a set bounded below");
    }
    v_ = s.pieces()[0].lo;
  }
}

void AscendingCursor::next() {
  if (done_) return;
  const Interval& iv = s_->pieces()[at_];
  if (v_ < iv.hi) {
    if (v_ >= kMaxElementMagnitude) {
      throw std::overflow_error("ascending cursor left indexable range");
    }
    ++v_;
    return;
  }
  ++at_;
  if (at_ >= s_->piece_count()) {
    done_ = true;
    return;
  }
  v_ = s_->pieces()[at_].lo;
}

CanonicalIntCursor::CanonicalIntCursor(const LinearSet& s) : s_(&s) {
  pos_ = s.succ(0);
  neg_ = s.pred(-1);
  settle();
}

void CanonicalIntCursor::settle() {
  if (pos_ && neg_) {
    on_pos_ = int_index(*pos_) < int_index(*neg_);
  } else {
    on_pos_ = pos_.has_value();
  }
}

bool CanonicalIntCursor::done() const { return !pos_ && !neg_; }

std::int64_t CanonicalIntCursor::value() const {
  if (done()) throw std::logic_error("value() on exhausted cursor");
  return on_pos_ ? *pos_ : *neg_;
}

CanonicalIndex CanonicalIntCursor::index() const { return int_index(value()); }

void CanonicalIntCursor::next() {
  if (done()) return;
  if (on_pos_) {
    pos_ = (*pos_ >= kMaxElementMagnitude) ? std::nullopt
                                           : s_->succ(*pos_ + 1);
  } else {
    neg_ = (*neg_ <= -kMaxElementMagnitude) ? std::nullopt
                                            : s_->pred(*neg_ - 1);
  }
  settle();
}

bool SymbolicSet::contains(const Element& e) const {
  if (e.is_marker()) return markers.contains(e.level());
  return ints.contains(e.value());
}

SymbolicSet SymbolicSet::difference(const SymbolicSet& a, const SymbolicSet& b) {
  return {LinearSet::difference(a.ints, b.ints),
          LinearSet::difference(a.markers, b.markers)};
}

SymbolicSet SymbolicSet::intersection(const SymbolicSet& a,
                                      const SymbolicSet& b) {
  return {LinearSet::intersection(a.ints, b.ints),
          LinearSet::intersection(a.markers, b.markers)};
}

SymbolicSet SymbolicSet::unite(const SymbolicSet& a, const SymbolicSet& b) {
  return {LinearSet::unite(a.ints, b.ints),
          LinearSet::unite(a.markers, b.markers)};
}

bool SymbolicSet::subset_of(const SymbolicSet& b) const {
  return ints.subset_of(b.ints) && markers.subset_of(b.markers);
}

namespace {

// Piece of s covering v, or nullptr.
const Interval* covering(const LinearSet& s, std::int64_t v) {
  const auto& ps = s.pieces();
  auto it = std::upper_bound(
      ps.begin(), ps.end(), v,
      [](std::int64_t x, const Interval& iv) { return x < iv.lo; });
  if (it == ps.begin()) return nullptr;
  --it;
  return v <= it->hi ? &*it : nullptr;
}

// Least value >= from of a \ b \ c. Each blocked hit jumps past the whole
// blocking piece, so the loop runs at most pieces(b) + pieces(c) + 1 times.
std::optional<std::int64_t> asc_diff(const LinearSet& a, const LinearSet& b,
                                     const LinearSet& c, std::int64_t from) {
  std::optional<std::int64_t> v = a.succ(from);
  while (v) {
    const Interval* iv = covering(b, *v);
    if (iv == nullptr) iv = covering(c, *v);
    if (iv == nullptr) break;
    if (iv->hi == kPosInf) return std::nullopt;
    v = a.succ(iv->hi + 1);
  }
  return v;
}

// Greatest value <= from of a \ b \ c.
std::optional<std::int64_t> desc_diff(const LinearSet& a, const LinearSet& b,
                                      const LinearSet& c, std::int64_t from) {
  std::optional<std::int64_t> v = a.pred(from);
  while (v) {
    const Interval* iv = covering(b, *v);
    if (iv == nullptr) iv = covering(c, *v);
    if (iv == nullptr) break;
    if (iv->lo == kNegInf) return std::nullopt;
    v = a.pred(iv->lo - 1);
  }
  return v;
}

}  // namespace

std::optional<Element> min_canonical_difference(const SymbolicSet& a,
                                                const SymbolicSet& b,
                                                const SymbolicSet& c) {
  // Three ascending fronts: markers go up, non-negative ints go up, negative
  // ints go down; each front is already in canonical order, so the answer is
  // whichever head has the least index.
  std::optional<std::int64_t> mk = asc_diff(a.markers, b.markers, c.markers, 1);
  std::optional<std::int64_t> nn = asc_diff(a.ints, b.ints, c.ints, 0);
  std::optional<std::int64_t> ng = desc_diff(a.ints, b.ints, c.ints, -1);
  std::optional<Element> best;
  CanonicalIndex best_idx = 0;
  auto offer = [&](Element e) {
    if (!best || e.index() < best_idx) {
      best = e;
      best_idx = e.index();
    }
  };
  if (mk) offer(Element::marker(*mk));
  if (nn) offer(Element::integer(*nn));
  if (ng) offer(Element::integer(*ng));
  return best;
}

SymbolicCursor::SymbolicCursor(const SymbolicSet& s)
    : ints_(s.ints), markers_(s.markers) {}

bool SymbolicCursor::done() const { return ints_.done() && markers_.done(); }

bool SymbolicCursor::marker_turn() const {
  if (markers_.done()) return false;
  if (ints_.done()) return true;
  return 2 * markers_.value() - 1 < ints_.index();
}

Element SymbolicCursor::element() const {
  if (done()) throw std::logic_error("element() on exhausted cursor");
  if (marker_turn()) return Element::marker(markers_.value());
  return Element::integer(ints_.value());
}

CanonicalIndex SymbolicCursor::index() const {
  if (done()) throw std::logic_error("index() on exhausted cursor");
  if (marker_turn()) return 2 * markers_.value() - 1;
  return ints_.index();
}

void SymbolicCursor::next() {
  if (done()) return;
  if (marker_turn()) {
    markers_.next();
  } else {
    ints_.next();
  }
}

}  // namespace replaygen
