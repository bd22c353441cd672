#include "replaygen/generator.hpp"

#include <algorithm>
#include <stdexcept>

namespace replaygen {

EchoUniformGenerator::EchoUniformGenerator(std::unique_ptr<Generator> base,
                                           int d_star)
    : base_(std::move(base)), d_star_(d_star) {
  if (!base_) throw std::invalid_argument("wrapper needs a base generator");
  if (d_star_ < 1) throw std::invalid_argument("density threshold must be >= 1");
  name_ = "echo_uniform(" + base_->name() + ")";
}

Element EchoUniformGenerator::step(const Element& x) {
  ++t_;
  queries_ = 0;
  if (triggered_) {
    Element o = base_->step(x);
    queries_ = base_->last_queries();
    return o;
  }
  buffer_.push_back(x);
  distinct_.insert(x.index());
  if (static_cast<int>(distinct_.size()) < d_star_) {
    return buffer_.front();
  }
  // Threshold round: hand the base the whole history; only its final answer
  // becomes this round's output.
  triggered_ = true;
  trigger_round_ = t_;
  Element o = buffer_.front();
  for (const Element& e : buffer_) {
    o = base_->step(e);
    queries_ += base_->last_queries();
  }
  buffer_.clear();
  return o;
}

ClosureUniformBase::ClosureUniformBase(HypothesisClass cls)
    : cls_(std::move(cls)) {
  if (!cls_.is_finite()) {
    throw std::invalid_argument("closure base needs a finite class");
  }
  name_ = "closure_uniform(" + cls_.name() + ")";
  live_.resize(static_cast<std::size_t>(*cls_.size()));
  for (int i = 1; i <= *cls_.size(); ++i) live_[static_cast<std::size_t>(i - 1)] = i;
  rebuild_meet();
}

void ClosureUniformBase::rebuild_meet() {
  if (live_.empty()) {
    meet_ = SymbolicSet{};
    return;
  }
  SymbolicSet acc = cls_.at(live_.front()).support().set();
  for (std::size_t k = 1; k < live_.size(); ++k) {
    acc = SymbolicSet::intersection(acc, cls_.at(live_[k]).support().set());
  }
  meet_ = std::move(acc);
}

Element ClosureUniformBase::step(const Element& x) {
  queries_ = 0;
  seen_.insert(x.index());
  std::vector<int> keep;
  keep.reserve(live_.size());
  for (int i : live_) {
    ++queries_;
    if (cls_.at(i).contains(x)) keep.push_back(i);
  }
  if (keep.size() != live_.size()) {
    live_ = std::move(keep);
    rebuild_meet();
  }
  auto used = [this](CanonicalIndex i) {
    return seen_.count(i) > 0 || out_.count(i) > 0;
  };
  std::optional<Element> pick =
      min_element_excluding(meet_, used, 0, &queries_);
  if (!pick) {
    fell_back_ = true;
    for (CanonicalIndex i = 1;; ++i) {
      ++queries_;
      if (!used(i)) {
        pick = deindex(i);
        break;
      }
    }
  }
  out_.insert(pick->index());
  return *pick;
}

ChainUniformBase::ChainUniformBase() : name_("chain_uniform") {}

Element ChainUniformBase::step(const Element& x) {
  queries_ = 0;
  seen_.insert(x.index());
  if (x.is_marker() || x.value() <= 0) poisoned_ = true;
  if (!poisoned_ && (least_ == 0 || x.value() < least_)) least_ = x.value();
  auto used = [this](CanonicalIndex i) {
    return seen_.count(i) > 0 || out_.count(i) > 0;
  };
  std::optional<Element> pick;
  if (!poisoned_) {
    SymbolicSet ray;
    ray.ints.add_up_ray(least_);
    pick = min_element_excluding(ray, used, 0, &queries_);
  }
  if (!pick) {
    for (CanonicalIndex i = 1;; ++i) {
      ++queries_;
      if (!used(i)) {
        pick = deindex(i);
        break;
      }
    }
  }
  out_.insert(pick->index());
  return *pick;
}

std::int64_t gb_step(std::int64_t b, const std::vector<std::int64_t>& history,
                     const std::vector<std::int64_t>& outputs) {
  bool seen_b = std::find(history.begin(), history.end(), b) != history.end();
  if (seen_b) {
    std::int64_t hi = static_cast<std::int64_t>(history.size());
    for (std::int64_t v : outputs) hi = std::max(hi, v);
    for (std::int64_t v : history) hi = std::max(hi, v);
    return hi + 1;
  }
  std::int64_t lo = b;
  for (std::int64_t v : outputs) lo = std::min(lo, v);
  for (std::int64_t v : history) lo = std::min(lo, v);
  return lo - 1;
}

CompositeGenerator::CompositeGenerator() : name_("composite_g") {}

Element CompositeGenerator::step(const Element& x) {
  if (x.is_marker()) {
    marker_high_ = std::max(marker_high_, x.level());
  } else {
    int_history_.push_back(x.value());
  }
  if (int_history_.empty()) {
    return Element::marker(marker_high_ + 1);
  }
  std::int64_t v = gb_step(marker_high_, int_history_, int_outputs_);
  int_outputs_.push_back(v);
  return Element::integer(v);
}

}  // namespace replaygen
