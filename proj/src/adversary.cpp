#include "replaygen/adversary.hpp"

#include <algorithm>
#include <utility>

namespace replaygen {

std::optional<Element> Adversary::produce(const std::vector<Element>& outputs) {
  std::optional<Element> x = next_example(outputs);
  if (x) {
    presented_.push_back(*x);
    presented_idx_.insert(x->index());
  }
  return x;
}

std::int64_t Adversary::covered_prefix(const Hypothesis& target) const {
  std::int64_t covered = 0;
  std::int64_t limit = static_cast<std::int64_t>(presented_.size());
  for (SymbolicCursor c(target.support().set()); !c.done(); c.next()) {
    if (covered >= limit) break;  // cannot cover more than was shown
    if (presented_idx_.count(c.index()) == 0) break;
    ++covered;
  }
  return covered;
}

FairEnumerator::FairEnumerator(Hypothesis target)
    : target_(std::move(target)),
      supp_(target_.support().set()),
      cursor_(supp_),
      name_("fair(" + target_.name() + ")") {}

std::optional<Element> FairEnumerator::next_example(
    const std::vector<Element>&) {
  if (cursor_.done()) return std::nullopt;
  Element e = cursor_.element();
  cursor_.next();
  return e;
}

ReplayInjector::ReplayInjector(std::unique_ptr<Adversary> base,
                               int rate_permille, std::uint64_t seed,
                               Pick pick)
    : base_(std::move(base)),
      rate_(rate_permille),
      pick_(pick),
      rng_(seed),
      name_("inject[" + std::to_string(rate_permille) +
            (pick == Pick::kMostRecent ? ",recent](" : ",random](") +
            base_->name() + ")") {}

std::optional<Element> ReplayInjector::next_example(
    const std::vector<Element>& outputs) {
  if (!outputs.empty() && rate_ > 0 &&
      static_cast<int>(rng_() % 1000) < rate_) {
    ++injected_;
    if (pick_ == Pick::kMostRecent) return outputs.back();
    return outputs[static_cast<std::size_t>(rng_() % outputs.size())];
  }
  std::optional<Element> x = base_->produce(outputs);
  if (x) ++fresh_;
  return x;
}

NonuniformKiller::NonuniformKiller(int d)
    : d_(d), name_("nonuniform_killer[d=" + std::to_string(d) + "]") {}

std::optional<Element> NonuniformKiller::next_example(
    const std::vector<Element>& outputs) {
  ++t_;
  if (t_ <= d_) return Element::integer(t_);
  if (outputs.empty()) return std::nullopt;
  return outputs.back();
}

SeparationKiller::SeparationKiller(int stall_cap)
    : stall_cap_(stall_cap), name_("separation_killer") {}

std::optional<Element> SeparationKiller::next_example(
    const std::vector<Element>& outputs) {
  auto int_example = [&](std::int64_t v) {
    presented_ints_.insert(v);
    return Element::integer(v);
  };
  auto open_phase = [&]() {
    ++phase_;
    phase_rounds_ = 1;
    tail_next_ = j_prev_ + 1;
    state_ = State::kTail;
    return int_example(z_ - phase_);
  };

  switch (state_) {
    case State::kMarkers: {
      if (!outputs.empty() && outputs.back().is_marker() &&
          outputs.back().level() > tau_) {
        z_ = outputs.back().level();
        j_prev_ = z_;  // J_0
        reveal_next_ = tau_ + 1;
        state_ = State::kReveal;
        break;
      }
      if (tau_ >= stall_cap_) {
        state_ = State::kHalted;
        outcome_ = Outcome::kMarkerStall;
        return std::nullopt;
      }
      ++tau_;
      return Element::marker(tau_);
    }
    case State::kTail: {
      const Element& o = outputs.back();
      if (o.is_int() && o.value() > j_prev_ &&
          presented_ints_.count(o.value()) == 0) {
        j_values_.push_back(o.value());
        j_prev_ = o.value();
        return open_phase();
      }
      if (phase_rounds_ >= stall_cap_) {
        state_ = State::kHalted;
        outcome_ = Outcome::kPhaseStall;
        return std::nullopt;
      }
      ++phase_rounds_;
      return int_example(tail_next_++);
    }
    case State::kReveal:
    case State::kOpener:
      break;
    case State::kHalted:
      return std::nullopt;
  }

  if (state_ == State::kReveal) {
    if (reveal_next_ <= z_) return Element::marker(reveal_next_++);
    state_ = State::kOpener;
  }
  return open_phase();  // kOpener
}

Hypothesis SeparationKiller::resolved_target() const {
  if (z_ == 0) return marker_hypothesis();
  bool capped_phase = outcome_ == Outcome::kPhaseStall;
  if (completed_phases() >= 1 && !capped_phase) {
    std::set<std::int64_t> above;
    for (std::int64_t v : presented_ints_) {
      if (v > z_) above.insert(v);
    }
    return make_separation_hypothesis(z_, 2, above, std::nullopt);
  }
  std::set<std::int64_t> upto;
  for (std::int64_t v : presented_ints_) {
    if (v <= j_prev_) upto.insert(v);
  }
  return make_separation_hypothesis(z_ - 1, 1, upto, j_prev_);
}

std::optional<Element> ProperAdversary::produce(
    const std::vector<int>& output_indices) {
  std::optional<Element> x = next_example(output_indices);
  if (x) presented_.push_back(*x);
  return x;
}

ProperReplayKiller::ProperReplayKiller() : name_("proper_replay_killer") {}

std::vector<int> ProperReplayKiller::dual_targets() const {
  if (!branch_decided()) return {};
  return minus_ ? std::vector<int>{3, 4} : std::vector<int>{1, 2};
}

std::optional<Element> ProperReplayKiller::next_example(
    const std::vector<int>& output_indices) {
  ++t_;
  if (t_ == 1) return Element::integer(0);
  if (t_ == 2) minus_ = output_indices.front() <= 2;
  if (t_ <= 3) {
    // Echo bait sitting inside whichever half was just named.
    std::int64_t v = t_ - 1;
    return Element::integer(minus_ ? -v : v);
  }
  // The ramp into the opposite half, which the early guesses cannot hold.
  std::int64_t v = t_ - 3;
  return Element::integer(minus_ ? v : -v);
}

}  // namespace replaygen
