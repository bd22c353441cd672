#ifndef REPLAYGEN_ADVERSARY_HPP
#define REPLAYGEN_ADVERSARY_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "replaygen/classes.hpp"
#include "replaygen/element.hpp"
#include "replaygen/support_spec.hpp"

namespace replaygen {

// Example stream for the element-naming games. Each round the engine hands
// over every output so far and asks for the next example; nullopt means the
// adversary rests and the run ends early. produce() keeps the presentation
// record that legality and fairness checks read later.
class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual const std::string& name() const = 0;

  std::optional<Element> produce(const std::vector<Element>& outputs);

  const std::vector<Element>& presented() const { return presented_; }
  bool has_presented(const Element& e) const {
    return presented_idx_.count(e.index()) > 0;
  }

  // How much of the target support, walked in canonical order, has been
  // presented with no gaps. A stream that enumerates the support pushes
  // this without bound; a stalling one pins it.
  std::int64_t covered_prefix(const Hypothesis& target) const;

 protected:
  virtual std::optional<Element> next_example(
      const std::vector<Element>& outputs) = 0;

 private:
  std::vector<Element> presented_;
  IndexSet presented_idx_;
};

// Presents the target support in canonical order, one element per round.
class FairEnumerator : public Adversary {
 public:
  explicit FairEnumerator(Hypothesis target);
  const std::string& name() const override { return name_; }

 protected:
  std::optional<Element> next_example(const std::vector<Element>&) override;

 private:
  Hypothesis target_;
  SymbolicSet supp_;
  SymbolicCursor cursor_;
  std::string name_;
};

// Wraps a base stream and, at a seeded per-round rate, repeats one of the
// generator's own outputs instead of advancing the base. Echoed rounds are
// always legal; the base stream only moves when actually consulted.
class ReplayInjector : public Adversary {
 public:
  enum class Pick { kMostRecent, kRandom };

  ReplayInjector(std::unique_ptr<Adversary> base, int rate_permille,
                 std::uint64_t seed, Pick pick = Pick::kMostRecent);
  const std::string& name() const override { return name_; }

  std::int64_t injected() const { return injected_; }
  std::int64_t fresh_pulls() const { return fresh_; }
  const Adversary& base() const { return *base_; }

 protected:
  std::optional<Element> next_example(
      const std::vector<Element>& outputs) override;

 private:
  std::unique_ptr<Adversary> base_;
  int rate_;
  Pick pick_;
  std::mt19937_64 rng_;
  std::int64_t injected_ = 0;
  std::int64_t fresh_ = 0;
  std::string name_;
};

// Presents 1..d, then echoes the most recent output forever. Legal for both
// the full positive ray and the d-th chain member, which cannot both be
// served once the stream stops carrying fresh information.
class NonuniformKiller : public Adversary {
 public:
  explicit NonuniformKiller(int d);
  const std::string& name() const override { return name_; }
  int d() const { return d_; }

 protected:
  std::optional<Element> next_example(
      const std::vector<Element>& outputs) override;

 private:
  int d_;
  int t_ = 0;
  std::string name_;
};

// Marker-block hunter. Feeds markers until the generator emits one it has
// not seen (level z), reveals the missing markers up to z, then runs phases:
// phase n opens with the integer z - n and tails upward from just past the
// last escape J_{n-1}; a fresh integer output above J_{n-1} becomes J_n and
// starts the next phase. Whatever the generator does, some member of the
// marker-block family indicts it: the killer names that member afterwards.
class SeparationKiller : public Adversary {
 public:
  enum class Outcome { kRunning, kMarkerStall, kPhaseStall };

  explicit SeparationKiller(int stall_cap = 2000);
  const std::string& name() const override { return name_; }

  Outcome outcome() const { return outcome_; }
  std::int64_t z() const { return z_; }
  std::int64_t tau() const { return tau_; }
  int completed_phases() const { return phase_ > 0 ? phase_ - 1 : 0; }
  const std::vector<std::int64_t>& j_values() const { return j_values_; }

  // The family member the finished run is judged against. Markers-only if
  // the hunt never triggered; the capped phase's block if a phase stalled
  // or none completed; otherwise the bounded member all escapes J_k miss.
  Hypothesis resolved_target() const;

 protected:
  std::optional<Element> next_example(
      const std::vector<Element>& outputs) override;

 private:
  enum class State { kMarkers, kReveal, kOpener, kTail, kHalted };

  int stall_cap_;
  State state_ = State::kMarkers;
  Outcome outcome_ = Outcome::kRunning;
  std::int64_t tau_ = 0;          // markers presented so far
  std::int64_t z_ = 0;            // level of the escaping marker output
  std::int64_t reveal_next_ = 0;
  std::int64_t j_prev_ = 0;       // J_{n-1} while phase n runs
  int phase_ = 0;
  std::int64_t phase_rounds_ = 0;
  std::int64_t tail_next_ = 0;
  std::vector<std::int64_t> j_values_;
  std::set<std::int64_t> presented_ints_;
  std::string name_;
};

// Example stream for the index-naming games, fed the named indices instead
// of elements.
class ProperAdversary {
 public:
  virtual ~ProperAdversary() = default;
  virtual const std::string& name() const = 0;

  std::optional<Element> produce(const std::vector<int>& output_indices);
  const std::vector<Element>& presented() const { return presented_; }

 protected:
  virtual std::optional<Element> next_example(
      const std::vector<int>& output_indices) = 0;

 private:
  std::vector<Element> presented_;
};

// Four-member trap: opens with 0, reads which half of the class the first
// guess lands in, feeds two echoes that half explains away, then ramps into
// the opposite half. Both members of the opposite half stay legal targets,
// and the generator cannot serve both.
class ProperReplayKiller : public ProperAdversary {
 public:
  ProperReplayKiller();
  const std::string& name() const override { return name_; }

  bool branch_decided() const { return t_ >= 2; }
  bool minus_branch() const { return minus_; }
  std::vector<int> dual_targets() const;

 protected:
  std::optional<Element> next_example(
      const std::vector<int>& output_indices) override;

 private:
  int t_ = 0;
  bool minus_ = false;
  std::string name_;
};

}  // namespace replaygen

#endif
