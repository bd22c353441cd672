#ifndef REPLAYGEN_GENERATOR_HPP
#define REPLAYGEN_GENERATOR_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "replaygen/classes.hpp"
#include "replaygen/support_spec.hpp"

namespace replaygen {

// One player side of the game loop: consume the round's example, emit the
// round's output. Instances are single-use; build a fresh one per run.
class Generator {
 public:
  virtual ~Generator() = default;
  virtual const std::string& name() const = 0;
  virtual Element step(const Element& x) = 0;
  // Membership-oracle evaluations charged to the most recent step.
  virtual std::int64_t last_queries() const { return 0; }
};

// Parrots the first example until the stream has shown `d_star` distinct
// elements, then replays the buffered history into `base` and forwards its
// answers from that point on.
class EchoUniformGenerator : public Generator {
 public:
  EchoUniformGenerator(std::unique_ptr<Generator> base, int d_star);

  const std::string& name() const override { return name_; }
  Element step(const Element& x) override;
  std::int64_t last_queries() const override { return queries_; }

  bool triggered() const { return triggered_; }
  int trigger_round() const { return trigger_round_; }  // 0 until triggered

 private:
  std::unique_ptr<Generator> base_;
  int d_star_;
  std::string name_;
  std::vector<Element> buffer_;
  IndexSet distinct_;
  bool triggered_ = false;
  int trigger_round_ = 0;
  int t_ = 0;
  std::int64_t queries_ = 0;
};

// Closure rule over a finite class: keep the members consistent with every
// example seen, intersect their supports, and output the canonically least
// element of that meet which is neither an example nor a previous output.
// When the meet is exhausted (possible only on streams no member explains)
// it falls back to the least unused element of the whole domain so the game
// loop can keep scoring the run.
class ClosureUniformBase : public Generator {
 public:
  explicit ClosureUniformBase(HypothesisClass cls);

  const std::string& name() const override { return name_; }
  Element step(const Element& x) override;
  std::int64_t last_queries() const override { return queries_; }

  const std::vector<int>& consistent_indices() const { return live_; }
  bool meet_exhausted() const { return fell_back_; }

 private:
  void rebuild_meet();

  HypothesisClass cls_;
  std::string name_;
  std::vector<int> live_;
  SymbolicSet meet_;
  IndexSet seen_;
  IndexSet out_;
  bool fell_back_ = false;
  std::int64_t queries_ = 0;
};

// Same closure rule specialised to the chain {x > i-1}, i = 1, 2, ...: the
// meet of the consistent members is the ray at the least example, so the
// next output is the least integer above it that has not been used.
class ChainUniformBase : public Generator {
 public:
  ChainUniformBase();

  const std::string& name() const override { return name_; }
  Element step(const Element& x) override;
  std::int64_t last_queries() const override { return queries_; }

 private:
  std::string name_;
  bool poisoned_ = false;  // saw a marker or a non-positive integer
  std::int64_t least_ = 0;
  IndexSet seen_;
  IndexSet out_;
  std::int64_t queries_ = 0;
};

// Integer rule with pivot b over the history x_1..x_t and previous outputs
// o_1..o_{t-1}: once b has appeared it tops everything seen so far by one,
// otherwise it probes one below the least of {b} and everything seen.
std::int64_t gb_step(std::int64_t b, const std::vector<std::int64_t>& history,
                     const std::vector<std::int64_t>& outputs);

// Marker-dispatch wrapper around gb_step: while the history is all markers
// it answers with one marker level above the highest seen; once an integer
// appears it delegates to gb_step with pivot = highest marker level seen,
// feeding it only the integer parts of the history and of its own outputs.
class CompositeGenerator : public Generator {
 public:
  CompositeGenerator();

  const std::string& name() const override { return name_; }
  Element step(const Element& x) override;

  std::int64_t marker_high() const { return marker_high_; }

 private:
  std::string name_;
  std::int64_t marker_high_ = 0;
  std::vector<std::int64_t> int_history_;
  std::vector<std::int64_t> int_outputs_;
};

}  // namespace replaygen

#endif
