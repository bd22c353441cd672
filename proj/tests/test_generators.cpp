#include "replaygen/generator.hpp"

#include <vector>

#include "doctest.h"

using namespace replaygen;

namespace {

// Records what it is fed; answers 100+k on the k-th call.
class Recorder : public Generator {
 public:
  const std::string& name() const override {
    static const std::string n = "recorder";
    return n;
  }
  Element step(const Element& x) override {
    fed.push_back(x);
    return Element::integer(100 + static_cast<std::int64_t>(fed.size()));
  }
  std::vector<Element> fed;
};

}  // namespace

TEST_CASE("echo wrapper parrots the first example until the stream thickens") {
  auto rec = std::make_unique<Recorder>();
  Recorder* probe = rec.get();
  EchoUniformGenerator g(std::move(rec), 3);

  CHECK(g.step(Element::integer(7)) == Element::integer(7));
  CHECK(g.step(Element::integer(7)) == Element::integer(7));
  CHECK(g.step(Element::integer(4)) == Element::integer(7));
  CHECK_FALSE(g.triggered());
  CHECK(probe->fed.empty());

  // Third distinct example: the buffered history goes to the base in order
  // and only the final base answer surfaces.
  CHECK(g.step(Element::integer(9)) == Element::integer(104));
  CHECK(g.triggered());
  CHECK(g.trigger_round() == 4);
  REQUIRE(probe->fed.size() == 4);
  CHECK(probe->fed[0] == Element::integer(7));
  CHECK(probe->fed[1] == Element::integer(7));
  CHECK(probe->fed[2] == Element::integer(4));
  CHECK(probe->fed[3] == Element::integer(9));

  CHECK(g.step(Element::integer(2)) == Element::integer(105));
  CHECK(probe->fed.size() == 5);
}

TEST_CASE("echo wrapper with threshold 1 delegates immediately") {
  auto rec = std::make_unique<Recorder>();
  EchoUniformGenerator g(std::move(rec), 1);
  CHECK(g.step(Element::integer(7)) == Element::integer(101));
  CHECK(g.trigger_round() == 1);
}

TEST_CASE("closure base outputs the least unused element of the meet") {
  auto demos = make_uniform_demo_classes();
  ClosureUniformBase g(demos.at(0).cls);  // positives / negatives / markers
  CHECK(g.step(Element::integer(1)) == Element::integer(2));
  CHECK(g.consistent_indices() == std::vector<int>{1});
  CHECK(g.step(Element::integer(3)) == Element::integer(4));
  CHECK_FALSE(g.meet_exhausted());
}

TEST_CASE("closure base narrows to the shared horn before separation") {
  auto demos = make_uniform_demo_classes();
  ClosureUniformBase g(demos.at(1).cls);  // two horns meeting in [1, 3]
  // Both members live: the meet is [1, 3], so outputs stay inside it.
  CHECK(g.step(Element::integer(1)) == Element::integer(2));
  CHECK(g.consistent_indices().size() == 2);
  // A negative example kills the upward horn; the meet reopens to the whole
  // surviving support, whose least unused element in canonical order is -1.
  Element o = g.step(Element::integer(-5));
  CHECK(g.consistent_indices() == std::vector<int>{1});
  CHECK(o == Element::integer(-1));
}

TEST_CASE("closure base falls back once no member explains the stream") {
  auto demos = make_uniform_demo_classes();
  ClosureUniformBase g(demos.at(0).cls);
  CHECK(g.step(Element::marker(1)) == Element::marker(2));
  // An integer example now contradicts the marker member too.
  Element o = g.step(Element::integer(5));
  CHECK(g.consistent_indices().empty());
  CHECK(g.meet_exhausted());
  CHECK(o == Element::integer(0));  // least unused element of the whole domain
}

TEST_CASE("chain base tracks the least example") {
  ChainUniformBase g;
  CHECK(g.step(Element::integer(5)) == Element::integer(6));
  CHECK(g.step(Element::integer(3)) == Element::integer(4));
  CHECK(g.step(Element::integer(9)) == Element::integer(7));
}

TEST_CASE("chain base survives off-chain junk") {
  ChainUniformBase g;
  CHECK(g.step(Element::integer(2)) == Element::integer(3));
  Element o = g.step(Element::marker(1));
  CHECK(o == Element::integer(0));  // least unused domain element
}

TEST_CASE("pivot rule: pivot seen tops everything, pivot unseen digs below") {
  CHECK(gb_step(0, {0}, {}) == 2);    // max{t=1, 0} + 1
  CHECK(gb_step(0, {-3}, {}) == -4);  // min{0, -3} - 1
  CHECK(gb_step(0, {-3, -5}, {-4}) == -6);
  CHECK(gb_step(2, {7}, {}) == 1);  // min{2, 7} - 1
  CHECK(gb_step(3, {3, 1}, {0}) == 4);  // max{t=2, 3, 1, 0} + 1
  CHECK(gb_step(1, {1, 2, 3}, {4, 5}) == 6);
}

TEST_CASE("marker dispatch: all-marker history answers one level up") {
  CompositeGenerator g;
  CHECK(g.step(Element::marker(1)) == Element::marker(2));
  CHECK(g.step(Element::marker(3)) == Element::marker(4));
  CHECK(g.marker_high() == 3);
}

TEST_CASE("marker dispatch hands integers to the pivot rule") {
  CompositeGenerator g;
  CHECK(g.step(Element::marker(2)) == Element::marker(3));
  CHECK(g.step(Element::integer(7)) == Element::integer(1));
}

TEST_CASE("marker dispatch with no markers uses pivot zero") {
  CompositeGenerator g;
  CHECK(g.step(Element::integer(5)) == Element::integer(-1));
}

TEST_CASE("marker dispatch keeps its integer output history") {
  CompositeGenerator g;
  CHECK(g.step(Element::integer(-3)) == Element::integer(-4));
  CHECK(g.step(Element::integer(-5)) == Element::integer(-6));
}

TEST_CASE("stale marker examples repeat the same answer") {
  // The level-up reply depends only on the highest level seen, so a stalled
  // stream gets a stalled answer; adversaries wait for a fresh one.
  CompositeGenerator g;
  CHECK(g.step(Element::marker(1)) == Element::marker(2));
  CHECK(g.step(Element::marker(1)) == Element::marker(2));
}
