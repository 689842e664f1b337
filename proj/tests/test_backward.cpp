#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "iic/backward.hpp"
#include "iic/certify.hpp"

using namespace iic;
using iic_test::net_a;

namespace {
std::set<Marking> as_set(const std::vector<Marking>& v) { return {v.begin(), v.end()}; }
}  // namespace

TEST_SUITE("backward") {

TEST_CASE("pre_step") {
  PetriNet net = net_a();

  SUBCASE("adds the least predecessor of the frontier") {
    BackwardState st = backward_init(UpSet::from({Marking{0, 1}}));
    BackwardState next = pre_step(st, net);
    CHECK(as_set(next.current.basis()) == std::set<Marking>{Marking{0, 1}, Marking{1, 0}});
    REQUIRE(next.frontier.size() == 1);
    CHECK(next.frontier[0] == Marking{1, 0});
    REQUIRE(next.links.count(Marking{1, 0}) == 1);
    CHECK(next.links.at(Marking{1, 0}) == std::make_pair(std::size_t{0}, Marking{0, 1}));
  }
  SUBCASE("empty frontier is a fixpoint") {
    BackwardState st = backward_init(UpSet::from({Marking{0, 1}}));
    st.frontier.clear();
    BackwardState next = pre_step(st, net);
    CHECK(next.current == st.current);
    CHECK(next.frontier.empty());
  }
  SUBCASE("subsumed predecessors leave the frontier empty") {
    BackwardState st;
    st.current = UpSet::from({Marking{0, 2}, Marking{1, 1}, Marking{2, 0}});
    st.frontier = {Marking{2, 0}};  // its predecessor (3,0) is dominated
    BackwardState next = pre_step(st, net);
    CHECK(next.current == st.current);
    CHECK(next.frontier.empty());
  }
}

TEST_CASE("backward_check on the handoff net") {
  PetriNet net = net_a();

  SUBCASE("coverable in one round") {
    Verdict v = backward_check(net, UpSet::from({Marking{0, 1}}));
    REQUIRE(v.kind == VerdictKind::unsafe);
    CHECK(v.stats.steps == 1);
    REQUIRE(v.trace.steps.size() == 1);
    CHECK(v.trace.steps[0].state == Marking{1, 0});
    CHECK(v.trace.target_state == Marking{0, 1});
    CHECK(replay_trace(net, UpSet::from({Marking{0, 1}}), v.trace).ok);
  }
  SUBCASE("uncoverable at the fixpoint") {
    Verdict v = backward_check(net, UpSet::from({Marking{0, 2}}));
    REQUIRE(v.kind == VerdictKind::safe);
    CHECK(v.rule == "backward_fixpoint");
    CHECK(as_set(v.certificate.basis()) ==
          std::set<Marking>{Marking{0, 2}, Marking{1, 1}, Marking{2, 0}});
    CHECK(check_certificate(net, UpSet::from({Marking{0, 2}}), v.certificate).ok);
  }
  SUBCASE("target dominated by an initial marking: empty witness") {
    Verdict v = backward_check(net, UpSet::from({Marking{1, 0}}));
    REQUIRE(v.kind == VerdictKind::unsafe);
    CHECK(v.rule == "backward_init_covered");
    CHECK(v.trace.steps.empty());
  }
}

TEST_CASE("basis coverage only grows") {
  SplitMix64 rng(71);
  for (int round = 0; round < 40; ++round) {
    Instance inst = random_instance(rng.next(), GenBounds{3, 3, 2, 2});
    BackwardState st = backward_init(inst.target);
    Marking box = Marking::zeros(inst.net.place_count());
    for (std::size_t j = 0; j < box.size(); ++j) box[j] = 4;

    for (int iter = 0; iter < 6 && !st.frontier.empty(); ++iter) {
      BackwardState next = pre_step(st, inst.net);
      iic_test::for_each_below(box, [&](const Marking& m) {
        if (st.current.contains(m)) CHECK(next.current.contains(m));
      });
      st = std::move(next);
    }
  }
}

TEST_CASE("safe fixpoints certify; coverable traces replay") {
  SplitMix64 rng(72);
  for (int round = 0; round < 120; ++round) {
    Instance inst = random_instance(rng.next(), GenBounds{4, 4, 2, 2});
    Verdict v = backward_check(inst.net, inst.target);
    if (v.kind == VerdictKind::safe) {
      CHECK(check_certificate(inst.net, inst.target, v.certificate).ok);
    } else if (v.kind == VerdictKind::unsafe) {
      CHECK(replay_trace(inst.net, inst.target, v.trace).ok);
    }
  }
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(backward_check(net_a(), UpSet{}), UsageError);
  CHECK_THROWS_AS(backward_check(net_a(), UpSet::from({Marking{1, 2, 3}})), UsageError);
}

}  // TEST_SUITE
