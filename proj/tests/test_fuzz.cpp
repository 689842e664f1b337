#include "doctest.h"
#include "helpers.hpp"
#include "iic/explore.hpp"
#include "iic/fuzz.hpp"
#include "iic/mist_io.hpp"

using namespace iic;
using iic_test::net_a;

TEST_SUITE("fuzz") {

TEST_CASE("random_instance is deterministic in the seed") {
  for (std::uint64_t seed : {1ull, 42ull, 0xdeadbeefull}) {
    Instance a = random_instance(seed);
    Instance b = random_instance(seed);
    CHECK(emit_spec(a.net, a.target) == emit_spec(b.net, b.target));
  }
  CHECK(emit_spec(random_instance(1).net, random_instance(1).target) !=
        emit_spec(random_instance(2).net, random_instance(2).target));
}

TEST_CASE("random_instance respects the bounds") {
  SplitMix64 rng(3);
  for (int i = 0; i < 200; ++i) {
    GenBounds b{4, 5, 2, 3};
    Instance inst = random_instance(rng.next(), b);
    CHECK(inst.net.place_count() >= 1);
    CHECK(inst.net.place_count() <= b.places);
    CHECK(inst.net.transitions.size() >= 1);
    CHECK(inst.net.transitions.size() <= b.transitions);
    CHECK_NOTHROW(inst.net.validate());
    for (const Transition& t : inst.net.transitions) {
      for (std::size_t j = 0; j < t.guard.size(); ++j) {
        CHECK(t.guard[j] <= b.weight);
        CHECK(t.guard[j] + t.delta[j] <= static_cast<TokenDelta>(b.weight));
      }
    }
    CHECK_FALSE(inst.target.empty());
  }
  CHECK_NOTHROW(random_instance(7, GenBounds{1, 1, 1, 1}));
  CHECK_THROWS_AS(random_instance(7, GenBounds{0, 1, 1, 1}), UsageError);
}

TEST_CASE("explore_cover") {
  PetriNet net = net_a();
  SUBCASE("exact on a net whose reachable set fits the box") {
    ExploreResult r = explore_cover(net, UpSet::from({Marking{0, 2}}), 10);
    CHECK(r.outcome == ExploreOutcome::uncoverable);
    CHECK(r.states == 2);  // (1,0) and (0,1)
    CHECK(explore_cover(net, UpSet::from({Marking{0, 1}}), 10).outcome ==
          ExploreOutcome::coverable);
  }
  SUBCASE("escaping the box is reported, not decided") {
    PetriNet grower = net_a();
    grower.transitions = {iic_test::make_t({0, 0}, {1, 0})};
    CHECK(explore_cover(grower, UpSet::from({Marking{0, 5}}), 3).outcome ==
          ExploreOutcome::out_of_box);
  }
  SUBCASE("a covering marking one step past the box still wins") {
    PetriNet grower = net_a();
    grower.transitions = {iic_test::make_t({0, 0}, {1, 0})};
    CHECK(explore_cover(grower, UpSet::from({Marking{4, 0}}), 3).outcome ==
          ExploreOutcome::coverable);
  }
}

TEST_CASE("a short differential run agrees everywhere") {
  FuzzOptions opts;
  opts.count = 60;
  opts.seed = 9;
  opts.enum_oracle = true;
  FuzzReport report = run_differential_fuzz(opts);
  CHECK(report.ok());
  CHECK(report.instances == 60);
  CHECK(report.safe + report.unsafe == 60);
  CHECK(report.enum_checked > 0);
  CHECK(report.budget_hits == 0);
}

TEST_CASE("count zero is a no-op") {
  FuzzOptions opts;
  opts.count = 0;
  FuzzReport report = run_differential_fuzz(opts);
  CHECK(report.ok());
  CHECK(report.instances == 0);
}

TEST_CASE("an injected verdict corruption is caught with a reproducer") {
  FuzzOptions opts;
  opts.count = 10;
  opts.seed = 42;
  opts.inject_bug = true;
  FuzzReport report = run_differential_fuzz(opts);
  REQUIRE_FALSE(report.ok());
  CHECK(report.failure->index == 0);
  CHECK(report.failure->reason.find("disagreement") != std::string::npos);
  // the reproducer is a well-formed instance
  SpecFile back = parse_spec(report.failure->spec_text);
  CHECK(back.net.place_count() >= 1);
}

TEST_CASE("failures re-trigger from the reported seed") {
  FuzzOptions opts;
  opts.count = 10;
  opts.seed = 42;
  opts.inject_bug = true;
  FuzzReport report = run_differential_fuzz(opts);
  REQUIRE_FALSE(report.ok());
  Instance again = random_instance(report.failure->instance_seed, opts.bounds);
  CHECK(check_instance(again, opts).has_value());
  // and the same instance is clean without the corruption
  FuzzOptions honest = opts;
  honest.inject_bug = false;
  CHECK_FALSE(check_instance(again, honest).has_value());
}

TEST_CASE("a starved step budget surfaces as a failure, not a hang") {
  FuzzOptions opts;
  opts.count = 30;
  opts.seed = 4;
  opts.step_budget = 2;
  FuzzReport report = run_differential_fuzz(opts);
  REQUIRE_FALSE(report.ok());
  CHECK(report.failure->reason.find("budget") != std::string::npos);
}

TEST_CASE("check_instance validates both verdict kinds") {
  FuzzOptions opts;
  Instance safe{net_a(), UpSet::from({Marking{0, 2}})};
  Instance unsafe{net_a(), UpSet::from({Marking{0, 1}})};
  CHECK_FALSE(check_instance(safe, opts).has_value());
  CHECK_FALSE(check_instance(unsafe, opts).has_value());
}

}  // TEST_SUITE
