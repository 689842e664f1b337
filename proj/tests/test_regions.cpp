#include <algorithm>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "iic/regions.hpp"

using namespace iic;
using iic_test::for_each_below;

namespace {

PetriNet net_with_initial(std::vector<Marking> inits) {
  PetriNet net = iic_test::net_a();
  net.initial = std::move(inits);
  return net;
}

// Independent oracle: minimal elements of the complement of the initial
// down-closure, enumerated over a box that safely contains them.
std::set<Marking> complement_minima(const std::vector<Marking>& inits, Token box) {
  const std::size_t n = inits.front().size();
  Marking bound = Marking::zeros(n);
  for (std::size_t j = 0; j < n; ++j) bound[j] = box;
  std::vector<Marking> outside;
  for_each_below(bound, [&](const Marking& m) {
    bool inside = false;
    for (const Marking& m0 : inits) inside |= covers(m0, m);
    if (!inside) outside.push_back(m);
  });
  std::set<Marking> minima;
  for (const Marking& m : outside) {
    bool minimal = true;
    for (const Marking& o : outside) {
      if (!(o == m) && covers(m, o)) minimal = false;
    }
    if (minimal) minima.insert(m);
  }
  return minima;
}

std::set<Marking> as_set(const std::vector<Marking>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_SUITE("regions") {

TEST_CASE("init: level-0 basis is the complement of the initial down-closure") {
  SUBCASE("single initial marking") {
    Frames fr = Frames::init(net_with_initial({Marking{1, 0}}));
    CHECK(as_set(fr.f0()) == complement_minima({Marking{1, 0}}, 3));
    CHECK(as_set(fr.f0()) == std::set<Marking>{Marking{2, 0}, Marking{0, 1}});
    CHECK(fr.frame_count() == 0);
    CHECK(fr.permanent().empty());
  }
  SUBCASE("zero initial marking") {
    Frames fr = Frames::init(net_with_initial({Marking{0, 0}}));
    CHECK(as_set(fr.f0()) == std::set<Marking>{Marking{1, 0}, Marking{0, 1}});
  }
  SUBCASE("two initial markings") {
    std::vector<Marking> inits{Marking{1, 0}, Marking{0, 1}};
    Frames fr = Frames::init(net_with_initial(inits));
    CHECK(as_set(fr.f0()) == complement_minima(inits, 3));
    CHECK(as_set(fr.f0()) ==
          std::set<Marking>{Marking{2, 0}, Marking{1, 1}, Marking{0, 2}});
  }
}

TEST_CASE("in_region") {
  Frames fr = Frames::init(net_with_initial({Marking{1, 0}}));
  CHECK(fr.in_region(Marking{1, 0}, 0));
  CHECK_FALSE(fr.in_region(Marking{0, 2}, 0));  // (0,1) blocks

  fr.unfold();
  fr.add_blocker(Marking{0, 2}, 1);
  CHECK(fr.in_region(Marking{1, 1}, 1));  // (0,2) does not dominate it

  CHECK_THROWS_AS(fr.in_region(Marking{0, 0}, 2), UsageError);  // beyond the top
}

TEST_CASE("level 0 is not consulted above level 0") {
  Frames fr = Frames::init(net_with_initial({Marking{1, 0}}));
  fr.unfold();
  // (0,2) is outside region 0 yet inside region 1 until blocked there
  CHECK_FALSE(fr.in_region(Marking{0, 2}, 0));
  CHECK(fr.in_region(Marking{0, 2}, 1));
}

TEST_CASE("highest_block") {
  Frames fr = Frames::init(net_with_initial({Marking{1, 0}}));
  fr.unfold();
  fr.unfold();  // N = 2

  SUBCASE("blocked only at level 1") {
    fr.add_blocker(Marking{0, 2}, 1);
    auto hb = fr.highest_block(Marking{0, 3});
    REQUIRE(hb.has_value());
    CHECK(hb->level == 1);
    CHECK(hb->blocker == Marking{0, 2});
  }
  SUBCASE("permanent set reports one past the top") {
    fr.add_blocker(Marking{0, 2}, Frames::kInfinity);
    auto hb = fr.highest_block(Marking{0, 3});
    REQUIRE(hb.has_value());
    CHECK(hb->level == 3);  // N + 1
  }
  SUBCASE("the highest of several levels wins") {
    fr.add_blocker(Marking{0, 2}, 1);
    fr.add_blocker(Marking{2, 2}, 2);
    auto hb = fr.highest_block(Marking{2, 3});
    REQUIRE(hb.has_value());
    CHECK(hb->level == 2);
    CHECK(hb->blocker == Marking{2, 2});
  }
  SUBCASE("unblocked") { CHECK_FALSE(fr.highest_block(Marking{1, 0}).has_value()); }
}

TEST_CASE("add_blocker") {
  Frames fr = Frames::init(net_with_initial({Marking{1, 0}}));
  fr.unfold();

  SUBCASE("insert into an empty level") {
    CHECK(fr.add_blocker(Marking{1, 1}, 1));
    CHECK(fr.level(1) == std::vector<Marking>{Marking{1, 1}});
  }
  SUBCASE("promotion to the permanent set subsumes the level copy") {
    fr.add_blocker(Marking{2, 0}, 1);
    CHECK(fr.level(1) == std::vector<Marking>{Marking{2, 0}});
    CHECK(fr.add_blocker(Marking{2, 0}, Frames::kInfinity));
    CHECK(fr.level(1).empty());
    CHECK(fr.permanent() == std::vector<Marking>{Marking{2, 0}});
  }
  SUBCASE("a smaller blocker subsumes a larger one at its level") {
    fr.unfold();
    fr.add_blocker(Marking{3, 3}, 2);
    CHECK(fr.add_blocker(Marking{1, 1}, 2));
    CHECK(fr.level(2) == std::vector<Marking>{Marking{1, 1}});
  }
  SUBCASE("insertion already subsumed from above is a no-op") {
    fr.add_blocker(Marking{1, 1}, Frames::kInfinity);
    CHECK_FALSE(fr.add_blocker(Marking{2, 1}, 1));
    CHECK(fr.level(1).empty());
  }
  SUBCASE("blockers must avoid the initial down-closure") {
    CHECK_THROWS_AS(fr.add_blocker(Marking{1, 0}, 1), InternalError);
  }
  SUBCASE("level out of range") {
    CHECK_THROWS_AS(fr.add_blocker(Marking{1, 1}, 2), UsageError);
  }
}

TEST_CASE("add_blocker removes only what the new blocker subsumes") {
  SplitMix64 rng(7);
  for (int round = 0; round < 200; ++round) {
    Frames fr = Frames::init(net_with_initial({Marking{1, 0}}));
    const std::uint32_t unfolds = 1 + static_cast<std::uint32_t>(rng.below(3));
    for (std::uint32_t k = 0; k < unfolds; ++k) fr.unfold();

    auto random_blocker = [&]() {
      Marking m = iic_test::random_marking(rng, 2, 4);
      if (fr.in_region(m, 0)) m = pointwise_max(m, fr.f0()[rng.below(fr.f0().size())]);
      return m;
    };
    for (int adds = 0; adds < 6; ++adds) {
      const std::uint32_t lvl =
          rng.below(4) == 0 ? Frames::kInfinity
                            : 1 + static_cast<std::uint32_t>(rng.below(fr.frame_count()));
      const Marking b = random_blocker();

      std::vector<std::vector<Marking>> shadow;
      for (std::uint32_t k = 1; k <= fr.frame_count(); ++k) shadow.push_back(fr.level(k));
      shadow.push_back(fr.permanent());

      fr.add_blocker(b, lvl);

      std::vector<std::vector<Marking>> now;
      for (std::uint32_t k = 1; k <= fr.frame_count(); ++k) now.push_back(fr.level(k));
      now.push_back(fr.permanent());
      for (std::size_t k = 0; k < shadow.size(); ++k) {
        for (const Marking& old : shadow[k]) {
          const bool kept = std::find(now[k].begin(), now[k].end(), old) != now[k].end();
          if (!kept) CHECK(covers(old, b));
        }
      }
    }
  }
}

TEST_CASE("frame_empty") {
  Frames fr = Frames::init(net_with_initial({Marking{1, 0}}));
  fr.unfold();
  fr.unfold();
  CHECK(fr.frame_empty(1));
  fr.add_blocker(Marking{2, 0}, 1);
  CHECK_FALSE(fr.frame_empty(1));
  // emptied again by a subsuming insertion above
  fr.add_blocker(Marking{2, 0}, Frames::kInfinity);
  CHECK(fr.frame_empty(1));
  CHECK_THROWS_AS(fr.frame_empty(0), UsageError);
  CHECK_THROWS_AS(fr.frame_empty(2), UsageError);  // must be below the top
}

TEST_CASE("unfold") {
  Frames fr = Frames::init(net_with_initial({Marking{1, 0}}));
  CHECK(fr.frame_count() == 0);
  fr.unfold();
  CHECK(fr.frame_count() == 1);
  CHECK(fr.level(1).empty());

  fr.add_blocker(Marking{0, 2}, Frames::kInfinity);
  const std::vector<Marking> permanent_before = fr.permanent();
  fr.unfold();
  fr.unfold();
  CHECK(fr.frame_count() == 3);
  CHECK(fr.permanent() == permanent_before);
  CHECK(fr.level(3).empty());
}

TEST_CASE("certificate_basis") {
  Frames fr = Frames::init(net_with_initial({Marking{1, 0}}));
  fr.unfold();
  fr.unfold();

  SUBCASE("union of the level and permanent sets") {
    fr.add_blocker(Marking{2, 0}, Frames::kInfinity);
    fr.add_blocker(Marking{1, 1}, Frames::kInfinity);
    fr.add_blocker(Marking{0, 2}, Frames::kInfinity);
    REQUIRE(fr.frame_empty(1));
    CHECK(as_set(fr.certificate_basis(1).basis()) ==
          std::set<Marking>{Marking{2, 0}, Marking{1, 1}, Marking{0, 2}});
  }
  SUBCASE("everything empty above the witness level") {
    REQUIRE(fr.frame_empty(1));
    CHECK(fr.certificate_basis(1).empty());
  }
  SUBCASE("comparable blockers across levels collapse") {
    fr.add_blocker(Marking{1, 1}, 2);
    fr.add_blocker(Marking{2, 2}, Frames::kInfinity);  // dominated by (1,1) at level 2
    REQUIRE(fr.frame_empty(1));
    CHECK(as_set(fr.certificate_basis(1).basis()) == std::set<Marking>{Marking{1, 1}});
  }
  SUBCASE("precondition") {
    fr.add_blocker(Marking{0, 2}, 1);
    CHECK_THROWS_AS(fr.certificate_basis(1), UsageError);
  }
}

TEST_CASE("blockers effective at a level are effective at every lower level") {
  // encoding-level region monotonicity: leaving a higher region implies
  // leaving every lower one
  SplitMix64 rng(17);
  for (int round = 0; round < 100; ++round) {
    Frames fr = Frames::init(net_with_initial({Marking{1, 0}}));
    for (int k = 0; k < 3; ++k) fr.unfold();
    for (int adds = 0; adds < 5; ++adds) {
      Marking m = iic_test::random_marking(rng, 2, 4);
      if (fr.in_region(m, 0)) m = pointwise_max(m, fr.f0()[rng.below(fr.f0().size())]);
      const std::uint32_t lvl = 1 + static_cast<std::uint32_t>(rng.below(3));
      fr.add_blocker(m, lvl);
    }
    for (int probes = 0; probes < 50; ++probes) {
      Marking a = iic_test::random_marking(rng, 2, 5);
      for (std::uint32_t i = 1; i + 1 <= fr.frame_count(); ++i) {
        if (!fr.in_region(a, i + 1)) CHECK_FALSE(fr.in_region(a, i));
      }
    }
  }
}

TEST_CASE("the level-0 basis is never mutated") {
  Frames fr = Frames::init(net_with_initial({Marking{1, 0}, Marking{0, 1}}));
  const std::vector<Marking> snapshot = fr.f0();
  fr.unfold();
  fr.add_blocker(Marking{2, 2}, 1);
  fr.add_blocker(Marking{2, 0}, Frames::kInfinity);
  fr.unfold();
  CHECK(fr.f0() == snapshot);
}

}  // TEST_SUITE
