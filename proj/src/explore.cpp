#include "iic/explore.hpp"

#include <deque>
#include <set>
#include <unordered_set>

namespace iic {

namespace {

// Byte-packed key for small nets; the common fuzzing case.
bool packable(const PetriNet& net, Token box) {
  return net.place_count() <= 8 && box <= 254;
}

std::uint64_t pack(const Marking& m) {
  std::uint64_t key = 0;
  for (std::size_t j = 0; j < m.size(); ++j) {
    key |= static_cast<std::uint64_t>(m[j] & 0xff) << (8 * j);
  }
  return key;
}

}  // namespace

ExploreResult explore_cover(const PetriNet& net, const UpSet& target, Token box,
                            std::uint64_t max_states) {
  net.validate();
  const bool fast = packable(net, box);

  std::unordered_set<std::uint64_t> seen_packed;
  std::set<Marking> seen;
  std::deque<Marking> work;
  std::uint64_t states = 0;

  enum class Step { fresh, known, covering, escaped };
  auto consider = [&](const Marking& m) {
    for (const Marking& u : target.basis()) {
      if (covers(m, u)) return Step::covering;
    }
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (m[j] > box) return Step::escaped;
    }
    const bool fresh = fast ? seen_packed.insert(pack(m)).second : seen.insert(m).second;
    if (!fresh) return Step::known;
    ++states;
    work.push_back(m);
    return Step::fresh;
  };

  for (const Marking& m0 : net.initial) {
    switch (consider(m0)) {
      case Step::covering:
        return {ExploreOutcome::coverable, states};
      case Step::escaped:
        return {ExploreOutcome::out_of_box, states};
      default:
        break;
    }
  }

  while (!work.empty()) {
    Marking m = std::move(work.front());
    work.pop_front();
    for (const Transition& t : net.transitions) {
      if (!enabled(m, t)) continue;
      Marking s = fire(m, t);
      switch (consider(s)) {
        case Step::covering:
          return {ExploreOutcome::coverable, states};
        case Step::escaped:
          return {ExploreOutcome::out_of_box, states};
        default:
          break;
      }
      if (states > max_states) return {ExploreOutcome::out_of_budget, states};
    }
  }
  return {ExploreOutcome::uncoverable, states};
}

}  // namespace iic
