#pragma once

#include <cstdint>

#include "iic/kernel.hpp"

namespace iic {

enum class ExploreOutcome {
  coverable,      // a reachable marking dominates a target element
  uncoverable,    // the full reachable set was enumerated; none dominates
  out_of_box,     // some reachable marking exceeds the per-place bound
  out_of_budget,  // state cap hit before the set was exhausted
};

struct ExploreResult {
  ExploreOutcome outcome;
  std::uint64_t states = 0;
};

/// Exhaustive forward exploration, bounded by a per-place token box. Exact
/// on every instance whose reachable set fits the box; a covering marking
/// found on the way is reported even if the box is later exceeded.
ExploreResult explore_cover(const PetriNet& net, const UpSet& target, Token box,
                            std::uint64_t max_states = 4'000'000);

}  // namespace iic
