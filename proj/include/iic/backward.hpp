#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "iic/kernel.hpp"
#include "iic/verdict.hpp"

namespace iic {

/// State of the backward fixpoint: the growing basis of markings that can
/// reach the target cone, the slice added last round, and per-marking links
/// (transition fired, successor basis marking) for trace extraction.
struct BackwardState {
  UpSet current;
  std::vector<Marking> frontier;
  std::map<Marking, std::pair<std::size_t, Marking>> links;
};

BackwardState backward_init(const UpSet& target);

/// One round: adds the least predecessors of the frontier along every
/// transition, re-minimizes, and keeps the genuinely new elements as the
/// next frontier. An empty frontier means the fixpoint is reached.
BackwardState pre_step(const BackwardState& st, const PetriNet& net);

struct BackwardOptions {
  std::uint64_t step_budget = 10'000'000;
};

/// The classical decision procedure, used here as an independent oracle:
/// iterate pre_step from the target basis until either some initial marking
/// dominates a basis element (unsafe, trace rebuilt from links) or the basis
/// stops growing (safe; the final basis is the certificate).
Verdict backward_check(const PetriNet& net, const UpSet& target,
                       const BackwardOptions& opts = {});

}  // namespace iic
