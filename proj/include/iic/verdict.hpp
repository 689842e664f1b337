#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "iic/kernel.hpp"

namespace iic {

struct SearchStats {
  std::uint64_t frames = 0;       // frame count at termination / fixpoint rounds
  std::uint64_t blockers = 0;     // blockers added / final basis size
  std::uint64_t obligations = 0;  // queue entries examined
  std::uint64_t shrink = 0;       // total token reduction won by generalization
  std::uint64_t steps = 0;        // rule applications
};

struct CexStep {
  Marking state;
  std::size_t transition;
};

/// A replayable witness: fire steps[0].transition from a marking dominating
/// steps[0].state, then each following transition; the run ends dominating
/// target_state, which is an element of the queried target basis.
struct CexTrace {
  std::vector<CexStep> steps;
  Marking target_state;

  const Marking& first() const { return steps.empty() ? target_state : steps.front().state; }
};

enum class VerdictKind { safe, unsafe, resource_limit };

struct Verdict {
  VerdictKind kind = VerdictKind::safe;
  UpSet certificate;  // safe: basis whose complement is an inductive covering set
  CexTrace trace;     // unsafe
  SearchStats stats;
  std::string rule;  // terminal rule, e.g. "valid", "cex_semantic", "budget"
};

const char* verdict_name(VerdictKind k);

}  // namespace iic
