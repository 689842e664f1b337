#pragma once

#include <string>

#include "iic/kernel.hpp"
#include "iic/verdict.hpp"

namespace iic {

struct CheckOutcome {
  bool ok = false;
  std::string diagnostic;  // "CERT-FAIL <cond> ..." / "TRACE-FAIL <step> ..." when !ok

  explicit operator bool() const { return ok; }
};

/// Validates a safe verdict independently of how it was found, using only
/// the marking kernel. The basis B is accepted iff the complement of its
/// upward closure is an inductive covering set:
///   (a) no initial marking dominates a basis element,
///   (b) every target element dominates some basis element,
///   (c) every least predecessor of a basis element dominates some basis element.
CheckOutcome check_certificate(const PetriNet& net, const UpSet& target,
                               const UpSet& basis);

/// Validates an unsafe verdict by concrete replay: start at an initial
/// marking dominating the trace head, fire each recorded transition, and
/// accept iff the final marking dominates some target element.
CheckOutcome replay_trace(const PetriNet& net, const UpSet& target, const CexTrace& trace);

}  // namespace iic
