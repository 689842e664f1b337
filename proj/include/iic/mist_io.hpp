#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "iic/kernel.hpp"
#include "iic/verdict.hpp"

namespace iic {

struct SpecFile {
  PetriNet net;
  UpSet target;
};

/// Parses the mist-style `.spec` dialect used by this tool:
///
///   vars    whitespace-separated place identifiers
///   rules   semicolon-terminated `g1, g2 -> u1, u2;` with guards `x >= k`
///           and updates `x' = x + k | x' = x - k | x' = x`
///   init    one marking per line, comma-separated `x = k` (missing: 0);
///           several lines give several initial markings
///   target  one cone per line, comma-separated `x >= k`; lines are united
///
/// Line comments start with `#`. Rules may span lines; commas continue a
/// line in `init`/`target`. A decreasing update without a guard implicitly
/// raises the guard to the decrease, so firing never drives a place
/// negative; a stated guard too weak for its update is rejected.
/// Throws ParseError (with line/column) on any rejection.
SpecFile parse_spec(std::string_view text);

/// Reads and parses a file; throws UsageError if unreadable.
SpecFile load_spec(const std::string& path);

/// `safe` header plus one `! (x >= b & ...)` line per basis element,
/// nonzero bounds only, elements in lexicographic order.
std::string emit_certificate(const UpSet& basis, const std::vector<std::string>& places);

/// `unsafe` header plus the concrete replay: the chosen initial marking,
/// one `fire <rule-index> -> <marking>` line per step, and the target
/// conjunct the final marking covers.
std::string emit_trace(const PetriNet& net, const UpSet& target, const CexTrace& trace);

/// Canonical `.spec` serialization; parses back to the same net and target.
std::string emit_spec(const PetriNet& net, const UpSet& target);

}  // namespace iic
