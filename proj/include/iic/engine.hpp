#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include "iic/kernel.hpp"
#include "iic/regions.hpp"
#include "iic/verdict.hpp"

namespace iic {

/// A proof obligation <state, level>: show that the upward closure of
/// `state` is unreachable within `level` steps. `via_*` records how the
/// obligation arose (the transition whose least predecessor this is, and
/// the parent obligation), which is what counterexample traces are built from.
struct Obligation {
  Marking state;
  std::uint32_t level = 0;
  int via_transition = -1;  // -1 for candidate obligations
  int via_parent = -1;      // arena index, -1 for candidate obligations
};

/// Append-only store of obligations; indices stay valid as it grows.
class ObligationArena {
 public:
  int add(Marking state, std::uint32_t level, int via_transition, int via_parent);
  const Obligation& operator[](int i) const { return nodes_[static_cast<std::size_t>(i)]; }
  std::size_t size() const { return nodes_.size(); }

 private:
  std::vector<Obligation> nodes_;
};

/// Priority queue over arena nodes. Pop order: lowest level first, ties by
/// lexicographically smallest state, then insertion order.
class ObligationQueue {
 public:
  void push(const ObligationArena& arena, int node);
  int min_node() const;
  int pop_min();
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  std::vector<int> nodes() const;  // for invariant checks

 private:
  struct Entry {
    std::uint32_t level;
    Marking state;
    std::uint64_t seq;
    int node;
    auto operator<=>(const Entry&) const = default;
  };
  std::set<Entry> entries_;
  std::uint64_t next_seq_ = 0;
};

struct EngineEvent {
  std::string_view rule;
  std::string detail;
  std::vector<std::size_t> frame_sizes;
};

using EventSink = std::function<void(const EngineEvent&)>;

struct EngineOptions {
  std::uint64_t step_budget = 100'000'000;
  bool check_invariants = false;  // re-verify the frame invariants after every rule
  EventSink on_event;             // null: silent
};

/// First target-basis element still inside the top region; absent once the
/// top region avoids the target entirely (the unfold precondition).
std::optional<Marking> candidate(const Frames& fr, const UpSet& target);

struct DecideResult {
  bool found = false;
  Marking pred;
  std::size_t transition = 0;
};

/// Scans transitions in input order for the first least predecessor of
/// ob.state lying in region ob.level-1 but not above ob.state. Requires
/// ob.level >= 1. Not finding one means the complement of the state's
/// upward closure is inductive relative to region ob.level-1.
DecideResult decide_step(const Obligation& ob, const Frames& fr, const PetriNet& net);

/// How the least predecessor along one transition is excluded from a region.
struct TransitionBlock {
  std::size_t transition = 0;
  bool self = false;    // predecessor dominates the state itself
  std::uint32_t level = 0;  // blocker's stored level; frame_count()+1 for self/permanent
  Marking blocker;      // meaningful when !self
  Marking pred;
};

/// Per-transition exclusion evidence for `a`, taking the highest applicable
/// blocker each time (level-0 basis as a last resort). Absent if some
/// predecessor is unblocked everywhere.
std::optional<std::vector<TransitionBlock>> analyze_blocks(const Marking& a,
                                                           const Frames& fr,
                                                           const PetriNet& net);

/// The highest level the complement of `a`'s upward closure is inductive
/// relative to: the minimum over transitions of each predecessor's blocking
/// level, where self-blocked predecessors count as frame_count()+1 (also the
/// value for nets without transitions). Throws InternalError if some
/// predecessor is unblocked.
std::uint32_t relative_level(const Marking& a, const Frames& fr, const PetriNet& net);

/// Shrinks `a` while keeping every least predecessor blocked by the same
/// blocker (or by the result itself), repairing against the level-0 basis
/// so the result never meets the initial down-closure.
Marking generalize(const Marking& a, const Frames& fr, const PetriNet& net);
Marking generalize(const Marking& a, const Frames& fr, const PetriNet& net,
                   const std::vector<TransitionBlock>& blocks);

struct ConflictResult {
  std::uint32_t level = 0;  // where the blocker landed; Frames::kInfinity when permanent
  Marking blocker;
  bool inserted = false;  // false when an existing blocker already subsumed it
};

/// Resolves the queue minimum, for which decide_step found no predecessor:
/// computes the relative level and generalization, installs the blocker
/// (one past the relative level, capped at the top frame, or permanently),
/// and re-enqueues the state two levels up when that still lands below the
/// top frame.
ConflictResult conflict_step(ObligationArena& arena, ObligationQueue& queue, Frames& fr,
                             const PetriNet& net, SearchStats* stats = nullptr);

/// What a rule application changed in the frame system; lets the invariant
/// auditor re-check only the facts the rule could have created once the
/// frames grow past exhaustive-recheck scale.
struct RuleEffect {
  enum Kind { none, reset, blocker_added, unfolded } kind = none;
  Marking blocker;          // blocker_added
  std::uint32_t level = 0;  // blocker_added: stored level, kInfinity when permanent
};

/// Internal wiring shared by check() and propagate().
struct EngineHooks {
  SearchStats* stats = nullptr;
  const EventSink* on_event = nullptr;
  std::function<void(std::string_view, const RuleEffect&)> after_rule;
};

/// One full push-forward pass, bottom level upward: every blocker whose
/// complement is inductive relative to its own level is generalized and
/// re-installed one level higher. Requires an empty obligation queue;
/// meant to run once after each unfold.
void propagate(Frames& fr, const PetriNet& net, const EngineHooks& hooks = {});

/// Follows via links from a terminal obligation back to its candidate.
CexTrace build_trace(int terminal, const ObligationArena& arena);

/// Decides coverability: safe with a certificate basis, unsafe with a
/// replayable trace, or resource_limit if the step budget runs out.
Verdict check(const PetriNet& net, const UpSet& target, const EngineOptions& opts = {});

}  // namespace iic
