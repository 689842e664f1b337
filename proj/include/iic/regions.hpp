#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "iic/kernel.hpp"

namespace iic {

/// Delta-encoded frame vector. Region k is the downward-closed set of
/// markings not dominated by any blocker stored at level k or above; a
/// blocker kept at level k therefore blocks at every level 1..k, and the
/// permanently excluded blockers block at every level. Level 0 is special:
/// its basis describes the complement of the initial down-closure and is
/// never touched after construction.
class Frames {
 public:
  /// Level argument meaning "excluded at every level" for add_blocker.
  static constexpr std::uint32_t kInfinity = std::numeric_limits<std::uint32_t>::max();

  /// Frame count 0: level sets empty, permanent set empty, and the level-0
  /// basis holding the minimal markings outside the initial down-closure.
  static Frames init(const PetriNet& net);

  std::uint32_t frame_count() const { return static_cast<std::uint32_t>(levels_.size()); }
  std::size_t place_count() const { return places_; }

  const std::vector<Marking>& f0() const { return f0_; }
  const std::vector<Marking>& level(std::uint32_t k) const;  // 1..frame_count()
  const std::vector<Marking>& permanent() const { return permanent_; }

  /// Membership of `a` in region k (0 <= k <= frame_count()). Level 0
  /// consults only the level-0 basis; higher levels scan every blocker
  /// stored at level k or above, including the permanent set.
  bool in_region(const Marking& a, std::uint32_t k) const;

  struct Block {
    std::uint32_t level;  // stored level; the permanent set reports frame_count()+1
    Marking blocker;
  };

  /// The highest stored level >= 1 holding a blocker that `a` dominates,
  /// together with that blocker; absent when `a` is unblocked at every
  /// level >= 1. The level-0 basis is not consulted.
  std::optional<Block> highest_block(const Marking& a) const;

  /// Inserts `a` at level k (1..frame_count()) or kInfinity, then removes
  /// every blocker the insertion subsumes at levels 1..k. Requires `a` to
  /// lie outside region 0; returns false when an existing blocker at level
  /// >= k already subsumes `a` (no change made).
  bool add_blocker(const Marking& a, std::uint32_t k);

  /// True iff level i (1 <= i < frame_count()) holds no blocker, which
  /// witnesses that regions i and i+1 coincide.
  bool frame_empty(std::uint32_t i) const;

  /// Appends a fresh empty level; the new top region excludes only the
  /// permanent blockers.
  void unfold();

  /// Minimal basis of the complement of region i. Requires frame_empty(i).
  UpSet certificate_basis(std::uint32_t i) const;

  /// Sizes of [f0, level 1, ..., level N, permanent]; for logging.
  std::vector<std::size_t> level_sizes() const;

 private:
  std::vector<Marking> f0_;
  std::vector<std::vector<Marking>> levels_;  // levels_[k-1] is level k
  std::vector<Marking> permanent_;
  std::size_t places_ = 0;
};

}  // namespace iic
