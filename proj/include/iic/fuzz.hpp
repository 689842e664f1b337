#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "iic/generate.hpp"
#include "iic/kernel.hpp"

namespace iic {

struct FuzzOptions {
  std::uint64_t count = 500;
  std::uint64_t seed = 42;
  GenBounds bounds{};
  bool enum_oracle = false;  // also compare against bounded forward exploration
  Token enum_box = 10;
  bool check_invariants = true;
  // Far above any observed desk-scale run (worst seen: ~15k steps) yet small
  // enough that a search gone wrong fails fast instead of appearing to hang.
  std::uint64_t step_budget = 1'000'000;
  bool inject_bug = false;  // harness self-test: corrupt the primary verdict
  std::function<void(const std::string&)> log;
};

struct FuzzFailure {
  std::uint64_t index = 0;
  std::uint64_t instance_seed = 0;
  std::string reason;
  std::string spec_text;  // minimized reproducer
};

struct FuzzReport {
  std::uint64_t instances = 0;
  std::uint64_t safe = 0;
  std::uint64_t unsafe = 0;
  std::uint64_t enum_checked = 0;  // instances the exploration oracle could decide
  std::uint64_t budget_hits = 0;
  std::optional<FuzzFailure> failure;

  bool ok() const { return !failure.has_value(); }
};

/// Runs both decision procedures (invariant re-checking on by default) on
/// `count` generated instances, requiring identical verdicts and validated
/// certificates/traces on every one; optionally cross-checks the bounded
/// exploration oracle. Stops at the first failure and shrinks it to a
/// small reproducer.
FuzzReport run_differential_fuzz(const FuzzOptions& opts);

/// Checks one instance; returns a failure description, or nothing if every
/// oracle agrees and all artifacts validate. Exposed for the shrinker and tests.
std::optional<std::string> check_instance(const Instance& inst, const FuzzOptions& opts,
                                          FuzzReport* counters = nullptr);

}  // namespace iic
