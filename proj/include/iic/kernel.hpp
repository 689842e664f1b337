#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "iic/errors.hpp"

namespace iic {

using Token = std::uint32_t;
using TokenDelta = std::int32_t;

/// A marking: one token count per place. Immutable by convention once built;
/// values compare lexicographically, which gives deterministic tie-breaking.
struct Marking {
  std::vector<Token> counts;

  Marking() = default;
  explicit Marking(std::vector<Token> c) : counts(std::move(c)) {}
  Marking(std::initializer_list<Token> c) : counts(c) {}

  static Marking zeros(std::size_t n) { return Marking(std::vector<Token>(n, 0)); }

  std::size_t size() const { return counts.size(); }
  Token operator[](std::size_t i) const { return counts[i]; }
  Token& operator[](std::size_t i) { return counts[i]; }
  const Token* data() const { return counts.data(); }

  auto operator<=>(const Marking&) const = default;
};

/// A transition as a guard/delta pair: `guard` is the per-place enabling
/// threshold, `delta` the signed token change on firing. Well-formed
/// transitions satisfy guard[j] + delta[j] >= 0 for every place j.
struct Transition {
  std::vector<Token> guard;
  std::vector<TokenDelta> delta;
  std::string name;
};

struct PetriNet {
  std::vector<std::string> places;
  std::vector<Transition> transitions;
  std::vector<Marking> initial;

  std::size_t place_count() const { return places.size(); }

  /// Throws UsageError unless all dimensions agree, every transition keeps
  /// guard+delta nonnegative, and the initial markings are pairwise distinct.
  void validate() const;
};

/// An upward-closed set of markings, stored as its minimal basis
/// (pairwise incomparable, no duplicates).
class UpSet {
 public:
  UpSet() = default;

  /// Builds the minimal basis of the upward closure of `ms`.
  static UpSet from(std::vector<Marking> ms);

  const std::vector<Marking>& basis() const { return basis_; }
  bool empty() const { return basis_.empty(); }
  std::size_t size() const { return basis_.size(); }

  /// Membership of `a` in the denoted upward-closed set.
  bool contains(const Marking& a) const;

  bool operator==(const UpSet&) const = default;

 private:
  std::vector<Marking> basis_;
};

/// Pointwise dominance: a[j] >= b[j] for all j.
bool covers(const Marking& a, const Marking& b);

/// True iff `t` can fire at `m`, i.e. covers(m, t.guard).
bool enabled(const Marking& m, const Transition& t);

/// Fires `t` at `m`. Requires enabled(m, t); throws OverflowError if a
/// count would leave the Token range.
Marking fire(const Marking& m, const Transition& t);

/// The least marking that reaches `a` (or above) by firing `t`:
/// result[j] = max(a[j] - d[j], g[j]). Every predecessor of the upward
/// closure of `a` along `t` dominates this marking, and nothing smaller
/// is such a predecessor.
Marking pred_along(const Marking& a, const Transition& t);

/// Componentwise maximum.
Marking pointwise_max(const Marking& a, const Marking& b);

/// Minimal basis of the upward closure of `ms`. Keeps the first occurrence
/// among equal markings, so bases are deterministic in input order.
UpSet minimize(std::vector<Marking> ms);

/// Same computation on a raw vector; used where the UpSet wrapper is not wanted.
std::vector<Marking> minimal_elements(std::vector<Marking> ms);

}  // namespace iic
