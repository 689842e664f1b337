#include "iic/kernel.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "iic/simd.hpp"

namespace iic {

namespace {

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw UsageError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                     " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

void PetriNet::validate() const {
  const std::size_t n = place_count();
  if (initial.empty()) throw UsageError("net has no initial marking");
  for (const Marking& m : initial) {
    require_same_size(m.size(), n, "initial marking");
  }
  std::set<Marking> seen(initial.begin(), initial.end());
  if (seen.size() != initial.size()) {
    throw UsageError("initial markings must be pairwise distinct");
  }
  for (const Transition& t : transitions) {
    require_same_size(t.guard.size(), n, "transition guard");
    require_same_size(t.delta.size(), n, "transition delta");
    for (std::size_t j = 0; j < n; ++j) {
      if (static_cast<std::int64_t>(t.guard[j]) + t.delta[j] < 0) {
        throw UsageError("transition '" + t.name + "' would drive place " +
                         std::to_string(j) + " negative when fired at its guard");
      }
    }
  }
}

bool covers(const Marking& a, const Marking& b) {
  require_same_size(a.size(), b.size(), "covers");
  return simd::all_ge(a.data(), b.data(), a.size());
}

bool enabled(const Marking& m, const Transition& t) {
  require_same_size(m.size(), t.guard.size(), "enabled");
  return simd::all_ge(m.data(), t.guard.data(), m.size());
}

Marking fire(const Marking& m, const Transition& t) {
  if (!enabled(m, t)) {
    throw UsageError("fire: transition '" + t.name + "' is not enabled");
  }
  constexpr std::int64_t kMax = std::numeric_limits<Token>::max();
  Marking out = Marking::zeros(m.size());
  for (std::size_t j = 0; j < m.size(); ++j) {
    std::int64_t v = static_cast<std::int64_t>(m[j]) + t.delta[j];
    if (v > kMax) throw OverflowError("fire: token count out of range");
    if (v < 0) throw InternalError("fire: negative count despite enabledness");
    out[j] = static_cast<Token>(v);
  }
  return out;
}

Marking pred_along(const Marking& a, const Transition& t) {
  require_same_size(a.size(), t.guard.size(), "pred_along");
  Marking out = Marking::zeros(a.size());
  if (!simd::sub_max_u32(a.data(), t.delta.data(), t.guard.data(), out.counts.data(),
                         a.size())) {
    throw OverflowError("pred_along: token count out of range");
  }
  return out;
}

Marking pointwise_max(const Marking& a, const Marking& b) {
  require_same_size(a.size(), b.size(), "pointwise_max");
  Marking out = Marking::zeros(a.size());
  simd::max_u32(a.data(), b.data(), out.counts.data(), a.size());
  return out;
}

std::vector<Marking> minimal_elements(std::vector<Marking> ms) {
  std::vector<Marking> out;
  for (Marking& m : ms) {
    bool dominated = false;
    for (const Marking& kept : out) {
      if (covers(m, kept)) {  // an earlier equal marking also lands here
        dominated = true;
        break;
      }
    }
    if (dominated) continue;
    std::erase_if(out, [&](const Marking& kept) { return covers(kept, m); });
    out.push_back(std::move(m));
  }
  return out;
}

UpSet minimize(std::vector<Marking> ms) { return UpSet::from(std::move(ms)); }

UpSet UpSet::from(std::vector<Marking> ms) {
  UpSet u;
  u.basis_ = minimal_elements(std::move(ms));
  return u;
}

bool UpSet::contains(const Marking& a) const {
  for (const Marking& b : basis_) {
    if (covers(a, b)) return true;
  }
  return false;
}

}  // namespace iic
