#include "iic/regions.hpp"

#include <algorithm>
#include <limits>

namespace iic {

namespace {

bool any_dominated_by(const std::vector<Marking>& set, const Marking& a) {
  for (const Marking& c : set) {
    if (covers(a, c)) return true;
  }
  return false;
}

// Basis of the markings NOT dominated by m: per place j, the marking with
// m[j]+1 tokens there and none elsewhere.
std::vector<Marking> complement_basis(const Marking& m) {
  std::vector<Marking> out;
  out.reserve(m.size());
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (m[j] == std::numeric_limits<Token>::max()) {
      throw OverflowError("initial token count out of range");
    }
    Marking axis = Marking::zeros(m.size());
    axis[j] = m[j] + 1;
    out.push_back(std::move(axis));
  }
  return out;
}

}  // namespace

Frames Frames::init(const PetriNet& net) {
  net.validate();
  Frames fr;
  fr.places_ = net.place_count();

  // Complement of a union of down-closures = intersection of the per-marking
  // complements; a basis of an intersection is the minimized set of pairwise
  // maxima of the operands' bases.
  std::vector<Marking> basis = complement_basis(net.initial.front());
  for (std::size_t i = 1; i < net.initial.size(); ++i) {
    std::vector<Marking> other = complement_basis(net.initial[i]);
    std::vector<Marking> joined;
    joined.reserve(basis.size() * other.size());
    for (const Marking& a : basis) {
      for (const Marking& b : other) {
        joined.push_back(pointwise_max(a, b));
      }
    }
    basis = minimal_elements(std::move(joined));
  }
  fr.f0_ = minimal_elements(std::move(basis));
  return fr;
}

const std::vector<Marking>& Frames::level(std::uint32_t k) const {
  if (k < 1 || k > frame_count()) {
    throw UsageError("level " + std::to_string(k) + " out of range");
  }
  return levels_[k - 1];
}

bool Frames::in_region(const Marking& a, std::uint32_t k) const {
  const std::uint32_t n = frame_count();
  if (k > n) throw UsageError("in_region: level " + std::to_string(k) + " out of range");
  if (k == 0) return !any_dominated_by(f0_, a);
  for (std::uint32_t i = k; i <= n; ++i) {
    if (any_dominated_by(levels_[i - 1], a)) return false;
  }
  return !any_dominated_by(permanent_, a);
}

std::optional<Frames::Block> Frames::highest_block(const Marking& a) const {
  for (const Marking& c : permanent_) {
    if (covers(a, c)) return Block{frame_count() + 1, c};
  }
  for (std::uint32_t k = frame_count(); k >= 1; --k) {
    for (const Marking& c : levels_[k - 1]) {
      if (covers(a, c)) return Block{k, c};
    }
  }
  return std::nullopt;
}

bool Frames::add_blocker(const Marking& a, std::uint32_t k) {
  const std::uint32_t n = frame_count();
  if (k != kInfinity && (k < 1 || k > n)) {
    throw UsageError("add_blocker: level " + std::to_string(k) + " out of range");
  }
  if (in_region(a, 0)) {
    throw InternalError("add_blocker: blocker intersects the initial down-closure");
  }

  // Already subsumed at the target level or higher: the regions would not change.
  if (any_dominated_by(permanent_, a)) return false;
  if (k != kInfinity) {
    for (std::uint32_t i = k; i <= n; ++i) {
      if (any_dominated_by(levels_[i - 1], a)) return false;
    }
  }

  auto prune = [&](std::vector<Marking>& set) {
    std::erase_if(set, [&](const Marking& c) { return covers(c, a); });
  };
  const std::uint32_t top = (k == kInfinity) ? n : k;
  for (std::uint32_t i = 1; i <= top; ++i) prune(levels_[i - 1]);
  if (k == kInfinity) {
    prune(permanent_);
    permanent_.push_back(a);
  } else {
    levels_[k - 1].push_back(a);
  }
  return true;
}

bool Frames::frame_empty(std::uint32_t i) const {
  if (i < 1 || i >= frame_count()) {
    throw UsageError("frame_empty: level " + std::to_string(i) + " out of range");
  }
  return levels_[i - 1].empty();
}

void Frames::unfold() { levels_.emplace_back(); }

UpSet Frames::certificate_basis(std::uint32_t i) const {
  if (!frame_empty(i)) {
    throw UsageError("certificate_basis: level " + std::to_string(i) + " is not empty");
  }
  std::vector<Marking> all;
  for (std::uint32_t k = i; k <= frame_count(); ++k) {
    all.insert(all.end(), levels_[k - 1].begin(), levels_[k - 1].end());
  }
  all.insert(all.end(), permanent_.begin(), permanent_.end());
  return UpSet::from(std::move(all));
}

std::vector<std::size_t> Frames::level_sizes() const {
  std::vector<std::size_t> out;
  out.reserve(levels_.size() + 2);
  out.push_back(f0_.size());
  for (const auto& lvl : levels_) out.push_back(lvl.size());
  out.push_back(permanent_.size());
  return out;
}

}  // namespace iic
