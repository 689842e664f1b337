#include "iic/generate.hpp"

#include <algorithm>

namespace iic {

Instance random_instance(std::uint64_t seed, const GenBounds& bounds) {
  if (bounds.places == 0 || bounds.transitions == 0) {
    throw UsageError("random_instance: bounds must be positive");
  }
  SplitMix64 rng(seed);

  const std::size_t n = 1 + rng.below(bounds.places);
  const std::size_t m = 1 + rng.below(bounds.transitions);

  PetriNet net;
  net.places.reserve(n);
  for (std::size_t j = 0; j < n; ++j) net.places.push_back("p" + std::to_string(j));

  for (std::size_t i = 0; i < m; ++i) {
    Transition t;
    t.name = "t" + std::to_string(i);
    t.guard.resize(n);
    t.delta.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      const Token consumed = static_cast<Token>(rng.below(bounds.weight + 1));
      const Token produced = static_cast<Token>(rng.below(bounds.weight + 1));
      t.guard[j] = consumed;
      t.delta[j] = static_cast<TokenDelta>(produced) - static_cast<TokenDelta>(consumed);
    }
    net.transitions.push_back(std::move(t));
  }

  const std::size_t inits = rng.below(8) == 0 ? 2 : 1;
  for (std::size_t i = 0; i < inits; ++i) {
    Marking m0 = Marking::zeros(n);
    for (std::size_t j = 0; j < n; ++j) {
      m0[j] = static_cast<Token>(rng.below(bounds.tokens + 1));
    }
    if (std::find(net.initial.begin(), net.initial.end(), m0) == net.initial.end()) {
      net.initial.push_back(std::move(m0));
    }
  }

  const std::size_t cones = 1 + (rng.below(4) == 0 ? 1 : 0);
  std::vector<Marking> target;
  for (std::size_t i = 0; i < cones; ++i) {
    Marking u = Marking::zeros(n);
    bool any = false;
    for (std::size_t j = 0; j < n; ++j) {
      u[j] = static_cast<Token>(rng.below(bounds.tokens + 1));
      any |= u[j] != 0;
    }
    if (!any) u[rng.below(n)] = 1;  // the zero cone makes every net coverable
    target.push_back(std::move(u));
  }

  net.validate();
  return Instance{std::move(net), UpSet::from(std::move(target))};
}

}  // namespace iic
