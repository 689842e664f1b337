#pragma once

#include <vector>

#include "iic/generate.hpp"
#include "iic/kernel.hpp"

namespace iic_test {

// Two places (x, y), one rule moving a token from x to y, one token on x.
inline iic::PetriNet net_a() {
  iic::PetriNet net;
  net.places = {"x", "y"};
  net.transitions.push_back(iic::Transition{{1, 0}, {-1, 1}, "t0"});
  net.initial.push_back(iic::Marking{1, 0});
  return net;
}

inline iic::Transition make_t(std::vector<iic::Token> g, std::vector<iic::TokenDelta> d,
                              std::string name = "t") {
  return iic::Transition{std::move(g), std::move(d), std::move(name)};
}

// Calls fn on every marking componentwise <= bound, in odometer order.
template <typename Fn>
void for_each_below(const iic::Marking& bound, Fn&& fn) {
  iic::Marking cur = iic::Marking::zeros(bound.size());
  for (;;) {
    fn(static_cast<const iic::Marking&>(cur));
    std::size_t j = 0;
    while (j < bound.size()) {
      if (cur[j] < bound[j]) {
        ++cur[j];
        for (std::size_t k = 0; k < j; ++k) cur[k] = 0;
        break;
      }
      ++j;
    }
    if (j == bound.size()) break;
  }
}

inline iic::Marking random_marking(iic::SplitMix64& rng, std::size_t n, iic::Token max) {
  iic::Marking m = iic::Marking::zeros(n);
  for (std::size_t j = 0; j < n; ++j) {
    m[j] = static_cast<iic::Token>(rng.below(max + 1));
  }
  return m;
}

// Random transition with guard/delta drawn as arc multiplicities, so the
// guard+delta nonnegativity invariant holds by construction.
inline iic::Transition random_transition(iic::SplitMix64& rng, std::size_t n,
                                         iic::Token max_weight) {
  std::vector<iic::Token> g(n);
  std::vector<iic::TokenDelta> d(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto consumed = static_cast<iic::Token>(rng.below(max_weight + 1));
    const auto produced = static_cast<iic::Token>(rng.below(max_weight + 1));
    g[j] = consumed;
    d[j] = static_cast<iic::TokenDelta>(produced) - static_cast<iic::TokenDelta>(consumed);
  }
  return iic::Transition{std::move(g), std::move(d), "t"};
}

}  // namespace iic_test
