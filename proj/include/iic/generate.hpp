#pragma once

#include <cstdint>

#include "iic/kernel.hpp"

namespace iic {

/// Tiny deterministic PRNG so generated instances are identical across
/// platforms and standard-library versions.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
};

struct GenBounds {
  std::size_t places = 6;
  std::size_t transitions = 6;
  Token weight = 2;  // max arc multiplicity
  Token tokens = 3;  // max initial / target token count per place
};

struct Instance {
  PetriNet net;
  UpSet target;
};

/// Deterministic in (seed, bounds): guards and deltas are drawn as arc
/// multiplicities, which keeps every transition fireable at its guard;
/// the target basis has one or two markings, never all-zero.
Instance random_instance(std::uint64_t seed, const GenBounds& bounds = {});

}  // namespace iic
