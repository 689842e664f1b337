#include "iic/fuzz.hpp"

#include <utility>
#include <vector>

#include "iic/backward.hpp"
#include "iic/certify.hpp"
#include "iic/engine.hpp"
#include "iic/explore.hpp"
#include "iic/mist_io.hpp"

namespace iic {

namespace {

std::optional<std::string> validate_verdict(const PetriNet& net, const UpSet& target,
                                            const Verdict& v, const char* engine) {
  if (v.kind == VerdictKind::safe) {
    CheckOutcome c = check_certificate(net, target, v.certificate);
    if (!c) return std::string(engine) + " certificate rejected: " + c.diagnostic;
  } else if (v.kind == VerdictKind::unsafe) {
    CheckOutcome c = replay_trace(net, target, v.trace);
    if (!c) return std::string(engine) + " trace rejected: " + c.diagnostic;
  }
  return std::nullopt;
}

// Single-mutation shrink candidates, coarse to fine.
std::vector<Instance> mutations(const Instance& inst) {
  std::vector<Instance> out;
  const PetriNet& net = inst.net;

  if (net.transitions.size() > 1) {  // the grammar needs at least one rule
    for (std::size_t ti = 0; ti < net.transitions.size(); ++ti) {
      Instance c = inst;
      c.net.transitions.erase(c.net.transitions.begin() + static_cast<std::ptrdiff_t>(ti));
      out.push_back(std::move(c));
    }
  }
  if (net.place_count() > 1) {
    for (std::size_t j = 0; j < net.place_count(); ++j) {
      Instance c = inst;
      c.net.places.erase(c.net.places.begin() + static_cast<std::ptrdiff_t>(j));
      for (Transition& t : c.net.transitions) {
        t.guard.erase(t.guard.begin() + static_cast<std::ptrdiff_t>(j));
        t.delta.erase(t.delta.begin() + static_cast<std::ptrdiff_t>(j));
      }
      std::vector<Marking> inits;
      for (Marking m : c.net.initial) {
        m.counts.erase(m.counts.begin() + static_cast<std::ptrdiff_t>(j));
        if (std::find(inits.begin(), inits.end(), m) == inits.end()) {
          inits.push_back(std::move(m));
        }
      }
      c.net.initial = std::move(inits);
      std::vector<Marking> cones;
      for (Marking u : inst.target.basis()) {
        u.counts.erase(u.counts.begin() + static_cast<std::ptrdiff_t>(j));
        cones.push_back(std::move(u));
      }
      c.target = UpSet::from(std::move(cones));
      out.push_back(std::move(c));
    }
  }
  if (inst.target.size() > 1) {
    for (std::size_t i = 0; i < inst.target.size(); ++i) {
      Instance c = inst;
      std::vector<Marking> cones = inst.target.basis();
      cones.erase(cones.begin() + static_cast<std::ptrdiff_t>(i));
      c.target = UpSet::from(std::move(cones));
      out.push_back(std::move(c));
    }
  }
  if (net.initial.size() > 1) {
    for (std::size_t i = 0; i < net.initial.size(); ++i) {
      Instance c = inst;
      c.net.initial.erase(c.net.initial.begin() + static_cast<std::ptrdiff_t>(i));
      out.push_back(std::move(c));
    }
  }
  for (std::size_t i = 0; i < net.initial.size(); ++i) {
    for (std::size_t j = 0; j < net.place_count(); ++j) {
      if (net.initial[i][j] == 0) continue;
      Instance c = inst;
      c.net.initial[i][j] -= 1;
      std::vector<Marking> inits;
      for (Marking& m : c.net.initial) {
        if (std::find(inits.begin(), inits.end(), m) == inits.end()) inits.push_back(m);
      }
      c.net.initial = std::move(inits);
      out.push_back(std::move(c));
    }
  }
  for (std::size_t i = 0; i < inst.target.size(); ++i) {
    for (std::size_t j = 0; j < net.place_count(); ++j) {
      if (inst.target.basis()[i][j] == 0) continue;
      Instance c = inst;
      std::vector<Marking> cones = inst.target.basis();
      cones[i][j] -= 1;
      c.target = UpSet::from(std::move(cones));
      out.push_back(std::move(c));
    }
  }
  return out;
}

Instance shrink(Instance inst, const FuzzOptions& opts) {
  bool changed = true;
  std::size_t rounds = 0;
  while (changed && ++rounds <= 64) {
    changed = false;
    for (Instance& cand : mutations(inst)) {
      bool still_fails;
      try {
        still_fails = check_instance(cand, opts).has_value();
      } catch (const std::exception&) {
        still_fails = true;
      }
      if (still_fails) {
        inst = std::move(cand);
        changed = true;
        break;
      }
    }
  }
  return inst;
}

}  // namespace

std::optional<std::string> check_instance(const Instance& inst, const FuzzOptions& opts,
                                          FuzzReport* counters) {
  EngineOptions eo;
  eo.check_invariants = opts.check_invariants;
  eo.step_budget = opts.step_budget;

  Verdict primary;
  try {
    primary = check(inst.net, inst.target, eo);
  } catch (const InternalError& e) {
    return std::string("engine invariant violation: ") + e.what();
  }
  if (opts.inject_bug) {
    primary.kind =
        primary.kind == VerdictKind::safe ? VerdictKind::unsafe : VerdictKind::safe;
  }

  Verdict oracle;
  try {
    BackwardOptions bo;
    bo.step_budget = 100'000;  // rounds; two orders beyond any desk-scale fixpoint
    oracle = backward_check(inst.net, inst.target, bo);
  } catch (const InternalError& e) {
    return std::string("backward oracle internal error: ") + e.what();
  }

  if (primary.kind == VerdictKind::resource_limit ||
      oracle.kind == VerdictKind::resource_limit) {
    if (counters) ++counters->budget_hits;
    return std::string("step budget exhausted (") +
           (primary.kind == VerdictKind::resource_limit ? "engine" : "backward") + ")";
  }
  if (primary.kind != oracle.kind) {
    return std::string("verdict disagreement: engine=") + verdict_name(primary.kind) +
           " backward=" + verdict_name(oracle.kind);
  }
  if (auto bad = validate_verdict(inst.net, inst.target, primary, "engine")) return bad;
  if (auto bad = validate_verdict(inst.net, inst.target, oracle, "backward")) return bad;

  if (opts.enum_oracle) {
    ExploreResult er = explore_cover(inst.net, inst.target, opts.enum_box);
    if (er.outcome == ExploreOutcome::coverable || er.outcome == ExploreOutcome::uncoverable) {
      if (counters) ++counters->enum_checked;
      const bool enum_unsafe = er.outcome == ExploreOutcome::coverable;
      if (enum_unsafe != (primary.kind == VerdictKind::unsafe)) {
        return std::string("exploration disagreement: enumerated=") +
               (enum_unsafe ? "unsafe" : "safe") + " engines=" + verdict_name(primary.kind);
      }
    }
  }

  if (counters) {
    ++counters->instances;
    if (primary.kind == VerdictKind::safe) ++counters->safe;
    else ++counters->unsafe;
  }
  return std::nullopt;
}

FuzzReport run_differential_fuzz(const FuzzOptions& opts) {
  FuzzReport report;
  SplitMix64 seeder(opts.seed);
  for (std::uint64_t i = 0; i < opts.count; ++i) {
    const std::uint64_t inst_seed = seeder.next();
    Instance inst = random_instance(inst_seed, opts.bounds);
    std::optional<std::string> bad;
    try {
      bad = check_instance(inst, opts, &report);
    } catch (const std::exception& e) {
      bad = std::string("unexpected exception: ") + e.what();
    }
    if (bad) {
      Instance small = shrink(inst, opts);
      report.failure = FuzzFailure{i, inst_seed, *bad, emit_spec(small.net, small.target)};
      if (opts.log) {
        opts.log("instance " + std::to_string(i) + " (seed " + std::to_string(inst_seed) +
                 ") failed: " + *bad);
      }
      return report;
    }
    if (opts.log && (i + 1) % 100 == 0) {
      opts.log(std::to_string(i + 1) + "/" + std::to_string(opts.count) + " instances ok");
    }
  }
  return report;
}

}  // namespace iic
