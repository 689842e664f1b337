#include "iic/engine.hpp"

#include <algorithm>
#include <sstream>

namespace iic {

const char* verdict_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::safe:
      return "safe";
    case VerdictKind::unsafe:
      return "unsafe";
    case VerdictKind::resource_limit:
      return "resource-limit";
  }
  return "?";
}

namespace {

std::string fmt_marking(const Marking& m) {
  std::ostringstream os;
  os << '(';
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (j) os << ',';
    os << m[j];
  }
  os << ')';
  return os.str();
}

std::uint64_t token_sum(const Marking& m) {
  std::uint64_t s = 0;
  for (std::size_t j = 0; j < m.size(); ++j) s += m[j];
  return s;
}

[[noreturn]] void invariant_failure(std::string_view rule, const std::string& what) {
  throw InternalError("invariant violated after rule '" + std::string(rule) + "': " + what);
}

// Beyond this many stored blockers the auditor stops re-deriving everything
// from scratch and discharges only the obligations the last rule created.
constexpr std::size_t kFullAuditLimit = 192;

std::size_t stored_blocker_count(const Frames& fr) {
  std::size_t count = fr.permanent().size();
  for (std::uint32_t k = 1; k <= fr.frame_count(); ++k) count += fr.level(k).size();
  return count;
}

// One stored (or about-to-be-stored) blocker: outside the initial
// down-closure, predecessors excluded from every region it guards, and not
// comparable with any blocker stored at an overlapping level range.
void audit_blocker(const Frames& fr, const PetriNet& net, const Marking& b,
                   std::uint32_t stored_level, std::string_view rule) {
  const std::uint32_t n = fr.frame_count();
  if (fr.in_region(b, 0)) {
    invariant_failure(rule, "blocker " + fmt_marking(b) + " meets region 0");
  }
  const std::uint32_t lvl = stored_level == Frames::kInfinity ? n + 1 : stored_level;
  const std::uint32_t top = std::min(lvl, n);
  for (const Transition& t : net.transitions) {
    Marking p = pred_along(b, t);
    if (fr.in_region(p, 0)) {
      invariant_failure(rule, "predecessor " + fmt_marking(p) + " of blocker " +
                                  fmt_marking(b) + " lies in region 0");
    }
    if (top >= 2 && fr.in_region(p, top - 1)) {
      invariant_failure(rule, "predecessor " + fmt_marking(p) + " of blocker " +
                                  fmt_marking(b) + " lies in region " +
                                  std::to_string(top - 1));
    }
  }
  auto clash = [&](const Marking& c, std::uint32_t c_level) {
    if (c == b && c_level == lvl) return;  // the blocker itself
    if (c_level >= lvl && covers(b, c)) {
      invariant_failure(rule, "blocker " + fmt_marking(b) + " subsumed by " +
                                  fmt_marking(c) + " at level " + std::to_string(c_level));
    }
    if (c_level <= lvl && covers(c, b)) {
      invariant_failure(rule, "blocker " + fmt_marking(c) + " at level " +
                                  std::to_string(c_level) + " survived the insertion of " +
                                  fmt_marking(b));
    }
  };
  for (std::uint32_t k = 1; k <= n; ++k) {
    for (const Marking& c : fr.level(k)) clash(c, k);
  }
  for (const Marking& c : fr.permanent()) clash(c, n + 1);
}

// Obligations created by appending a frame: the new top region must keep the
// initial markings, the now-settled region must exclude the target, and the
// permanent blockers' exclusion proof must extend to the new level.
void audit_unfold(const Frames& fr, const PetriNet& net, const UpSet& target,
                  std::string_view rule) {
  const std::uint32_t n = fr.frame_count();
  for (const Marking& m0 : net.initial) {
    if (!fr.in_region(m0, n)) {
      invariant_failure(rule, "initial marking " + fmt_marking(m0) + " left region " +
                                  std::to_string(n));
    }
  }
  if (n >= 1) {
    for (const Marking& u : target.basis()) {
      if (fr.in_region(u, n - 1)) {
        invariant_failure(rule, "target element " + fmt_marking(u) +
                                    " re-entered a settled region");
      }
    }
  }
  for (const Marking& b : fr.permanent()) {
    for (const Transition& t : net.transitions) {
      Marking p = pred_along(b, t);
      if (n >= 2 && fr.in_region(p, n - 1)) {
        invariant_failure(rule, "predecessor " + fmt_marking(p) +
                                    " of permanent blocker " + fmt_marking(b) +
                                    " lies in region " + std::to_string(n - 1));
      }
    }
  }
}

// Re-derives the frame invariants from scratch. Expensive; only wired in
// when EngineOptions::check_invariants is set.
void verify_state(const Frames& fr, const PetriNet& net, const UpSet& target,
                  const std::vector<Marking>& f0_snapshot, std::string_view rule) {
  const std::uint32_t n = fr.frame_count();

  if (fr.f0() != f0_snapshot) invariant_failure(rule, "level-0 basis mutated");

  // Initial markings stay inside every region.
  for (const Marking& m0 : net.initial) {
    for (std::uint32_t i = 0; i <= n; ++i) {
      if (!fr.in_region(m0, i)) {
        invariant_failure(rule, "initial marking " + fmt_marking(m0) +
                                    " left region " + std::to_string(i));
      }
    }
  }

  // Stored level per blocker; n+1 marks the permanent set.
  std::vector<std::pair<std::uint32_t, const Marking*>> stored;
  for (std::uint32_t k = 1; k <= n; ++k) {
    for (const Marking& b : fr.level(k)) stored.emplace_back(k, &b);
  }
  for (const Marking& b : fr.permanent()) stored.emplace_back(n + 1, &b);

  for (const auto& [lvl, b] : stored) {
    // Blockers never intersect the initial down-closure.
    if (fr.in_region(*b, 0)) {
      invariant_failure(rule, "blocker " + fmt_marking(*b) + " meets region 0");
    }
    // Successor containment: a blocker effective at level i+1 has no least
    // predecessor inside region i. Regions grow with the level, so checking
    // the top effective level covers the ones below; level 0 is separate.
    const std::uint32_t top = std::min(lvl, n);  // effective at 1..top
    for (const Transition& t : net.transitions) {
      Marking p = pred_along(*b, t);
      if (fr.in_region(p, 0)) {
        invariant_failure(rule, "predecessor " + fmt_marking(p) + " of blocker " +
                                    fmt_marking(*b) + " lies in region 0");
      }
      if (top >= 2 && fr.in_region(p, top - 1)) {
        invariant_failure(rule, "predecessor " + fmt_marking(p) + " of blocker " +
                                    fmt_marking(*b) + " lies in region " +
                                    std::to_string(top - 1));
      }
    }
  }

  // Frames below the top stay clear of the target.
  if (n >= 1) {
    for (const Marking& u : target.basis()) {
      if (fr.in_region(u, 0) || (n >= 2 && fr.in_region(u, n - 1))) {
        invariant_failure(rule, "target element " + fmt_marking(u) +
                                    " re-entered a settled region");
      }
    }
  }

  // Antichain within each set, and no blocker subsumed from the same or a
  // higher level.
  auto antichain = [&](const std::vector<Marking>& set, const char* name) {
    for (std::size_t i = 0; i < set.size(); ++i) {
      for (std::size_t j = 0; j < set.size(); ++j) {
        if (i != j && covers(set[i], set[j])) {
          invariant_failure(rule, std::string(name) + " holds comparable blockers " +
                                      fmt_marking(set[i]) + " and " + fmt_marking(set[j]));
        }
      }
    }
  };
  antichain(fr.f0(), "level 0");
  for (std::uint32_t k = 1; k <= n; ++k) antichain(fr.level(k), "a level");
  antichain(fr.permanent(), "the permanent set");
  for (const auto& [lk, b] : stored) {
    for (const auto& [lc, c] : stored) {
      if (b != c && lc >= lk && covers(*b, *c)) {
        invariant_failure(rule, "blocker " + fmt_marking(*b) + " at level " +
                                    std::to_string(lk) + " subsumed by " + fmt_marking(*c) +
                                    " at level " + std::to_string(lc));
      }
    }
  }
}

// Every queued obligation must chain back to a candidate drawn from the target basis.
void verify_queue(const ObligationQueue& queue, const ObligationArena& arena,
                  const UpSet& target) {
  for (int node : queue.nodes()) {
    int cur = node;
    std::size_t hops = 0;
    while (arena[cur].via_parent != -1) {
      cur = arena[cur].via_parent;
      if (++hops > arena.size()) {
        invariant_failure("queue", "obligation provenance does not terminate");
      }
    }
    const Obligation& root = arena[cur];
    if (root.via_transition != -1 ||
        std::find(target.basis().begin(), target.basis().end(), root.state) ==
            target.basis().end()) {
      invariant_failure("queue", "obligation rooted outside the target basis");
    }
  }
}

}  // namespace

int ObligationArena::add(Marking state, std::uint32_t level, int via_transition,
                         int via_parent) {
  nodes_.push_back(Obligation{std::move(state), level, via_transition, via_parent});
  return static_cast<int>(nodes_.size()) - 1;
}

void ObligationQueue::push(const ObligationArena& arena, int node) {
  const Obligation& ob = arena[node];
  entries_.insert(Entry{ob.level, ob.state, next_seq_++, node});
}

int ObligationQueue::min_node() const {
  if (entries_.empty()) throw InternalError("min_node on empty queue");
  return entries_.begin()->node;
}

int ObligationQueue::pop_min() {
  if (entries_.empty()) throw InternalError("pop_min on empty queue");
  int node = entries_.begin()->node;
  entries_.erase(entries_.begin());
  return node;
}

std::vector<int> ObligationQueue::nodes() const {
  std::vector<int> out;
  out.reserve(entries_.size());
  for (const Entry& e : entries_) out.push_back(e.node);
  return out;
}

std::optional<Marking> candidate(const Frames& fr, const UpSet& target) {
  const std::uint32_t n = fr.frame_count();
  for (const Marking& u : target.basis()) {
    if (fr.in_region(u, n)) return u;
  }
  return std::nullopt;
}

DecideResult decide_step(const Obligation& ob, const Frames& fr, const PetriNet& net) {
  if (ob.level == 0) {
    throw UsageError("decide_step: level-0 obligations are terminal");
  }
  for (std::size_t ti = 0; ti < net.transitions.size(); ++ti) {
    Marking p = pred_along(ob.state, net.transitions[ti]);
    if (covers(p, ob.state)) continue;  // inside the state's own cone
    if (fr.in_region(p, ob.level - 1)) {
      return DecideResult{true, std::move(p), ti};
    }
  }
  return DecideResult{};
}

std::optional<std::vector<TransitionBlock>> analyze_blocks(const Marking& a,
                                                           const Frames& fr,
                                                           const PetriNet& net) {
  const std::uint32_t n = fr.frame_count();
  std::vector<TransitionBlock> out;
  out.reserve(net.transitions.size());
  for (std::size_t ti = 0; ti < net.transitions.size(); ++ti) {
    Marking p = pred_along(a, net.transitions[ti]);
    if (covers(p, a)) {
      out.push_back(TransitionBlock{ti, true, n + 1, Marking{}, std::move(p)});
      continue;
    }
    if (auto hb = fr.highest_block(p)) {
      out.push_back(TransitionBlock{ti, false, hb->level, std::move(hb->blocker), std::move(p)});
      continue;
    }
    bool found = false;
    for (const Marking& c : fr.f0()) {
      if (covers(p, c)) {
        out.push_back(TransitionBlock{ti, false, 0, c, std::move(p)});
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;
  }
  return out;
}

std::uint32_t relative_level(const Marking& a, const Frames& fr, const PetriNet& net) {
  auto blocks = analyze_blocks(a, fr, net);
  if (!blocks) throw InternalError("relative_level: an unblocked predecessor remains");
  std::uint32_t rel = fr.frame_count() + 1;
  for (const TransitionBlock& blk : *blocks) rel = std::min(rel, blk.level);
  return rel;
}

Marking generalize(const Marking& a, const Frames& fr, const PetriNet& net,
                   const std::vector<TransitionBlock>& blocks) {
  Marking out = Marking::zeros(a.size());
  for (const TransitionBlock& blk : blocks) {
    if (blk.self) continue;  // any shrinking keeps a self-blocked predecessor self-blocked
    const Transition& t = net.transitions[blk.transition];
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (t.guard[j] < blk.blocker[j]) {
        std::int64_t v = static_cast<std::int64_t>(blk.blocker[j]) + t.delta[j];
        if (v < 0) throw InternalError("generalize: blocker below the firing guard");
        out[j] = std::max(out[j], static_cast<Token>(v));
      }
    }
  }
  if (fr.in_region(out, 0)) {
    // Pull the result back out of the initial down-closure with a level-0
    // basis element below the original state.
    const Marking* repair = nullptr;
    for (const Marking& c : fr.f0()) {
      if (covers(a, c)) {
        repair = &c;
        break;
      }
    }
    if (!repair) throw InternalError("generalize: state lies inside region 0");
    out = pointwise_max(out, *repair);
  }
  if (!covers(a, out)) throw InternalError("generalize: result does not shrink the state");
  return out;
}

Marking generalize(const Marking& a, const Frames& fr, const PetriNet& net) {
  auto blocks = analyze_blocks(a, fr, net);
  if (!blocks) throw InternalError("generalize: an unblocked predecessor remains");
  return generalize(a, fr, net, *blocks);
}

ConflictResult conflict_step(ObligationArena& arena, ObligationQueue& queue, Frames& fr,
                             const PetriNet& net, SearchStats* stats) {
  const int node = queue.pop_min();
  const Obligation ob = arena[node];
  if (ob.level == 0) throw InternalError("conflict_step: level-0 obligation");

  auto blocks = analyze_blocks(ob.state, fr, net);
  if (!blocks) throw InternalError("conflict_step: an unblocked predecessor remains");
  const std::uint32_t n = fr.frame_count();
  std::uint32_t rel = n + 1;
  for (const TransitionBlock& blk : *blocks) rel = std::min(rel, blk.level);

  Marking gen = generalize(ob.state, fr, net, *blocks);
  const std::uint32_t add_at =
      rel < n ? rel + 1 : (rel == n ? n : Frames::kInfinity);
  const bool inserted = fr.add_blocker(gen, add_at);
  if (stats) {
    stats->blockers += inserted ? 1 : 0;
    stats->shrink += token_sum(ob.state) - token_sum(gen);
  }
  // Keep chasing the state at a deeper level; it is known to lead to the target.
  if (rel + 1 < n) {
    int re = arena.add(ob.state, rel + 2, ob.via_transition, ob.via_parent);
    queue.push(arena, re);
  }
  return ConflictResult{add_at, std::move(gen), inserted};
}

void propagate(Frames& fr, const PetriNet& net, const EngineHooks& hooks) {
  const std::uint32_t n = fr.frame_count();
  for (std::uint32_t i = 1; i < n; ++i) {
    const std::vector<Marking> snapshot = fr.level(i);
    for (const Marking& r : snapshot) {
      const auto& live = fr.level(i);
      if (std::find(live.begin(), live.end(), r) == live.end()) continue;
      auto blocks = analyze_blocks(r, fr, net);
      if (!blocks) continue;
      const bool inductive_here = std::all_of(
          blocks->begin(), blocks->end(),
          [&](const TransitionBlock& blk) { return blk.self || blk.level >= i; });
      if (!inductive_here) continue;

      Marking b = generalize(r, fr, net, *blocks);
      const bool inserted = fr.add_blocker(b, i + 1);
      if (hooks.stats) {
        hooks.stats->blockers += inserted ? 1 : 0;
        hooks.stats->shrink += token_sum(r) - token_sum(b);
        ++hooks.stats->steps;
      }
      if (hooks.on_event && *hooks.on_event) {
        (*hooks.on_event)(EngineEvent{"propagate",
                                      "r=" + fmt_marking(r) + " i=" + std::to_string(i) +
                                          " -> " + fmt_marking(b) + "@" + std::to_string(i + 1),
                                      fr.level_sizes()});
      }
      if (hooks.after_rule) {
        hooks.after_rule("propagate", inserted
                                          ? RuleEffect{RuleEffect::blocker_added, b, i + 1}
                                          : RuleEffect{});
      }
    }
  }
}

CexTrace build_trace(int terminal, const ObligationArena& arena) {
  CexTrace tr;
  int cur = terminal;
  while (true) {
    if (cur < 0 || static_cast<std::size_t>(cur) >= arena.size()) {
      throw InternalError("build_trace: broken provenance chain");
    }
    const Obligation& ob = arena[cur];
    if (ob.via_parent == -1) {
      if (ob.via_transition != -1) throw InternalError("build_trace: root is not a candidate");
      tr.target_state = ob.state;
      return tr;
    }
    if (ob.via_transition < 0) throw InternalError("build_trace: step without a transition");
    tr.steps.push_back(CexStep{ob.state, static_cast<std::size_t>(ob.via_transition)});
    cur = ob.via_parent;
  }
}

Verdict check(const PetriNet& net, const UpSet& target, const EngineOptions& opts) {
  net.validate();
  if (target.empty()) throw UsageError("check: target basis must be nonempty");
  for (const Marking& u : target.basis()) {
    if (u.size() != net.place_count()) {
      throw UsageError("check: target dimension does not match the net");
    }
  }

  Frames fr = Frames::init(net);
  ObligationArena arena;
  ObligationQueue queue;
  SearchStats stats;
  const std::vector<Marking> f0_snapshot = fr.f0();

  auto emit = [&](std::string_view rule, std::string detail) {
    if (opts.on_event) opts.on_event(EngineEvent{rule, std::move(detail), fr.level_sizes()});
  };
  // Exhaustive re-audit while the frames are small; past that, discharge
  // exactly the obligations this rule application created.
  auto verify = [&](std::string_view rule, const RuleEffect& effect) {
    if (!opts.check_invariants) return;
    if (effect.kind == RuleEffect::reset || stored_blocker_count(fr) <= kFullAuditLimit) {
      verify_state(fr, net, target, f0_snapshot, rule);
    } else if (effect.kind == RuleEffect::blocker_added) {
      if (fr.f0() != f0_snapshot) invariant_failure(rule, "level-0 basis mutated");
      audit_blocker(fr, net, effect.blocker, effect.level, rule);
    } else if (effect.kind == RuleEffect::unfolded) {
      if (fr.f0() != f0_snapshot) invariant_failure(rule, "level-0 basis mutated");
      audit_unfold(fr, net, target, rule);
    }
    verify_queue(queue, arena, target);
  };

  EngineHooks hooks;
  hooks.stats = &stats;
  hooks.on_event = opts.on_event ? &opts.on_event : nullptr;
  if (opts.check_invariants) {
    hooks.after_rule = verify;
  }

  auto finish = [&](Verdict v) {
    v.stats = stats;
    v.stats.frames = fr.frame_count();
    return v;
  };
  auto cex = [&](int node) {
    const Obligation& ob = arena[node];
    const bool syntactic = ob.level == 0 && ob.via_parent != -1;
    Verdict v;
    v.kind = VerdictKind::unsafe;
    v.rule = syntactic ? "cex_syntactic" : "cex_semantic";
    emit(v.rule, "a=" + fmt_marking(ob.state) + " i=" + std::to_string(ob.level));
    v.trace = build_trace(node, arena);
    return finish(v);
  };
  // Terminal scan: any empty inner level witnesses two equal regions.
  auto try_valid = [&]() -> std::optional<Verdict> {
    for (std::uint32_t i = 1; i < fr.frame_count(); ++i) {
      if (!fr.frame_empty(i)) continue;
      Verdict v;
      v.kind = VerdictKind::safe;
      v.rule = "valid";
      v.certificate = fr.certificate_basis(i);
      emit("valid", "i=" + std::to_string(i));
      return finish(v);
    }
    return std::nullopt;
  };
  auto budget_out = [&]() {
    emit("budget", "steps=" + std::to_string(stats.steps));
    Verdict v;
    v.kind = VerdictKind::resource_limit;
    v.rule = "budget";
    return finish(v);
  };
  // Queues the obligation unless it already meets region 0, which is terminal.
  auto push_ob = [&](int node) -> std::optional<Verdict> {
    if (fr.in_region(arena[node].state, 0)) {
      ++stats.obligations;
      return cex(node);
    }
    queue.push(arena, node);
    return std::nullopt;
  };

  emit("initialize", "f0=" + std::to_string(fr.f0().size()));
  verify("initialize", RuleEffect{RuleEffect::reset, {}, 0});

  for (;;) {
    if (++stats.steps > opts.step_budget) return budget_out();
    if (auto cand = candidate(fr, target)) {
      int node = arena.add(*cand, fr.frame_count(), -1, -1);
      emit("candidate", "a=" + fmt_marking(*cand) + " i=" + std::to_string(fr.frame_count()));
      if (auto v = push_ob(node)) return *v;
      verify("candidate", RuleEffect{});

      while (!queue.empty()) {
        if (++stats.steps > opts.step_budget) return budget_out();
        const int m = queue.min_node();
        const Obligation ob = arena[m];
        ++stats.obligations;
        if (ob.level == 0) return cex(m);  // unreachable behind the push-time check

        DecideResult dr = decide_step(ob, fr, net);
        if (dr.found) {
          int child = arena.add(dr.pred, ob.level - 1, static_cast<int>(dr.transition), m);
          emit("decide", "a=" + fmt_marking(ob.state) + " i=" + std::to_string(ob.level) +
                             " -> b=" + fmt_marking(arena[child].state) + " t=" +
                             std::to_string(dr.transition));
          if (auto v = push_ob(child)) return *v;
          verify("decide", RuleEffect{});
        } else {
          const Marking state = ob.state;
          ConflictResult cr = conflict_step(arena, queue, fr, net, &stats);
          emit("conflict", "a=" + fmt_marking(state) + " i=" + std::to_string(ob.level) +
                               " add@" +
                               (cr.level == Frames::kInfinity ? std::string("inf")
                                                              : std::to_string(cr.level)));
          verify("conflict", cr.inserted ? RuleEffect{RuleEffect::blocker_added,
                                                      cr.blocker, cr.level}
                                         : RuleEffect{});
          if (auto v = try_valid()) return *v;
        }
      }
    } else {
      fr.unfold();
      emit("unfold", "N=" + std::to_string(fr.frame_count()));
      verify("unfold", RuleEffect{RuleEffect::unfolded, {}, 0});
      propagate(fr, net, hooks);
      if (auto v = try_valid()) return *v;
    }
  }
}

}  // namespace iic
