#include "iic/backward.hpp"

#include <algorithm>
#include <tuple>

namespace iic {

BackwardState backward_init(const UpSet& target) {
  BackwardState st;
  st.current = target;
  st.frontier = target.basis();
  return st;
}

BackwardState pre_step(const BackwardState& st, const PetriNet& net) {
  std::vector<Marking> cand = st.current.basis();
  std::vector<std::tuple<Marking, std::size_t, Marking>> provenance;  // pred, t, succ
  for (const Marking& b : st.frontier) {
    for (std::size_t ti = 0; ti < net.transitions.size(); ++ti) {
      Marking p = pred_along(b, net.transitions[ti]);
      cand.push_back(p);
      provenance.emplace_back(std::move(p), ti, b);
    }
  }

  BackwardState next;
  next.current = UpSet::from(std::move(cand));  // old basis first: stable survivors
  next.links = st.links;
  for (const Marking& m : next.current.basis()) {
    const auto& old = st.current.basis();
    if (std::find(old.begin(), old.end(), m) != old.end()) continue;
    next.frontier.push_back(m);
    for (const auto& [p, ti, succ] : provenance) {
      if (p == m) {
        next.links.emplace(m, std::make_pair(ti, succ));
        break;
      }
    }
  }
  return next;
}

namespace {

CexTrace trace_from_links(const BackwardState& st, const Marking& start) {
  CexTrace tr;
  Marking cur = start;
  while (true) {
    auto it = st.links.find(cur);
    if (it == st.links.end()) {
      tr.target_state = cur;
      return tr;
    }
    tr.steps.push_back(CexStep{cur, it->second.first});
    cur = it->second.second;
  }
}

const Marking* initial_covering(const PetriNet& net, const Marking& b) {
  for (const Marking& m0 : net.initial) {
    if (covers(m0, b)) return &m0;
  }
  return nullptr;
}

}  // namespace

Verdict backward_check(const PetriNet& net, const UpSet& target,
                       const BackwardOptions& opts) {
  net.validate();
  if (target.empty()) throw UsageError("backward_check: target basis must be nonempty");
  for (const Marking& u : target.basis()) {
    if (u.size() != net.place_count()) {
      throw UsageError("backward_check: target dimension does not match the net");
    }
  }

  BackwardState st = backward_init(target);
  SearchStats stats;

  auto covered = [&]() -> const Marking* {
    for (const Marking& f : st.frontier) {
      if (initial_covering(net, f)) return &f;
    }
    return nullptr;
  };

  while (true) {
    if (const Marking* hit = covered()) {
      Verdict v;
      v.kind = VerdictKind::unsafe;
      v.rule = stats.steps == 0 ? "backward_init_covered" : "backward_covered";
      v.trace = trace_from_links(st, *hit);
      v.stats = stats;
      v.stats.blockers = st.current.size();
      return v;
    }
    if (st.frontier.empty()) {
      Verdict v;
      v.kind = VerdictKind::safe;
      v.rule = "backward_fixpoint";
      v.certificate = st.current;
      v.stats = stats;
      v.stats.blockers = st.current.size();
      return v;
    }
    if (++stats.steps > opts.step_budget) {
      Verdict v;
      v.kind = VerdictKind::resource_limit;
      v.rule = "budget";
      v.stats = stats;
      return v;
    }
    st = pre_step(st, net);
  }
}

}  // namespace iic
