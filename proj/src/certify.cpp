#include "iic/certify.hpp"

#include <sstream>

namespace iic {

namespace {

std::string fmt(const Marking& m) {
  std::ostringstream os;
  os << '(';
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (j) os << ',';
    os << m[j];
  }
  os << ')';
  return os.str();
}

CheckOutcome fail(std::string msg) { return CheckOutcome{false, std::move(msg)}; }

}  // namespace

CheckOutcome check_certificate(const PetriNet& net, const UpSet& target,
                               const UpSet& basis) {
  const std::size_t n = net.place_count();
  for (const Marking& b : basis.basis()) {
    if (b.size() != n) throw UsageError("certificate dimension does not match the net");
  }
  for (const Marking& u : target.basis()) {
    if (u.size() != n) throw UsageError("target dimension does not match the net");
  }

  // (a) the covering set contains every initial marking
  for (const Marking& m0 : net.initial) {
    for (const Marking& b : basis.basis()) {
      if (covers(m0, b)) {
        return fail("CERT-FAIL a initial " + fmt(m0) + " covers basis element " + fmt(b));
      }
    }
  }
  // (b) the covering set avoids the target cone
  for (const Marking& u : target.basis()) {
    if (!basis.contains(u)) {
      return fail("CERT-FAIL b target element " + fmt(u) + " not excluded by the basis");
    }
  }
  // (c) the covering set is closed under successors, finitized through the
  // least predecessor of each basis element along each transition
  for (const Marking& b : basis.basis()) {
    for (std::size_t ti = 0; ti < net.transitions.size(); ++ti) {
      Marking p = pred_along(b, net.transitions[ti]);
      if (!basis.contains(p)) {
        return fail("CERT-FAIL c basis element " + fmt(b) + " transition " +
                    std::to_string(ti) + " predecessor " + fmt(p) + " uncovered");
      }
    }
  }
  return CheckOutcome{true, {}};
}

CheckOutcome replay_trace(const PetriNet& net, const UpSet& target, const CexTrace& trace) {
  const std::size_t n = net.place_count();
  if (trace.target_state.size() != n) {
    return fail("TRACE-FAIL final: dimension mismatch");
  }
  for (const CexStep& s : trace.steps) {
    if (s.state.size() != n) return fail("TRACE-FAIL init: dimension mismatch");
    if (s.transition >= net.transitions.size()) {
      return fail("TRACE-FAIL init: transition index out of range");
    }
  }

  const Marking& head = trace.first();
  const Marking* start = nullptr;
  for (const Marking& m0 : net.initial) {
    if (covers(m0, head)) {
      start = &m0;
      break;
    }
  }
  if (!start) {
    return fail("TRACE-FAIL init: no initial marking covers " + fmt(head));
  }

  Marking m = *start;
  for (std::size_t j = 0; j < trace.steps.size(); ++j) {
    const Transition& t = net.transitions[trace.steps[j].transition];
    if (!enabled(m, t)) {
      return fail("TRACE-FAIL " + std::to_string(j) + " transition " +
                  std::to_string(trace.steps[j].transition) + " disabled at " + fmt(m));
    }
    try {
      m = fire(m, t);
    } catch (const OverflowError&) {
      return fail("TRACE-FAIL " + std::to_string(j) + " token overflow");
    }
  }

  for (const Marking& u : target.basis()) {
    if (covers(m, u)) return CheckOutcome{true, {}};
  }
  return fail("TRACE-FAIL final: " + fmt(m) + " covers no target element");
}

}  // namespace iic
