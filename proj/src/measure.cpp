#include "sbeauty/measure.hpp"

#include <algorithm>
#include <iterator>
#include <type_traits>

namespace sbeauty {

std::string weighting_str(Weighting w) {
  return w == Weighting::halfer ? "halfer" : "thirder";
}

BranchMeasure objective_measure(const ExperimentProtocol& protocol) {
  BranchMeasure m;
  m.protocol = validate(protocol);
  m.atoms = atoms(protocol);
  m.weights.reserve(m.atoms.size());
  for (const BranchAtom& a : m.atoms) m.weights.push_back(a.objective_weight);
  m.tag = "objective";
  return m;
}

BranchMeasure naive_indifference(const ExperimentProtocol& protocol) {
  BranchMeasure m;
  m.protocol = validate(protocol);
  m.atoms = atoms(protocol);
  m.weights.assign(m.atoms.size(), Rational(1, static_cast<std::int64_t>(m.atoms.size())));
  m.erroneous = true;
  m.tag = "naive indifference";
  return m;
}

CenteredSpace centered(const ExperimentProtocol& protocol, Weighting weighting) {
  return centered(objective_measure(protocol), weighting);
}

CenteredSpace centered(const BranchMeasure& base, Weighting weighting) {
  CenteredSpace s;
  s.protocol = base.protocol;
  s.weighting = weighting;
  s.branch_atoms = base.atoms;
  s.erroneous = base.erroneous;
  s.tag = base.tag + "/" + weighting_str(weighting);

  std::vector<std::size_t> schedule_len(base.atoms.size());
  {
    std::size_t b = 0;
    for (const auto& [profile, schedule] : base.protocol.branches)
      schedule_len[b++] = schedule.awakenings.size();
  }

  if (weighting == Weighting::halfer) {
    // Condition away branches that never wake, then split each branch weight
    // equally over its awakenings.
    Rational alive(0);
    for (std::size_t b = 0; b < base.atoms.size(); ++b)
      if (schedule_len[b] > 0) alive += base.weights[b];
    if (alive.is_zero()) throw MeasureError("centered: no branch has awakenings");
    for (std::size_t b = 0; b < base.atoms.size(); ++b) {
      if (schedule_len[b] == 0) {
        if (!base.weights[b].is_zero()) s.dropped_empty_branches = true;
        continue;
      }
      Rational per = base.weights[b] / alive /
                     Rational(static_cast<std::int64_t>(schedule_len[b]));
      for (std::size_t i = 0; i < schedule_len[b]; ++i)
        s.atoms.push_back(CenteredAtom{b, i, per});
    }
  } else {
    // Every awakening weighs its branch weight, normalised over awakenings.
    Rational z(0);
    for (std::size_t b = 0; b < base.atoms.size(); ++b)
      z += base.weights[b] * Rational(static_cast<std::int64_t>(schedule_len[b]));
    if (z.is_zero()) throw MeasureError("centered: no branch has awakenings");
    for (std::size_t b = 0; b < base.atoms.size(); ++b)
      for (std::size_t i = 0; i < schedule_len[b]; ++i)
        s.atoms.push_back(CenteredAtom{b, i, base.weights[b] / z});
  }
  return s;
}

Event outcome_event(const ExperimentProtocol& protocol, const std::string& label) {
  Event e{EventScope::branch, label, {}};
  std::vector<BranchAtom> as = atoms(protocol);
  for (std::size_t b = 0; b < as.size(); ++b)
    if (profile_matches(label, as[b].profile)) e.members.insert(b);
  if (e.members.empty())
    throw MeasureError("event: no branch has outcome \"" + label + "\"");
  return e;
}

Event ever_signal_event(const ExperimentProtocol& protocol, const std::string& signal) {
  Event e{EventScope::branch, "ever " + signal, {}};
  std::size_t b = 0;
  for (const auto& [profile, schedule] : protocol.branches) {
    for (const Awakening& a : schedule.awakenings)
      if (a.signals.count(signal)) {
        e.members.insert(b);
        break;
      }
    ++b;
  }
  if (e.members.empty())
    throw MeasureError("event: no branch ever shows signal \"" + signal + "\"");
  return e;
}

Event wake_event(const CenteredSpace& space) {
  Event e{EventScope::centered, "awake", {}};
  for (std::size_t i = 0; i < space.atoms.size(); ++i) e.members.insert(i);
  return e;
}

namespace {

const Awakening& atom_awakening(const CenteredSpace& space, const CenteredAtom& atom) {
  std::size_t b = 0;
  for (const auto& [profile, schedule] : space.protocol.branches) {
    if (b == atom.branch) return schedule.awakenings[atom.awakening];
    ++b;
  }
  throw MeasureError("centered atom out of range");
}

}  // namespace

Event day_event(const CenteredSpace& space, const std::string& day) {
  Event e{EventScope::centered, "today " + day, {}};
  for (std::size_t i = 0; i < space.atoms.size(); ++i)
    if (atom_awakening(space, space.atoms[i]).day == day) e.members.insert(i);
  if (e.members.empty())
    throw MeasureError("event: no awakening on day \"" + day + "\"");
  return e;
}

Event today_signal_event(const CenteredSpace& space, const std::string& signal) {
  Event e{EventScope::centered, "today " + signal, {}};
  for (std::size_t i = 0; i < space.atoms.size(); ++i)
    if (atom_awakening(space, space.atoms[i]).signals.count(signal)) e.members.insert(i);
  if (e.members.empty())
    throw MeasureError("event: no awakening shows signal \"" + signal + "\"");
  return e;
}

Event lift(const CenteredSpace& space, const Event& branch_event) {
  if (branch_event.scope != EventScope::branch)
    throw MeasureError("lift: event is already centered");
  Event e{EventScope::centered, branch_event.description, {}};
  for (std::size_t i = 0; i < space.atoms.size(); ++i)
    if (branch_event.members.count(space.atoms[i].branch)) e.members.insert(i);
  return e;
}

namespace {

void require_same_scope(const Event& a, const Event& b) {
  if (a.scope != b.scope)
    throw MeasureError("event algebra: mixed branch and centered events (lift first)");
}

}  // namespace

Event intersect(const Event& a, const Event& b) {
  require_same_scope(a, b);
  Event e{a.scope, a.description + " & " + b.description, {}};
  std::set_intersection(a.members.begin(), a.members.end(), b.members.begin(),
                        b.members.end(), std::inserter(e.members, e.members.end()));
  return e;
}

Event unite(const Event& a, const Event& b) {
  require_same_scope(a, b);
  Event e{a.scope, a.description + " | " + b.description, {}};
  std::set_union(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(),
                 std::inserter(e.members, e.members.end()));
  return e;
}

namespace {

Event complement_impl(EventScope scope, std::size_t universe, const Event& e,
                      const char* what) {
  if (e.scope != scope) throw MeasureError(std::string("complement: ") + what);
  Event out{scope, "not " + e.description, {}};
  for (std::size_t i = 0; i < universe; ++i)
    if (!e.members.count(i)) out.members.insert(i);
  return out;
}

}  // namespace

Event complement_in(const BranchMeasure& m, const Event& e) {
  return complement_impl(EventScope::branch, m.atoms.size(), e,
                         "centered event against a branch measure");
}

Event complement_in(const CenteredSpace& s, const Event& e) {
  return complement_impl(EventScope::centered, s.atoms.size(), e,
                         "branch event against a centered space (lift first)");
}

Rational measure(const BranchMeasure& m, const Event& e) {
  if (e.scope != EventScope::branch)
    throw MeasureError("measure: centered event against a branch measure");
  Rational sum(0);
  for (std::size_t b : e.members) {
    if (b >= m.weights.size()) throw MeasureError("measure: event member out of range");
    sum += m.weights[b];
  }
  return sum;
}

Rational measure(const CenteredSpace& s, const Event& e) {
  const Event& ce = e.scope == EventScope::branch ? lift(s, e) : e;
  Rational sum(0);
  for (std::size_t i : ce.members) {
    if (i >= s.atoms.size()) throw MeasureError("measure: event member out of range");
    sum += s.atoms[i].weight;
  }
  return sum;
}

BranchMeasure condition(const BranchMeasure& m, const Event& e) {
  Rational z = measure(m, e);
  if (z.is_zero())
    throw MeasureError("condition: event \"" + e.description + "\" has measure zero");
  BranchMeasure out = m;
  out.tag = m.tag + " | " + e.description;
  for (std::size_t b = 0; b < out.weights.size(); ++b)
    out.weights[b] = e.members.count(b) ? m.weights[b] / z : Rational(0);
  return out;
}

CenteredSpace condition(const CenteredSpace& s, const Event& e) {
  const Event ce = e.scope == EventScope::branch ? lift(s, e) : e;
  Rational z = measure(s, ce);
  if (z.is_zero())
    throw MeasureError("condition: event \"" + e.description + "\" has measure zero");
  CenteredSpace out = s;
  out.tag = s.tag + " | " + e.description;
  for (std::size_t i = 0; i < out.atoms.size(); ++i)
    out.atoms[i].weight = ce.members.count(i) ? s.atoms[i].weight / z : Rational(0);
  return out;
}

Credence credence(const BranchMeasure& m, const Event& e) {
  return Credence{measure(m, e), m.tag, m.erroneous};
}

Credence credence(const CenteredSpace& s, const Event& e) {
  return Credence{measure(s, e), s.tag, s.erroneous};
}

namespace {

template <typename Space>
Decomposition decompose_impl(const Space& space, std::size_t universe,
                             const Event& target, const std::vector<Event>& partition,
                             EventScope scope) {
  // Partition check: cells pairwise disjoint and covering the whole space.
  std::set<std::size_t> seen;
  std::size_t covered = 0;
  std::vector<Event> cells;
  for (const Event& raw : partition) {
    Event cell = raw;
    if constexpr (std::is_same_v<Space, CenteredSpace>) {
      if (cell.scope == EventScope::branch) cell = lift(space, cell);
    }
    if (cell.scope != scope)
      throw MeasureError("decompose: cell \"" + cell.description + "\" has wrong scope");
    for (std::size_t i : cell.members) {
      if (!seen.insert(i).second)
        throw MeasureError("decompose: cells overlap at atom " + std::to_string(i));
      ++covered;
    }
    cells.push_back(std::move(cell));
  }
  if (covered != universe)
    throw MeasureError("decompose: cells do not cover the space");

  Decomposition d;
  d.target = target.description;
  d.total = Rational(0);
  for (const Event& cell : cells) {
    DecompositionTerm term;
    term.cell = cell.description;
    term.cell_weight = measure(space, cell);
    if (term.cell_weight.is_zero()) {
      term.conditional = Rational(0);
    } else {
      term.conditional = measure(condition(space, cell), target);
    }
    term.contribution = term.conditional * term.cell_weight;
    d.total += term.contribution;
    d.terms.push_back(std::move(term));
  }
  return d;
}

}  // namespace

Decomposition decompose(const BranchMeasure& m, const Event& target,
                        const std::vector<Event>& partition) {
  return decompose_impl(m, m.atoms.size(), target, partition, EventScope::branch);
}

Decomposition decompose(const CenteredSpace& s, const Event& target,
                        const std::vector<Event>& partition) {
  return decompose_impl(s, s.atoms.size(), target, partition, EventScope::centered);
}

namespace {

template <typename Space>
OverlapReport overlap_impl(const Space& space, const std::vector<Event>& events) {
  OverlapReport r;
  r.weight_sum = Rational(0);
  r.pairwise_disjoint = true;
  for (const Event& e : events) {
    Rational w = measure(space, e);
    r.event_weights.emplace_back(e.description, w);
    r.weight_sum += w;
  }
  for (std::size_t i = 0; i < events.size(); ++i)
    for (std::size_t j = i + 1; j < events.size(); ++j) {
      Event a = events[i];
      Event b = events[j];
      if constexpr (std::is_same_v<Space, CenteredSpace>) {
        if (a.scope == EventScope::branch) a = lift(space, a);
        if (b.scope == EventScope::branch) b = lift(space, b);
      }
      Event both = intersect(a, b);
      Rational w = measure(space, both);
      if (!both.members.empty()) r.pairwise_disjoint = false;
      if (!w.is_zero())
        r.overlaps.push_back({events[i].description, events[j].description, w});
    }
  return r;
}

}  // namespace

OverlapReport overlap_report(const BranchMeasure& m, const std::vector<Event>& events) {
  return overlap_impl(m, events);
}

OverlapReport overlap_report(const CenteredSpace& s, const std::vector<Event>& events) {
  return overlap_impl(s, events);
}

std::string knowledge_note(const ExperimentProtocol& protocol) {
  if (!protocol.toss_time) return "";
  if (*protocol.toss_time == TossTime::before_first_awakening)
    return "randomizer resolved before the first awakening: an awake subject knows "
           "all outcomes are already settled";
  return "randomizer resolved only after the first awakening: an awake subject "
         "cannot treat every outcome as settled today";
}

}  // namespace sbeauty
