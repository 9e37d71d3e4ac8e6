#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sbeauty/protocol.hpp"

namespace sbeauty {

// Probability layer. Two kinds of sample space over one protocol:
//   - branch space: atoms are whole experiment runs (one per branch);
//   - centered space: atoms are (branch, awakening) pairs, weighted by a
//     self-locating rule.
// All weights are exact rationals.

enum class Weighting { halfer, thirder };

std::string weighting_str(Weighting w);

// A measure over the branch atoms of a protocol.
struct BranchMeasure {
  ExperimentProtocol protocol;
  std::vector<BranchAtom> atoms;  // branch-table order; weights overridden below
  std::vector<Rational> weights;  // parallel to atoms, sums to 1
  bool erroneous = false;         // set on measures modelling a known fallacy
  std::string tag;                // "objective" / "naive indifference" / ...
};

// Branch weights from the randomizer chances (the "runs of the experiment"
// long-run frequencies).
BranchMeasure objective_measure(const ExperimentProtocol& protocol);

// Uniform weight on every branch atom regardless of the chances. This is the
// indifference fallacy measure; it is returned flagged erroneous and every
// report derived from it must carry that flag.
BranchMeasure naive_indifference(const ExperimentProtocol& protocol);

struct CenteredAtom {
  std::size_t branch;     // index into branch_atoms
  std::size_t awakening;  // index into that branch's schedule
  Rational weight;

  friend bool operator==(const CenteredAtom&, const CenteredAtom&) = default;
};

// Self-locating space over awakenings of one protocol.
//   halfer:  each branch keeps its (conditioned) branch weight and splits it
//            equally over its awakenings; branches with no awakenings are
//            conditioned away first.
//   thirder: each awakening gets weight proportional to its branch weight,
//            normalised over all awakenings.
struct CenteredSpace {
  ExperimentProtocol protocol;
  Weighting weighting = Weighting::halfer;
  std::vector<BranchAtom> branch_atoms;  // branch-table order
  std::vector<CenteredAtom> atoms;       // grouped by branch, schedule order
  bool dropped_empty_branches = false;   // halfer conditioning removed branches
  bool erroneous = false;                // inherited from the base measure
  std::string tag;
};

CenteredSpace centered(const ExperimentProtocol& protocol, Weighting weighting);
CenteredSpace centered(const BranchMeasure& base, Weighting weighting);

// Events are index sets into one space's atom list. scope says which atom
// list; mixing a centered event into a branch measure is a MeasureError,
// while branch events used on a centered space lift automatically (an
// experiment-level proposition holds at every awakening inside it).
enum class EventScope { branch, centered };

struct Event {
  EventScope scope = EventScope::branch;
  std::string description;
  std::set<std::size_t> members;
};

// Branch-scope constructors. label matches a profile entry exactly or as a
// dotted prefix ("T" covers "T.H2").
Event outcome_event(const ExperimentProtocol& protocol, const std::string& label);
// Branches whose schedule shows the signal at some awakening.
Event ever_signal_event(const ExperimentProtocol& protocol, const std::string& signal);

// Centered-scope constructors.
Event wake_event(const CenteredSpace& space);
Event day_event(const CenteredSpace& space, const std::string& day);
Event today_signal_event(const CenteredSpace& space, const std::string& signal);
Event lift(const CenteredSpace& space, const Event& branch_event);

Event intersect(const Event& a, const Event& b);
Event unite(const Event& a, const Event& b);
Event complement_in(const BranchMeasure& m, const Event& e);
Event complement_in(const CenteredSpace& s, const Event& e);

Rational measure(const BranchMeasure& m, const Event& e);
Rational measure(const CenteredSpace& s, const Event& e);

// Renormalise onto a positive-measure event (MeasureError on measure zero).
BranchMeasure condition(const BranchMeasure& m, const Event& e);
CenteredSpace condition(const CenteredSpace& s, const Event& e);

// A credence with its bookkeeping: which rule produced it and whether the
// underlying measure models a fallacy.
struct Credence {
  Rational value;
  std::string space_tag;
  bool erroneous = false;
};

Credence credence(const BranchMeasure& m, const Event& e);
Credence credence(const CenteredSpace& s, const Event& e);

// Law-of-total-probability split of target over a partition:
//   P(target) = sum_i P(target | cell_i) * P(cell_i).
// Cells must be pairwise disjoint and cover the space (MeasureError
// otherwise). Zero-weight cells contribute a (0, 0) term.
struct DecompositionTerm {
  std::string cell;
  Rational cell_weight;   // P(cell)
  Rational conditional;   // P(target | cell), 0 for zero-weight cells
  Rational contribution;  // product of the two
};

struct Decomposition {
  std::string target;
  std::vector<DecompositionTerm> terms;
  Rational total;
};

Decomposition decompose(const BranchMeasure& m, const Event& target,
                        const std::vector<Event>& partition);
Decomposition decompose(const CenteredSpace& s, const Event& target,
                        const std::vector<Event>& partition);

// Weights of several events side by side, their sum, and every pairwise
// intersection that is nonempty — the tool for showing when "alternatives"
// overlap and their weights cannot be expected to sum to 1.
struct OverlapReport {
  std::vector<std::pair<std::string, Rational>> event_weights;
  Rational weight_sum;
  struct Pair {
    std::string a;
    std::string b;
    Rational intersection;
  };
  std::vector<Pair> overlaps;  // nonzero intersections only
  bool pairwise_disjoint = false;
};

OverlapReport overlap_report(const BranchMeasure& m, const std::vector<Event>& events);
OverlapReport overlap_report(const CenteredSpace& s, const std::vector<Event>& events);

// One-line description of what an awakened subject can rule out, derived
// from the toss_time annotation (empty when the protocol has none).
std::string knowledge_note(const ExperimentProtocol& protocol);

}  // namespace sbeauty
