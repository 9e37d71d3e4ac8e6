#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sbeauty/measure.hpp"
#include "sbeauty/protocol.hpp"

namespace sbeauty {

// Many-worlds view of a fully quantum protocol. Each quantum outcome is a
// world; dotted labels ("T.H2") describe successive splits, so the worlds
// form a tree whose leaves are the branch atoms and whose node weights are
// Born weights.

struct WorldNode {
  std::string label;                 // path segment; empty at the root
  Rational weight;                   // Born weight of the whole subtree
  std::vector<WorldNode> children;   // empty at leaves
  std::optional<std::size_t> atom;   // leaves: branch atom index
};

struct WorldTree {
  ExperimentProtocol protocol;
  WorldNode root;
};

// BranchingError unless every randomizer is quantum.
WorldTree from_quantum_protocol(const ExperimentProtocol& protocol);

// Leaves below the given node.
std::size_t world_count(const WorldNode& node);
// First node (depth-first) whose label matches; nullptr when absent.
const WorldNode* find_node(const WorldTree& tree, const std::string& label);

// Indented "label : weight" listing of the tree.
std::string render_tree(const WorldTree& tree);

// How a subject spreads credence over worlds.
//   single normalization: each world keeps its Born weight — the state was
//     normalised once, when it was written down.
//   double normalization: each (world, day) cell first gets the world's Born
//     weight, then the cells where the subject sleeps are dropped and the
//     rest renormalised. The second step is the renormalization fallacy, so
//     the result is flagged erroneous.
enum class NormalizationMode { single, double_normalized };

std::string normalization_str(NormalizationMode mode);

// Returns a branch measure over the protocol's atoms (tagged, and erroneous
// for double normalization) so the whole event/conditioning machinery
// applies to world credences directly.
BranchMeasure world_measure(const WorldTree& tree, NormalizationMode mode);

Rational world_credence(const BranchMeasure& worlds, const Event& event);

// Side-by-side look at the Tails half of the one-coin protocol ("wake twice
// in one world") versus the two-coin protocol where a second toss picks the
// waking day ("wake once in each of two worlds"). The observable numbers
// agree — a Monday awakening certainly occurs somewhere, and the subject's
// credence that today is Monday is 1/2 — even though the world counts
// differ.
struct TailView {
  std::string scenario;
  Rational monday_occurs;    // 1 iff some tail world contains a Monday awakening
  Rational credence_monday;  // P(today is Monday) inside the tail
  std::size_t tail_worlds;
};

struct SecondTossComparison {
  TailView one_coin;   // qsbp conditioned on T
  TailView two_coins;  // second_q_toss conditioned on T
  bool observables_match = false;
};

SecondTossComparison second_q_toss_compare();

}  // namespace sbeauty
