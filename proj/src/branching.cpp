#include "sbeauty/branching.hpp"

#include <algorithm>
#include <functional>

namespace sbeauty {

namespace {

std::vector<std::string> split_path(const Profile& profile) {
  // Dotted outcome labels describe successive splits; profiles with several
  // randomizers just continue the path.
  std::vector<std::string> path;
  for (const std::string& label : profile) {
    std::size_t start = 0;
    while (true) {
      std::size_t dot = label.find('.', start);
      if (dot == std::string::npos) {
        path.push_back(label.substr(start));
        break;
      }
      path.push_back(label.substr(start, dot - start));
      start = dot + 1;
    }
  }
  return path;
}

WorldNode* child_named(WorldNode& node, const std::string& label) {
  for (WorldNode& c : node.children)
    if (c.label == label) return &c;
  return nullptr;
}

Rational sum_weights(WorldNode& node) {
  if (node.children.empty()) return node.weight;
  Rational sum(0);
  for (WorldNode& c : node.children) sum += sum_weights(c);
  node.weight = sum;
  return sum;
}

}  // namespace

WorldTree from_quantum_protocol(const ExperimentProtocol& protocol) {
  validate(protocol);
  for (const Randomizer& r : protocol.randomizers)
    if (r.kind != RandomizerKind::quantum)
      throw BranchingError("world tree: randomizer \"" + r.id + "\" is not quantum");

  WorldTree tree;
  tree.protocol = protocol;
  tree.root.label = "";

  std::vector<BranchAtom> as = atoms(protocol);
  for (std::size_t b = 0; b < as.size(); ++b) {
    WorldNode* node = &tree.root;
    for (const std::string& segment : split_path(as[b].profile)) {
      WorldNode* next = child_named(*node, segment);
      if (!next) {
        node->children.push_back(WorldNode{segment, Rational(0), {}, std::nullopt});
        next = &node->children.back();
      } else if (next->atom) {
        throw BranchingError("world tree: \"" + segment +
                             "\" is both a world and a split");
      }
      node = next;
    }
    if (!node->children.empty() || node->atom)
      throw BranchingError("world tree: branch \"" + profile_str(as[b].profile) +
                           "\" collides with another path");
    node->atom = b;
    node->weight = as[b].objective_weight;
  }
  sum_weights(tree.root);
  return tree;
}

std::size_t world_count(const WorldNode& node) {
  if (node.children.empty()) return 1;
  std::size_t n = 0;
  for (const WorldNode& c : node.children) n += world_count(c);
  return n;
}

const WorldNode* find_node(const WorldTree& tree, const std::string& label) {
  const WorldNode* found = nullptr;
  std::function<void(const WorldNode&)> walk = [&](const WorldNode& node) {
    if (found) return;
    if (node.label == label) {
      found = &node;
      return;
    }
    for (const WorldNode& c : node.children) walk(c);
  };
  walk(tree.root);
  return found;
}

namespace {

void render(const WorldNode& node, int depth, std::string& out) {
  if (depth >= 0) {
    out.append(static_cast<std::size_t>(depth) * 2, ' ');
    out += node.label + " : " + node.weight.str();
    if (node.children.empty()) out += "  [world]";
    out += '\n';
  }
  for (const WorldNode& c : node.children) render(c, depth + 1, out);
}

}  // namespace

std::string render_tree(const WorldTree& tree) {
  std::string out;
  render(tree.root, -1, out);
  return out;
}

std::string normalization_str(NormalizationMode mode) {
  return mode == NormalizationMode::single ? "single" : "double";
}

BranchMeasure world_measure(const WorldTree& tree, NormalizationMode mode) {
  BranchMeasure m;
  m.protocol = tree.protocol;
  m.atoms = atoms(tree.protocol);
  m.weights.assign(m.atoms.size(), Rational(0));

  if (mode == NormalizationMode::single) {
    // The state was normalised once when written down: worlds keep their
    // weights.
    for (std::size_t b = 0; b < m.atoms.size(); ++b)
      m.weights[b] = m.atoms[b].objective_weight;
    m.tag = "worlds (single normalization)";
    return m;
  }

  // Renormalization fallacy: give every (world, waking day) cell the world's
  // weight, silently drop the sleeping cells, and normalise what is left.
  // Worlds that wake more often gain weight they are not entitled to.
  Rational z(0);
  std::vector<Rational> cell_mass(m.atoms.size(), Rational(0));
  std::size_t b = 0;
  for (const auto& [profile, schedule] : tree.protocol.branches) {
    cell_mass[b] = m.atoms[b].objective_weight *
                   Rational(static_cast<std::int64_t>(schedule.awakenings.size()));
    z += cell_mass[b];
    ++b;
  }
  if (z.is_zero()) throw BranchingError("world measure: no world ever wakes");
  for (std::size_t i = 0; i < m.atoms.size(); ++i) m.weights[i] = cell_mass[i] / z;
  m.erroneous = true;
  m.tag = "worlds (double normalization)";
  return m;
}

Rational world_credence(const BranchMeasure& worlds, const Event& event) {
  return measure(worlds, event);
}

namespace {

TailView tail_view(const std::string& scenario) {
  ExperimentProtocol protocol = builtin(scenario);
  WorldTree tree = from_quantum_protocol(protocol);
  Event tails = outcome_event(protocol, "T");

  TailView view;
  view.scenario = scenario;

  // Every world in the tree is realised, so a Monday awakening certainly
  // occurs iff some tails world wakes on Monday.
  bool monday_somewhere = false;
  {
    std::size_t b = 0;
    for (const auto& [profile, schedule] : protocol.branches) {
      if (tails.members.count(b))
        for (const Awakening& a : schedule.awakenings)
          if (a.day == "Mo") monday_somewhere = true;
      ++b;
    }
  }
  view.monday_occurs = Rational(monday_somewhere ? 1 : 0);

  // Credence that today is Monday, given tails: condition the world measure
  // on tails and spread each world's weight over its waking days.
  BranchMeasure worlds = world_measure(tree, NormalizationMode::single);
  CenteredSpace tail_space = centered(condition(worlds, tails), Weighting::halfer);
  view.credence_monday = measure(tail_space, day_event(tail_space, "Mo"));

  const WorldNode* tail_node = find_node(tree, "T");
  view.tail_worlds = tail_node ? world_count(*tail_node) : 0;
  return view;
}

}  // namespace

SecondTossComparison second_q_toss_compare() {
  SecondTossComparison cmp;
  cmp.one_coin = tail_view("qsbp");
  cmp.two_coins = tail_view("second_q_toss");
  cmp.observables_match = cmp.one_coin.monday_occurs == cmp.two_coins.monday_occurs &&
                          cmp.one_coin.credence_monday == cmp.two_coins.credence_monday;
  return cmp;
}

}  // namespace sbeauty
