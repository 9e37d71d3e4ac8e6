#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sbeauty/errors.hpp"
#include "sbeauty/rational.hpp"

namespace sbeauty {

// Declarative model of awakening experiments: randomizers, a total branch
// table mapping outcome profiles to awakening schedules, plus the stock
// scenarios from the Sleeping Beauty literature as built-ins.

enum class RandomizerKind { classical, quantum };

struct Outcome {
  std::string label;
  Rational weight;  // for quantum randomizers this is the Born weight |a|^2

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

struct Randomizer {
  std::string id;
  RandomizerKind kind = RandomizerKind::classical;
  std::vector<Outcome> outcomes;  // weights strictly positive, sum exactly 1

  friend bool operator==(const Randomizer&, const Randomizer&) = default;
};

// One outcome label per randomizer, in declaration order.
using Profile = std::vector<std::string>;

std::string profile_str(const Profile& profile);

// Outcome labels may be dotted compounds like "T.H2" (first toss Tails, then
// second toss Heads). A query label matches an entry when its dot-segments
// appear consecutively in the entry's: "T" and "H2" both match "T.H2", "H"
// does not. Queries against a whole profile match if any entry matches.
bool label_matches(const std::string& query, const std::string& entry);
bool profile_matches(const std::string& query, const Profile& profile);

struct Awakening {
  std::string day;
  std::set<std::string> signals;

  friend bool operator==(const Awakening&, const Awakening&) = default;
};

struct AwakeningSchedule {
  std::vector<Awakening> awakenings;  // day labels unique; may be empty

  friend bool operator==(const AwakeningSchedule&, const AwakeningSchedule&) = default;
};

// Marks when the randomizer is resolved relative to the schedule. Affects no
// measure; it only feeds the knowledge-state note in reports.
enum class TossTime { before_first_awakening, after_first_awakening };

struct ExperimentProtocol {
  std::string name;
  std::vector<Randomizer> randomizers;
  std::map<Profile, AwakeningSchedule> branches;  // total over the outcome product
  std::optional<TossTime> toss_time;

  friend bool operator==(const ExperimentProtocol&, const ExperimentProtocol&) = default;
};

struct BranchAtom {
  Profile profile;
  Rational objective_weight;  // product of per-randomizer outcome weights
};

// Atoms in branch-table (sorted-profile) order; weights sum to 1 for any
// validated protocol.
std::vector<BranchAtom> atoms(const ExperimentProtocol& protocol);

// True when two protocols generate the same experimental results: same
// randomizer outcome distributions and the same branch table. Names, kinds
// and annotations are ignored.
bool same_distribution(const ExperimentProtocol& a, const ExperimentProtocol& b);

// Returns its argument iff every invariant holds; throws ValidationError
// naming the first violated one.
const ExperimentProtocol& validate(const ExperimentProtocol& protocol);

// Built-in scenarios: sbp, method2, method2prime, technicolor, dalembert,
// groisman, n_waking(N), qsbp, second_q_toss.
ExperimentProtocol builtin(const std::string& name);
ExperimentProtocol builtin_n_waking(std::size_t n);
std::vector<std::string> builtin_names();

// Line-oriented scenario text:
//   name <label>
//   [quantum] randomizer <id> {<label>:<p/q>, ...}
//   branch <profile> -> [<day>(<signal>,...), ...]
//   annotation toss_time <before_first_awakening|after_first_awakening>
//   # comment
// render emits canonical form: lowest-terms fractions, branch lines sorted by
// profile, sorted signal lists. parse(render(p)) == p for validated p.
ExperimentProtocol parse_scenario(std::string_view text);
std::string render_scenario(const ExperimentProtocol& protocol);

}  // namespace sbeauty
