#include "sbeauty/protocol.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace sbeauty {

std::string profile_str(const Profile& profile) {
  std::string out;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (i) out += ',';
    out += profile[i];
  }
  return out;
}

namespace {

std::vector<std::string> segments(const std::string& label) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t dot = label.find('.', start);
    if (dot == std::string::npos) {
      out.push_back(label.substr(start));
      return out;
    }
    out.push_back(label.substr(start, dot - start));
    start = dot + 1;
  }
}

}  // namespace

bool label_matches(const std::string& query, const std::string& entry) {
  if (query == entry) return true;
  std::vector<std::string> q = segments(query);
  std::vector<std::string> e = segments(entry);
  if (q.size() > e.size()) return false;
  for (std::size_t at = 0; at + q.size() <= e.size(); ++at)
    if (std::equal(q.begin(), q.end(), e.begin() + at)) return true;
  return false;
}

bool profile_matches(const std::string& query, const Profile& profile) {
  return std::any_of(profile.begin(), profile.end(),
                     [&](const std::string& entry) { return label_matches(query, entry); });
}

std::vector<BranchAtom> atoms(const ExperimentProtocol& protocol) {
  std::vector<BranchAtom> out;
  out.reserve(protocol.branches.size());
  for (const auto& [profile, schedule] : protocol.branches) {
    Rational w(1);
    for (std::size_t r = 0; r < protocol.randomizers.size(); ++r) {
      for (const Outcome& o : protocol.randomizers[r].outcomes) {
        if (o.label == profile[r]) {
          w *= o.weight;
          break;
        }
      }
    }
    out.push_back(BranchAtom{profile, w});
  }
  return out;
}

bool same_distribution(const ExperimentProtocol& a, const ExperimentProtocol& b) {
  if (a.randomizers.size() != b.randomizers.size()) return false;
  for (std::size_t i = 0; i < a.randomizers.size(); ++i)
    if (a.randomizers[i].outcomes != b.randomizers[i].outcomes) return false;
  return a.branches == b.branches;
}

namespace {

void check_randomizers(const ExperimentProtocol& p) {
  if (p.randomizers.empty())
    throw ValidationError("validate: protocol has no randomizers");
  std::set<std::string> ids;
  for (const Randomizer& r : p.randomizers) {
    if (!ids.insert(r.id).second)
      throw ValidationError("validate: duplicate randomizer id \"" + r.id + "\"");
    if (r.outcomes.empty())
      throw ValidationError("validate: randomizer \"" + r.id + "\" has no outcomes");
    std::set<std::string> labels;
    Rational sum(0);
    for (const Outcome& o : r.outcomes) {
      if (!labels.insert(o.label).second)
        throw ValidationError("validate: randomizer \"" + r.id +
                              "\": duplicate outcome label \"" + o.label + "\"");
      if (o.weight.sign() <= 0)
        throw ValidationError("validate: randomizer \"" + r.id + "\": outcome \"" +
                              o.label + "\" weight " + o.weight.str() +
                              " is not strictly positive");
      sum += o.weight;
    }
    if (sum != Rational(1))
      throw ValidationError("validate: randomizer \"" + r.id +
                            "\": outcome weights sum to " + sum.str() +
                            ", expected 1");
  }
}

void check_branches(const ExperimentProtocol& p) {
  // Totality: every profile of the outcome product appears exactly once, and
  // nothing else does. The branch map rules out duplicates by construction.
  std::size_t expected = 1;
  for (const Randomizer& r : p.randomizers) expected *= r.outcomes.size();

  for (const auto& [profile, schedule] : p.branches) {
    if (profile.size() != p.randomizers.size())
      throw ValidationError("validate: branch \"" + profile_str(profile) +
                            "\" has " + std::to_string(profile.size()) +
                            " outcome labels, expected " +
                            std::to_string(p.randomizers.size()));
    for (std::size_t r = 0; r < profile.size(); ++r) {
      const Randomizer& rz = p.randomizers[r];
      bool known = std::any_of(rz.outcomes.begin(), rz.outcomes.end(),
                               [&](const Outcome& o) { return o.label == profile[r]; });
      if (!known)
        throw ValidationError("validate: branch \"" + profile_str(profile) +
                              "\": \"" + profile[r] + "\" is not an outcome of randomizer \"" +
                              rz.id + "\"");
    }
  }

  if (p.branches.size() != expected) {
    // Name one concrete missing profile for the diagnostic.
    std::function<bool(std::size_t, Profile&)> find_missing =
        [&](std::size_t r, Profile& acc) {
          if (r == p.randomizers.size()) return p.branches.find(acc) == p.branches.end();
          for (const Outcome& o : p.randomizers[r].outcomes) {
            acc.push_back(o.label);
            if (find_missing(r + 1, acc)) return true;
            acc.pop_back();
          }
          return false;
        };
    Profile missing;
    find_missing(0, missing);
    throw ValidationError("validate: branch table is not total, missing branch \"" +
                          profile_str(missing) + "\"");
  }
}

void check_schedules(const ExperimentProtocol& p) {
  bool any_awakening = false;
  for (const auto& [profile, schedule] : p.branches) {
    std::set<std::string> days;
    for (const Awakening& a : schedule.awakenings) {
      if (!days.insert(a.day).second)
        throw ValidationError("validate: branch \"" + profile_str(profile) +
                              "\": duplicate day label \"" + a.day + "\"");
    }
    any_awakening = any_awakening || !schedule.awakenings.empty();
  }
  if (!any_awakening)
    throw ValidationError("validate: no-awakenings: every branch schedule is empty");
}

}  // namespace

const ExperimentProtocol& validate(const ExperimentProtocol& protocol) {
  check_randomizers(protocol);
  check_branches(protocol);
  check_schedules(protocol);
  return protocol;
}

namespace {

Randomizer fair_coin(RandomizerKind kind = RandomizerKind::classical) {
  return Randomizer{"coin", kind, {{"H", {1, 2}}, {"T", {1, 2}}}};
}

AwakeningSchedule days(std::vector<Awakening> a) { return AwakeningSchedule{std::move(a)}; }

ExperimentProtocol make_sbp(const std::string& name, RandomizerKind kind) {
  ExperimentProtocol p;
  p.name = name;
  p.randomizers = {fair_coin(kind)};
  p.branches[{"H"}] = days({{"Mo", {}}});
  p.branches[{"T"}] = days({{"Mo", {}}, {"Tu", {}}});
  return p;
}

ExperimentProtocol make_technicolor() {
  ExperimentProtocol p;
  p.name = "technicolor";
  p.randomizers = {fair_coin(),
                   Randomizer{"die", RandomizerKind::classical,
                              {{"O", {1, 2}}, {"E", {1, 2}}}}};
  p.branches[{"H", "O"}] = days({{"Mo", {"red"}}});
  p.branches[{"H", "E"}] = days({{"Mo", {"blue"}}});
  p.branches[{"T", "O"}] = days({{"Mo", {"red"}}, {"Tu", {"blue"}}});
  p.branches[{"T", "E"}] = days({{"Mo", {"blue"}}, {"Tu", {"red"}}});
  return p;
}

// Play until a Heads or two tosses, whichever comes first: three
// unequal-chance histories. Uniform indifference over them is the classic
// 2/3-for-"some Heads" blunder; the true chance is 3/4.
ExperimentProtocol make_dalembert() {
  ExperimentProtocol p;
  p.name = "dalembert";
  p.randomizers = {Randomizer{"tosses", RandomizerKind::classical,
                              {{"H", {1, 2}}, {"T.H", {1, 4}}, {"T.T", {1, 4}}}}};
  p.branches[{"H"}] = days({{"Mo", {}}});
  p.branches[{"T.H"}] = days({{"Mo", {}}});
  p.branches[{"T.T"}] = days({{"Mo", {}}});
  return p;
}

ExperimentProtocol make_groisman() {
  ExperimentProtocol p;
  p.name = "groisman";
  p.randomizers = {fair_coin()};
  p.branches[{"H"}] = days({{"Mo", {"green"}}});
  p.branches[{"T"}] = days({{"Mo", {"red"}}, {"Tu", {"red"}}});
  return p;
}

// Second quantum toss happens only in the Tails history, so the randomizer is
// the compound {H, T.H2, T.T2}; the dotted labels group into a nested world
// split in the branching module.
ExperimentProtocol make_second_q_toss() {
  ExperimentProtocol p;
  p.name = "second_q_toss";
  p.randomizers = {Randomizer{"coins", RandomizerKind::quantum,
                              {{"H", {1, 2}}, {"T.H2", {1, 4}}, {"T.T2", {1, 4}}}}};
  p.branches[{"H"}] = days({{"Mo", {}}});
  p.branches[{"T.H2"}] = days({{"Mo", {}}});
  p.branches[{"T.T2"}] = days({{"Tu", {}}});
  return p;
}

std::string nth_day(std::size_t k) {
  if (k == 0) return "Mo";
  if (k == 1) return "Tu";
  return "day" + std::to_string(k + 1);
}

}  // namespace

ExperimentProtocol builtin_n_waking(std::size_t n) {
  if (n < 1) throw Error("n_waking: need at least one Tails awakening");
  ExperimentProtocol p;
  p.name = "n_waking(" + std::to_string(n) + ")";
  p.randomizers = {fair_coin()};
  p.branches[{"H"}] = days({{"Mo", {}}});
  std::vector<Awakening> tails;
  for (std::size_t k = 0; k < n; ++k) tails.push_back({nth_day(k), {}});
  p.branches[{"T"}] = days(std::move(tails));
  return p;
}

ExperimentProtocol builtin(const std::string& name) {
  if (name == "sbp") return make_sbp("sbp", RandomizerKind::classical);
  if (name == "method2") {
    ExperimentProtocol p = make_sbp("method2", RandomizerKind::classical);
    p.toss_time = TossTime::after_first_awakening;
    return p;
  }
  if (name == "method2prime") {
    ExperimentProtocol p = make_sbp("method2prime", RandomizerKind::classical);
    p.toss_time = TossTime::before_first_awakening;
    return p;
  }
  if (name == "technicolor") return make_technicolor();
  if (name == "dalembert") return make_dalembert();
  if (name == "groisman") return make_groisman();
  if (name == "qsbp") return make_sbp("qsbp", RandomizerKind::quantum);
  if (name == "second_q_toss") return make_second_q_toss();
  if (name.rfind("n_waking(", 0) == 0 && name.back() == ')') {
    std::string arg = name.substr(9, name.size() - 10);
    std::size_t n = 0;
    for (char c : arg) {
      if (c < '0' || c > '9') throw Error("unknown scenario \"" + name + "\"");
      n = n * 10 + static_cast<std::size_t>(c - '0');
      if (n > 1000000) throw Error("n_waking: count too large");
    }
    return builtin_n_waking(n);
  }
  throw Error("unknown scenario \"" + name + "\"");
}

std::vector<std::string> builtin_names() {
  return {"sbp",      "method2",  "method2prime", "technicolor", "dalembert",
          "groisman", "qsbp",     "second_q_toss", "n_waking(N)"};
}

}  // namespace sbeauty
