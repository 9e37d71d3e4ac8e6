#include "sbeauty/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

namespace sbeauty {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

// 64-bit finaliser (splitmix64's output stage): bijective, avalanching.
std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t rng_draw(std::uint64_t seed, std::uint64_t trial, std::uint64_t k) {
  return mix(mix(seed + kGamma * (trial + 1)) + kGamma * (k + 1));
}

std::uint64_t rng_bounded(std::uint64_t seed, std::uint64_t trial, std::uint64_t& k,
                          std::uint64_t bound) {
  if (bound == 0) throw SamplerError("rng_bounded: zero bound");
  // Rejection below the largest multiple of bound keeps the result exactly
  // uniform; (0 - bound) % bound is 2^64 mod bound.
  const std::uint64_t cutoff = (0 - bound) % bound;
  for (;;) {
    std::uint64_t u = rng_draw(seed, trial, k++);
    if (u >= cutoff) return u % bound;
  }
}

namespace {

// Sampling plan for one randomizer: outcome weights as integer numerators
// over a common denominator.
struct RandomizerPlan {
  std::uint64_t denominator = 1;
  std::vector<std::uint64_t> numerators;  // per outcome, sums to denominator
};

RandomizerPlan plan_randomizer(const Randomizer& r) {
  RandomizerPlan plan;
  std::int64_t lcm = 1;
  for (const Outcome& o : r.outcomes) lcm = std::lcm(lcm, o.weight.den());
  plan.denominator = static_cast<std::uint64_t>(lcm);
  for (const Outcome& o : r.outcomes) {
    Rational scaled = o.weight * Rational(lcm);
    plan.numerators.push_back(static_cast<std::uint64_t>(scaled.num()));
  }
  return plan;
}

std::size_t sample_index(const RandomizerPlan& plan, std::uint64_t seed,
                         std::uint64_t trial, std::uint64_t& k) {
  std::uint64_t r = rng_bounded(seed, trial, k, plan.denominator);
  for (std::size_t i = 0; i < plan.numerators.size(); ++i) {
    if (r < plan.numerators[i]) return i;
    r -= plan.numerators[i];
  }
  throw SamplerError("rng_bounded produced a value outside the plan");
}

}  // namespace

Ensemble run(const ExperimentProtocol& protocol, std::size_t n, std::uint64_t seed,
             unsigned threads) {
  validate(protocol);
  Ensemble ensemble;
  ensemble.protocol = protocol;
  ensemble.seed = seed;
  ensemble.branch_of_trial.resize(n);

  std::vector<RandomizerPlan> plans;
  plans.reserve(protocol.randomizers.size());
  for (const Randomizer& r : protocol.randomizers) plans.push_back(plan_randomizer(r));

  // Branch atom index from the sampled per-randomizer outcome indices.
  std::map<Profile, std::uint32_t> atom_index;
  {
    std::uint32_t b = 0;
    for (const auto& [profile, schedule] : protocol.branches) atom_index[profile] = b++;
  }

  auto fill = [&](std::size_t begin, std::size_t end) {
    Profile profile(protocol.randomizers.size());
    for (std::size_t t = begin; t < end; ++t) {
      std::uint64_t k = 0;
      for (std::size_t r = 0; r < plans.size(); ++r) {
        std::size_t outcome = sample_index(plans[r], seed, t, k);
        profile[r] = protocol.randomizers[r].outcomes[outcome].label;
      }
      ensemble.branch_of_trial[t] = atom_index.at(profile);
    }
  };

  if (threads <= 1 || n < 2048) {
    fill(0, n);
  } else {
    unsigned workers = std::min<unsigned>(threads, std::thread::hardware_concurrency());
    if (workers < 2) workers = 2;
    std::vector<std::thread> pool;
    std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      std::size_t begin = std::min<std::size_t>(n, static_cast<std::size_t>(w) * chunk);
      std::size_t end = std::min<std::size_t>(n, begin + chunk);
      if (begin < end) pool.emplace_back(fill, begin, end);
    }
    for (std::thread& t : pool) t.join();
  }
  return ensemble;
}

Trial trial(const Ensemble& ensemble, std::size_t index) {
  if (index >= ensemble.branch_of_trial.size())
    throw SamplerError("trial index out of range");
  Trial t;
  t.index = index;
  t.branch = ensemble.branch_of_trial[index];
  std::size_t b = 0;
  for (const auto& [profile, schedule] : ensemble.protocol.branches) {
    if (b == t.branch) {
      t.awakenings = schedule.awakenings.size();
      return t;
    }
    ++b;
  }
  throw SamplerError("trial branch out of range");
}

void write_trials_tsv(const Ensemble& ensemble, std::ostream& out) {
  std::vector<std::string> names;
  std::vector<std::size_t> lengths;
  for (const auto& [profile, schedule] : ensemble.protocol.branches) {
    names.push_back(profile_str(profile));
    lengths.push_back(schedule.awakenings.size());
  }
  out << "trial\tbranch\tawakenings\n";
  for (std::size_t t = 0; t < ensemble.branch_of_trial.size(); ++t) {
    std::uint32_t b = ensemble.branch_of_trial[t];
    out << t << '\t' << names[b] << '\t' << lengths[b] << '\n';
  }
}

std::string frequency_mode_str(FrequencyMode mode) {
  return mode == FrequencyMode::per_experiment ? "per-experiment" : "per-awakening";
}

namespace {

FrequencyEstimate finish(FrequencyMode mode, std::uint64_t hits, std::uint64_t total) {
  FrequencyEstimate est;
  est.mode = mode;
  est.hits = hits;
  est.total = total;
  if (total == 0) throw SamplerError("frequency over an empty ensemble");
  est.estimate = Rational(static_cast<std::int64_t>(hits),
                          static_cast<std::int64_t>(total));
  double p = est.estimate.to_double();
  est.stderr_ = std::sqrt(p * (1.0 - p) / static_cast<double>(total));
  return est;
}

}  // namespace

FrequencyEstimate per_experiment_frequency(const Ensemble& ensemble, const Event& event) {
  if (event.scope != EventScope::branch)
    throw SamplerError("per-experiment frequency needs a branch-scope event");
  std::vector<char> in_event(ensemble.protocol.branches.size(), 0);
  for (std::size_t b = 0; b < in_event.size(); ++b)
    in_event[b] = event.members.count(b) ? 1 : 0;
  std::uint64_t hits = 0;
  for (std::uint32_t b : ensemble.branch_of_trial) hits += in_event[b];
  return finish(FrequencyMode::per_experiment, hits, ensemble.branch_of_trial.size());
}

FrequencyEstimate per_awakening_frequency(const Ensemble& ensemble,
                                          const CenteredSpace& space,
                                          const Event& event) {
  if (!same_distribution(ensemble.protocol, space.protocol))
    throw SamplerError("per-awakening frequency: ensemble and space protocols differ");
  const Event ce = event.scope == EventScope::branch ? lift(space, event) : event;

  // Per branch: total awakenings and how many satisfy the event.
  std::vector<std::uint64_t> branch_awakenings(space.branch_atoms.size(), 0);
  {
    std::size_t b = 0;
    for (const auto& [profile, schedule] : space.protocol.branches)
      branch_awakenings[b++] = schedule.awakenings.size();
  }
  std::vector<std::uint64_t> branch_hits(space.branch_atoms.size(), 0);
  for (std::size_t i = 0; i < space.atoms.size(); ++i)
    if (ce.members.count(i)) ++branch_hits[space.atoms[i].branch];

  std::uint64_t hits = 0;
  std::uint64_t total = 0;
  for (std::uint32_t b : ensemble.branch_of_trial) {
    hits += branch_hits[b];
    total += branch_awakenings[b];
  }
  return finish(FrequencyMode::per_awakening, hits, total);
}

ConvergenceCheck convergence_check(const FrequencyEstimate& estimate,
                                   const Rational& exact) {
  ConvergenceCheck c;
  c.exact = exact;
  c.stderr_ = estimate.stderr_;
  c.deviation = std::fabs((estimate.estimate - exact).to_double());
  c.sigmas = c.stderr_ > 0.0 ? c.deviation / c.stderr_ : 0.0;
  c.within = c.deviation <= 4.0 * c.stderr_ || estimate.estimate == exact;
  return c;
}

}  // namespace sbeauty
