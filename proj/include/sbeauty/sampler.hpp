#pragma once

#include <cstdint>
#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "sbeauty/measure.hpp"
#include "sbeauty/protocol.hpp"

namespace sbeauty {

// Monte Carlo runs of a protocol. Sampling is counter-based: every random
// number is a pure function of (seed, trial, draw index), so results are
// bit-identical whether trials run on one thread or many, and any trial can
// be replayed in isolation.

// draw index k inside a trial; advances past rejected samples too.
std::uint64_t rng_draw(std::uint64_t seed, std::uint64_t trial, std::uint64_t k);

// Uniform value in [0, bound) by rejection; k advances by the number of raw
// draws consumed (at least one).
std::uint64_t rng_bounded(std::uint64_t seed, std::uint64_t trial, std::uint64_t& k,
                          std::uint64_t bound);

struct Trial {
  std::size_t index = 0;
  std::size_t branch = 0;      // branch atom index
  std::size_t awakenings = 0;  // schedule length of that branch
};

struct Ensemble {
  ExperimentProtocol protocol;
  std::uint64_t seed = 0;
  std::vector<std::uint32_t> branch_of_trial;  // atom index per trial
};

// threads > 1 splits the trial range; the result is identical to threads == 1.
Ensemble run(const ExperimentProtocol& protocol, std::size_t n, std::uint64_t seed,
             unsigned threads = 1);

Trial trial(const Ensemble& ensemble, std::size_t index);

// "trial<TAB>branch<TAB>awakenings" lines, one per trial.
void write_trials_tsv(const Ensemble& ensemble, std::ostream& out);

enum class FrequencyMode { per_experiment, per_awakening };

std::string frequency_mode_str(FrequencyMode mode);

struct FrequencyEstimate {
  FrequencyMode mode = FrequencyMode::per_experiment;
  std::uint64_t hits = 0;
  std::uint64_t total = 0;   // trials, or awakenings across all trials
  Rational estimate;         // hits / total, exact
  double stderr_ = 0.0;      // sqrt(est * (1 - est) / total)
};

// Fraction of trials whose branch lies in the (branch-scope) event.
FrequencyEstimate per_experiment_frequency(const Ensemble& ensemble, const Event& event);

// Fraction of awakenings satisfying the event, pooled over all trials. space
// supplies the (branch, awakening) atom list that centered events index;
// branch-scope events are lifted. This is the "count every waking" tally that
// tracks thirder weights, not branch probabilities.
FrequencyEstimate per_awakening_frequency(const Ensemble& ensemble,
                                          const CenteredSpace& space,
                                          const Event& event);

struct ConvergenceCheck {
  Rational exact;
  double deviation = 0.0;  // |estimate - exact|
  double stderr_ = 0.0;
  double sigmas = 0.0;     // deviation / stderr (0 when stderr is 0)
  bool within = false;     // deviation <= 4 * stderr, or exact hit
};

ConvergenceCheck convergence_check(const FrequencyEstimate& estimate,
                                   const Rational& exact);

}  // namespace sbeauty
