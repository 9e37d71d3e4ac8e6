// Command-line front end: pick or load a scenario, run the credence, Monte
// Carlo, betting or many-worlds engines, and print text or record reports.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sbeauty/betting.hpp"
#include "sbeauty/branching.hpp"
#include "sbeauty/measure.hpp"
#include "sbeauty/money.hpp"
#include "sbeauty/protocol.hpp"
#include "sbeauty/report.hpp"
#include "sbeauty/sampler.hpp"

namespace {

using namespace sbeauty;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ExperimentProtocol resolve_scenario(const std::string& spec) {
  for (const std::string& name : builtin_names())
    if (spec == name) return builtin(spec);
  if (spec.rfind("n_waking(", 0) == 0) return builtin(spec);
  if (std::filesystem::exists(spec)) {
    std::ifstream in(spec);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str());  // ParseError surfaces as engine error
  }
  throw UsageError("unknown scenario \"" + spec + "\" (not a built-in, not a file)");
}

BettingBook resolve_book(const std::string& spec) {
  if (spec == "hitchcock") return make_hitchcock();
  if (spec == "briggs") return make_briggs();
  if (spec == "waking") return make_waking_game();
  if (spec.rfind("custom:", 0) == 0) {
    std::string path = spec.substr(7);
    if (!std::filesystem::exists(path))
      throw UsageError("book file \"" + path + "\" does not exist");
    std::ifstream in(path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_book(buffer.str());
  }
  throw UsageError("unknown book \"" + spec +
                   "\" (want hitchcock, briggs, waking or custom:<path>)");
}

// Event specs: a bare outcome label, "ever:<signal>" (branch scope),
// "day:<label>" or "signal:<label>" (centered scope).
Event parse_event(const ExperimentProtocol& protocol, const CenteredSpace* space,
                  const std::string& spec) {
  auto need_space = [&]() -> const CenteredSpace& {
    if (!space)
      throw UsageError("event \"" + spec + "\" is awakening-scoped; this command "
                       "context only has whole-run events");
    return *space;
  };
  if (spec.rfind("day:", 0) == 0) return day_event(need_space(), spec.substr(4));
  if (spec.rfind("signal:", 0) == 0)
    return today_signal_event(need_space(), spec.substr(7));
  if (spec.rfind("ever:", 0) == 0) return ever_signal_event(protocol, spec.substr(5));
  return outcome_event(protocol, spec);
}

std::string fraction_and_decimal(const Rational& r) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", r.to_double());
  return r.str() + " (" + buf + ")";
}

std::string decimal6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string yesno(bool b) { return b ? "yes" : "no"; }

// Shared command parameters, bound by CLI11.
struct Options {
  std::string scenario = "sbp";
  std::string weighting = "halfer";
  std::string event;
  std::string given;
  std::string book = "hitchcock";
  std::string policy = "accept-all";
  std::string pstar = "1/2";
  std::string mode;
  std::string format = "text";
  std::string dump;
  std::uint64_t n = 100000;
  std::uint64_t seed = 42;
  unsigned threads = 1;
  std::uint64_t big_n = 0;
  bool enumerate = false;
  bool table = false;
  bool compare = false;
};

bool records(const Options& opt) {
  if (opt.format == "records") return true;
  if (opt.format == "text") return false;
  throw UsageError("unknown format \"" + opt.format + "\" (want text or records)");
}

Weighting parse_weighting(const std::string& w) {
  if (w == "halfer") return Weighting::halfer;
  if (w == "thirder") return Weighting::thirder;
  throw UsageError("unknown weighting \"" + w + "\" (want halfer or thirder)");
}

// ---------------------------------------------------------------- credence

// Day labels in branch-table, then schedule order.
std::vector<std::string> day_labels(const ExperimentProtocol& protocol) {
  std::vector<std::string> days;
  for (const auto& [profile, schedule] : protocol.branches)
    for (const Awakening& a : schedule.awakenings)
      if (std::find(days.begin(), days.end(), a.day) == days.end())
        days.push_back(a.day);
  return days;
}

std::vector<std::string> outcome_labels(const ExperimentProtocol& protocol) {
  std::vector<std::string> labels;
  for (const Randomizer& r : protocol.randomizers)
    for (const Outcome& o : r.outcomes) labels.push_back(o.label);
  return labels;
}

int cmd_credence(const Options& opt, std::ostream& out) {
  const bool rec = records(opt);
  ExperimentProtocol protocol = resolve_scenario(opt.scenario);
  Weighting weighting = parse_weighting(opt.weighting);
  CenteredSpace space = centered(protocol, weighting);

  auto emit = [&](const std::string& event_desc, const std::string& given_desc,
                  const Rational& value) {
    if (rec) {
      std::vector<std::pair<std::string, std::string>> fields = {
          {"kind", "credence"},
          {"scenario", protocol.name},
          {"weighting", weighting_str(weighting)},
          {"event", event_desc}};
      if (!given_desc.empty()) fields.emplace_back("given", given_desc);
      fields.emplace_back("value", value.str());
      out << record_line(fields);
    } else if (given_desc.empty()) {
      out << "P(" << event_desc << ") = " << value.str() << "\n";
    } else {
      out << "P(" << event_desc << "|" << given_desc << ") = " << value.str() << "\n";
    }
  };

  if (!rec) {
    out << "scenario " << protocol.name << "\n";
    out << "weighting " << weighting_str(weighting) << "\n";
    if (std::string note = knowledge_note(protocol); !note.empty())
      out << "note " << note << "\n";
  }

  if (!opt.event.empty()) {
    Event target = parse_event(protocol, &space, opt.event);
    if (opt.given.empty()) {
      emit(opt.event, "", measure(space, target));
    } else {
      Event given = parse_event(protocol, &space, opt.given);
      emit(opt.event, opt.given, measure(condition(space, given), target));
    }
    return 0;
  }
  if (!opt.given.empty()) throw UsageError("--given needs --event");

  for (const std::string& label : outcome_labels(protocol))
    emit(label, "", measure(space, outcome_event(protocol, label)));
  std::vector<std::string> days = day_labels(protocol);
  std::vector<Rational> day_weight;
  for (const std::string& day : days) {
    Rational w = measure(space, day_event(space, day));
    day_weight.push_back(w);
    emit(day, "", w);
  }
  for (std::size_t d = 0; d < days.size(); ++d) {
    if (day_weight[d].is_zero()) continue;
    CenteredSpace given = condition(space, day_event(space, days[d]));
    for (const std::string& label : outcome_labels(protocol))
      emit(label, days[d], measure(given, outcome_event(protocol, label)));
  }
  return 0;
}

// ---------------------------------------------------------------- simulate

int cmd_simulate(const Options& opt, std::ostream& out) {
  const bool rec = records(opt);
  ExperimentProtocol protocol = resolve_scenario(opt.scenario);
  std::string mode = opt.mode.empty() ? "both" : opt.mode;
  if (mode != "per-experiment" && mode != "per-awakening" && mode != "both")
    throw UsageError("unknown mode \"" + mode +
                     "\" (want per-experiment, per-awakening or both)");

  std::string event_spec = opt.event;
  if (event_spec.empty()) event_spec = protocol.randomizers[0].outcomes[0].label;

  Ensemble ensemble = run(protocol, opt.n, opt.seed, opt.threads);
  if (!opt.dump.empty()) {
    std::ofstream tsv(opt.dump);
    if (!tsv) throw UsageError("cannot write \"" + opt.dump + "\"");
    write_trials_tsv(ensemble, tsv);
  }

  if (!rec)
    out << "scenario " << protocol.name << "  n " << opt.n << "  seed " << opt.seed
        << "\n";

  CenteredSpace thirder = centered(protocol, Weighting::thirder);

  auto emit = [&](const FrequencyEstimate& est, const Rational& exact) -> void {
    ConvergenceCheck check = convergence_check(est, exact);
    if (rec) {
      out << record_line({{"kind", "simulate"},
                          {"scenario", protocol.name},
                          {"n", std::to_string(opt.n)},
                          {"seed", std::to_string(opt.seed)},
                          {"mode", frequency_mode_str(est.mode)},
                          {"event", event_spec},
                          {"hits", std::to_string(est.hits)},
                          {"total", std::to_string(est.total)},
                          {"estimate", est.estimate.str()},
                          {"exact", exact.str()},
                          {"stderr", decimal6(est.stderr_)},
                          {"within_4_stderr", yesno(check.within)}});
    } else {
      out << "mode " << frequency_mode_str(est.mode) << "  event " << event_spec
          << "  hits " << est.hits << "  total " << est.total << "  estimate "
          << fraction_and_decimal(est.estimate) << "  exact " << exact.str()
          << "  stderr " << decimal6(est.stderr_) << "  within-4-stderr "
          << yesno(check.within) << "\n";
    }
  };

  if (mode == "per-experiment" || mode == "both") {
    Event event = parse_event(protocol, nullptr, event_spec);
    FrequencyEstimate est = per_experiment_frequency(ensemble, event);
    emit(est, measure(objective_measure(protocol), event));
  }
  if (mode == "per-awakening" || mode == "both") {
    Event event = parse_event(protocol, &thirder, event_spec);
    FrequencyEstimate est = per_awakening_frequency(ensemble, thirder, event);
    emit(est, measure(thirder, event));
  }
  return 0;
}

// ---------------------------------------------------------------- dutchbook

std::string slot_name(const ExperimentProtocol& protocol, const BettingBook& book,
                      const ChoiceSlot& slot) {
  const Offer& offer = book.offers[slot.offer];
  if (!slot.branch) return offer.id;
  std::size_t b = 0;
  for (const auto& [profile, schedule] : protocol.branches) {
    if (b == *slot.branch)
      return offer.id + "@" + profile_str(profile) + "." +
             schedule.awakenings[*slot.awakening].day;
    ++b;
  }
  throw BettingError("slot branch out of range");
}

void emit_settlement(const SettlementReport& report, bool rec, std::ostream& out,
                     const std::string& context) {
  if (rec) {
    for (const auto& [branch, net] : report.branch_net)
      out << record_line({{"kind", "settlement"},
                          {"context", context},
                          {"branch", branch},
                          {"net", net.str()}});
    std::vector<std::pair<std::string, std::string>> verdict = {
        {"kind", "verdict"},
        {"context", context},
        {"sure_loss", yesno(report.sure_loss)}};
    if (report.flip_epsilon)
      verdict.emplace_back("flip_epsilon", report.flip_epsilon->str());
    out << record_line(verdict);
  } else {
    for (const auto& [branch, net] : report.branch_net)
      out << "branch " << branch << " net " << net.str() << "\n";
    out << "sure_loss " << yesno(report.sure_loss);
    if (report.flip_epsilon)
      out << "  flip_epsilon " << report.flip_epsilon->str();
    out << "\n";
  }
}

int cmd_dutchbook(const Options& opt, std::ostream& out) {
  const bool rec = records(opt);
  Rational p_star = Rational::parse(opt.pstar);
  Policy policy = parse_policy(opt.policy, p_star);

  if (opt.big_n > 0) {
    NWakingReport report = n_waking_cdt_edt(opt.big_n, policy);
    if (rec) {
      out << record_line({{"kind", "n_waking"},
                          {"n", std::to_string(report.n)},
                          {"policy", policy_str(policy)},
                          {"heads_net", report.heads_net.str()},
                          {"tails_net", report.tails_net.str()},
                          {"loss_monotone", yesno(report.loss_monotone)},
                          {"policy_accepts", yesno(report.policy_accepts)},
                          {"value_accept", report.value_accept.str()},
                          {"value_reject", report.value_reject.str()}});
    } else {
      out << "scenario n_waking(" << report.n << ")  book waking  policy "
          << policy_str(policy) << "\n";
      out << "accept-all nets: H " << report.heads_net.str() << ", T "
          << report.tails_net.str() << "\n";
      out << "tails net by awakening count:";
      for (std::size_t k = 0; k < report.tails_net_by_k.size(); ++k)
        out << " " << (k + 2) << ":" << report.tails_net_by_k[k].str();
      out << "\n";
      out << "loss grows monotonically " << yesno(report.loss_monotone) << "\n";
      out << "policy decision " << (report.policy_accepts ? "accept" : "reject")
          << "  V(accept) " << report.value_accept.str() << "  V(reject) "
          << report.value_reject.str() << "\n";
    }
    return 0;
  }

  ExperimentProtocol protocol = resolve_scenario(opt.scenario);
  BettingBook book = resolve_book(opt.book);
  validate_book(protocol, book);

  if (!rec) {
    out << "scenario " << protocol.name << "\n";
    out << render_book(book);
    if (!opt.table && !opt.enumerate) {
      out << "policy " << policy_str(policy);
      if (policy.kind == PolicyKind::decision_theoretic && policy.theory == Theory::cdt)
        out << "  p* " << policy.p_star.str();
      out << "\n";
    }
  }

  if (opt.table) {
    TextTable table;
    table.header({"branch", "choices", "net"});
    for (const BranchChoiceRow& row : per_branch_choice_table(protocol, book)) {
      if (rec)
        out << record_line({{"kind", "choice_row"},
                            {"branch", row.branch},
                            {"choices", row.choices},
                            {"net", row.net.str()}});
      else
        table.row({row.branch, row.choices, row.net.str()});
    }
    if (!rec) out << table.str();
    return 0;
  }

  if (opt.enumerate) {
    std::vector<ChoiceSlot> slots = choice_slots(protocol, book);
    for (const auto& [choices, report] : enumerate_settlements(protocol, book)) {
      std::string name;
      for (std::size_t s = 0; s < slots.size(); ++s) {
        if (s) name += ' ';
        name += slot_name(protocol, book, slots[s]) + "=" +
                (choices.accept[s] ? "Y" : "N");
      }
      if (rec) {
        std::string nets;
        for (const auto& [branch, net] : report.branch_net) {
          if (!nets.empty()) nets += ' ';
          nets += branch + ":" + net.str();
        }
        out << record_line({{"kind", "enumeration"},
                            {"choices", name},
                            {"nets", nets},
                            {"sure_loss", yesno(report.sure_loss)}});
      } else {
        out << "choices [" << name << "]";
        for (const auto& [branch, net] : report.branch_net)
          out << "  " << branch << " " << net.str();
        out << "  sure_loss " << yesno(report.sure_loss) << "\n";
      }
    }
    return 0;
  }

  Decision decision = decide(protocol, book, policy);
  for (const OfferDecision& od : decision.offers) {
    if (rec) {
      out << record_line({{"kind", "decision"},
                          {"offer", od.offer_id},
                          {"timing", od.upfront ? "once" : "each"},
                          {"accept", yesno(od.accept)},
                          {"value_accept", od.value_accept.str()},
                          {"value_reject", od.value_reject.str()}});
    } else {
      out << "offer " << od.offer_id << (od.upfront ? " (upfront): " : " (waking): ")
          << (od.accept ? "accept" : "reject") << "  V(accept) "
          << od.value_accept.str() << "  V(reject) " << od.value_reject.str() << "\n";
    }
  }
  emit_settlement(decision.settlement, rec, out, policy_str(policy));
  return 0;
}

// ---------------------------------------------------------------- branch

int cmd_branch(const Options& opt, std::ostream& out) {
  const bool rec = records(opt);

  if (opt.compare) {
    SecondTossComparison cmp = second_q_toss_compare();
    for (const TailView* view : {&cmp.one_coin, &cmp.two_coins}) {
      if (rec) {
        out << record_line({{"kind", "tail_view"},
                            {"scenario", view->scenario},
                            {"monday_occurs", view->monday_occurs.str()},
                            {"credence_monday", view->credence_monday.str()},
                            {"tail_worlds", std::to_string(view->tail_worlds)}});
      } else {
        out << "setup " << view->scenario << ": monday-awakening-occurs "
            << view->monday_occurs.str() << "  P(today=Mo|T) "
            << view->credence_monday.str() << "  tail worlds " << view->tail_worlds
            << "\n";
      }
    }
    if (rec)
      out << record_line(
          {{"kind", "tail_compare"}, {"observables_match", yesno(cmp.observables_match)}});
    else
      out << "observables match " << yesno(cmp.observables_match) << "\n";
    return 0;
  }

  ExperimentProtocol protocol = resolve_scenario(opt.scenario);
  WorldTree tree = from_quantum_protocol(protocol);
  std::string mode_name = opt.mode.empty() ? "single" : opt.mode;
  NormalizationMode mode;
  if (mode_name == "single")
    mode = NormalizationMode::single;
  else if (mode_name == "double")
    mode = NormalizationMode::double_normalized;
  else
    throw UsageError("unknown mode \"" + mode_name + "\" (want single or double)");

  BranchMeasure worlds = world_measure(tree, mode);

  if (!rec) {
    out << "scenario " << protocol.name << "\n";
    out << "worlds " << world_count(tree.root) << "\n";
    out << render_tree(tree);
    out << "normalization " << normalization_str(mode) << "\n";
    if (worlds.erroneous)
      out << kErroneousBanner
          << " re-normalising an already normalised state inflates the values "
             "below\n";
  }
  for (std::size_t b = 0; b < worlds.atoms.size(); ++b) {
    if (rec) {
      std::vector<std::pair<std::string, std::string>> fields = {
          {"kind", "world"},
          {"scenario", protocol.name},
          {"normalization", normalization_str(mode)},
          {"world", profile_str(worlds.atoms[b].profile)},
          {"credence", worlds.weights[b].str()}};
      if (worlds.erroneous) fields.emplace_back("erroneous", "yes");
      out << record_line(fields);
    } else {
      out << "world " << profile_str(worlds.atoms[b].profile) << " credence "
          << worlds.weights[b].str() << "\n";
    }
  }
  if (!opt.event.empty()) {
    Event event = parse_event(protocol, nullptr, opt.event);
    Rational value = world_credence(worlds, event);
    if (rec) {
      std::vector<std::pair<std::string, std::string>> fields = {
          {"kind", "world_credence"},
          {"scenario", protocol.name},
          {"normalization", normalization_str(mode)},
          {"event", opt.event},
          {"value", value.str()}};
      if (worlds.erroneous) fields.emplace_back("erroneous", "yes");
      out << record_line(fields);
    } else {
      out << "credence " << opt.event << " = " << value.str() << "\n";
    }
  }
  return 0;
}

// ---------------------------------------------------------------- tables

void heading(std::ostream& out, const std::string& title) {
  out << "\n== " << title << " ==\n";
}

int cmd_tables(std::ostream& out) {
  Options sub;

  heading(out, "Self-locating credences, one fair coin");
  for (const char* weighting : {"halfer", "thirder"}) {
    sub = Options{};
    sub.scenario = "sbp";
    sub.weighting = weighting;
    out << "-- " << weighting << "\n";
    cmd_credence(sub, out);
  }
  {
    // Total-probability splits of Heads over the day partition.
    ExperimentProtocol sbp = builtin("sbp");
    for (Weighting w : {Weighting::halfer, Weighting::thirder}) {
      CenteredSpace space = centered(sbp, w);
      std::vector<Event> days;
      for (const std::string& day : day_labels(sbp)) days.push_back(day_event(space, day));
      Decomposition d = decompose(space, lift(space, outcome_event(sbp, "H")), days);
      out << weighting_str(w) << " split: P(H) =";
      for (std::size_t i = 0; i < d.terms.size(); ++i)
        out << (i ? " + " : " ") << d.terms[i].conditional.str() << "*"
            << d.terms[i].cell_weight.str();
      out << " = " << d.total.str() << "\n";
    }
  }

  heading(out, "Colored-signal variant");
  {
    ExperimentProtocol tc = builtin("technicolor");
    out << render_scenario(tc);
    BranchMeasure m = objective_measure(tc);
    Event red = ever_signal_event(tc, "red");
    Event blue = ever_signal_event(tc, "blue");
    OverlapReport overlap = overlap_report(m, {red, blue});
    for (const auto& [desc, weight] : overlap.event_weights)
      out << "P(" << desc << ") = " << weight.str() << "\n";
    out << "sum " << overlap.weight_sum.str() << "  pairwise disjoint "
        << yesno(overlap.pairwise_disjoint) << "\n";
    Event heads = outcome_event(tc, "H");
    Rational h_given_red = measure(condition(m, red), heads);
    Rational red_given_h = measure(condition(m, heads), red);
    out << "P(H|ever red) = " << h_given_red.str() << "\n";
    out << "P(ever red|H) = " << red_given_h.str() << "\n";
    Rational inverted = h_given_red * measure(m, red) / red_given_h;
    out << "P(H) recovered by inversion = " << inverted.str() << "\n";
  }

  heading(out, "Uniform-indifference fallacy, branch-dependent second toss");
  {
    ExperimentProtocol da = builtin("dalembert");
    Event at_least_one_heads = outcome_event(da, "H");
    out << "P(" << at_least_one_heads.description
        << ") objective = " << measure(objective_measure(da), at_least_one_heads).str()
        << "\n";
    BranchMeasure naive = naive_indifference(da);
    out << kErroneousBanner
        << " uniform weight over unequal-chance outcomes\n";
    out << "P(" << at_least_one_heads.description
        << ") naive = " << measure(naive, at_least_one_heads).str() << "\n";
  }

  heading(out, "Betting books, accept-all settlements");
  for (const char* name : {"hitchcock", "briggs"}) {
    sub = Options{};
    sub.book = name;
    sub.policy = "accept-all";
    out << "-- " << name << "\n";
    cmd_dutchbook(sub, out);
  }

  heading(out, "Per-awakening game, choices by branch");
  {
    sub = Options{};
    sub.book = "waking";
    sub.table = true;
    cmd_dutchbook(sub, out);
  }

  heading(out, "Decision-theory values on the per-awakening games");
  {
    ExperimentProtocol sbp = builtin("sbp");
    Offer hitchcock_game2 = make_hitchcock().offers[1];
    Offer briggs_game2 = make_briggs().offers[1];
    CenteredSpace halfer = centered(sbp, Weighting::halfer);
    CenteredSpace thirder = centered(sbp, Weighting::thirder);
    for (const char* p : {"0", "1/2", "1"}) {
      Rational p_star = Rational::parse(p);
      out << "cdt halfer p*=" << p << ": V(accept) "
          << cdt_value(halfer, hitchcock_game2, true, p_star).str() << "  V(reject) "
          << cdt_value(halfer, hitchcock_game2, false, p_star).str() << "\n";
    }
    out << "edt halfer: V(accept) " << edt_value(halfer, hitchcock_game2, true).str()
        << "  V(reject) " << edt_value(halfer, hitchcock_game2, false).str() << "\n";
    out << "edt thirder on reversed game: V(accept) "
        << edt_value(thirder, briggs_game2, true).str() << "  V(reject) "
        << edt_value(thirder, briggs_game2, false).str() << "\n";
  }

  heading(out, "Many-worlds credences");
  for (const char* mode : {"single", "double"}) {
    sub = Options{};
    sub.scenario = "qsbp";
    sub.mode = mode;
    sub.event = "H";
    cmd_branch(sub, out);
  }
  {
    sub = Options{};
    sub.compare = true;
    cmd_branch(sub, out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"awakening-protocol credence, betting and simulation engine"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* credence = app.add_subcommand(
      "credence", "Exact credences for a scenario under a weighting rule");
  credence->add_option("--scenario", opt.scenario, "built-in name or scenario file");
  credence->add_option("--weighting", opt.weighting, "halfer or thirder");
  credence->add_option("--event", opt.event,
                       "outcome label, ever:<signal>, day:<d> or signal:<s>");
  credence->add_option("--given", opt.given, "condition on this event");
  credence->add_option("--format", opt.format, "text or records");

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Monte Carlo frequencies with exact convergence references");
  simulate->add_option("--scenario", opt.scenario, "built-in name or scenario file");
  simulate->add_option("--n", opt.n, "number of trials");
  simulate->add_option("--seed", opt.seed, "RNG seed");
  simulate->add_option("--threads", opt.threads, "worker threads (same result)");
  simulate->add_option("--mode", opt.mode, "per-experiment, per-awakening or both");
  simulate->add_option("--event", opt.event, "event to tally (default: first outcome)");
  simulate->add_option("--dump", opt.dump, "write per-trial TSV here");
  simulate->add_option("--format", opt.format, "text or records");

  CLI::App* dutchbook = app.add_subcommand(
      "dutchbook", "Settle betting books and evaluate decision rules");
  dutchbook->add_option("--scenario", opt.scenario, "built-in name or scenario file");
  dutchbook->add_option("--book", opt.book, "hitchcock, briggs, waking or custom:<path>");
  dutchbook->add_option("--policy", opt.policy,
                        "accept-all, reject-all, cdt-halfer, edt-halfer, cdt-thirder "
                        "or edt-thirder");
  dutchbook->add_option("--pstar", opt.pstar, "CDT credence that other awakenings accept");
  dutchbook->add_option("--N", opt.big_n, "report the n-awakening waking game instead");
  dutchbook->add_flag("--enumerate", opt.enumerate, "settle every choice profile");
  dutchbook->add_flag("--table", opt.table, "per-branch choice table");
  dutchbook->add_option("--format", opt.format, "text or records");

  CLI::App* branch = app.add_subcommand(
      "branch", "Many-worlds view of a quantum scenario");
  CLI::Option* branch_scenario =
      branch->add_option("--scenario", opt.scenario, "built-in name or scenario file");
  branch->add_option("--mode", opt.mode, "single or double normalization");
  branch->add_option("--event", opt.event, "outcome label to weigh");
  branch->add_flag("--compare", opt.compare,
                   "compare the one-coin and two-coin tail setups");
  branch->add_option("--format", opt.format, "text or records");

  CLI::App* tables = app.add_subcommand(
      "tables", "Every headline table and equation block in one run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (credence->parsed()) return cmd_credence(opt, std::cout);
    if (simulate->parsed()) return cmd_simulate(opt, std::cout);
    if (dutchbook->parsed()) return cmd_dutchbook(opt, std::cout);
    if (branch->parsed()) {
      if (branch_scenario->count() == 0) opt.scenario = "qsbp";
      return cmd_branch(opt, std::cout);
    }
    if (tables->parsed()) return cmd_tables(std::cout);
    std::cerr << "error: no command\n";
    return 1;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
