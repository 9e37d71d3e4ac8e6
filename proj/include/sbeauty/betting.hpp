#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sbeauty/measure.hpp"
#include "sbeauty/money.hpp"
#include "sbeauty/protocol.hpp"

namespace sbeauty {

// Betting layer: books of offers against a protocol, exact settlement per
// branch, sure-loss detection, and the CDT/EDT decision rules that drive a
// subject's accept/reject choices.

// once_upfront offers are placed before the experiment and settle once;
// every_awakening offers are placed anew at every awakening and each
// placement settles separately.
enum class OfferTiming { once_upfront, every_awakening };

struct Offer {
  std::string id;
  OfferTiming timing = OfferTiming::every_awakening;
  // Payoff if accepted, keyed by outcome label. A branch pays the entry whose
  // label matches one of its profile entries exactly or as a dotted prefix;
  // no match pays 0, two matches is a BettingError.
  std::map<std::string, MoneyExpr> payoff;

  friend bool operator==(const Offer&, const Offer&) = default;
};

struct BettingBook {
  std::string name;
  std::vector<Offer> offers;

  friend bool operator==(const BettingBook&, const BettingBook&) = default;
};

BettingBook make_hitchcock();
BettingBook make_briggs();
// Just the per-awakening game from the books above: H pays 10+e, T costs
// 10-e. Used on its own for the n_waking analysis.
BettingBook make_waking_game();

// Line format:
//   book <name>
//   offer <id> <once|each> <label>=<money> <label>=<money> ...
// with <money> as MoneyExpr::str() (e.g. -15+2e). render_book is canonical
// and parse_book(render_book(b)) == b.
BettingBook parse_book(std::string_view text);
std::string render_book(const BettingBook& book);

// Resolve one offer's payoff on one branch (0 when no label matches).
MoneyExpr branch_payoff(const Offer& offer, const Profile& profile);

// Throws BettingError if any offer payoff label is ambiguous or dead on the
// protocol (matches two profile entries of one branch, or no branch at all).
void validate_book(const ExperimentProtocol& protocol, const BettingBook& book);

// One accept/reject decision point. Upfront offers get a single slot;
// per-awakening offers get one slot per (branch, awakening).
struct ChoiceSlot {
  std::size_t offer;                      // index into book.offers
  std::optional<std::size_t> branch;      // branch-table order; empty for upfront
  std::optional<std::size_t> awakening;   // index into the branch schedule

  friend bool operator==(const ChoiceSlot&, const ChoiceSlot&) = default;
};

// Slot list in canonical order: upfront offers in book order, then
// per-awakening offers in book order, each branch-major then awakening.
std::vector<ChoiceSlot> choice_slots(const ExperimentProtocol& protocol,
                                     const BettingBook& book);

struct ChoiceProfile {
  std::vector<bool> accept;  // parallel to choice_slots()

  friend bool operator==(const ChoiceProfile&, const ChoiceProfile&) = default;
};

// Same decision for every slot of every offer.
ChoiceProfile uniform_choices(const ExperimentProtocol& protocol,
                              const BettingBook& book, bool accept);
// Per-offer uniform decisions, parallel to book.offers.
ChoiceProfile offer_choices(const ExperimentProtocol& protocol,
                            const BettingBook& book,
                            const std::vector<bool>& accept_offer);

struct SettlementReport {
  std::vector<std::pair<std::string, MoneyExpr>> branch_net;  // branch-table order
  bool sure_loss = false;  // every branch nets strictly below zero
  // Defined when sure_loss: smallest real value of the sweetener e at which
  // some branch stops losing, i.e. where the real-valued verdict departs from
  // the infinitesimal one. Empty when no finite e changes it.
  std::optional<Rational> flip_epsilon;
};

SettlementReport settle(const ExperimentProtocol& protocol, const BettingBook& book,
                        const ChoiceProfile& choices);

// Every choice profile with its settlement, profiles in binary-counter order
// over the slot list (slot 0 is the fastest-moving bit). BettingError beyond
// 2^20 slots.
std::vector<std::pair<ChoiceProfile, SettlementReport>> enumerate_settlements(
    const ExperimentProtocol& protocol, const BettingBook& book);

// Branch-by-branch view of the per-awakening offers alone: one row per
// (branch, local choice string), where the string has one Y/N per awakening
// per such offer in book order. Upfront offers are excluded.
struct BranchChoiceRow {
  std::string branch;
  std::string choices;
  MoneyExpr net;
};

std::vector<BranchChoiceRow> per_branch_choice_table(const ExperimentProtocol& protocol,
                                                     const BettingBook& book);

enum class Theory { cdt, edt };

// Value of accepting/rejecting one per-awakening offer at the current
// awakening under causal decision theory. space gives the subject's branch
// credences; p_star is the credence that the subject's other awakenings
// accept. The dominance gap cdt_value(accept) - cdt_value(reject) is
// independent of p_star.
MoneyExpr cdt_value(const CenteredSpace& space, const Offer& offer, bool accept,
                    const Rational& p_star);

// Evidential value: accepting is treated as news that every awakening of the
// same branch accepts.
MoneyExpr edt_value(const CenteredSpace& space, const Offer& offer, bool accept);

// Upfront offers are valued by the objective branch measure (no
// self-location before the experiment starts); both theories agree there.
MoneyExpr upfront_value(const ExperimentProtocol& protocol, const Offer& offer,
                        bool accept);

enum class PolicyKind { accept_all, reject_all, decision_theoretic };

struct Policy {
  PolicyKind kind = PolicyKind::decision_theoretic;
  Theory theory = Theory::cdt;
  Weighting weighting = Weighting::halfer;
  Rational p_star = Rational(1, 2);  // CDT only; must lie in [0, 1]
};

// "accept-all", "reject-all", "cdt-halfer", "edt-halfer", "cdt-thirder",
// "edt-thirder"; throws BettingError on anything else or p_star outside
// [0, 1].
Policy parse_policy(const std::string& name, const Rational& p_star = Rational(1, 2));
std::string policy_str(const Policy& policy);

struct OfferDecision {
  std::string offer_id;
  bool upfront = false;
  bool accept = false;
  MoneyExpr value_accept;
  MoneyExpr value_reject;
};

struct Decision {
  std::vector<OfferDecision> offers;  // book order
  SettlementReport settlement;        // settle() of the induced uniform choices
};

Decision decide(const ExperimentProtocol& protocol, const BettingBook& book,
                const Policy& policy);

// The waking game scaled to n Tails awakenings: accept-all branch nets, the
// Tails net for every count 2..n, and the per-awakening decision the policy
// takes — the loss grows without bound while the decision never changes.
struct NWakingReport {
  std::size_t n = 0;
  MoneyExpr heads_net;                    // accept-all
  MoneyExpr tails_net;                    // accept-all
  std::vector<MoneyExpr> tails_net_by_k;  // counts 2..n in order
  bool loss_monotone = false;             // tails net strictly decreasing in k
  bool policy_accepts = false;
  MoneyExpr value_accept;
  MoneyExpr value_reject;
};

NWakingReport n_waking_cdt_edt(std::size_t n, const Policy& policy);

}  // namespace sbeauty
