#include "sbeauty/betting.hpp"

#include <algorithm>
#include <cctype>

namespace sbeauty {

MoneyExpr MoneyExpr::parse(std::string_view text) {
  // Grammar: term (('+'|'-') term)*, term = rational | [rational] 'e' with
  // the rational optionally parenthesised.
  MoneyExpr out{Rational(0), Rational(0)};
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  skip();
  if (pos == text.size()) throw Error("money: empty expression");
  bool first = true;
  while (true) {
    skip();
    if (pos == text.size()) break;
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip();
    } else if (!first) {
      throw Error("money: expected '+' or '-' in \"" + std::string(text) + "\"");
    }
    first = false;
    bool parens = pos < text.size() && text[pos] == '(';
    if (parens) ++pos;
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/'))
      ++pos;
    Rational value(1);
    bool has_number = pos > start;
    if (has_number) value = Rational::parse(text.substr(start, pos - start));
    if (parens) {
      if (pos >= text.size() || text[pos] != ')')
        throw Error("money: unbalanced parenthesis in \"" + std::string(text) + "\"");
      ++pos;
    }
    if (pos < text.size() && text[pos] == 'e') {
      ++pos;
      out.coeff += Rational(sign) * value;
    } else if (has_number && !parens) {
      out.constant += Rational(sign) * value;
    } else {
      throw Error("money: expected a term in \"" + std::string(text) + "\"");
    }
  }
  return out;
}

namespace {

MoneyExpr money(std::int64_t constant, std::int64_t coeff) {
  return MoneyExpr{Rational(constant), Rational(coeff)};
}

}  // namespace

BettingBook make_hitchcock() {
  BettingBook book;
  book.name = "hitchcock";
  book.offers.push_back(
      {"game1", OfferTiming::once_upfront, {{"H", money(-15, 2)}, {"T", money(15, 1)}}});
  book.offers.push_back(
      {"game2", OfferTiming::every_awakening, {{"H", money(10, 1)}, {"T", money(-10, 1)}}});
  return book;
}

BettingBook make_briggs() {
  BettingBook book;
  book.name = "briggs";
  book.offers.push_back(
      {"game1", OfferTiming::once_upfront, {{"H", money(15, 2)}, {"T", money(-15, 1)}}});
  book.offers.push_back(
      {"game2", OfferTiming::every_awakening, {{"H", money(-20, 1)}, {"T", money(5, 1)}}});
  return book;
}

BettingBook make_waking_game() {
  BettingBook book;
  book.name = "waking";
  book.offers.push_back(
      {"game2", OfferTiming::every_awakening, {{"H", money(10, 1)}, {"T", money(-10, 1)}}});
  return book;
}

BettingBook parse_book(std::string_view text) {
  BettingBook book;
  int line_no = 0;
  std::size_t offset = 0;
  bool any_offer = false;
  while (offset <= text.size()) {
    std::size_t eol = text.find('\n', offset);
    std::string line(text.substr(
        offset, eol == std::string_view::npos ? text.size() - offset : eol - offset));
    ++line_no;
    offset = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    if (std::size_t hash = line.find('#'); hash != std::string::npos)
      line.resize(hash);

    // Tokenise on whitespace.
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : line) {
      if (c == ' ' || c == '\t') {
        if (!cur.empty()) tokens.push_back(std::move(cur)), cur.clear();
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    if (tokens.empty()) continue;

    if (tokens[0] == "book") {
      if (tokens.size() != 2) throw ParseError(line_no, 1, "book wants one name");
      book.name = tokens[1];
    } else if (tokens[0] == "offer") {
      if (tokens.size() < 4)
        throw ParseError(line_no, 1, "offer wants: id, once|each, label=money...");
      Offer offer;
      offer.id = tokens[1];
      if (tokens[2] == "once")
        offer.timing = OfferTiming::once_upfront;
      else if (tokens[2] == "each")
        offer.timing = OfferTiming::every_awakening;
      else
        throw ParseError(line_no, 1, "offer timing must be once or each");
      for (std::size_t i = 3; i < tokens.size(); ++i) {
        std::size_t eq = tokens[i].find('=');
        if (eq == std::string::npos || eq == 0)
          throw ParseError(line_no, 1, "expected label=money, got \"" + tokens[i] + "\"");
        std::string label = tokens[i].substr(0, eq);
        try {
          if (!offer.payoff.emplace(label, MoneyExpr::parse(tokens[i].substr(eq + 1)))
                   .second)
            throw Error("duplicate label \"" + label + "\"");
        } catch (const Error& e) {
          throw ParseError(line_no, 1, e.what());
        }
      }
      book.offers.push_back(std::move(offer));
      any_offer = true;
    } else {
      throw ParseError(line_no, 1, "unknown directive \"" + tokens[0] + "\"");
    }
  }
  if (!any_offer) throw ParseError(line_no, 1, "book has no offers");
  return book;
}

std::string render_book(const BettingBook& book) {
  std::string out = "book " + (book.name.empty() ? std::string("custom") : book.name) +
                    "\n";
  for (const Offer& o : book.offers) {
    out += "offer " + o.id + (o.timing == OfferTiming::once_upfront ? " once" : " each");
    for (const auto& [label, pay] : o.payoff) out += " " + label + "=" + pay.str();
    out += "\n";
  }
  return out;
}

MoneyExpr branch_payoff(const Offer& offer, const Profile& profile) {
  const MoneyExpr* found = nullptr;
  for (const auto& [label, pay] : offer.payoff) {
    if (!profile_matches(label, profile)) continue;
    if (found)
      throw BettingError("offer \"" + offer.id + "\": two payoff labels match branch \"" +
                         profile_str(profile) + "\"");
    found = &pay;
  }
  return found ? *found : MoneyExpr{};
}

void validate_book(const ExperimentProtocol& protocol, const BettingBook& book) {
  if (book.offers.empty()) throw BettingError("book has no offers");
  std::set<std::string> ids;
  for (const Offer& offer : book.offers) {
    if (!ids.insert(offer.id).second)
      throw BettingError("duplicate offer id \"" + offer.id + "\"");
    std::set<std::string> used;
    for (const auto& [profile, schedule] : protocol.branches) {
      for (const auto& [label, pay] : offer.payoff)
        if (profile_matches(label, profile)) used.insert(label);
      branch_payoff(offer, profile);  // throws on ambiguity
    }
    for (const auto& [label, pay] : offer.payoff)
      if (!used.count(label))
        throw BettingError("offer \"" + offer.id + "\": payoff label \"" + label +
                           "\" matches no branch");
  }
}

std::vector<ChoiceSlot> choice_slots(const ExperimentProtocol& protocol,
                                     const BettingBook& book) {
  std::vector<ChoiceSlot> slots;
  for (std::size_t o = 0; o < book.offers.size(); ++o)
    if (book.offers[o].timing == OfferTiming::once_upfront)
      slots.push_back({o, std::nullopt, std::nullopt});
  for (std::size_t o = 0; o < book.offers.size(); ++o) {
    if (book.offers[o].timing != OfferTiming::every_awakening) continue;
    std::size_t b = 0;
    for (const auto& [profile, schedule] : protocol.branches) {
      for (std::size_t i = 0; i < schedule.awakenings.size(); ++i)
        slots.push_back({o, b, i});
      ++b;
    }
  }
  return slots;
}

ChoiceProfile uniform_choices(const ExperimentProtocol& protocol,
                              const BettingBook& book, bool accept) {
  ChoiceProfile p;
  p.accept.assign(choice_slots(protocol, book).size(), accept);
  return p;
}

ChoiceProfile offer_choices(const ExperimentProtocol& protocol, const BettingBook& book,
                            const std::vector<bool>& accept_offer) {
  if (accept_offer.size() != book.offers.size())
    throw BettingError("offer_choices: one decision per offer required");
  ChoiceProfile p;
  for (const ChoiceSlot& slot : choice_slots(protocol, book))
    p.accept.push_back(accept_offer[slot.offer]);
  return p;
}

SettlementReport settle(const ExperimentProtocol& protocol, const BettingBook& book,
                        const ChoiceProfile& choices) {
  std::vector<ChoiceSlot> slots = choice_slots(protocol, book);
  if (choices.accept.size() != slots.size())
    throw BettingError("settle: choice profile has " +
                       std::to_string(choices.accept.size()) + " entries, book wants " +
                       std::to_string(slots.size()));

  std::vector<Profile> profiles;
  for (const auto& [profile, schedule] : protocol.branches) profiles.push_back(profile);

  std::vector<MoneyExpr> net(profiles.size());
  for (std::size_t s = 0; s < slots.size(); ++s) {
    if (!choices.accept[s]) continue;
    const Offer& offer = book.offers[slots[s].offer];
    if (slots[s].branch) {
      net[*slots[s].branch] += branch_payoff(offer, profiles[*slots[s].branch]);
    } else {
      for (std::size_t b = 0; b < profiles.size(); ++b)
        net[b] += branch_payoff(offer, profiles[b]);
    }
  }

  SettlementReport report;
  report.sure_loss = true;
  for (std::size_t b = 0; b < profiles.size(); ++b) {
    report.branch_net.emplace_back(profile_str(profiles[b]), net[b]);
    if (net[b].sign() >= 0) report.sure_loss = false;
  }
  if (report.sure_loss) {
    // Smallest positive e where some branch net reaches zero; with every
    // constant term negative that needs a positive e-coefficient.
    std::optional<Rational> flip;
    for (const MoneyExpr& m : net) {
      if (m.coeff.sign() <= 0) continue;
      Rational at = -m.constant / m.coeff;
      if (at.sign() > 0 && (!flip || at < *flip)) flip = at;
    }
    report.flip_epsilon = flip;
  }
  return report;
}

std::vector<std::pair<ChoiceProfile, SettlementReport>> enumerate_settlements(
    const ExperimentProtocol& protocol, const BettingBook& book) {
  std::vector<ChoiceSlot> slots = choice_slots(protocol, book);
  if (slots.size() > 20)
    throw BettingError("enumerate_settlements: " + std::to_string(slots.size()) +
                       " slots is beyond the 2^20 enumeration guard");
  std::vector<std::pair<ChoiceProfile, SettlementReport>> out;
  std::size_t count = std::size_t{1} << slots.size();
  out.reserve(count);
  for (std::size_t bits = 0; bits < count; ++bits) {
    ChoiceProfile p;
    p.accept.resize(slots.size());
    for (std::size_t s = 0; s < slots.size(); ++s) p.accept[s] = (bits >> s) & 1;
    SettlementReport r = settle(protocol, book, p);
    out.emplace_back(std::move(p), std::move(r));
  }
  return out;
}

std::vector<BranchChoiceRow> per_branch_choice_table(const ExperimentProtocol& protocol,
                                                     const BettingBook& book) {
  std::vector<std::size_t> waking_offers;
  for (std::size_t o = 0; o < book.offers.size(); ++o)
    if (book.offers[o].timing == OfferTiming::every_awakening) waking_offers.push_back(o);

  std::vector<BranchChoiceRow> rows;
  for (const auto& [profile, schedule] : protocol.branches) {
    std::size_t decisions = schedule.awakenings.size() * waking_offers.size();
    if (decisions > 20)
      throw BettingError("per_branch_choice_table: too many decisions on branch \"" +
                         profile_str(profile) + "\"");
    std::size_t count = std::size_t{1} << decisions;
    for (std::size_t bits = 0; bits < count; ++bits) {
      // The first decision is the most significant bit so rows come out in
      // dictionary order with Y before N: Y, N / YY, YN, NY, NN.
      BranchChoiceRow row;
      row.branch = profile_str(profile);
      for (std::size_t j = 0; j < decisions; ++j) {
        bool accept = ((bits >> (decisions - 1 - j)) & 1) == 0;
        row.choices += accept ? 'Y' : 'N';
        if (accept)
          row.net += branch_payoff(book.offers[waking_offers[j % waking_offers.size()]],
                                   profile);
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

namespace {

// Branch credence P(b), awakening count m_b and payoff for every branch the
// subject gives nonzero credence to.
struct BranchTerm {
  Rational credence;
  std::size_t awakenings;
  MoneyExpr payoff;
};

std::vector<BranchTerm> branch_terms(const CenteredSpace& space, const Offer& offer) {
  if (offer.timing != OfferTiming::every_awakening)
    throw BettingError("offer \"" + offer.id +
                       "\" is upfront; awakening-time value does not apply");
  std::vector<Rational> credo(space.branch_atoms.size(), Rational(0));
  for (const CenteredAtom& a : space.atoms) credo[a.branch] += a.weight;

  std::vector<BranchTerm> terms;
  std::size_t b = 0;
  for (const auto& [profile, schedule] : space.protocol.branches) {
    if (credo[b].sign() > 0)
      terms.push_back(
          {credo[b], schedule.awakenings.size(), branch_payoff(offer, profile)});
    ++b;
  }
  return terms;
}

}  // namespace

MoneyExpr cdt_value(const CenteredSpace& space, const Offer& offer, bool accept,
                    const Rational& p_star) {
  if (p_star.sign() < 0 || p_star > Rational(1))
    throw BettingError("cdt_value: p_star must lie in [0, 1]");
  // Only this awakening's choice is under causal control; each of the m_b - 1
  // other awakenings is expected to accept with credence p_star.
  MoneyExpr value;
  for (const BranchTerm& t : branch_terms(space, offer)) {
    MoneyExpr branch_value;
    if (accept) branch_value += t.payoff;
    branch_value +=
        (Rational(static_cast<std::int64_t>(t.awakenings - 1)) * p_star) * t.payoff;
    value += t.credence * branch_value;
  }
  return value;
}

MoneyExpr edt_value(const CenteredSpace& space, const Offer& offer, bool accept) {
  // Accepting is evidence that the same reasoning accepts at all m_b
  // awakenings of the branch; rejecting, that none do.
  if (!accept) return MoneyExpr{};
  MoneyExpr value;
  for (const BranchTerm& t : branch_terms(space, offer))
    value += t.credence * (Rational(static_cast<std::int64_t>(t.awakenings)) * t.payoff);
  return value;
}

MoneyExpr upfront_value(const ExperimentProtocol& protocol, const Offer& offer,
                        bool accept) {
  if (offer.timing != OfferTiming::once_upfront)
    throw BettingError("offer \"" + offer.id + "\" is not an upfront offer");
  if (!accept) return MoneyExpr{};
  MoneyExpr value;
  for (const BranchAtom& a : atoms(protocol))
    value += a.objective_weight * branch_payoff(offer, a.profile);
  return value;
}

Policy parse_policy(const std::string& name, const Rational& p_star) {
  Policy p;
  p.p_star = p_star;
  if (p_star.sign() < 0 || p_star > Rational(1))
    throw BettingError("policy: p_star must lie in [0, 1]");
  if (name == "accept-all") {
    p.kind = PolicyKind::accept_all;
  } else if (name == "reject-all") {
    p.kind = PolicyKind::reject_all;
  } else {
    p.kind = PolicyKind::decision_theoretic;
    std::size_t dash = name.find('-');
    std::string theory = name.substr(0, dash);
    std::string weighting = dash == std::string::npos ? "" : name.substr(dash + 1);
    if (theory == "cdt")
      p.theory = Theory::cdt;
    else if (theory == "edt")
      p.theory = Theory::edt;
    else
      throw BettingError("unknown policy \"" + name + "\"");
    if (weighting == "halfer")
      p.weighting = Weighting::halfer;
    else if (weighting == "thirder")
      p.weighting = Weighting::thirder;
    else
      throw BettingError("unknown policy \"" + name + "\"");
  }
  return p;
}

std::string policy_str(const Policy& policy) {
  switch (policy.kind) {
    case PolicyKind::accept_all:
      return "accept-all";
    case PolicyKind::reject_all:
      return "reject-all";
    case PolicyKind::decision_theoretic:
      break;
  }
  return std::string(policy.theory == Theory::cdt ? "cdt" : "edt") + "-" +
         weighting_str(policy.weighting);
}

Decision decide(const ExperimentProtocol& protocol, const BettingBook& book,
                const Policy& policy) {
  validate_book(protocol, book);
  Decision decision;
  std::vector<bool> accept_offer;
  CenteredSpace space = centered(protocol, policy.weighting);

  for (const Offer& offer : book.offers) {
    OfferDecision od;
    od.offer_id = offer.id;
    od.upfront = offer.timing == OfferTiming::once_upfront;
    switch (policy.kind) {
      case PolicyKind::accept_all:
      case PolicyKind::reject_all: {
        od.accept = policy.kind == PolicyKind::accept_all;
        if (od.upfront) {
          od.value_accept = upfront_value(protocol, offer, true);
        } else {
          od.value_accept = edt_value(space, offer, true);
        }
        od.value_reject = MoneyExpr{};
        break;
      }
      case PolicyKind::decision_theoretic: {
        if (od.upfront) {
          // Before the experiment there is no self-location and both
          // theories reduce to plain branch-weight expectation.
          od.value_accept = upfront_value(protocol, offer, true);
          od.value_reject = upfront_value(protocol, offer, false);
        } else if (policy.theory == Theory::cdt) {
          od.value_accept = cdt_value(space, offer, true, policy.p_star);
          od.value_reject = cdt_value(space, offer, false, policy.p_star);
        } else {
          od.value_accept = edt_value(space, offer, true);
          od.value_reject = edt_value(space, offer, false);
        }
        od.accept = od.value_accept > od.value_reject;
        break;
      }
    }
    accept_offer.push_back(od.accept);
    decision.offers.push_back(std::move(od));
  }
  decision.settlement =
      settle(protocol, book, offer_choices(protocol, book, accept_offer));
  return decision;
}

NWakingReport n_waking_cdt_edt(std::size_t n, const Policy& policy) {
  NWakingReport report;
  report.n = n;
  BettingBook book = make_waking_game();
  const Offer& offer = book.offers[0];

  for (std::size_t k = 2; k <= n; ++k) {
    ExperimentProtocol p = builtin_n_waking(k);
    SettlementReport s = settle(p, book, uniform_choices(p, book, true));
    // branch_net is in branch-table order: H first, then T.
    report.tails_net_by_k.push_back(s.branch_net[1].second);
  }
  {
    ExperimentProtocol p = builtin_n_waking(n);
    SettlementReport s = settle(p, book, uniform_choices(p, book, true));
    report.heads_net = s.branch_net[0].second;
    report.tails_net = s.branch_net[1].second;
  }
  report.loss_monotone = true;
  for (std::size_t i = 1; i < report.tails_net_by_k.size(); ++i)
    if (!(report.tails_net_by_k[i] < report.tails_net_by_k[i - 1]))
      report.loss_monotone = false;

  ExperimentProtocol p = builtin_n_waking(n);
  switch (policy.kind) {
    case PolicyKind::accept_all:
      report.policy_accepts = true;
      report.value_accept = edt_value(centered(p, Weighting::halfer), offer, true);
      break;
    case PolicyKind::reject_all:
      report.policy_accepts = false;
      report.value_accept = edt_value(centered(p, Weighting::halfer), offer, true);
      break;
    case PolicyKind::decision_theoretic: {
      CenteredSpace space = centered(p, policy.weighting);
      if (policy.theory == Theory::cdt) {
        report.value_accept = cdt_value(space, offer, true, policy.p_star);
        report.value_reject = cdt_value(space, offer, false, policy.p_star);
      } else {
        report.value_accept = edt_value(space, offer, true);
        report.value_reject = edt_value(space, offer, false);
      }
      report.policy_accepts = report.value_accept > report.value_reject;
      break;
    }
  }
  return report;
}

}  // namespace sbeauty
