#include <doctest.h>

#include <set>

#include "sbeauty/betting.hpp"

using namespace sbeauty;

namespace {

MoneyExpr money(std::int64_t constant, std::int64_t coeff) {
  return {Rational(constant), Rational(coeff)};
}

}  // namespace

TEST_CASE("money expressions order lexicographically and print canonically") {
  CHECK(money(-5, 3) < money(0, 0));       // any real loss beats any sweetener
  CHECK(money(0, 0) < money(0, 1));        // e is positive
  CHECK(money(0, 1000) < money(0, 1001));  // ties broken by the coefficient
  CHECK(MoneyExpr{Rational(0), Rational(1)} < MoneyExpr{Rational(1, 1000000), Rational(0)});

  CHECK(money(-5, 3).sign() == -1);
  CHECK(money(0, 1).sign() == 1);
  CHECK(money(0, 0).sign() == 0);

  CHECK(money(-5, 3).eval_at(Rational(5, 3)) == Rational(0));
  CHECK(money(-5, 3).eval_at(Rational(2)) == Rational(1));

  CHECK(money(0, 0).str() == "0");
  CHECK(money(7, 0).str() == "7");
  CHECK(money(10, 1).str() == "10+e");
  CHECK(money(-5, 3).str() == "-5+3e");
  CHECK(money(0, -1).str() == "-e");
  CHECK(MoneyExpr{Rational(0), Rational(5, 3)}.str() == "(5/3)e");
  CHECK(MoneyExpr{Rational(-5), Rational(-1, 2)}.str() == "-5-(1/2)e");

  for (const char* text : {"0", "7", "10+e", "-5+3e", "-e", "(5/3)e", "-5-(1/2)e", "3/2e"}) {
    MoneyExpr m = MoneyExpr::parse(text);
    CHECK(MoneyExpr::parse(m.str()) == m);
  }
  CHECK(MoneyExpr::parse("3/2e") == MoneyExpr{Rational(0), Rational(3, 2)});
  CHECK_THROWS_AS(MoneyExpr::parse(""), Error);
  CHECK_THROWS_AS(MoneyExpr::parse("5 5"), Error);
  CHECK_THROWS_AS(MoneyExpr::parse("(1/2"), Error);
}

TEST_CASE("book factories round-trip through the text form") {
  for (const BettingBook& book : {make_hitchcock(), make_briggs(), make_waking_game()}) {
    CAPTURE(book.name);
    CHECK(parse_book(render_book(book)) == book);
  }

  BettingBook h = make_hitchcock();
  REQUIRE(h.offers.size() == 2);
  CHECK(h.offers[0].timing == OfferTiming::once_upfront);
  CHECK(h.offers[0].payoff.at("H") == money(-15, 2));
  CHECK(h.offers[0].payoff.at("T") == money(15, 1));
  CHECK(h.offers[1].timing == OfferTiming::every_awakening);
  CHECK(h.offers[1].payoff.at("H") == money(10, 1));
  CHECK(h.offers[1].payoff.at("T") == money(-10, 1));

  BettingBook b = make_briggs();
  CHECK(b.offers[0].payoff.at("H") == money(15, 2));
  CHECK(b.offers[0].payoff.at("T") == money(-15, 1));
  CHECK(b.offers[1].payoff.at("H") == money(-20, 1));
  CHECK(b.offers[1].payoff.at("T") == money(5, 1));

  CHECK(make_waking_game().offers.size() == 1);
  CHECK(make_waking_game().offers[0].timing == OfferTiming::every_awakening);
}

TEST_CASE("book text errors carry line numbers") {
  try {
    parse_book("book b\noffer x wrong H=1\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(std::string(e.what()).find("once or each") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_book("book empty\n"), ParseError);  // no offers
  CHECK_THROWS_AS(parse_book("book b\noffer x once H:1\n"), ParseError);
  // A nameless book is fine; render labels it "custom".
  BettingBook anon = parse_book("offer x once H=1 T=-1\n");
  CHECK(render_book(anon).rfind("book custom\n", 0) == 0);
}

TEST_CASE("branch payoffs resolve by outcome label") {
  Offer game2 = make_hitchcock().offers[1];
  CHECK(branch_payoff(game2, {"H"}) == money(10, 1));
  CHECK(branch_payoff(game2, {"T"}) == money(-10, 1));

  Offer dotted{"d", OfferTiming::every_awakening, {{"T", money(1, 0)}}};
  CHECK(branch_payoff(dotted, {"T.H"}) == money(1, 0));   // segment prefix matches
  CHECK(branch_payoff(dotted, {"TH"}) == money(0, 0));    // plain prefix does not

  Offer ambiguous{"a", OfferTiming::every_awakening,
                  {{"T", money(1, 0)}, {"T.H", money(2, 0)}}};
  CHECK_THROWS_AS(branch_payoff(ambiguous, {"T.H"}), BettingError);
  CHECK(branch_payoff(ambiguous, {"T.T"}) == money(1, 0));
}

TEST_CASE("validate_book rejects dead and ambiguous labels") {
  ExperimentProtocol p = builtin("sbp");
  CHECK_NOTHROW(validate_book(p, make_hitchcock()));
  CHECK_NOTHROW(validate_book(p, make_briggs()));

  BettingBook dead{"d", {{"x", OfferTiming::every_awakening, {{"X", money(1, 0)}}}}};
  CHECK_THROWS_AS(validate_book(p, dead), BettingError);

  ExperimentProtocol dal = builtin("dalembert");
  BettingBook amb{"a", {{"x", OfferTiming::every_awakening,
                         {{"T", money(1, 0)}, {"T.H", money(2, 0)}}}}};
  CHECK_THROWS_AS(validate_book(dal, amb), BettingError);
}

TEST_CASE("choice slots enumerate upfront offers once and waking offers per day") {
  ExperimentProtocol p = builtin("sbp");
  std::vector<ChoiceSlot> slots = choice_slots(p, make_hitchcock());
  REQUIRE(slots.size() == 4);
  CHECK(slots[0] == ChoiceSlot{0, std::nullopt, std::nullopt});  // game 1, upfront
  CHECK(slots[1] == ChoiceSlot{1, 0, 0});                        // game 2 @ H Mo
  CHECK(slots[2] == ChoiceSlot{1, 1, 0});                        // game 2 @ T Mo
  CHECK(slots[3] == ChoiceSlot{1, 1, 1});                        // game 2 @ T Tu

  CHECK(uniform_choices(p, make_hitchcock(), true).accept ==
        std::vector<bool>{true, true, true, true});
  CHECK(offer_choices(p, make_hitchcock(), {true, false}).accept ==
        std::vector<bool>{true, false, false, false});
}

TEST_CASE("accepting every offer of either book loses on every branch") {
  ExperimentProtocol p = builtin("sbp");
  for (const BettingBook& book : {make_hitchcock(), make_briggs()}) {
    CAPTURE(book.name);
    SettlementReport r = settle(p, book, uniform_choices(p, book, true));
    REQUIRE(r.branch_net.size() == 2);
    CHECK(r.branch_net[0].first == "H");
    CHECK(r.branch_net[0].second == money(-5, 3));
    CHECK(r.branch_net[1].first == "T");
    CHECK(r.branch_net[1].second == money(-5, 3));
    CHECK(r.sure_loss);
    REQUIRE(r.flip_epsilon.has_value());
    // At e = 5/3 the sweetener pays for the loss and the book stops binding.
    CHECK(*r.flip_epsilon == Rational(5, 3));
  }
}

TEST_CASE("rejecting everything never loses") {
  ExperimentProtocol p = builtin("sbp");
  SettlementReport r = settle(p, make_hitchcock(), uniform_choices(p, make_hitchcock(), false));
  CHECK(r.branch_net[0].second == money(0, 0));
  CHECK(r.branch_net[1].second == money(0, 0));
  CHECK(!r.sure_loss);
  CHECK(!r.flip_epsilon.has_value());
}

TEST_CASE("partial acceptance settles offer by offer") {
  ExperimentProtocol p = builtin("sbp");
  SettlementReport r = settle(p, make_hitchcock(), offer_choices(p, make_hitchcock(), {true, false}));
  CHECK(r.branch_net[0].second == money(-15, 2));
  CHECK(r.branch_net[1].second == money(15, 1));
  CHECK(!r.sure_loss);
}

TEST_CASE("enumerating settlements covers every choice profile in counter order") {
  ExperimentProtocol p = builtin("sbp");
  BettingBook waking = make_waking_game();
  auto all = enumerate_settlements(p, waking);
  REQUIRE(all.size() == 8);  // 3 slots: H Mo, T Mo, T Tu

  for (std::size_t i = 0; i < all.size(); ++i) {
    const ChoiceProfile& profile = all[i].first;
    REQUIRE(profile.accept.size() == 3);
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(profile.accept[j] == (((i >> j) & 1u) != 0));
  }

  CHECK(all[0].second.branch_net[0].second == money(0, 0));   // reject everywhere
  CHECK(all[0].second.branch_net[1].second == money(0, 0));
  CHECK(all[7].second.branch_net[0].second == money(10, 1));  // accept everywhere
  CHECK(all[7].second.branch_net[1].second == money(-20, 2));
  // No choice profile of the waking game alone is a sure loss: rejecting on
  // H leaves that branch exactly at 0.
  for (const auto& [profile, report] : all) CHECK(!report.sure_loss);
}

TEST_CASE("per-branch table lists local choice strings with their nets") {
  ExperimentProtocol p = builtin("sbp");
  std::vector<BranchChoiceRow> rows = per_branch_choice_table(p, make_waking_game());
  REQUIRE(rows.size() == 6);

  auto net_of = [&](const std::string& branch, const std::string& choices) {
    for (const BranchChoiceRow& row : rows)
      if (row.branch == branch && row.choices == choices) return row.net;
    FAIL("missing row " << branch << " " << choices);
    return money(0, 0);
  };
  CHECK(net_of("H", "Y") == money(10, 1));
  CHECK(net_of("H", "N") == money(0, 0));
  CHECK(net_of("T", "YY") == money(-20, 2));
  CHECK(net_of("T", "YN") == money(-10, 1));
  CHECK(net_of("T", "NY") == money(-10, 1));
  CHECK(net_of("T", "NN") == money(0, 0));

  // Rows come out branch-major with accept-first choice strings.
  CHECK(rows[0].branch == "H");
  CHECK(rows[0].choices == "Y");
  CHECK(rows[2].choices == "YY");
  CHECK(rows[5].choices == "NN");
}

TEST_CASE("enumerated settlements project onto the per-branch table") {
  // The branch rows are exactly the distinct (branch, local choices) pairs
  // seen across the full enumeration, with matching nets.
  ExperimentProtocol p = builtin("sbp");
  BettingBook waking = make_waking_game();
  std::vector<ChoiceSlot> slots = choice_slots(p, waking);
  std::vector<BranchAtom> branch_atoms = atoms(p);

  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& [profile, report] : enumerate_settlements(p, waking)) {
    for (std::size_t b = 0; b < branch_atoms.size(); ++b) {
      std::string choices;
      for (std::size_t j = 0; j < slots.size(); ++j)
        if (slots[j].branch == b) choices += profile.accept[j] ? 'Y' : 'N';
      std::string branch = profile_str(branch_atoms[b].profile);
      seen.insert({branch, choices});

      MoneyExpr expected;
      bool found = false;
      for (const BranchChoiceRow& row : per_branch_choice_table(p, waking))
        if (row.branch == branch && row.choices == choices) {
          expected = row.net;
          found = true;
        }
      REQUIRE(found);
      CHECK(report.branch_net[b].second == expected);
    }
  }
  CHECK(seen.size() == 6);
}

TEST_CASE("causal value depends on p* but its dominance gap does not") {
  CenteredSpace halfer = centered(builtin("sbp"), Weighting::halfer);
  Offer game2 = make_hitchcock().offers[1];

  struct Row {
    Rational p_star;
    MoneyExpr accept, reject;
  };
  const Row rows[] = {
      {Rational(0), money(0, 1), money(0, 0)},
      {Rational(1, 2), {Rational(-5, 2), Rational(5, 4)}, {Rational(-5, 2), Rational(1, 4)}},
      {Rational(1), {Rational(-5), Rational(3, 2)}, {Rational(-5), Rational(1, 2)}},
  };
  for (const Row& row : rows) {
    CAPTURE(row.p_star.str());
    MoneyExpr accept = cdt_value(halfer, game2, true, row.p_star);
    MoneyExpr reject = cdt_value(halfer, game2, false, row.p_star);
    CHECK(accept == row.accept);
    CHECK(reject == row.reject);
    CHECK(accept - reject == money(0, 1));  // always exactly e
    CHECK(accept > reject);
  }

  CHECK_THROWS_AS(cdt_value(halfer, game2, true, Rational(2)), BettingError);
  CHECK_THROWS_AS(cdt_value(halfer, game2, true, Rational(-1, 2)), BettingError);
}

TEST_CASE("evidential value treats acceptance as news about the whole branch") {
  CenteredSpace halfer = centered(builtin("sbp"), Weighting::halfer);
  Offer h_game2 = make_hitchcock().offers[1];
  CHECK(edt_value(halfer, h_game2, true) == MoneyExpr{Rational(-5), Rational(3, 2)});
  CHECK(edt_value(halfer, h_game2, false) == money(0, 0));

  CenteredSpace thirder = centered(builtin("sbp"), Weighting::thirder);
  Offer b_game2 = make_briggs().offers[1];
  CHECK(edt_value(thirder, b_game2, true) == MoneyExpr{Rational(0), Rational(5, 3)});
  // and the same offer under halfer weights is a clear loss:
  CHECK(edt_value(halfer, b_game2, true) == MoneyExpr{Rational(-5), Rational(3, 2)});
}

TEST_CASE("upfront offers are valued by the branch chances") {
  ExperimentProtocol p = builtin("sbp");
  CHECK(upfront_value(p, make_hitchcock().offers[0], true) == MoneyExpr{Rational(0), Rational(3, 2)});
  CHECK(upfront_value(p, make_briggs().offers[0], true) == MoneyExpr{Rational(0), Rational(3, 2)});
  CHECK(upfront_value(p, make_hitchcock().offers[0], false) == money(0, 0));

  // The per-awakening rules have no business valuing an upfront offer.
  CenteredSpace halfer = centered(p, Weighting::halfer);
  CHECK_THROWS_AS(cdt_value(halfer, make_hitchcock().offers[0], true, Rational(1, 2)),
                  BettingError);
  CHECK_THROWS_AS(edt_value(halfer, make_hitchcock().offers[0], true), BettingError);
  CHECK_THROWS_AS(upfront_value(p, make_hitchcock().offers[1], true), BettingError);
}

TEST_CASE("policy names parse and print") {
  CHECK(parse_policy("accept-all").kind == PolicyKind::accept_all);
  CHECK(parse_policy("reject-all").kind == PolicyKind::reject_all);

  Policy p = parse_policy("cdt-halfer", Rational(1));
  CHECK(p.kind == PolicyKind::decision_theoretic);
  CHECK(p.theory == Theory::cdt);
  CHECK(p.weighting == Weighting::halfer);
  CHECK(p.p_star == Rational(1));

  Policy q = parse_policy("edt-thirder");
  CHECK(q.theory == Theory::edt);
  CHECK(q.weighting == Weighting::thirder);

  CHECK(policy_str(parse_policy("accept-all")) == "accept-all");
  CHECK(policy_str(parse_policy("edt-halfer")) == "edt-halfer");

  CHECK_THROWS_AS(parse_policy("cdt"), BettingError);
  CHECK_THROWS_AS(parse_policy("edt-fifther"), BettingError);
  CHECK_THROWS_AS(parse_policy("cdt-halfer", Rational(3, 2)), BettingError);
}

TEST_CASE("decisions by policy land where the theories say") {
  ExperimentProtocol p = builtin("sbp");

  Decision cdt = decide(p, make_hitchcock(), parse_policy("cdt-halfer"));
  REQUIRE(cdt.offers.size() == 2);
  CHECK(cdt.offers[0].upfront);
  CHECK(cdt.offers[0].accept);
  CHECK(cdt.offers[1].accept);
  CHECK(cdt.settlement.sure_loss);  // dominance walks into the Dutch book

  Decision edt = decide(p, make_hitchcock(), parse_policy("edt-halfer"));
  CHECK(edt.offers[0].accept);
  CHECK(!edt.offers[1].accept);  // -5+(3/2)e < 0
  CHECK(!edt.settlement.sure_loss);
  CHECK(edt.settlement.branch_net[0].second == money(-15, 2));
  CHECK(edt.settlement.branch_net[1].second == money(15, 1));

  Decision edt3 = decide(p, make_briggs(), parse_policy("edt-thirder"));
  CHECK(edt3.offers[0].accept);
  CHECK(edt3.offers[1].accept);  // (5/3)e > 0
  CHECK(edt3.settlement.sure_loss);

  Decision none = decide(p, make_briggs(), parse_policy("reject-all"));
  CHECK(!none.offers[0].accept);
  CHECK(!none.offers[1].accept);
  CHECK(!none.settlement.sure_loss);
  CHECK(none.settlement.branch_net[0].second == money(0, 0));
}

TEST_CASE("scaling the tails stay multiplies the loss but not the decision") {
  NWakingReport r = n_waking_cdt_edt(5, parse_policy("cdt-halfer"));
  CHECK(r.n == 5);
  CHECK(r.heads_net == money(10, 1));
  CHECK(r.tails_net == money(-50, 5));
  REQUIRE(r.tails_net_by_k.size() == 4);  // counts 2..5
  CHECK(r.tails_net_by_k[0] == money(-20, 2));
  CHECK(r.tails_net_by_k[3] == money(-50, 5));
  CHECK(r.loss_monotone);
  CHECK(r.policy_accepts);
  CHECK(r.value_accept == money(-10, 2));
  CHECK(r.value_reject == money(-10, 1));
  CHECK(r.value_accept - r.value_reject == money(0, 1));

  NWakingReport r2 = n_waking_cdt_edt(2, parse_policy("edt-halfer"));
  CHECK(r2.heads_net == money(10, 1));
  CHECK(r2.tails_net == money(-20, 2));
  CHECK(!r2.policy_accepts);  // EDT already refuses at n = 2
}
