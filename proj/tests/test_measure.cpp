#include <doctest.h>

#include "sbeauty/measure.hpp"

using namespace sbeauty;

TEST_CASE("objective measure reproduces branch chances") {
  BranchMeasure m = objective_measure(builtin("sbp"));
  CHECK(m.tag == "objective");
  CHECK(!m.erroneous);
  CHECK(measure(m, outcome_event(m.protocol, "H")) == Rational(1, 2));
  CHECK(measure(m, outcome_event(m.protocol, "T")) == Rational(1, 2));
}

TEST_CASE("halfer centered space splits branch weight over awakenings") {
  CenteredSpace s = centered(builtin("sbp"), Weighting::halfer);
  REQUIRE(s.atoms.size() == 3);
  // (H,Mo), (T,Mo), (T,Tu) in branch-table order.
  CHECK(s.atoms[0].weight == Rational(1, 2));
  CHECK(s.atoms[1].weight == Rational(1, 4));
  CHECK(s.atoms[2].weight == Rational(1, 4));
  CHECK(!s.dropped_empty_branches);

  CHECK(measure(s, outcome_event(s.protocol, "H")) == Rational(1, 2));
  CHECK(measure(s, day_event(s, "Mo")) == Rational(3, 4));
  CHECK(measure(s, day_event(s, "Tu")) == Rational(1, 4));

  CenteredSpace monday = condition(s, day_event(s, "Mo"));
  CHECK(measure(monday, outcome_event(s.protocol, "H")) == Rational(2, 3));
  CHECK(measure(monday, outcome_event(s.protocol, "T")) == Rational(1, 3));
}

TEST_CASE("thirder centered space weighs awakenings by branch chance") {
  CenteredSpace s = centered(builtin("sbp"), Weighting::thirder);
  REQUIRE(s.atoms.size() == 3);
  for (const CenteredAtom& a : s.atoms) CHECK(a.weight == Rational(1, 3));

  CHECK(measure(s, outcome_event(s.protocol, "H")) == Rational(1, 3));
  CHECK(measure(s, day_event(s, "Mo")) == Rational(2, 3));
  CenteredSpace monday = condition(s, day_event(s, "Mo"));
  CHECK(measure(monday, outcome_event(s.protocol, "H")) == Rational(1, 2));
}

TEST_CASE("centered weights always sum to one") {
  for (const char* name : {"sbp", "technicolor", "groisman", "second_q_toss"}) {
    for (Weighting w : {Weighting::halfer, Weighting::thirder}) {
      CenteredSpace s = centered(builtin(name), w);
      Rational total(0);
      for (const CenteredAtom& a : s.atoms) total += a.weight;
      CAPTURE(name);
      CHECK(total == Rational(1));
    }
  }
}

TEST_CASE("halfer conditioning drops branches that never wake") {
  ExperimentProtocol p = parse_scenario(
      "name lopsided\n"
      "randomizer coin {H:1/2, T:1/2}\n"
      "branch H -> []\n"
      "branch T -> [Mo, Tu]\n");
  CenteredSpace halfer = centered(p, Weighting::halfer);
  CHECK(halfer.dropped_empty_branches);
  REQUIRE(halfer.atoms.size() == 2);
  CHECK(halfer.atoms[0].weight == Rational(1, 2));  // T branch renormalised to 1
  CHECK(measure(halfer, outcome_event(p, "T")) == Rational(1));

  CenteredSpace thirder = centered(p, Weighting::thirder);
  CHECK(measure(thirder, outcome_event(p, "T")) == Rational(1));
}

TEST_CASE("decomposition states the weighted-average splits") {
  ExperimentProtocol p = builtin("sbp");

  CenteredSpace halfer = centered(p, Weighting::halfer);
  Decomposition dh = decompose(halfer, lift(halfer, outcome_event(p, "H")),
                               {day_event(halfer, "Mo"), day_event(halfer, "Tu")});
  REQUIRE(dh.terms.size() == 2);
  CHECK(dh.terms[0].conditional == Rational(2, 3));
  CHECK(dh.terms[0].cell_weight == Rational(3, 4));
  CHECK(dh.terms[1].contribution == Rational(0));
  CHECK(dh.total == Rational(1, 2));

  CenteredSpace thirder = centered(p, Weighting::thirder);
  Decomposition dt = decompose(thirder, lift(thirder, outcome_event(p, "H")),
                               {day_event(thirder, "Mo"), day_event(thirder, "Tu")});
  CHECK(dt.terms[0].conditional == Rational(1, 2));
  CHECK(dt.terms[0].cell_weight == Rational(2, 3));
  CHECK(dt.total == Rational(1, 3));
}

TEST_CASE("decompose rejects non-partitions") {
  CenteredSpace s = centered(builtin("sbp"), Weighting::halfer);
  Event mo = day_event(s, "Mo");
  Event tu = day_event(s, "Tu");
  Event h = lift(s, outcome_event(s.protocol, "H"));
  CHECK_THROWS_AS(decompose(s, h, {mo, mo}), MeasureError);   // overlap
  CHECK_THROWS_AS(decompose(s, h, {mo}), MeasureError);       // no cover
  CHECK_NOTHROW(decompose(s, h, {mo, tu}));
}

TEST_CASE("technicolor signal events overlap and invert correctly") {
  ExperimentProtocol p = builtin("technicolor");
  BranchMeasure m = objective_measure(p);
  Event red = ever_signal_event(p, "red");
  Event blue = ever_signal_event(p, "blue");

  CHECK(measure(m, red) == Rational(3, 4));
  CHECK(measure(m, blue) == Rational(3, 4));

  OverlapReport overlap = overlap_report(m, {red, blue});
  CHECK(overlap.weight_sum == Rational(3, 2));
  CHECK(!overlap.pairwise_disjoint);
  REQUIRE(overlap.overlaps.size() == 1);
  CHECK(overlap.overlaps[0].intersection == Rational(1, 2));  // both tails branches

  Event heads = outcome_event(p, "H");
  Rational h_given_red = measure(condition(m, red), heads);
  CHECK(h_given_red == Rational(1, 3));
  Rational red_given_h = measure(condition(m, heads), red);
  CHECK(red_given_h == Rational(1, 2));
  // Bayes inversion recovers the unconditional credence.
  CHECK(h_given_red * measure(m, red) / red_given_h == Rational(1, 2));

  // Awakening-level color today is a different question with a different
  // answer; both are available and must not be conflated.
  CenteredSpace halfer = centered(p, Weighting::halfer);
  CHECK(measure(halfer, today_signal_event(halfer, "red")) == Rational(1, 2));
}

TEST_CASE("naive indifference flags itself and miscounts unequal chances") {
  ExperimentProtocol p = builtin("dalembert");
  Event some_heads = outcome_event(p, "H");  // H, T.H

  CHECK(measure(objective_measure(p), some_heads) == Rational(3, 4));

  BranchMeasure naive = naive_indifference(p);
  CHECK(naive.erroneous);
  CHECK(naive.tag == "naive indifference");
  CHECK(measure(naive, some_heads) == Rational(2, 3));

  // The flag survives lifting into a centered space and into credences.
  CenteredSpace s = centered(naive, Weighting::halfer);
  CHECK(s.erroneous);
  Credence c = credence(naive, some_heads);
  CHECK(c.erroneous);
  CHECK(c.value == Rational(2, 3));
  CHECK(!credence(objective_measure(p), some_heads).erroneous);
}

TEST_CASE("event algebra") {
  ExperimentProtocol p = builtin("sbp");
  CenteredSpace s = centered(p, Weighting::thirder);
  Event h = lift(s, outcome_event(p, "H"));
  Event mo = day_event(s, "Mo");

  CHECK(measure(s, intersect(h, mo)) == Rational(1, 3));
  CHECK(measure(s, unite(h, mo)) == Rational(2, 3));
  CHECK(measure(s, complement_in(s, mo)) == Rational(1, 3));
  CHECK(measure(s, wake_event(s)) == Rational(1));

  Event branch_h = outcome_event(p, "H");
  BranchMeasure m = objective_measure(p);
  CHECK(measure(m, complement_in(m, branch_h)) == Rational(1, 2));

  // Branch events are usable directly on centered spaces...
  CHECK(measure(s, branch_h) == Rational(1, 3));
  // ...but centered events make no sense on branch measures.
  CHECK_THROWS_AS(measure(m, mo), MeasureError);
  CHECK_THROWS_AS(intersect(branch_h, mo), MeasureError);
  CHECK_THROWS_AS(lift(s, mo), MeasureError);
}

TEST_CASE("conditioning requires positive measure") {
  ExperimentProtocol p = builtin("sbp");
  BranchMeasure m = objective_measure(p);
  BranchMeasure heads_only = condition(m, outcome_event(p, "H"));
  CHECK(measure(heads_only, outcome_event(p, "H")) == Rational(1));
  CHECK_THROWS_AS(condition(heads_only, outcome_event(p, "T")), MeasureError);

  CHECK_THROWS_AS(outcome_event(p, "X"), MeasureError);
  CenteredSpace s = centered(p, Weighting::halfer);
  CHECK_THROWS_AS(day_event(s, "We"), MeasureError);
  CHECK_THROWS_AS(today_signal_event(s, "red"), MeasureError);
}

TEST_CASE("knowledge notes only come from annotations") {
  CHECK(knowledge_note(builtin("sbp")).empty());
  CHECK(knowledge_note(builtin("method2")) ==
        "randomizer resolved only after the first awakening: an awake subject "
        "cannot treat every outcome as settled today");
  CHECK(knowledge_note(builtin("method2prime")) ==
        "randomizer resolved before the first awakening: an awake subject knows "
        "all outcomes are already settled");
}

TEST_CASE("credence carries its space tag") {
  CenteredSpace s = centered(builtin("sbp"), Weighting::thirder);
  Credence c = credence(s, outcome_event(s.protocol, "H"));
  CHECK(c.value == Rational(1, 3));
  CHECK(c.space_tag == "objective/thirder");
  CHECK(!c.erroneous);
}
