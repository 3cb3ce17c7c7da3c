#include <gtest/gtest.h>

#include "latent/support.hpp"

namespace latent {
namespace {

class BeliefTest : public ::testing::Test {
 protected:
  SignatureRef sig = make_signature({"p1", "p2", "p3"}, Fragment::Full);
  Formula p1 = Formula::atom(0);
  Formula p2 = Formula::atom(1);
  Formula p3 = Formula::atom(2);

  Formula f(std::string_view text) const { return parse_formula(text, *sig); }

  std::shared_ptr<AssociationMap> map_with(const Formula& literal, Triple t) const {
    auto map = std::make_shared<AssociationMap>(sig);
    map->associate(literal, std::move(t));
    return map;
  }

  AssociationTuple tuple(AssociationMapRef map, const FormulaSet& believed) const {
    return {std::move(map), Theory::closure_of(sig, believed)};
  }
};

TEST_F(BeliefTest, AssocSpecialCases) {
  auto map = map_with(p1, {p2, p3, DependencyMode::OnHead});
  const AssociationTuple t = tuple(map, {});
  EXPECT_EQ(assoc(f("p1 | ~p1"), t).kind, AssocResult::Kind::Empty);
  EXPECT_EQ(assoc(f("p1 & ~p1"), t).kind, AssocResult::Kind::Universal);
  EXPECT_TRUE(cond(f("p1 | ~p1"), t).empty());
  EXPECT_TRUE(cond(f("p1 & ~p1"), t).empty());
}

TEST_F(BeliefTest, AssocOfLiteralIsI) {
  auto map = map_with(p1, {p2, p3, DependencyMode::OnHead});
  const AssociationTuple t = tuple(map, {});
  EXPECT_EQ(assoc(p1, t), AssocResult::of({Triple{p2, p3, DependencyMode::OnHead}}));
  EXPECT_EQ(cond(p1, t), (QuadSet{Quadruple{p1, p2, p3, DependencyMode::OnHead}}));
}

TEST_F(BeliefTest, ConjunctionFiltersByExclusion) {
  auto map = map_with(p1, {p2, p3, DependencyMode::Autonomous});
  const AssocResult r = assoc(f("p1 & p2"), tuple(map, {}));
  EXPECT_EQ(r.kind, AssocResult::Kind::Triples);
  EXPECT_TRUE(r.triples.empty());
}

TEST_F(BeliefTest, DeMorganAndDoubleNegation) {
  auto map = std::make_shared<AssociationMap>(sig);
  map->associate(Formula::negation(p1), {p2, p3, DependencyMode::Autonomous});
  map->associate(Formula::negation(p2), {p3, p1, DependencyMode::Autonomous});
  const AssociationTuple t = tuple(map, {});
  EXPECT_EQ(assoc(f("~(p1 | p2)"), t), assoc(f("~p1 & ~p2"), t));
  EXPECT_EQ(assoc(f("~(p1 & p2)"), t), assoc(f("~p1 | ~p2"), t));
  EXPECT_EQ(assoc(f("~~~p1"), t), assoc(f("~p1"), t));
}

TEST_F(BeliefTest, DisjunctionCases) {
  auto map = std::make_shared<AssociationMap>(sig);
  map->associate(p1, {p3, p3, DependencyMode::Autonomous});
  map->associate(p2, {p3, f("p3 | ~p1 & ~p2"), DependencyMode::Autonomous});
  const Formula d = f("p1 | p2");

  // Neither disjunct nor its negation believed: pair matching keeps the
  // weaker payload, then drops triples in Exc(p1 & p2).
  const AssocResult matched = assoc(d, tuple(map, {}));
  ASSERT_EQ(matched.kind, AssocResult::Kind::Triples);
  EXPECT_EQ(matched.triples, (std::set<Triple>{Triple{p3, f("p3 | ~p1 & ~p2"), DependencyMode::Autonomous}}));

  // ~p2 believed: Assoc(p1 | p2) = Assoc(p1).
  EXPECT_EQ(assoc(d, tuple(map, {f("~p2")})), assoc(p1, tuple(map, {f("~p2")})));

  // p1 believed, p2 not: Assoc(p1) filtered.
  const AssocResult left = assoc(d, tuple(map, {p1}));
  EXPECT_EQ(left.triples, (std::set<Triple>{Triple{p3, p3, DependencyMode::Autonomous}}));
}

TEST_F(BeliefTest, IRejectsExcludedComponents) {
  auto map = std::make_shared<AssociationMap>(sig);
  EXPECT_THROW(map->associate(p1, {f("p1 & p2"), p3, DependencyMode::Autonomous}), LogicError);
  EXPECT_THROW(map->associate(p1, {p2, Formula::top(), DependencyMode::Autonomous}), LogicError);
  EXPECT_THROW(map->associate(f("p1 & p2"), {p3, p3, DependencyMode::Autonomous}), LogicError);
}

TEST_F(BeliefTest, CondNeverViolatesExclusion) {
  // Random I maps over every carrier member.
  std::uint32_t state = 12345;
  auto next = [&state] {
    state = state * 1103515245u + 12345u;
    return (state >> 16) & 0x7fffu;
  };
  const std::vector<Formula> literals{p1, p2, p3, f("~p1"), f("~p2"), f("~p3")};
  for (int round = 0; round < 50; ++round) {
    auto map = std::make_shared<AssociationMap>(sig);
    for (const auto& lit : literals) {
      const Formula trig = literals[next() % literals.size()];
      const Formula pay = literals[next() % literals.size()];
      try {
        map->associate(lit, {trig, pay, static_cast<DependencyMode>(next() % 4)});
      } catch (const LogicError&) {
      }
    }
    for (const char* text : {"p1 | p2", "~p1 | p3", "(p1 | p2) & ~p3", "~(p1 & p2)", "p1 & p2 | p3"}) {
      for (const auto& q : cond(f(text), tuple(map, {f("p1 | p3")}))) {
        EXPECT_TRUE(respects_exclusion(q, *sig)) << render(q, *sig);
      }
    }
  }
}

TEST_F(BeliefTest, AttributiveBeliefsFollowBeliefs) {
  auto map = map_with(p1, {p2, p3, DependencyMode::OnHead});
  EXPECT_TRUE(attributive_beliefs(tuple(map, {p2})).empty());
  EXPECT_EQ(attributive_beliefs(tuple(map, {p1})),
            (QuadSet{Quadruple{p1, p2, p3, DependencyMode::OnHead}}));
}

TEST_F(BeliefTest, VisibleConan) {
  auto map = std::make_shared<AssociationMap>(sig);
  const Evidence e{{p1}, {Quadruple{p1, p2, p3, DependencyMode::Autonomous}}};
  EXPECT_EQ(visible(make_base(map, {p2}), e), (FormulaSet{p1, p3}));
  EXPECT_EQ(visible(make_base(map, {}), e), (FormulaSet{p1}));
  EXPECT_EQ(visible(make_base(map, {}), Evidence{{p1, p2}, {}}), (FormulaSet{p1, p2}));
}

TEST_F(BeliefTest, VisibleIsMonotoneInBeliefs) {
  auto map = std::make_shared<AssociationMap>(sig);
  const Evidence e{{p1}, {Quadruple{p1, p2, p3, DependencyMode::Autonomous},
                          Quadruple{p1, f("p2 | p3"), p3, DependencyMode::OnHead}}};
  const FormulaSet weak = visible(make_base(map, {f("p2 | p3")}), e);
  const FormulaSet strong = visible(make_base(map, {p2}), e);
  for (const auto& g : weak) EXPECT_TRUE(strong.contains(g));
}

TEST_F(BeliefTest, VisibleNeg) {
  auto map = std::make_shared<AssociationMap>(sig);
  const Evidence e{{p1}, {Quadruple{p1, p2, p3, DependencyMode::Autonomous}}};
  EXPECT_EQ(visible_neg(make_base(map, {}), e), (FormulaSet{f("~p1")}));
  EXPECT_EQ(visible_neg(make_base(map, {p2}), e), (FormulaSet{f("~p1"), f("~p3")}));

  const SignatureRef mono = make_signature({"p1", "p2", "p3"}, Fragment::Monotone);
  auto mono_map = std::make_shared<AssociationMap>(mono);
  EXPECT_THROW(visible_neg(make_base(mono_map, {}), Evidence{{p1}, {}}), UnsupportedOperation);
}

TEST_F(BeliefTest, EvidenceValidation) {
  EXPECT_THROW(validate(Evidence{{}, {}}, *sig), LogicError);
  EXPECT_THROW(validate(Evidence{{p1}, {Quadruple{p2, p3, p1, DependencyMode::Autonomous}}}, *sig),
               LogicError);
  EXPECT_NO_THROW(validate(Evidence{{p1}, {Quadruple{p1, p2, p3, DependencyMode::Autonomous}}}, *sig));
}

TEST_F(BeliefTest, AxiomViolationsAreReported) {
  auto map = map_with(p1, {p2, p3, DependencyMode::OnHead});
  BeliefBase b = make_base(map, {p1, p3}, {{p3, {p1}, true}, {p1, {Formula::top()}, true}});
  ASSERT_TRUE(check_axioms(b).all_pass()) << check_axioms(b).summary();

  BeliefBase empty_support = b;
  empty_support.table.set(models(p3, *sig), SupportRow{p3, {}, true});
  EXPECT_FALSE(check_axioms(empty_support).results[5].pass);

  BeliefBase stray_quad = b;
  stray_quad.quads.insert(Quadruple{p2, p1, p3, DependencyMode::Autonomous});
  EXPECT_FALSE(check_axioms(stray_quad).results[2].pass);

  BeliefBase missing_row = b;
  missing_row.table.erase(models(f("p1 | p2"), *sig));
  EXPECT_FALSE(check_axioms(missing_row).results[3].pass);

  BeliefBase extra_row = b;
  extra_row.table.set(models(p2, *sig), SupportRow{p2, {Formula::top()}, true});
  EXPECT_FALSE(check_axioms(extra_row).results[4].pass);

  BeliefBase no_top = b;
  no_top.table.set(sig->universe(), SupportRow{Formula::top(), {p1}, false});
  EXPECT_FALSE(check_axioms(no_top).results[9].pass);
}

TEST_F(BeliefTest, TheoremTwoBasePropagation) {
  auto map = map_with(p1, {p2, p3, DependencyMode::OnHead});
  const BeliefBase b = make_base(map, {p1, p3}, {{p3, {p1}, true}, {p1, {Formula::top()}, true}});
  EXPECT_EQ(b.quads, (QuadSet{Quadruple{p1, p2, p3, DependencyMode::OnHead}}));
  // L(Γ(p1 & p3)) = L({⊤}) ∩ L({p1}) = L({⊤}).
  const SupportRow* both = b.table.find(models(f("p1 & p3"), *sig));
  ASSERT_NE(both, nullptr);
  EXPECT_EQ(models(both->support, *sig), sig->universe());
  // The tautology row keeps ⊤.
  EXPECT_TRUE(b.table.find(sig->universe())->support.contains(Formula::top()));
  // One row per believed class: supersets of {111, 101} among 8 valuations.
  EXPECT_EQ(b.table.size(), 64u);
}

}  // namespace
}  // namespace latent
