#include <gtest/gtest.h>

#include "latent/change.hpp"

namespace latent {
namespace {

class ChangeTest : public ::testing::Test {
 protected:
  SignatureRef two = make_signature({"p1", "p2"}, Fragment::Full);
  SignatureRef sig = make_signature({"p1", "p2", "p3"}, Fragment::Full);
  Formula p1 = Formula::atom(0);
  Formula p2 = Formula::atom(1);
  Formula p3 = Formula::atom(2);
  Formula top = Formula::top();

  Formula f(std::string_view text, const SignatureRef& s) const { return parse_formula(text, *s); }
  Formula f(std::string_view text) const { return f(text, sig); }

  BeliefBase base(const SignatureRef& s, const FormulaSet& believed,
                  const std::vector<SupportRow>& rows = {}) const {
    return make_base(std::make_shared<AssociationMap>(s), believed, rows);
  }

  // Conan: p1 arrives with the quadruple p1(p2, p3, 0) while p2 is believed.
  std::pair<BeliefBase, Evidence> conan() const {
    auto map = std::make_shared<AssociationMap>(sig);
    map->associate(p1, {p2, p3, DependencyMode::Autonomous});
    const Evidence e{{p1}, {Quadruple{p1, p2, p3, DependencyMode::Autonomous}}};
    return {make_base(map, {p2}), e};
  }
};

TEST_F(ChangeTest, InternalExpandClosesBeliefs) {
  const BeliefBase b = base(sig, {p1});
  const BeliefBase e = internal_expand(b, {f("p1 -> p2")});
  EXPECT_TRUE(e.beliefs.contains(p2));
  EXPECT_TRUE(e.beliefs.contains(f("p1 & p2")));
  EXPECT_FALSE(e.beliefs.contains(p3));
  EXPECT_EQ(internal_expand(b, {}).beliefs, b.beliefs);
  // π3 is left for the Update step.
  EXPECT_EQ(e.table, b.table);
}

TEST_F(ChangeTest, RemaindersOfTwoAtoms) {
  const Theory t = Theory::closure_of(two, FormulaSet{p1, p2});
  // {11, 00} and {11, 01}: valuation v has atom i set iff bit i of v.
  const std::vector<ModelSet> expected{ModelSet{0b1001u}, ModelSet{0b1100u}};
  EXPECT_EQ(remainders(t, {p1}), expected);
  EXPECT_TRUE(remainders(t, {top}).empty());
  EXPECT_TRUE(remainders(t, {}).empty());
}

TEST_F(ChangeTest, FullMeetIsIntersectionOfRemainders) {
  const BeliefBase b = base(two, {p1, p2});
  Selector full;
  const BeliefBase c = internal_contract(b, {p1}, full);
  EXPECT_EQ(c.beliefs.models(), models(f("p1 -> p2", two), *two));
  EXPECT_FALSE(c.beliefs.contains(p1));
}

TEST_F(ChangeTest, MaxichoiceKeepsHighestMask) {
  const BeliefBase b = base(two, {p1, p2});
  Selector maxi{Maxichoice{}};
  const BeliefBase c = internal_contract(b, {p1}, maxi);
  EXPECT_EQ(c.beliefs.models(), ModelSet{0b1100u});
  EXPECT_EQ(maxi.branching(), (std::vector<std::size_t>{2}));
}

TEST_F(ChangeTest, ContractionVacuity) {
  const BeliefBase b = base(sig, {p1});
  EXPECT_TRUE(contraction_vacuous(b.beliefs, {p3}));
  EXPECT_TRUE(contraction_vacuous(b.beliefs, {top}));
  EXPECT_FALSE(contraction_vacuous(b.beliefs, {p1}));
  Selector s;
  EXPECT_EQ(internal_contract(b, {p3}, s).beliefs, b.beliefs);
}

TEST_F(ChangeTest, InternalRecovery) {
  const BeliefBase b = base(sig, {p1, p2});
  for (const SelectionStrategy& strategy :
       {SelectionStrategy{FullMeet{}}, SelectionStrategy{Maxichoice{}}, SelectionStrategy{Seeded{3}}}) {
    Selector s{strategy};
    const BeliefBase back = internal_expand(internal_contract(b, {p1}, s), {p1});
    EXPECT_TRUE(back.beliefs.contains(p1));
    EXPECT_TRUE(back.beliefs.contains(p2)) << to_string(strategy);
  }
}

TEST_F(ChangeTest, ContractionCarriesTableUntilUpdate) {
  const BeliefBase b = base(sig, {p1, p3}, {{p3, {p1}, true}, {p1, {top}, true}});
  Selector s;
  const BeliefBase c = internal_contract(b, {p1}, s);
  EXPECT_FALSE(c.beliefs.contains(p1));
  EXPECT_EQ(c.table, b.table);
  // The full loop drops p1 and, with it, p3's only support.
  Selector loop;
  const ChangeResult r = contract_evidence(b, Evidence{{p1}, {}}, loop);
  EXPECT_FALSE(r.base.beliefs.contains(p1));
  EXPECT_FALSE(r.base.beliefs.contains(p3));
  EXPECT_TRUE(check_axioms(r.base).all_pass()) << check_axioms(r.base).summary();
}

TEST_F(ChangeTest, UpdatePlusGivesPrimariesDefaultSupport) {
  const BeliefBase b = base(sig, {p1});
  const BeliefBase u = update_plus(b, {p1});
  const SupportRow* r = u.table.find(models(p1, *sig));
  ASSERT_NE(r, nullptr);
  EXPECT_TRUE(r->registered);
  EXPECT_EQ(r->support, (FormulaSet{top}));
}

TEST_F(ChangeTest, UpdatePlusRegistersTriggeredPayloads) {
  auto map = std::make_shared<AssociationMap>(sig);
  map->associate(p1, {p2, p3, DependencyMode::OnTrigger});
  const BeliefBase b = make_base(map, {p1, p2, p3});
  const BeliefBase u = update_plus(b);
  const SupportRow* r = u.table.find(models(p3, *sig));
  ASSERT_NE(r, nullptr);
  EXPECT_TRUE(r->registered);
  EXPECT_TRUE(r->support.contains(p2));
}

TEST_F(ChangeTest, GenMinusOnlyReportsBelievedSubjects) {
  const BeliefBase b = base(sig, {p1, p3}, {{p3, {p1}, true}, {p1, {top}, true}});
  for (const auto& g : gen_minus(b)) {
    EXPECT_TRUE(b.beliefs.contains(g));
    EXPECT_NE(models(g, *sig), sig->universe());
  }
  const BeliefBase reduced = reduce(b, {p1});
  EXPECT_TRUE(gen_minus(reduced).size() >= 1u);
}

TEST_F(ChangeTest, ConanExpansionFiresTrigger) {
  const auto [b, e] = conan();
  const ChangeResult r = expand_evidence(b, e);
  EXPECT_TRUE(r.base.beliefs.contains(p1));
  EXPECT_TRUE(r.base.beliefs.contains(p3));
  EXPECT_TRUE(r.base.quads.contains(Quadruple{p1, p2, p3, DependencyMode::Autonomous}));
  EXPECT_TRUE(check_axioms(r.base).all_pass()) << check_axioms(r.base).summary();
  ASSERT_FALSE(r.trace.rounds.empty());
  EXPECT_EQ(r.trace.rounds.back().updated, r.base);
}

TEST_F(ChangeTest, ExpansionWithoutTriggerAddsOnlyPrimary) {
  auto map = std::make_shared<AssociationMap>(sig);
  map->associate(p1, {p2, p3, DependencyMode::Autonomous});
  const Evidence e{{p1}, {Quadruple{p1, p2, p3, DependencyMode::Autonomous}}};
  const ChangeResult r = expand_evidence(make_base(map, {}), e);
  EXPECT_TRUE(r.base.beliefs.contains(p1));
  EXPECT_FALSE(r.base.beliefs.contains(p3));
}

TEST_F(ChangeTest, ContractingConanRemovesPrimary) {
  const auto [b, e] = conan();
  const BeliefBase expanded = expand_evidence(b, e).base;
  Selector s{Maxichoice{}};
  const ChangeResult r = contract_evidence(expanded, Evidence{{p1}, {}}, s);
  EXPECT_FALSE(r.base.beliefs.contains(p1));
  EXPECT_TRUE(r.base.beliefs.contains(p2));
  EXPECT_TRUE(check_axioms(r.base).all_pass()) << check_axioms(r.base).summary();
}

TEST_F(ChangeTest, OverflowIsReported) {
  const auto [b, e] = conan();
  ChangeOptions options;
  options.max_rounds = 1;
  EXPECT_THROW(expand_evidence(b, e, options), IterationOverflow);
}

TEST_F(ChangeTest, ReviseByNegation) {
  const SignatureRef one = make_signature({"p1"}, Fragment::Full);
  const BeliefBase b = base(one, {p1});
  Selector s;
  const ChangeResult r = revise(b, Evidence{{Formula::negation(p1)}, {}}, s);
  EXPECT_TRUE(r.base.beliefs.contains(Formula::negation(p1)));
  EXPECT_FALSE(r.base.beliefs.contains(p1));
  EXPECT_TRUE(r.base.beliefs.is_consistent());
}

TEST_F(ChangeTest, ReviseByTautologyKeepsBeliefs) {
  const BeliefBase b = base(sig, {p1, p2});
  Selector s;
  const ChangeResult r = revise(b, Evidence{{top}, {}}, s);
  EXPECT_EQ(r.base.beliefs, b.beliefs);
}

TEST_F(ChangeTest, MonotoneReviseIsUnsupported) {
  const SignatureRef mono = make_signature({"p1", "p2", "p3"}, Fragment::Monotone);
  const BeliefBase b = base(mono, {p1});
  Selector s;
  EXPECT_THROW(revise(b, Evidence{{p2}, {}}, s), UnsupportedOperation);
}

TEST_F(ChangeTest, StrategyParsing) {
  EXPECT_EQ(parse_strategy("full-meet"), SelectionStrategy{FullMeet{}});
  EXPECT_EQ(parse_strategy("maxichoice"), SelectionStrategy{Maxichoice{}});
  EXPECT_EQ(parse_strategy("seeded:7"), SelectionStrategy{Seeded{7}});
  EXPECT_EQ(parse_strategy("script:1,0,2"), (SelectionStrategy{Scripted{{1, 0, 2}}}));
  for (std::string_view text : {"full-meet", "maxichoice", "seeded:42", "script:0,1"}) {
    EXPECT_EQ(to_string(parse_strategy(text)), text);
  }
  EXPECT_THROW(parse_strategy("nope"), LogicError);
  EXPECT_THROW(parse_strategy("seeded:x"), LogicError);
  EXPECT_THROW(parse_strategy("script:1,,2"), LogicError);
}

TEST_F(ChangeTest, SelectorScriptSemantics) {
  const std::vector<ModelSet> xi{ModelSet{1u}, ModelSet{2u}, ModelSet{4u}};
  Selector s{Scripted{{2}}};
  EXPECT_EQ(s.select(xi), (std::vector<std::size_t>{2}));
  EXPECT_EQ(s.select(xi), (std::vector<std::size_t>{0}));
  EXPECT_EQ(s.branching(), (std::vector<std::size_t>{3, 3}));
  Selector bad{Scripted{{5}}};
  EXPECT_THROW(bad.select(xi), LogicError);
  Selector full;
  EXPECT_EQ(full.select(xi), (std::vector<std::size_t>{0, 1, 2}));
}

TEST_F(ChangeTest, SeededSelectionIsDeterministic) {
  const std::vector<ModelSet> xi{ModelSet{1u}, ModelSet{2u}, ModelSet{4u}, ModelSet{8u}};
  Selector a{Seeded{99}};
  Selector b{Seeded{99}};
  for (int i = 0; i < 20; ++i) {
    const auto pick = a.select(xi);
    EXPECT_FALSE(pick.empty());
    EXPECT_EQ(pick, b.select(xi));
  }
}

}  // namespace
}  // namespace latent
