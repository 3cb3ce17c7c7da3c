#include <gtest/gtest.h>

#include <filesystem>

#include "latent/repl.hpp"
#include "latent/scenario.hpp"

namespace latent {
namespace {

const std::filesystem::path kScenarios{LATENT_SCENARIO_DIR};

constexpr std::string_view kSmall = R"(
[signature]
atoms p1 p2
fragment full

[evidence e]
primary p1

[base]
believe p2

[script]
expand e

[assert]
in p1
in p2
axioms
)";

TEST(ScenarioTest, ParsesSections) {
  const Scenario s = parse_scenario(kSmall, "small");
  EXPECT_EQ(s.signature->size(), 2u);
  EXPECT_EQ(s.evidence.size(), 1u);
  EXPECT_EQ(s.script.size(), 1u);
  EXPECT_EQ(s.assertions.size(), 3u);
  EXPECT_TRUE(run_scenario(s).ok());
}

TEST(ScenarioTest, ErrorsCarryLineNumbers) {
  const auto line_of = [](std::string_view text) -> std::size_t {
    try {
      parse_scenario(text, "bad");
    } catch (const ScenarioError& e) {
      return e.line();
    } catch (const LogicError&) {
      return 0;
    }
    return 0;
  };
  EXPECT_EQ(line_of("[signature]\natoms p1\n[script]\nexpand missing\n"), 4u);
  EXPECT_EQ(line_of("[signature]\natoms p1\n[bogus]\n"), 3u);
  EXPECT_EQ(line_of("[signature]\natoms p1\n[base]\nwhatever p1\n"), 4u);
  EXPECT_THROW(parse_scenario("[signature]\natoms p1\n[base]\nbelieve p1 &\n", "bad"), LogicError);
}

TEST(ScenarioTest, TrailingComments) {
  const Scenario s = parse_scenario("[signature]\natoms p1 p2  # two atoms\nfragment full # default\n"
                                    "[base]\nbelieve p1 # first\n", "c");
  EXPECT_EQ(s.signature->size(), 2u);
  EXPECT_EQ(s.believed.size(), 1u);
}

TEST(ScenarioTest, QuadrupleAndSetSyntax) {
  const SignatureRef sig = make_signature({"p1", "p2", "p3"}, Fragment::Full);
  const Quadruple q = parse_quadruple("p1 : p2 => p3 mode 1", *sig);
  EXPECT_EQ(q, (Quadruple{Formula::atom(0), Formula::atom(1), Formula::atom(2), DependencyMode::OnHead}));
  EXPECT_THROW(parse_quadruple("p1 : p2 => p3 mode 7", *sig), LogicError);
  EXPECT_THROW(parse_quadruple("p1 : p2 p3 mode 0", *sig), LogicError);
  EXPECT_TRUE(parse_formula_set("{}", *sig).empty());
  EXPECT_EQ(parse_formula_set("{p1, p2 | p3}", *sig).size(), 2u);
}

class BundledScenario : public ::testing::TestWithParam<std::pair<const char*, bool>> {};

TEST_P(BundledScenario, AssertionsHold) {
  const auto [file, expected] = GetParam();
  const Scenario s = load_scenario(kScenarios / file);
  const ScenarioReport report = run_scenario(s);
  EXPECT_EQ(report.ok(), expected) << describe_report(s, report);
}

INSTANTIATE_TEST_SUITE_P(All, BundledScenario,
                         ::testing::Values(std::pair{"conan.scenario", true},
                                           std::pair{"agm-example.scenario", true},
                                           std::pair{"theorem2_monotone.scenario", true},
                                           std::pair{"theorem2_full.scenario", true},
                                           std::pair{"theorem2_recovery.scenario", false},
                                           std::pair{"revise.scenario", true}));

TEST(ScenarioTest, OverflowSurfaces) {
  const Scenario s = load_scenario(kScenarios / "conan.scenario");
  RunOptions options;
  options.change.max_rounds = 1;
  EXPECT_THROW(run_scenario(s, options), IterationOverflow);
}

TEST(ScenarioTest, JsonTraceIsDeterministic) {
  const Scenario s = load_scenario(kScenarios / "agm-example.scenario");
  const std::string a = trace_json(s, run_scenario(s)).dump(2);
  const std::string b = trace_json(load_scenario(kScenarios / "agm-example.scenario"),
                                   run_scenario(s)).dump(2);
  EXPECT_EQ(a, b);
  const auto j = nlohmann::ordered_json::parse(a);
  EXPECT_EQ(j["scenario"], "agm-example");
  EXPECT_FALSE(j["rounds"].empty());
  EXPECT_TRUE(j["rounds"][0].contains("pi1_models"));
  EXPECT_EQ(j["assertions"].size(), 4u);
}

TEST(ScenarioTest, FragmentOverride) {
  const Scenario s = load_scenario(kScenarios / "theorem2_full.scenario", Fragment::Monotone);
  EXPECT_EQ(s.signature->fragment(), Fragment::Monotone);
}

class ReplTest : public ::testing::Test {
 protected:
  Repl repl{make_signature({"p1", "p2", "p3"}, Fragment::Full)};
};

TEST_F(ReplTest, FreshBaseSatisfiesAxioms) {
  EXPECT_EQ(repl.execute(":axioms").find("FAIL"), std::string::npos);
  EXPECT_TRUE(check_axioms(repl.state().base).all_pass());
}

TEST_F(ReplTest, ContractThenShow) {
  repl.execute(":believe p1 & p2");
  repl.execute(":evidence drop {p1}");
  const std::string out = repl.execute(":contract drop");
  EXPECT_EQ(out.find("error"), std::string::npos) << out;
  EXPECT_FALSE(repl.state().base.beliefs.contains(Formula::atom(0)));
  EXPECT_FALSE(repl.execute(":show base").empty());
  EXPECT_FALSE(repl.execute(":show table").empty());
}

TEST_F(ReplTest, UndoRestoresState) {
  repl.execute(":believe p1");
  const Repl::State before = repl.state();
  repl.execute(":evidence e {p2}");
  repl.execute(":expand e");
  EXPECT_NE(repl.state().base, before.base);
  repl.execute(":undo");
  repl.execute(":undo");
  EXPECT_EQ(repl.state().base, before.base);
  EXPECT_TRUE(repl.state().evidence.empty());
}

TEST_F(ReplTest, ErrorsLeaveStateAlone) {
  const BeliefBase before = repl.state().base;
  EXPECT_NE(repl.execute(":believe p1 &").find("error"), std::string::npos);
  EXPECT_EQ(repl.state().base, before);
  EXPECT_NE(repl.execute(":expand nowhere").find("unknown evidence"), std::string::npos);
  EXPECT_NE(repl.execute(":frobnicate").find("unknown command"), std::string::npos);
}

TEST_F(ReplTest, LoadAndQuit) {
  const std::string out = repl.execute(":load " + (kScenarios / "conan.scenario").string());
  EXPECT_NE(out.find("loaded conan"), std::string::npos) << out;
  EXPECT_TRUE(repl.state().evidence.contains("conan"));
  repl.execute(":quit");
  EXPECT_TRUE(repl.finished());
}

}  // namespace
}  // namespace latent
