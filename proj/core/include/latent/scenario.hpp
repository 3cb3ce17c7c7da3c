#ifndef LATENT_SCENARIO_HPP_
#define LATENT_SCENARIO_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "latent/oracle.hpp"

namespace latent {

class ScenarioError : public LogicError {
 public:
  ScenarioError(const std::string& what, std::size_t line)
      : LogicError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct ScenarioStep {
  EvidenceOp op = EvidenceOp::Expand;
  std::string evidence;
  std::optional<SelectionStrategy> strategy;
  std::size_t line = 0;
};

struct ScenarioAssertion {
  enum class Kind : std::uint8_t { In, NotIn, Axioms };
  Kind kind = Kind::Axioms;
  Formula formula;
  std::string text;
  std::size_t line = 0;
};

struct Scenario {
  std::string name;
  SignatureRef signature;
  AssociationMapRef assoc;
  std::map<std::string, Evidence> evidence;
  FormulaSet believed;
  std::vector<SupportRow> rows;
  std::vector<ScenarioStep> script;
  std::vector<ScenarioAssertion> assertions;

  BeliefBase initial_base() const { return make_base(assoc, believed, rows); }
};

// Sections [signature], [assoc], [evidence NAME], [base], [script], [assert].
// Throws ScenarioError (or ParseError for formulas) on malformed input.
Scenario parse_scenario(std::string_view text, std::string name,
                        std::optional<Fragment> fragment = std::nullopt);
Scenario load_scenario(const std::filesystem::path& path,
                       std::optional<Fragment> fragment = std::nullopt);

// Quadruple syntax shared with the REPL: HEAD : TRIGGER => PAYLOAD mode N.
Quadruple parse_quadruple(std::string_view text, const Signature& sig);
// {F1, F2, ...}
FormulaSet parse_formula_set(std::string_view text, const Signature& sig);

struct RunOptions {
  // Used by steps that name no strategy of their own.
  SelectionStrategy strategy = FullMeet{};
  ChangeOptions change;
};

struct StepResult {
  ScenarioStep step;
  ChangeResult result;
};

struct AssertionResult {
  std::string expr;
  bool pass = false;
  std::string detail;
};

struct ScenarioReport {
  BeliefBase initial;
  BeliefBase final;
  std::vector<StepResult> steps;
  std::vector<AssertionResult> assertions;

  bool ok() const;
};

// Throws ScenarioError when the initial base is not a belief set, and
// IterationOverflow from the engine.
ScenarioReport run_scenario(const Scenario& scenario, const RunOptions& options = {});

// {{{ Serialization

// Valuations as bit strings in atom order, sorted.
nlohmann::ordered_json model_set_json(ModelSet m, const Signature& sig);
nlohmann::ordered_json formula_set_json(const FormulaSet& fs, const Signature& sig);
nlohmann::ordered_json table_json(const SupportTable& table, const Signature& sig);
nlohmann::ordered_json round_json(const Round& round, const Signature& sig);
nlohmann::ordered_json trace_json(const Scenario& scenario, const ScenarioReport& report);
nlohmann::ordered_json witness_json(const WitnessReport& report);

std::string describe_round(const Round& round, std::size_t index, const Signature& sig);
std::string describe_base(const BeliefBase& b);
std::string describe_report(const Scenario& scenario, const ScenarioReport& report);
std::string describe_witness(const WitnessReport& report);

// }}}

}  // namespace latent

#endif  // LATENT_SCENARIO_HPP_
