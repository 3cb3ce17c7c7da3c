#include "latent/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace latent {

// {{{ Parsing

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Splits off the first whitespace-delimited word.
std::pair<std::string_view, std::string_view> split_word(std::string_view s) {
  s = trim(s);
  const auto end = s.find_first_of(" \t");
  if (end == std::string_view::npos) return {s, {}};
  return {s.substr(0, end), trim(s.substr(end))};
}

DependencyMode parse_mode(std::string_view text) {
  if (text.size() == 1 && text[0] >= '0' && text[0] <= '3') {
    return *dependency_mode(text[0] - '0');
  }
  throw LogicError("dependency mode must be 0, 1, 2 or 3, got '" + std::string(text) + "'");
}

std::optional<EvidenceOp> parse_op(std::string_view word) {
  if (word == "expand") return EvidenceOp::Expand;
  if (word == "contract") return EvidenceOp::Contract;
  if (word == "revise") return EvidenceOp::Revise;
  return std::nullopt;
}

class ScenarioParser {
 public:
  ScenarioParser(std::string name, std::optional<Fragment> fragment)
      : fragment_override_(fragment) {
    scenario_.name = std::move(name);
  }

  Scenario parse(std::string_view text) {
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t end = std::min(text.find('\n', start), text.size());
      ++line_;
      handle(trim(text.substr(start, end - start)));
      start = end + 1;
    }
    finish_signature();
    auto map = std::make_shared<AssociationMap>(*assoc_);
    for (auto& [name, e] : scenario_.evidence) {
      try {
        validate(e, sig());
      } catch (const LogicError& ex) {
        throw ScenarioError("evidence " + name + ": " + ex.what(), evidence_lines_[name]);
      }
      for (const auto& p : e.primaries) map->add_to_carrier(p);
      // Literal-headed quadruples join I so Cond sees them.
      for (const auto& q : e.quads) {
        if (q.head.is_literal()) map->associate(q.head, Triple{q.trigger, q.payload, q.mode});
      }
    }
    for (const auto& step : scenario_.script) {
      if (!scenario_.evidence.contains(step.evidence)) {
        throw ScenarioError("unknown evidence '" + step.evidence + "'", step.line);
      }
    }
    scenario_.assoc = std::move(map);
    return std::move(scenario_);
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ScenarioError(what, line_); }

  const Signature& sig() {
    finish_signature();
    return *scenario_.signature;
  }

  void finish_signature() {
    if (scenario_.signature) return;
    if (atoms_.empty()) fail("[signature] with an atoms line must come first");
    const Fragment fragment = fragment_override_.value_or(fragment_.value_or(Fragment::Full));
    try {
      scenario_.signature = make_signature(atoms_, fragment);
    } catch (const LogicError& ex) {
      fail(ex.what());
    }
    assoc_ = std::make_shared<AssociationMap>(scenario_.signature);
  }

  Formula formula(std::string_view text) {
    try {
      return parse_formula(trim(text), sig());
    } catch (const ParseError& ex) {
      fail("'" + std::string(trim(text)) + "': " + ex.what());
    }
  }

  void handle(std::string_view line) {
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) return;
    if (line.front() == '[') {
      if (line.back() != ']') fail("unterminated section header");
      auto [kind, arg] = split_word(line.substr(1, line.size() - 2));
      section_ = std::string(kind);
      if (section_ == "evidence") {
        if (arg.empty()) fail("[evidence] needs a name");
        current_evidence_ = std::string(arg);
        if (scenario_.evidence.contains(current_evidence_)) {
          fail("evidence '" + current_evidence_ + "' defined twice");
        }
        scenario_.evidence[current_evidence_];
        evidence_lines_[current_evidence_] = line_;
      } else if (section_ != "signature" && section_ != "assoc" && section_ != "base" &&
                 section_ != "script" && section_ != "assert") {
        fail("unknown section [" + section_ + "]");
      } else if (!arg.empty()) {
        fail("[" + section_ + "] takes no argument");
      }
      if (section_ != "signature") finish_signature();
      return;
    }

    auto [word, rest] = split_word(line);
    try {
      if (section_ == "signature") {
        signature_line(word, rest);
      } else if (section_ == "assoc") {
        const Quadruple q = parse_quadruple(line, sig());
        assoc_->associate(q.head, Triple{q.trigger, q.payload, q.mode});
      } else if (section_ == "evidence") {
        evidence_line(word, rest);
      } else if (section_ == "base") {
        base_line(word, rest);
      } else if (section_ == "script") {
        script_line(word, rest);
      } else if (section_ == "assert") {
        assert_line(word, rest, line);
      } else {
        fail("content outside any section");
      }
    } catch (const ScenarioError&) {
      throw;
    } catch (const LogicError& ex) {
      fail(ex.what());
    }
  }

  void signature_line(std::string_view word, std::string_view rest) {
    if (scenario_.signature) fail("the signature is already fixed");
    if (word == "atoms") {
      while (!rest.empty()) {
        auto [atom, tail] = split_word(rest);
        atoms_.emplace_back(atom);
        rest = tail;
      }
    } else if (word == "fragment") {
      fragment_ = parse_fragment(rest);
      if (!fragment_) fail("fragment must be full or monotone");
    } else {
      fail("expected 'atoms' or 'fragment'");
    }
  }

  void evidence_line(std::string_view word, std::string_view rest) {
    Evidence& e = scenario_.evidence[current_evidence_];
    if (word == "primary") {
      e.primaries.insert(formula(rest));
    } else if (word == "quad") {
      e.quads.insert(parse_quadruple(rest, sig()));
    } else {
      fail("expected 'primary' or 'quad'");
    }
  }

  void base_line(std::string_view word, std::string_view rest) {
    if (word == "believe") {
      scenario_.believed.insert(formula(rest));
    } else if (word == "support") {
      const auto arrow = rest.find("<-");
      if (arrow == std::string_view::npos) fail("expected 'support F <- {F1, ...}'");
      scenario_.rows.push_back(SupportRow{formula(rest.substr(0, arrow)),
                                          parse_formula_set(rest.substr(arrow + 2), sig()), true});
    } else {
      fail("expected 'believe' or 'support'");
    }
  }

  void script_line(std::string_view word, std::string_view rest) {
    const auto op = parse_op(word);
    if (!op) fail("expected 'expand', 'contract' or 'revise'");
    auto [name, tail] = split_word(rest);
    if (name.empty()) fail("missing evidence name");
    ScenarioStep step{*op, std::string(name), std::nullopt, line_};
    if (!tail.empty()) {
      auto [keyword, strategy] = split_word(tail);
      if (keyword != "strategy" || strategy.empty()) fail("expected 'strategy S'");
      step.strategy = parse_strategy(strategy);
    }
    if (*op == EvidenceOp::Revise && sig().fragment() != Fragment::Full) {
      fail("revise needs the full fragment");
    }
    scenario_.script.push_back(std::move(step));
  }

  void assert_line(std::string_view word, std::string_view rest, std::string_view line) {
    ScenarioAssertion a;
    a.text = std::string(line);
    a.line = line_;
    if (word == "in") {
      a.kind = ScenarioAssertion::Kind::In;
      a.formula = formula(rest);
    } else if (word == "not-in") {
      a.kind = ScenarioAssertion::Kind::NotIn;
      a.formula = formula(rest);
    } else if (word == "axioms" && rest.empty()) {
      a.kind = ScenarioAssertion::Kind::Axioms;
    } else {
      fail("expected 'in F', 'not-in F' or 'axioms'");
    }
    scenario_.assertions.push_back(std::move(a));
  }

  Scenario scenario_;
  std::optional<Fragment> fragment_override_;
  std::vector<std::string> atoms_;
  std::optional<Fragment> fragment_;
  std::shared_ptr<AssociationMap> assoc_;
  std::string section_;
  std::string current_evidence_;
  std::map<std::string, std::size_t> evidence_lines_;
  std::size_t line_ = 0;
};

}  // namespace

Quadruple parse_quadruple(std::string_view text, const Signature& sig) {
  const auto colon = text.find(':');
  const auto arrow = text.find("=>");
  const auto mode = text.rfind("mode");
  if (colon == std::string_view::npos || arrow == std::string_view::npos ||
      mode == std::string_view::npos || !(colon < arrow && arrow < mode)) {
    throw LogicError("expected 'HEAD : TRIGGER => PAYLOAD mode N'");
  }
  return make_quadruple(parse_formula(trim(text.substr(0, colon)), sig),
                        parse_formula(trim(text.substr(colon + 1, arrow - colon - 1)), sig),
                        parse_formula(trim(text.substr(arrow + 2, mode - arrow - 2)), sig),
                        parse_mode(trim(text.substr(mode + 4))), sig);
}

FormulaSet parse_formula_set(std::string_view text, const Signature& sig) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '{' || text.back() != '}') {
    throw LogicError("expected a set '{F1, F2, ...}'");
  }
  text = trim(text.substr(1, text.size() - 2));
  FormulaSet out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size() && text[i] == '(') ++depth;
    if (i < text.size() && text[i] == ')') --depth;
    if (i == text.size() || (text[i] == ',' && depth == 0)) {
      const std::string_view item = trim(text.substr(start, i - start));
      if (!item.empty()) {
        out.insert(parse_formula(item, sig));
      } else if (i < text.size() || !out.empty()) {
        throw LogicError("empty member in formula set");
      }
      start = i + 1;
    }
  }
  return out;
}

Scenario parse_scenario(std::string_view text, std::string name, std::optional<Fragment> fragment) {
  return ScenarioParser(std::move(name), fragment).parse(text);
}

Scenario load_scenario(const std::filesystem::path& path, std::optional<Fragment> fragment) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open " + path.string(), 0);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str(), path.stem().string(), fragment);
}

// }}}

// {{{ Running

bool ScenarioReport::ok() const {
  return std::all_of(assertions.begin(), assertions.end(),
                     [](const AssertionResult& a) { return a.pass; });
}

ScenarioReport run_scenario(const Scenario& scenario, const RunOptions& options) {
  BeliefBase base = [&] {
    try {
      return scenario.initial_base();
    } catch (const LogicError& ex) {
      throw ScenarioError(std::string("invalid initial base: ") + ex.what(), 0);
    }
  }();
  const AxiomReport initial_axioms = check_axioms(base);
  if (!initial_axioms.all_pass()) {
    throw ScenarioError("initial base is not a belief set:\n" + initial_axioms.summary(), 0);
  }

  ScenarioReport report{base, base, {}, {}};
  // One selector per strategy, so PRNG streams and script cursors carry
  // across the steps that share it.
  std::map<std::string, Selector> selectors;
  for (const auto& step : scenario.script) {
    const SelectionStrategy strategy = step.strategy.value_or(options.strategy);
    auto [it, inserted] = selectors.try_emplace(to_string(strategy), strategy);
    ChangeResult result =
        apply(report.final, scenario.evidence.at(step.evidence), step.op, it->second, options.change);
    report.final = result.base;
    report.steps.push_back(StepResult{step, std::move(result)});
  }

  const Signature& sig = *scenario.signature;
  for (const auto& a : scenario.assertions) {
    AssertionResult r{a.text, false, {}};
    switch (a.kind) {
      case ScenarioAssertion::Kind::In:
      case ScenarioAssertion::Kind::NotIn: {
        const bool believed = report.final.beliefs.contains_class(models(a.formula, sig));
        r.pass = believed == (a.kind == ScenarioAssertion::Kind::In);
        if (!r.pass) {
          r.detail = believed ? "believed" : "not believed; final pi1 is " +
                                                 render(representative(report.final.beliefs.models(), sig), sig);
        }
        break;
      }
      case ScenarioAssertion::Kind::Axioms: {
        const AxiomReport axioms = check_axioms(report.final);
        r.pass = axioms.all_pass();
        if (!r.pass) r.detail = axioms.summary();
        break;
      }
    }
    report.assertions.push_back(std::move(r));
  }
  return report;
}

// }}}

// {{{ Serialization

using nlohmann::ordered_json;

ordered_json model_set_json(ModelSet m, const Signature& sig) {
  std::vector<std::string> vs;
  for (std::size_t v = 0; v < sig.valuation_count(); ++v) {
    if (m.contains(v)) vs.push_back(sig.valuation_string(v));
  }
  std::sort(vs.begin(), vs.end());
  return ordered_json(vs);
}

ordered_json formula_set_json(const FormulaSet& fs, const Signature& sig) {
  ordered_json out = ordered_json::array();
  for (const auto& f : fs) out.push_back(render(f, sig));
  return out;
}

ordered_json table_json(const SupportTable& table, const Signature& sig) {
  ordered_json out = ordered_json::array();
  for (const auto& [cls, row] : table) {
    out.push_back({{"subject", render(row.subject, sig)},
                   {"support", formula_set_json(row.support, sig)},
                   {"registered", row.registered}});
  }
  return out;
}

ordered_json round_json(const Round& round, const Signature& sig) {
  return {{"op", std::string(to_string(round.op))},
          {"gamma", formula_set_json(round.gamma, sig)},
          {"pi1_models", model_set_json(round.updated.beliefs.models(), sig)},
          {"table", table_json(round.updated.table, sig)},
          {"gen", formula_set_json(round.gen, sig)}};
}

ordered_json trace_json(const Scenario& scenario, const ScenarioReport& report) {
  const Signature& sig = *scenario.signature;
  ordered_json rounds = ordered_json::array();
  for (const auto& step : report.steps) {
    for (const auto& round : step.result.trace.rounds) {
      ordered_json r = round_json(round, sig);
      r["step"] = std::string(to_string(step.step.op)) + " " + step.step.evidence;
      rounds.push_back(std::move(r));
    }
  }
  ordered_json assertions = ordered_json::array();
  for (const auto& a : report.assertions) {
    assertions.push_back({{"expr", a.expr}, {"pass", a.pass}});
  }
  return {{"scenario", scenario.name}, {"rounds", std::move(rounds)}, {"assertions", std::move(assertions)}};
}

ordered_json witness_json(const WitnessReport& report) {
  const Signature& sig = report.base.signature();
  ordered_json out{{"fragment", std::string(to_string(report.fragment))},
                   {"base_pi1_models", model_set_json(report.base.beliefs.models(), sig)},
                   {"evidence", formula_set_json(report.evidence.primaries, sig)},
                   {"runs", report.runs},
                   {"failing", report.failing},
                   {"universal_failure", report.universal_failure()},
                   {"contrast_holds", report.contrast_holds}};
  if (report.witness) {
    const WitnessRun& w = *report.witness;
    ordered_json rounds = ordered_json::array();
    for (const auto* part : {&w.contracted.trace, &w.expanded.trace}) {
      for (const auto& round : part->rounds) rounds.push_back(round_json(round, sig));
    }
    out["witness"] = {{"script", to_string(SelectionStrategy{w.script})},
                      {"branching", w.branching},
                      {"final_pi1_models", model_set_json(w.expanded.base.beliefs.models(), sig)},
                      {"missing", "p3"},
                      {"counter_model", w.counter_model ? sig.valuation_string(*w.counter_model) : ""},
                      {"rounds", std::move(rounds)}};
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

std::string describe_round(const Round& round, std::size_t index, const Signature& sig) {
  std::ostringstream os;
  os << "  round " << index << ' ' << to_string(round.op) << " by " << render(round.gamma, sig)
     << " -> pi1 = " << render(representative(round.updated.beliefs.models(), sig), sig)
     << "; gen = " << render(round.gen, sig) << '\n';
  return os.str();
}

std::string describe_base(const BeliefBase& b) {
  const Signature& sig = b.signature();
  std::ostringstream os;
  os << "pi1: " << render(representative(b.beliefs.models(), sig), sig) << "  models "
     << sig.model_string(b.beliefs.models()) << '\n';
  os << "pi2:";
  if (b.quads.empty()) os << " (none)";
  os << '\n';
  for (const auto& q : b.quads) os << "  " << render(q, sig) << '\n';
  os << "pi3 registered rows:";
  bool any = false;
  for (const auto& [cls, row] : b.table) {
    if (!row.registered) continue;
    os << "\n  " << render(row.subject, sig) << " <- " << render(row.support, sig);
    any = true;
  }
  if (!any) os << " (none)";
  os << "\n(" << b.table.size() << " rows in total)\n";
  return os.str();
}

std::string describe_report(const Scenario& scenario, const ScenarioReport& report) {
  const Signature& sig = *scenario.signature;
  std::ostringstream os;
  os << "scenario " << scenario.name << " (" << to_string(sig.fragment()) << ", "
     << sig.size() << " atoms)\n";
  for (const auto& step : report.steps) {
    os << to_string(step.step.op) << ' ' << step.step.evidence << '\n';
    for (std::size_t i = 0; i < step.result.trace.rounds.size(); ++i) {
      os << describe_round(step.result.trace.rounds[i], i + 1, sig);
    }
  }
  os << "final " << describe_base(report.final);
  for (const auto& a : report.assertions) {
    os << (a.pass ? "PASS " : "FAIL ") << a.expr;
    if (!a.detail.empty()) os << " (" << a.detail << ')';
    os << '\n';
  }
  return os.str();
}

std::string describe_witness(const WitnessReport& report) {
  const Signature& sig = report.base.signature();
  std::ostringstream os;
  os << "fragment " << to_string(report.fragment) << ": " << report.runs << " selection scripts, "
     << report.failing << " without p3 after contracting and re-expanding by p1\n";
  if (report.universal_failure()) os << "p3 is unrecovered under every script\n";
  if (report.witness) {
    const WitnessRun& w = *report.witness;
    const std::string script =
        w.script.choices.empty() ? "(no choices)" : to_string(SelectionStrategy{w.script});
    os << "witness " << script << ": final pi1 = "
       << render(representative(w.expanded.base.beliefs.models(), sig), sig);
    if (w.counter_model) os << ", model " << sig.valuation_string(*w.counter_model) << " falsifies p3";
    os << '\n';
    std::size_t i = 0;
    for (const auto* part : {&w.contracted.trace, &w.expanded.trace}) {
      for (const auto& round : part->rounds) os << describe_round(round, ++i, sig);
    }
  } else {
    os << "no failing script found\n";
  }
  os << "single-step contrast (B / {p1}) + {p1} includes B: "
     << (report.contrast_holds ? "holds" : "fails") << '\n';
  return os.str();
}

// }}}

}  // namespace latent
