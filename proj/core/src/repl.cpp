#include "latent/repl.hpp"

#include <sstream>

namespace latent {

namespace {

constexpr std::string_view kHelp =
    "commands:\n"
    "  :believe F                      add F to pi1 (rows are kept)\n"
    "  :support F <- {F1, ...}         register a support row\n"
    "  :assoc L : T => P mode N        add (T, P, N) to I(L)\n"
    "  :evidence NAME {F1, ...}        define evidence with these primaries\n"
    "  :quad NAME H : T => P mode N    attach a quadruple to evidence NAME\n"
    "  :expand NAME | :contract NAME | :revise NAME\n"
    "  :strategy S                     full-meet, maxichoice, seeded:<n>, script:<i,j,...>\n"
    "  :show base|table|quads|evidence\n"
    "  :axioms   :load FILE   :undo   :help   :quit\n";

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t\r\n") - first + 1);
}

std::vector<SupportRow> registered_rows(const BeliefBase& b) {
  std::vector<SupportRow> rows;
  for (const auto& [cls, row] : b.table) {
    if (row.registered) rows.push_back(row);
  }
  return rows;
}

// Rebuilds a base around new beliefs, association map or rows.
BeliefBase rebuild(const BeliefBase& b, AssociationMapRef assoc, const FormulaSet& extra_beliefs,
                   std::vector<SupportRow> rows) {
  FormulaSet believed = extra_beliefs;
  believed.insert(representative(b.beliefs.models(), b.signature()));
  return make_base(std::move(assoc), believed, rows);
}

}  // namespace

Repl::Repl(SignatureRef sig, RunOptions options)
    : options_(std::move(options)), selector_(options_.strategy) {
  auto map = std::make_shared<const AssociationMap>(sig);
  history_.push_back(State{make_base(map, {}), {}});
}

std::string Repl::execute(std::string_view line) {
  line = trim(line);
  if (line.empty() || line.front() == '#') return {};
  if (line.front() != ':') return "commands start with ':' (try :help)\n";
  const auto space = line.find_first_of(" \t");
  const std::string_view command = line.substr(1, space == std::string_view::npos ? line.size() : space - 1);
  const std::string_view rest = space == std::string_view::npos ? std::string_view{} : trim(line.substr(space));
  try {
    return dispatch(command, rest);
  } catch (const std::exception& ex) {
    return std::string("error: ") + ex.what() + "\n";
  }
}

std::string Repl::dispatch(std::string_view command, std::string_view rest) {
  const State& current = state();
  const BeliefBase& base = current.base;

  if (command == "help") return std::string(kHelp);
  if (command == "quit" || command == "q") {
    finished_ = true;
    return {};
  }
  if (command == "undo") {
    if (history_.size() == 1) return "nothing to undo\n";
    history_.pop_back();
    return "restored previous state\n";
  }
  if (command == "axioms") return check_axioms(base).summary();
  if (command == "show") {
    if (rest == "base" || rest.empty()) return describe_base(base);
    if (rest == "table") {
      std::ostringstream os;
      for (const auto& [cls, row] : base.table) {
        os << (row.registered ? "* " : "  ") << render(row.subject, sig()) << " <- "
           << render(row.support, sig()) << '\n';
      }
      return os.str();
    }
    if (rest == "quads") {
      std::ostringstream os;
      for (const auto& q : base.quads) os << render(q, sig()) << '\n';
      return base.quads.empty() ? "(none)\n" : os.str();
    }
    if (rest == "evidence") {
      std::ostringstream os;
      for (const auto& [name, e] : current.evidence) {
        os << name << ": " << render(e.primaries, sig()) << '\n';
        for (const auto& q : e.quads) os << "  " << render(q, sig()) << '\n';
      }
      return current.evidence.empty() ? "(none)\n" : os.str();
    }
    return "show what? base, table, quads or evidence\n";
  }
  if (command == "strategy") {
    const SelectionStrategy s = parse_strategy(rest);
    options_.strategy = s;
    selector_ = Selector(s);
    return "strategy " + to_string(s) + "\n";
  }
  if (command == "believe") {
    State next = current;
    next.base = rebuild(base, base.assoc, {parse_formula(rest, sig())}, registered_rows(base));
    push(std::move(next));
    return describe_base(state().base);
  }
  if (command == "support") {
    const auto arrow = rest.find("<-");
    if (arrow == std::string_view::npos) return "usage: :support F <- {F1, ...}\n";
    std::vector<SupportRow> rows = registered_rows(base);
    rows.push_back(SupportRow{parse_formula(trim(rest.substr(0, arrow)), sig()),
                              parse_formula_set(rest.substr(arrow + 2), sig()), true});
    State next = current;
    next.base = rebuild(base, base.assoc, {}, std::move(rows));
    push(std::move(next));
    return check_axioms(state().base).all_pass() ? "row registered\n"
                                                 : "row registered; the base now fails axioms (see :axioms)\n";
  }
  if (command == "assoc") {
    const Quadruple q = parse_quadruple(rest, sig());
    auto map = std::make_shared<AssociationMap>(*base.assoc);
    map->associate(q.head, Triple{q.trigger, q.payload, q.mode});
    State next = current;
    next.base = rebuild(base, map, {}, registered_rows(base));
    push(std::move(next));
    return "I(" + render(q.head, sig()) + ") extended\n";
  }
  if (command == "evidence") {
    const auto space = rest.find_first_of(" \t");
    if (space == std::string_view::npos) return "usage: :evidence NAME {F1, ...}\n";
    State next = current;
    next.evidence[std::string(rest.substr(0, space))] =
        Evidence{parse_formula_set(rest.substr(space), sig()), {}};
    push(std::move(next));
    return "evidence defined\n";
  }
  if (command == "quad") {
    const auto space = rest.find_first_of(" \t");
    if (space == std::string_view::npos) return "usage: :quad NAME H : T => P mode N\n";
    const std::string name(rest.substr(0, space));
    auto it = current.evidence.find(name);
    if (it == current.evidence.end()) return "unknown evidence '" + name + "'\n";
    const Quadruple q = parse_quadruple(rest.substr(space), sig());
    if (!it->second.primaries.contains(q.head)) return "the head must be a primary of " + name + "\n";
    State next = current;
    next.evidence[name].quads.insert(q);
    if (q.head.is_literal()) {
      auto map = std::make_shared<AssociationMap>(*base.assoc);
      map->associate(q.head, Triple{q.trigger, q.payload, q.mode});
      next.base = rebuild(base, map, {}, registered_rows(base));
    }
    push(std::move(next));
    return "quadruple attached\n";
  }
  if (command == "load") {
    const Scenario scenario = load_scenario(std::string(rest));
    history_.push_back(State{scenario.initial_base(), scenario.evidence});
    return "loaded " + scenario.name + "\n" + describe_base(state().base);
  }
  if (command == "expand") return change(EvidenceOp::Expand, rest);
  if (command == "contract") return change(EvidenceOp::Contract, rest);
  if (command == "revise") return change(EvidenceOp::Revise, rest);
  return "unknown command :" + std::string(command) + " (try :help)\n";
}

std::string Repl::change(EvidenceOp op, std::string_view name) {
  const State& current = state();
  auto it = current.evidence.find(std::string(name));
  if (it == current.evidence.end()) return "unknown evidence '" + std::string(name) + "'\n";
  ChangeResult result = apply(current.base, it->second, op, selector_, options_.change);
  std::ostringstream os;
  for (std::size_t i = 0; i < result.trace.rounds.size(); ++i) {
    os << describe_round(result.trace.rounds[i], i + 1, sig());
  }
  State next = current;
  next.base = std::move(result.base);
  push(std::move(next));
  os << describe_base(state().base);
  return os.str();
}

}  // namespace latent
