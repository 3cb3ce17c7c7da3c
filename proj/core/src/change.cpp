#include "latent/change.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace latent {

// {{{ Strategies

namespace {

std::size_t parse_index(std::string_view text, std::string_view what) {
  std::size_t value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || text.empty()) {
    throw LogicError("bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

SelectionStrategy parse_strategy(std::string_view text) {
  if (text == "full-meet") return FullMeet{};
  if (text == "maxichoice") return Maxichoice{};
  if (text.starts_with("seeded:")) {
    std::uint64_t seed = 0;
    const std::string_view digits = text.substr(7);
    const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), seed);
    if (ec != std::errc() || end != digits.data() + digits.size() || digits.empty()) {
      throw LogicError("bad seed '" + std::string(digits) + "'");
    }
    return Seeded{seed};
  }
  if (text.starts_with("script:")) {
    Scripted s;
    std::string_view rest = text.substr(7);
    while (!rest.empty()) {
      const std::size_t comma = rest.find(',');
      s.choices.push_back(parse_index(rest.substr(0, comma), "script index"));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    return s;
  }
  throw LogicError("unknown strategy '" + std::string(text) +
                   "' (full-meet, maxichoice, seeded:<n>, script:<i,j,...>)");
}

std::string to_string(const SelectionStrategy& s) {
  struct Visitor {
    std::string operator()(const FullMeet&) const { return "full-meet"; }
    std::string operator()(const Maxichoice&) const { return "maxichoice"; }
    std::string operator()(const Seeded& x) const { return "seeded:" + std::to_string(x.seed); }
    std::string operator()(const Scripted& x) const {
      std::string out = "script:";
      for (std::size_t i = 0; i < x.choices.size(); ++i) {
        out += (i ? "," : "") + std::to_string(x.choices[i]);
      }
      return out;
    }
  };
  return std::visit(Visitor{}, s);
}

Selector::Selector(SelectionStrategy strategy) : strategy_(std::move(strategy)) {
  if (const auto* seeded = std::get_if<Seeded>(&strategy_)) rng_.seed(seeded->seed);
}

std::vector<std::size_t> Selector::select(const std::vector<ModelSet>& remainders) {
  if (remainders.empty()) throw LogicError("selection over an empty remainder set");
  const std::size_t n = remainders.size();
  branching_.push_back(n);

  if (std::holds_alternative<FullMeet>(strategy_)) {
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    return all;
  }
  if (std::holds_alternative<Maxichoice>(strategy_)) return {n - 1};
  if (std::holds_alternative<Seeded>(strategy_)) {
    std::vector<std::size_t> picked;
    for (std::size_t i = 0; i < n; ++i) {
      if (rng_() & 1u) picked.push_back(i);
    }
    if (picked.empty()) picked.push_back(static_cast<std::size_t>(rng_() % n));
    return picked;
  }
  const auto& script = std::get<Scripted>(strategy_).choices;
  const std::size_t choice = cursor_ < script.size() ? script[cursor_] : 0;
  ++cursor_;
  if (choice >= n) {
    throw LogicError("script index " + std::to_string(choice) + " out of range for " +
                     std::to_string(n) + " remainders");
  }
  return {choice};
}

// }}}

// {{{ Remainders

namespace {

// Non-tautological members of G believed in T.
std::vector<ModelSet> contraction_targets(const Theory& t, const FormulaSet& g) {
  const Signature& sig = t.signature();
  std::vector<ModelSet> out;
  for (const auto& f : g) {
    const ModelSet m = models(f, sig);
    if (m != sig.universe() && t.contains_class(m)) out.push_back(m);
  }
  return out;
}

bool has_non_tautology(const FormulaSet& g, const Signature& sig) {
  return std::any_of(g.begin(), g.end(), [&sig](const Formula& f) { return !is_tautology(f, sig); });
}

// Minimal transversals of `families`, by Berge's incremental method.
std::vector<std::uint32_t> minimal_hitting_sets(const std::vector<std::uint32_t>& families) {
  std::vector<std::uint32_t> current{0};
  for (std::uint32_t family : families) {
    std::vector<std::uint32_t> next;
    for (std::uint32_t t : current) {
      if (t & family) {
        next.push_back(t);
        continue;
      }
      for (std::uint32_t rest = family; rest; rest &= rest - 1) {
        next.push_back(t | (rest & (~rest + 1)));
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    current.clear();
    for (std::uint32_t t : next) {
      const bool dominated = std::any_of(next.begin(), next.end(), [t](std::uint32_t u) {
        return u != t && (u & t) == u;
      });
      if (!dominated) current.push_back(t);
    }
  }
  return current;
}

std::vector<ModelSet> minimal_sets(std::vector<ModelSet> sets) {
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<ModelSet> out;
  for (ModelSet s : sets) {
    const bool dominated = std::any_of(sets.begin(), sets.end(), [s](ModelSet u) {
      return u != s && u.subset_of(s);
    });
    if (!dominated) out.push_back(s);
  }
  return out;
}

}  // namespace

std::vector<ModelSet> remainders(const Theory& t, const FormulaSet& g) {
  const Signature& sig = t.signature();
  if (!has_non_tautology(g, sig)) return {};
  const ModelSet base = t.models();
  const ModelSet outside = sig.universe() - base;
  std::vector<std::uint32_t> families;
  for (ModelSet target : contraction_targets(t, g)) {
    families.push_back((outside - target).bits);
  }
  std::vector<ModelSet> out;
  for (std::uint32_t h : minimal_hitting_sets(families)) {
    ModelSet r = base | ModelSet{h};
    out.push_back(sig.canonical(r));
  }
  return minimal_sets(std::move(out));
}

bool contraction_vacuous(const Theory& t, const FormulaSet& g) {
  return contraction_targets(t, g).empty();
}

// }}}

// {{{ Internal operators

namespace {

BeliefBase with_beliefs(const BeliefBase& b, ModelSet m, const QuadSet& extra) {
  BeliefBase out = b;
  out.beliefs = Theory(b.beliefs.signature_ref(), m);
  out.quads = attributive_beliefs(out.association());
  const Signature& sig = b.signature();
  for (const auto& q : extra) {
    if (out.beliefs.contains_class(models(q.head, sig)) && respects_exclusion(q, sig)) {
      out.quads.insert(q);
    }
  }
  return out;
}

}  // namespace

BeliefBase internal_expand(const BeliefBase& b, const FormulaSet& g, const QuadSet& extra) {
  const Signature& sig = b.signature();
  return with_beliefs(b, b.beliefs.models() & models(g, sig), extra);
}

BeliefBase internal_contract(const BeliefBase& b, const FormulaSet& g, Selector& selector) {
  if (contraction_vacuous(b.beliefs, g)) return b;
  const std::vector<ModelSet> xi = remainders(b.beliefs, g);
  ModelSet m;
  for (std::size_t i : selector.select(xi)) m = m | xi[i];
  return with_beliefs(b, m, {});
}

// }}}

// {{{ Gen and Update

FormulaSet gen_minus(const BeliefBase& b) {
  const Signature& sig = b.signature();
  FormulaSet out;
  for (const auto& [cls, row] : b.table) {
    if (cls == sig.universe() || !b.beliefs.contains_class(cls)) continue;
    const bool sustained = std::any_of(row.support.begin(), row.support.end(), [&](const Formula& f) {
      return b.beliefs.contains_class(models(f, sig));
    });
    if (!sustained) out.insert(row.subject);
  }
  return out;
}

namespace {

std::vector<const Quadruple*> triggered(const BeliefBase& b) {
  const Signature& sig = b.signature();
  std::vector<const Quadruple*> out;
  for (const auto& q : b.quads) {
    if (b.beliefs.contains_class(models(q.head, sig)) &&
        b.beliefs.contains_class(models(q.trigger, sig))) {
      out.push_back(&q);
    }
  }
  return out;
}

}  // namespace

FormulaSet gen_plus(const BeliefBase& b) {
  FormulaSet out;
  for (const Quadruple* q : triggered(b)) out.insert(q->payload);
  return out;
}

BeliefBase update_minus(const BeliefBase& b) {
  FormulaSet lost;
  for (const auto& [cls, row] : b.table) {
    if (!b.beliefs.contains_class(cls)) lost.insert(row.subject);
  }
  return reduce(b, lost);
}

BeliefBase update_plus(const BeliefBase& b, const FormulaSet& primaries) {
  const Signature& sig = b.signature();
  std::vector<SupportRow> rows;
  std::vector<ModelSet> covered;
  auto registrable = [&](const Formula& f) {
    const ModelSet m = models(f, sig);
    return m != sig.universe() && b.beliefs.contains_class(m);
  };
  for (const Quadruple* q : triggered(b)) {
    if (!registrable(q->payload)) continue;
    rows.push_back(SupportRow{q->payload, rho(*q), true});
    covered.push_back(models(q->payload, sig));
  }
  for (const auto& p : primaries) {
    if (!registrable(p)) continue;
    const ModelSet m = models(p, sig);
    const SupportRow* existing = b.table.find(m);
    if ((existing && existing->registered) ||
        std::find(covered.begin(), covered.end(), m) != covered.end()) {
      continue;
    }
    rows.push_back(SupportRow{p, {Formula::top()}, true});
    covered.push_back(m);
  }
  return augment(b, rows);
}

// }}}

// {{{ Fixpoint loops

std::string_view to_string(ChangeOp op) {
  return op == ChangeOp::Contract ? "contract" : "expand";
}

namespace {

std::size_t round_limit(const Signature& sig, const ChangeOptions& options) {
  return options.max_rounds ? options.max_rounds : sig.classes().size() + 1;
}

[[noreturn]] void overflow(ChangeOp op, std::size_t limit) {
  throw IterationOverflow(std::string(to_string(op)) + " loop did not reach a fixpoint within " +
                          std::to_string(limit) + " rounds");
}

ChangeResult contract_loop(const BeliefBase& b, FormulaSet gamma, Selector& selector,
                           const ChangeOptions& options) {
  const std::size_t limit = round_limit(b.signature(), options);
  ChangeResult result{b, {}};
  while (true) {
    if (result.trace.rounds.size() == limit) overflow(ChangeOp::Contract, limit);
    BeliefBase stepped = internal_contract(result.base, gamma, selector);
    Round round{ChangeOp::Contract, gamma, stepped, gen_minus(stepped), stepped};
    if (!options.skip_update) round.updated = update_minus(round.stepped);
    const bool fixpoint = round.updated == result.base;
    result.base = round.updated;
    gamma = round.gen;
    result.trace.rounds.push_back(std::move(round));
    if (fixpoint) return result;
  }
}

ChangeResult expand_loop(const BeliefBase& b, FormulaSet gamma, const QuadSet& extra,
                         const ChangeOptions& options) {
  const std::size_t limit = round_limit(b.signature(), options);
  const FormulaSet primaries = gamma;
  ChangeResult result{b, {}};
  while (true) {
    if (result.trace.rounds.size() == limit) overflow(ChangeOp::Expand, limit);
    const bool first = result.trace.rounds.empty();
    BeliefBase stepped = internal_expand(result.base, gamma, extra);
    Round round{ChangeOp::Expand, gamma, stepped, gen_plus(stepped), stepped};
    if (!options.skip_update) {
      round.updated = update_plus(round.stepped, first ? primaries : FormulaSet{});
    }
    const bool fixpoint = round.updated == result.base;
    result.base = round.updated;
    gamma = round.gen;
    result.trace.rounds.push_back(std::move(round));
    if (fixpoint) return result;
  }
}

}  // namespace

ChangeResult expand_evidence(const BeliefBase& b, const Evidence& e, const ChangeOptions& options) {
  validate(e, b.signature());
  return expand_loop(b, visible(b, e), e.quads, options);
}

ChangeResult contract_evidence(const BeliefBase& b, const Evidence& e, Selector& selector,
                               const ChangeOptions& options) {
  validate(e, b.signature());
  return contract_loop(b, visible(b, e), selector, options);
}

ChangeResult revise(const BeliefBase& b, const Evidence& e, Selector& selector,
                    const ChangeOptions& options) {
  validate(e, b.signature());
  const FormulaSet negated = visible_neg(b, e);
  const FormulaSet shown = visible(b, e);
  const QuadSet quads = cond_set(shown, b.association());
  ChangeResult contracted = contract_loop(b, negated, selector, options);
  ChangeResult expanded = expand_loop(contracted.base, shown, quads, options);
  contracted.trace.append(expanded.trace);
  return {std::move(expanded.base), std::move(contracted.trace)};
}

// }}}

}  // namespace latent
