#include "latent/oracle.hpp"

#include <algorithm>
#include <sstream>

namespace latent {

std::vector<ModelSet> brute_remainders(const Theory& t, const FormulaSet& g) {
  const Signature& sig = t.signature();
  std::vector<ModelSet> targets;
  for (const auto& f : g) {
    const ModelSet m = models(f, sig);
    if (m != sig.universe()) targets.push_back(m);
  }
  if (targets.empty()) return {};

  std::vector<ModelSet> admissible;
  for (ModelSet cls : sig.classes_above(t.models())) {
    const bool excludes_all = std::none_of(targets.begin(), targets.end(),
                                           [cls](ModelSet m) { return cls.subset_of(m); });
    if (excludes_all) admissible.push_back(cls);
  }
  std::vector<ModelSet> out;
  for (ModelSet c : admissible) {
    const bool minimal = std::none_of(admissible.begin(), admissible.end(), [c](ModelSet d) {
      return d != c && d.subset_of(c);
    });
    if (minimal) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// {{{ Random instances

namespace {

// Engine output is used raw; distributions are implementation-defined.
std::size_t pick(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }
bool chance(Rng& rng, std::size_t one_in) { return pick(rng, one_in) == 0; }

DependencyMode random_mode(Rng& rng) { return static_cast<DependencyMode>(pick(rng, 4)); }

}  // namespace

Formula random_literal(const Signature& sig, Rng& rng) {
  Formula a = Formula::atom(pick(rng, sig.size()));
  if (sig.fragment() == Fragment::Full && chance(rng, 2)) return Formula::negation(a);
  return a;
}

Formula random_formula(const Signature& sig, std::size_t depth, Rng& rng) {
  if (depth <= 1 || chance(rng, 3)) {
    if (chance(rng, 12)) return chance(rng, 2) ? Formula::top() : Formula::bottom();
    return Formula::atom(pick(rng, sig.size()));
  }
  const bool full = sig.fragment() == Fragment::Full;
  switch (pick(rng, full ? 3 : 2)) {
    case 0:
      return Formula::conjunction(random_formula(sig, depth - 1, rng), random_formula(sig, depth - 1, rng));
    case 1:
      return Formula::disjunction(random_formula(sig, depth - 1, rng), random_formula(sig, depth - 1, rng));
    default:
      return Formula::negation(random_formula(sig, depth - 1, rng));
  }
}

BeliefBase random_base(const SignatureRef& sig, Rng& rng) {
  auto map = std::make_shared<AssociationMap>(sig);
  for (std::size_t i = 0; i < sig->size(); ++i) {
    for (bool negated : {false, true}) {
      if (negated && sig->fragment() != Fragment::Full) continue;
      if (!chance(rng, 2)) continue;
      Formula literal = Formula::atom(i);
      if (negated) literal = Formula::negation(literal);
      Triple t{random_literal(*sig, rng), random_literal(*sig, rng), random_mode(rng)};
      try {
        map->associate(literal, t);
      } catch (const LogicError&) {
        // Exc violation; leave this literal without an entry.
      }
    }
  }

  FormulaSet believed;
  for (int attempt = 0; attempt < 8 && believed.empty(); ++attempt) {
    FormulaSet candidate{random_formula(*sig, 2, rng)};
    if (chance(rng, 2)) candidate.insert(random_literal(*sig, rng));
    if (!models(candidate, *sig).empty()) believed = std::move(candidate);
  }
  if (believed.empty()) believed.insert(Formula::atom(0));

  const ModelSet theory = models(believed, *sig);
  std::vector<ModelSet> above = sig->classes_above(theory);
  std::vector<SupportRow> rows;
  const std::size_t row_count = pick(rng, 3);
  for (std::size_t r = 0; r < row_count; ++r) {
    const ModelSet cls = above[pick(rng, above.size())];
    if (cls == sig->universe()) continue;
    FormulaSet support{chance(rng, 3) ? Formula::top() : random_formula(*sig, 2, rng)};
    rows.push_back(SupportRow{representative(cls, *sig), std::move(support), true});
  }

  BeliefBase b = make_base(map, believed, rows);
  if (!check_axioms(b).all_pass()) b = make_base(map, believed);
  return b;
}

Evidence random_evidence(BeliefBase& b, Rng& rng) {
  const Signature& sig = b.signature();
  Evidence e;
  const std::size_t count = 1 + pick(rng, 2);
  for (std::size_t i = 0; i < count; ++i) {
    e.primaries.insert(chance(rng, 3) ? random_formula(sig, 2, rng) : random_literal(sig, rng));
  }
  std::vector<Formula> literal_heads;
  for (const auto& p : e.primaries) {
    if (p.is_literal()) literal_heads.push_back(p);
  }
  if (!literal_heads.empty() && chance(rng, 2)) {
    auto map = std::make_shared<AssociationMap>(*b.assoc);
    Quadruple q{literal_heads[pick(rng, literal_heads.size())], random_literal(sig, rng),
                random_literal(sig, rng), random_mode(rng)};
    if (respects_exclusion(q, sig)) {
      map->associate(q.head, Triple{q.trigger, q.payload, q.mode});
      e.quads.insert(q);
      b.assoc = map;
      b.quads = attributive_beliefs(b.association());
    }
  }
  return e;
}

SelectionStrategy random_strategy(Rng& rng) {
  switch (pick(rng, 4)) {
    case 0:
      return FullMeet{};
    case 1:
      return Maxichoice{};
    case 2:
      return Seeded{rng()};
    default: {
      Scripted s;
      const std::size_t length = pick(rng, 4);
      for (std::size_t i = 0; i < length; ++i) s.choices.push_back(chance(rng, 4) ? 1 : 0);
      return s;
    }
  }
}

// }}}

// {{{ Batteries

std::string_view to_string(EvidenceOp op) {
  switch (op) {
    case EvidenceOp::Expand:
      return "expand";
    case EvidenceOp::Contract:
      return "contract";
    case EvidenceOp::Revise:
      return "revise";
  }
  return "?";
}

ChangeResult apply(const BeliefBase& b, const Evidence& e, EvidenceOp op, Selector& selector,
                   const ChangeOptions& options) {
  switch (op) {
    case EvidenceOp::Expand:
      return expand_evidence(b, e, options);
    case EvidenceOp::Contract:
      return contract_evidence(b, e, selector, options);
    case EvidenceOp::Revise:
      return revise(b, e, selector, options);
  }
  throw LogicError("unknown operation");
}

bool preservation_check(const BeliefBase& b, const Evidence& e, EvidenceOp op, Selector& selector,
                        const ChangeOptions& options) {
  return check_axioms(apply(b, e, op, selector, options).base).all_pass();
}

std::size_t longest_loop(const ChangeTrace& trace) {
  std::size_t best = 0;
  std::size_t run = 0;
  for (std::size_t i = 0; i < trace.rounds.size(); ++i) {
    run = (i > 0 && trace.rounds[i].op == trace.rounds[i - 1].op) ? run + 1 : 1;
    best = std::max(best, run);
  }
  return best;
}

namespace {

std::string describe(std::size_t index, const BeliefBase& b, const Signature& sig) {
  std::ostringstream os;
  os << "case " << index << " (pi1 " << render(representative(b.beliefs.models(), sig), sig) << ")";
  return os.str();
}

bool out_of_script(const LogicError& e) {
  return std::string_view(e.what()).starts_with("script index");
}

}  // namespace

BatteryReport preservation_battery(const BatteryConfig& config) {
  std::vector<std::string> names(config.atoms);
  for (std::size_t i = 0; i < config.atoms; ++i) names[i] = "p" + std::to_string(i + 1);
  const SignatureRef sig = make_signature(names, Fragment::Full);
  Rng rng(config.seed);
  BatteryReport report;

  for (std::size_t i = 0; i < config.count; ++i) {
    BeliefBase b = random_base(sig, rng);
    const Evidence e = random_evidence(b, rng);
    const std::vector<SelectionStrategy> strategies{FullMeet{}, Maxichoice{}, Seeded{rng()},
                                                    random_strategy(rng)};
    for (EvidenceOp op : {EvidenceOp::Expand, EvidenceOp::Contract, EvidenceOp::Revise}) {
      for (const auto& strategy : strategies) {
        if (op == EvidenceOp::Expand && &strategy != &strategies.front()) break;
        Selector selector(strategy);
        const std::string where = describe(i, b, *sig) + " " + std::string(to_string(op)) + " " +
                                  to_string(strategy);
        try {
          const ChangeResult r = apply(b, e, op, selector, config.options);
          ++report.cases;
          report.max_rounds = std::max(report.max_rounds, longest_loop(r.trace));
          const AxiomReport axioms = check_axioms(r.base);
          if (!axioms.all_pass()) report.violations.push_back(where + ":\n" + axioms.summary());
        } catch (const IterationOverflow& ex) {
          ++report.cases;
          report.violations.push_back(where + ": " + ex.what());
        } catch (const LogicError& ex) {
          if (!out_of_script(ex)) throw;
        }
      }
    }
  }
  return report;
}

BatteryReport contraction_battery(const BatteryConfig& config) {
  std::vector<std::string> names(config.atoms);
  for (std::size_t i = 0; i < config.atoms; ++i) names[i] = "p" + std::to_string(i + 1);
  const SignatureRef sig = make_signature(names, Fragment::Full);
  Rng rng(config.seed);
  BatteryReport report;

  for (std::size_t i = 0; report.cases < config.count; ++i) {
    const BeliefBase b = random_base(sig, rng);
    FormulaSet gamma;
    const std::size_t count = 1 + pick(rng, 2);
    const std::vector<ModelSet> above = sig->classes_above(b.beliefs.models());
    for (std::size_t k = 0; k < count; ++k) {
      if (chance(rng, 2)) {
        gamma.insert(representative(above[pick(rng, above.size())], *sig));
      } else {
        gamma.insert(random_formula(*sig, 2, rng));
      }
    }
    const SelectionStrategy strategy =
        i % 4 == 0 ? SelectionStrategy{FullMeet{}} : i % 4 == 1 ? SelectionStrategy{Maxichoice{}}
                                                                 : random_strategy(rng);
    const std::string where = describe(i, b, *sig) + " by " + render(gamma, *sig) + " " +
                              to_string(strategy);
    auto fail = [&](const std::string& postulate) {
      report.violations.push_back(where + ": " + postulate);
    };

    Selector selector(strategy);
    BeliefBase r = b;
    try {
      r = internal_contract(b, gamma, selector);
    } catch (const LogicError& ex) {
      if (out_of_script(ex)) continue;
      throw;
    }
    ++report.cases;

    for (const auto& g : gamma) {
      if (!is_tautology(g, *sig) && r.beliefs.contains_class(models(g, *sig))) fail("success");
    }
    if (!b.beliefs.models().subset_of(r.beliefs.models())) fail("inclusion");
    const bool vacuous = std::none_of(gamma.begin(), gamma.end(), [&](const Formula& g) {
      return b.beliefs.contains_class(models(g, *sig));
    });
    if (vacuous && !(r == b)) fail("vacuity");

    FormulaSet canonical;
    for (const auto& g : gamma) canonical.insert(canonical_representative(g, *sig));
    Selector twin(strategy);
    if (!(internal_contract(b, canonical, twin) == r)) fail("extensionality");

    if (!internal_expand(r, gamma).beliefs.models().subset_of(b.beliefs.models())) {
      fail("internal recovery");
    }
    if (!(r.table == b.table)) fail("support table carried over");
    if (r.quads != attributive_beliefs(r.association())) fail("association update");

    if (std::holds_alternative<FullMeet>(strategy) && gamma.size() == 1) {
      const Formula& g = *gamma.begin();
      const ModelSet m = models(g, *sig);
      if (m != sig->universe() && b.beliefs.contains_class(m) &&
          r.beliefs.models() != (b.beliefs.models() | sig->complement(m))) {
        fail("full meet differs from K ∩ Cn(~P)");
      }
    }
  }
  return report;
}

// }}}

// {{{ No-recovery witness

namespace {

const Formula& p1() {
  static const Formula f = Formula::atom(0);
  return f;
}
const Formula& p2() {
  static const Formula f = Formula::atom(1);
  return f;
}
const Formula& p3() {
  static const Formula f = Formula::atom(2);
  return f;
}

Evidence witness_evidence() { return Evidence{{p1()}, {}}; }

}  // namespace

BeliefBase witness_base(Fragment fragment) {
  const SignatureRef sig = make_signature({"p1", "p2", "p3"}, fragment);
  auto map = std::make_shared<AssociationMap>(sig);
  map->associate(p1(), Triple{p2(), p3(), DependencyMode::OnHead});
  return make_base(map, {p1(), p3()},
                   {SupportRow{p3(), {p1()}, true}, SupportRow{p1(), {Formula::top()}, true}});
}

WitnessRun replay_witness(const BeliefBase& b, const Scripted& script) {
  Selector selector(script);
  const Evidence e = witness_evidence();
  ChangeResult contracted = contract_evidence(b, e, selector);
  ChangeResult expanded = expand_evidence(contracted.base, e);
  WitnessRun run{script, selector.branching(), std::move(contracted), std::move(expanded), false, {}};
  const Signature& sig = b.signature();
  const ModelSet final_models = run.expanded.base.beliefs.models();
  run.recovered = run.expanded.base.beliefs.contains_class(models(p3(), sig));
  if (!run.recovered) {
    const ModelSet counter = final_models - sig.atom_models(2);
    for (std::size_t v = 0; v < sig.valuation_count(); ++v) {
      if (counter.contains(v)) {
        run.counter_model = v;
        break;
      }
    }
  }
  return run;
}

WitnessReport no_recovery_witness(Fragment fragment) {
  WitnessReport report{fragment, witness_base(fragment), witness_evidence(), 0, 0, std::nullopt, true};
  const BeliefBase& b = report.base;

  std::vector<std::vector<std::size_t>> stack{{}};
  while (!stack.empty()) {
    std::vector<std::size_t> prefix = std::move(stack.back());
    stack.pop_back();
    WitnessRun run = replay_witness(b, Scripted{prefix});
    ++report.runs;
    if (!run.recovered) {
      ++report.failing;
      if (!report.witness) report.witness = run;
    }
    // Children differ from this run at one position past the prefix; pushed
    // so that they pop in lexicographic order.
    std::vector<std::size_t> made = prefix;
    made.resize(run.branching.size(), 0);
    for (std::size_t pos = prefix.size(); pos < run.branching.size(); ++pos) {
      for (std::size_t c = run.branching[pos]; c-- > 1;) {
        std::vector<std::size_t> child(made.begin(), made.begin() + static_cast<std::ptrdiff_t>(pos));
        child.push_back(c);
        stack.push_back(std::move(child));
      }
    }
  }

  // The single-step contrast holds for every selection.
  const FormulaSet gamma{p1()};
  const std::size_t n = remainders(b.beliefs, gamma).size();
  std::vector<SelectionStrategy> selections{FullMeet{}};
  for (std::size_t i = 0; i < n; ++i) selections.push_back(Scripted{{i}});
  for (const auto& s : selections) {
    Selector selector(s);
    const BeliefBase contracted = internal_contract(b, gamma, selector);
    if (!internal_expand(contracted, gamma).beliefs.models().subset_of(b.beliefs.models())) {
      report.contrast_holds = false;
    }
  }
  return report;
}

// }}}

}  // namespace latent
