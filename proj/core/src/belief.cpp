#include "latent/belief.hpp"

#include <sstream>

namespace latent {

std::optional<DependencyMode> dependency_mode(int n) {
  if (n < 0 || n > 3) return std::nullopt;
  return static_cast<DependencyMode>(n);
}

bool respects_exclusion(const Quadruple& q, const Signature& sig) {
  const ExcView excluded = exc(q.head, sig);
  return !excluded.contains(models(q.trigger, sig)) &&
         !excluded.contains(models(q.payload, sig));
}

Quadruple make_quadruple(Formula head, Formula trigger, Formula payload,
                         DependencyMode mode, const Signature& sig) {
  Quadruple q{std::move(head), std::move(trigger), std::move(payload), mode};
  if (!respects_exclusion(q, sig)) {
    throw LogicError("quadruple " + render(q, sig) +
                     " has a trigger or payload in Exc of its head");
  }
  return q;
}

std::string render(const Quadruple& q, const Signature& sig) {
  std::ostringstream os;
  os << render(q.head, sig) << " : " << render(q.trigger, sig) << " => "
     << render(q.payload, sig) << " mode " << static_cast<int>(q.mode);
  return os.str();
}

// {{{ AssociationMap

AssociationMap::AssociationMap(SignatureRef sig) : sig_(std::move(sig)) {
  for (std::size_t i = 0; i < sig_->size(); ++i) {
    add_to_carrier(Formula::atom(i));
    if (sig_->fragment() == Fragment::Full) {
      add_to_carrier(Formula::negation(Formula::atom(i)));
    }
  }
}

void AssociationMap::associate(const Formula& literal, Triple triple) {
  if (!literal.is_literal()) {
    throw LogicError("I is keyed by literals; got " + render(literal, *sig_));
  }
  make_quadruple(literal, triple.trigger, triple.payload, triple.mode, *sig_);
  add_to_carrier(literal);
  add_to_carrier(triple.trigger);
  add_to_carrier(triple.payload);
  entries_[literal].insert(std::move(triple));
}

void AssociationMap::add_to_carrier(const Formula& f) {
  carrier_.insert(f);
  carrier_.insert(canonical_representative(f, *sig_));
}

const std::set<Triple>& AssociationMap::entries(const Formula& literal) const {
  static const std::set<Triple> kNone;
  auto it = entries_.find(literal);
  return it == entries_.end() ? kNone : it->second;
}

// }}}

// {{{ Assoc and Cond

namespace {

class AssocEvaluator {
 public:
  explicit AssocEvaluator(const AssociationTuple& tuple)
      : map_(*tuple.map), x_(tuple.x), sig_(tuple.map->signature()) {}

  AssocResult eval(const Formula& p) const {
    const ModelSet m = models(p, sig_);
    if (m == sig_.universe()) return AssocResult::empty();
    if (m.empty()) return AssocResult::universal();
    if (p.is_literal()) return AssocResult::of(map_.entries(p));

    using K = Formula::Kind;
    switch (p.kind()) {
      case K::And:
        return conjunction(p.lhs(), p.rhs());
      case K::Or:
        return disjunction(p.lhs(), p.rhs());
      case K::Not: {
        const Formula& q = p.operand();
        switch (q.kind()) {
          case K::Not:
            return eval(q.operand());
          case K::And:
            return disjunction(Formula::negation(q.lhs()), Formula::negation(q.rhs()));
          case K::Or:
            return conjunction(Formula::negation(q.lhs()), Formula::negation(q.rhs()));
          default:
            break;  // ¬⊤, ¬⊥ are caught by the preamble; ¬atom is a literal.
        }
        break;
      }
      default:
        break;
    }
    return AssocResult::empty();
  }

 private:
  bool believed(const Formula& f) const { return x_.contains_class(models(f, sig_)); }

  bool negation_believed(const Formula& f) const {
    if (sig_.fragment() == Fragment::Monotone) return false;
    return (x_.models() & models(f, sig_)).empty();
  }

  // Drops every triple with a component in Exc(a ∧ b).
  std::set<Triple> filter(const std::set<Triple>& ts, const Formula& a,
                          const Formula& b) const {
    const ExcView excluded(models(a, sig_) & models(b, sig_));
    std::set<Triple> out;
    for (const auto& t : ts) {
      if (!excluded.contains(models(t.trigger, sig_)) &&
          !excluded.contains(models(t.payload, sig_))) {
        out.insert(t);
      }
    }
    return out;
  }

  AssocResult conjunction(const Formula& a, const Formula& b) const {
    const AssocResult ra = eval(a);
    const AssocResult rb = eval(b);
    if (ra.kind == AssocResult::Kind::Universal || rb.kind == AssocResult::Kind::Universal) {
      return AssocResult::universal();
    }
    std::set<Triple> all = ra.triples;
    all.insert(rb.triples.begin(), rb.triples.end());
    return AssocResult::of(filter(all, a, b));
  }

  AssocResult filtered(const Formula& side, const Formula& a, const Formula& b) const {
    AssocResult r = eval(side);
    if (r.kind != AssocResult::Kind::Triples) return r;
    return AssocResult::of(filter(r.triples, a, b));
  }

  AssocResult disjunction(const Formula& a, const Formula& b) const {
    const bool a_in = believed(a);
    const bool b_in = believed(b);
    if (a_in && b_in) return eval(Formula::conjunction(a, b));
    if (negation_believed(b)) return eval(a);
    if (negation_believed(a)) return eval(b);
    // ¬b ∉ X and ¬a ∉ X hold here.
    if (a_in && !b_in) return filtered(a, a, b);
    if (b_in && !a_in) return filtered(b, a, b);

    const AssocResult ra = eval(a);
    const AssocResult rb = eval(b);
    const ExcView excluded(models(a, sig_) & models(b, sig_));
    std::set<Triple> out;
    for (const auto& ta : ra.triples) {
      const ModelSet trig_a = models(ta.trigger, sig_);
      const ModelSet pay_a = models(ta.payload, sig_);
      for (const auto& tb : rb.triples) {
        if (trig_a != models(tb.trigger, sig_) || ta.mode != tb.mode) continue;
        const ModelSet pay_b = models(tb.payload, sig_);
        std::optional<Formula> payload;
        if (pay_a.subset_of(pay_b)) {
          payload = tb.payload;  // P_B ∈ L(P_A): keep the weaker P_B
        } else if (pay_b.subset_of(pay_a)) {
          payload = ta.payload;
        } else {
          continue;
        }
        if (excluded.contains(trig_a) || excluded.contains(models(*payload, sig_))) continue;
        out.insert(Triple{ta.trigger, *payload, ta.mode});
      }
    }
    return AssocResult::of(std::move(out));
  }

  const AssociationMap& map_;
  const Theory& x_;
  const Signature& sig_;
};

}  // namespace

AssocResult assoc(const Formula& p, const AssociationTuple& tuple) {
  return AssocEvaluator(tuple).eval(p);
}

QuadSet cond(const Formula& p, const AssociationTuple& tuple) {
  const AssocResult r = assoc(p, tuple);
  QuadSet out;
  if (r.kind != AssocResult::Kind::Triples) return out;
  const Signature& sig = tuple.map->signature();
  for (const auto& t : r.triples) {
    Quadruple q{p, t.trigger, t.payload, t.mode};
    // The disjunction cases filter by Exc(P1 ∧ P2); the head itself may
    // still exclude a component.
    if (respects_exclusion(q, sig)) out.insert(std::move(q));
  }
  return out;
}

QuadSet cond_set(const FormulaSet& ps, const AssociationTuple& tuple) {
  QuadSet out;
  for (const auto& p : ps) {
    QuadSet part = cond(p, tuple);
    out.insert(part.begin(), part.end());
  }
  return out;
}

QuadSet attributive_beliefs(const AssociationTuple& tuple) {
  const Signature& sig = tuple.map->signature();
  FormulaSet believed;
  for (const auto& f : tuple.map->carrier()) {
    if (tuple.x.contains_class(models(f, sig))) believed.insert(f);
  }
  return cond_set(believed, tuple);
}

void validate(const Evidence& e, const Signature& sig) {
  if (e.primaries.empty()) throw LogicError("evidence needs a primary proposition");
  for (const auto& q : e.quads) {
    if (!e.primaries.contains(q.head)) {
      throw LogicError("quadruple head " + render(q.head, sig) + " is not a primary");
    }
    make_quadruple(q.head, q.trigger, q.payload, q.mode, sig);
  }
}

// }}}

// {{{ Visible

FormulaSet visible(const BeliefBase& b, const Evidence& e) {
  FormulaSet out = e.primaries;
  const Signature& sig = b.signature();
  for (const auto& q : e.quads) {
    if (b.beliefs.contains_class(models(q.trigger, sig))) out.insert(q.payload);
  }
  return out;
}

FormulaSet visible_neg(const BeliefBase& b, const Evidence& e) {
  if (b.signature().fragment() != Fragment::Full) {
    throw UnsupportedOperation("Visible^- needs negation; not available in the monotone fragment");
  }
  FormulaSet out;
  for (const auto& f : visible(b, e)) out.insert(Formula::negation(f));
  return out;
}

// }}}

// {{{ Axioms

bool AxiomReport::all_pass() const {
  for (const auto& r : results) {
    if (!r.pass) return false;
  }
  return true;
}

std::string AxiomReport::summary() const {
  std::ostringstream os;
  for (const auto& r : results) {
    os << (r.pass ? "pass " : "FAIL ") << r.number << ' ' << r.name;
    if (!r.pass) os << ": " << r.witness;
    os << '\n';
  }
  return os.str();
}

AxiomReport check_axioms(const BeliefBase& b) {
  static constexpr std::array<const char*, 10> kNames = {
      "Logical closure",
      "Compactness",
      "Attributive belief adequacy",
      "Support adequacy 1",
      "Support adequacy 2",
      "Support sanity",
      "Disjunctive support propagation",
      "Conjunctive support propagation",
      "Support monotonicity",
      "Tautological support",
  };
  AxiomReport report;
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    report.results[i] = {static_cast<int>(i + 1), kNames[i], true, {}};
  }
  auto fail = [&report](int axiom, std::string witness) {
    auto& r = report.results[axiom - 1];
    if (r.pass) {
      r.pass = false;
      r.witness = std::move(witness);
    }
  };

  const Signature& sig = b.signature();
  const ModelSet theory = b.beliefs.models();

  // Closure and compactness hold by the model-set representation; the only
  // way to break closure is a model set outside the fragment's classes.
  if (!sig.is_class(theory)) fail(1, "model set " + sig.model_string(theory) + " is not a class");

  for (const auto& q : b.quads) {
    if (!b.beliefs.contains_class(models(q.head, sig))) {
      fail(3, "quadruple " + render(q, sig) + " has an unbelieved head");
    }
  }

  for (ModelSet cls : sig.classes_above(theory)) {
    if (!b.table.contains(cls)) {
      fail(4, "believed class " + render(representative(cls, sig), sig) + " has no row");
    }
  }

  struct Row {
    ModelSet cls;
    const SupportRow* row;
    ModelSet closure;
  };
  std::vector<Row> rows;
  std::map<ModelSet, ModelSet> closure_of;
  for (const auto& [cls, row] : b.table) {
    const ModelSet closure = models(row.support, sig);
    rows.push_back({cls, &row, closure});
    closure_of.emplace(cls, closure);
    if (!theory.subset_of(cls)) {
      fail(5, "row for unbelieved " + render(row.subject, sig));
    }
    if (row.support.empty()) fail(6, "row for " + render(row.subject, sig) + " is empty");
    if (cls == sig.universe()) {
      bool has_top = false;
      for (const auto& g : row.support) has_top = has_top || is_tautology(g, sig);
      if (!has_top) fail(10, "tautology row " + render(row.support, sig) + " lacks ⊤");
    }
  }

  for (const auto& r1 : rows) {
    for (const auto& r2 : rows) {
      // Disjunction P1 ∨ P2: L(Γ) = L(Γ1 ∪ Γ2).
      if (auto it = closure_of.find(r1.cls | r2.cls); it != closure_of.end()) {
        if (it->second != (r1.closure & r2.closure)) {
          fail(7, render(r1.row->subject, sig) + " | " + render(r2.row->subject, sig));
        }
      }
      // Conjunction P1 ∧ P2: L(Γ) = L(Γ1) ∩ L(Γ2).
      if (auto it = closure_of.find(r1.cls & r2.cls); it != closure_of.end()) {
        if (it->second != (r1.closure | r2.closure)) {
          fail(8, render(r1.row->subject, sig) + " & " + render(r2.row->subject, sig));
        }
      }
      // L(P1) ⊆ L(P2), i.e. P2 entails P1, requires L(Γ2) ⊆ L(Γ1).
      if (r2.cls.subset_of(r1.cls) && !r1.closure.subset_of(r2.closure)) {
        fail(9, render(r2.row->subject, sig) + " entails " + render(r1.row->subject, sig));
      }
    }
  }
  return report;
}

// }}}

}  // namespace latent
