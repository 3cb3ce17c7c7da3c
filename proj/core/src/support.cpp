#include "latent/support.hpp"

#include <algorithm>

namespace latent {

FormulaSet double_diff(const FormulaSet& x, const FormulaSet& y, const Signature& sig) {
  std::vector<ModelSet> removed;
  removed.reserve(y.size());
  for (const auto& f : y) removed.push_back(models(f, sig));
  FormulaSet out;
  for (const auto& p : x) {
    const ModelSet m = models(p, sig);
    if (m == sig.universe() || std::find(removed.begin(), removed.end(), m) == removed.end()) {
      out.insert(p);
    }
  }
  return out;
}

FormulaSet rho(const Quadruple& q) {
  switch (q.mode) {
    case DependencyMode::Autonomous:
      return {Formula::top()};
    case DependencyMode::OnHead:
      return {q.head};
    case DependencyMode::OnTrigger:
      return {q.trigger};
    case DependencyMode::OnBoth:
      return {q.head, q.trigger};
  }
  return {};
}

// {{{ Labeling

std::optional<SupportLabeling> SupportLabeling::fit(
    const Signature& sig, ModelSet theory,
    const std::vector<std::pair<ModelSet, ModelSet>>& pins) {
  SupportLabeling out;
  out.non_models_ = sig.universe() - theory;
  const std::size_t k = pins.size();

  // pattern[v][i]: v lies in the non-model part of pin i's complement, so
  // that a w labeled v belongs to pin i's closure.
  std::vector<std::vector<bool>> pattern(sig.valuation_count());
  for (std::size_t v = 0; v < sig.valuation_count(); ++v) {
    if (!out.non_models_.contains(v)) continue;
    pattern[v].resize(k);
    for (std::size_t i = 0; i < k; ++i) pattern[v][i] = !pins[i].first.contains(v);
  }

  out.labels_.resize(sig.valuation_count());
  for (std::size_t w = 0; w < sig.valuation_count(); ++w) {
    std::vector<bool> in(k);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < k; ++i) {
      in[i] = pins[i].second.contains(w);
      hits += in[i] ? 1 : 0;
    }
    SupportLabel& label = out.labels_[w];
    if (hits == k) {
      label.kind = SupportLabel::Kind::Always;
    } else if (hits == 0) {
      label.kind = SupportLabel::Kind::Never;
    } else {
      bool found = false;
      for (std::size_t v = 0; v < sig.valuation_count() && !found; ++v) {
        if (out.non_models_.contains(v) && pattern[v] == in) {
          label = {SupportLabel::Kind::Witness, v};
          found = true;
        }
      }
      if (!found) return std::nullopt;
    }
  }
  return out;
}

ModelSet SupportLabeling::closure(ModelSet cls) const {
  const ModelSet missing = non_models_ - cls;
  ModelSet out;
  for (std::size_t w = 0; w < labels_.size(); ++w) {
    const SupportLabel& l = labels_[w];
    if (l.kind == SupportLabel::Kind::Always ||
        (l.kind == SupportLabel::Kind::Witness && missing.contains(l.witness))) {
      out.bits |= 1u << w;
    }
  }
  return out;
}

FormulaSet derive_support(const SupportLabeling& labeling, ModelSet cls, const Signature& sig) {
  ModelSet m = labeling.closure(cls);
  if (sig.fragment() == Fragment::Monotone) m = sig.up_closure(m);
  if (cls == sig.universe()) {
    FormulaSet out{Formula::top()};
    if (m != sig.universe()) out.insert(representative(m, sig));
    return out;
  }
  return {representative(m, sig)};
}

// }}}

SupportTable normalize(const Theory& beliefs, const SupportTable& table,
                       const std::vector<ModelSet>& late, NormalizeOptions options) {
  const Signature& sig = beliefs.signature();
  const ModelSet theory = beliefs.models();
  auto pinnable = [&](ModelSet cls) {
    const SupportRow* row = table.find(cls);
    return row && row->registered && !row->support.empty() && theory.subset_of(cls);
  };

  std::vector<ModelSet> candidates;
  for (const auto& [cls, row] : table) {
    if (pinnable(cls) && std::find(late.begin(), late.end(), cls) == late.end()) {
      candidates.push_back(cls);
    }
  }
  for (ModelSet cls : late) {
    if (pinnable(cls) && std::find(candidates.begin(), candidates.end(), cls) == candidates.end()) {
      candidates.push_back(cls);
    }
  }

  std::vector<std::pair<ModelSet, ModelSet>> pins;
  std::optional<SupportLabeling> labeling = SupportLabeling::fit(sig, theory, pins);
  for (ModelSet cls : candidates) {
    pins.emplace_back(cls, models(table.find(cls)->support, sig));
    if (auto fitted = SupportLabeling::fit(sig, theory, pins)) {
      labeling = std::move(fitted);
    } else {
      pins.pop_back();
    }
  }
  auto pinned = [&pins](ModelSet cls) {
    return std::any_of(pins.begin(), pins.end(), [cls](const auto& p) { return p.first == cls; });
  };

  SupportTable out;
  for (ModelSet cls : sig.classes_above(theory)) {
    const SupportRow* row = table.find(cls);
    if (row && row->registered &&
        (pinned(cls) || row->support.empty() || !options.demote_conflicts)) {
      out.set(cls, *row);
      continue;
    }
    FormulaSet support = derive_support(*labeling, cls, sig);
    // Keep the old generators when they still denote the same closure.
    if (row && !row->support.empty() && models(row->support, sig) == models(support, sig) &&
        (cls != sig.universe() || row->support.contains(Formula::top()))) {
      support = row->support;
    }
    out.set(cls, SupportRow{row ? row->subject : representative(cls, sig), std::move(support), false});
  }
  return out;
}

BeliefBase reduce(const BeliefBase& b, const FormulaSet& g) {
  const Signature& sig = b.signature();
  SupportTable reduced;
  for (const auto& [cls, row] : b.table) {
    if (!b.beliefs.contains_class(cls)) continue;
    reduced.set(cls, SupportRow{row.subject, double_diff(row.support, g, sig), row.registered});
  }
  BeliefBase out = b;
  out.table = normalize(b.beliefs, reduced);
  return out;
}

BeliefBase augment(const BeliefBase& b, const std::vector<SupportRow>& rows) {
  const Signature& sig = b.signature();
  std::vector<ModelSet> subjects;
  for (const auto& r : rows) {
    const ModelSet m = models(r.subject, sig);
    if (!b.beliefs.contains_class(m)) {
      throw LogicError("support row subject " + render(r.subject, sig) + " is not believed");
    }
    subjects.push_back(m);
  }

  SupportTable merged = b.table;
  std::vector<ModelSet> late;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const ModelSet cls = subjects[i];
    FormulaSet support;
    const SupportRow* existing = merged.find(cls);
    if (existing && existing->registered) support = existing->support;
    for (std::size_t j = 0; j < rows.size(); ++j) {
      // Incoming subjects that entail P lend their supports to P.
      if (subjects[j].subset_of(cls)) support.insert(rows[j].support.begin(), rows[j].support.end());
    }
    const Formula subject = existing ? existing->subject : rows[i].subject;
    merged.set(cls, SupportRow{subject, std::move(support), true});
    if (std::find(late.begin(), late.end(), cls) == late.end()) late.push_back(cls);
  }

  BeliefBase out = b;
  out.table = normalize(b.beliefs, merged, late);
  return out;
}

BeliefBase make_base(AssociationMapRef assoc, const FormulaSet& believed,
                     const std::vector<SupportRow>& rows) {
  const SignatureRef& sig = assoc->signature_ref();
  BeliefBase b{Theory::closure_of(sig, believed), {}, {}, std::move(assoc)};
  b.quads = attributive_beliefs(b.association());
  SupportTable table;
  for (const auto& r : rows) {
    const ModelSet cls = models(r.subject, *sig);
    if (!b.beliefs.contains_class(cls)) {
      throw LogicError("support row subject " + render(r.subject, *sig) + " is not believed");
    }
    SupportRow row{r.subject, r.support, true};
    if (const SupportRow* existing = table.find(cls)) {
      row.support.insert(existing->support.begin(), existing->support.end());
    }
    table.set(cls, std::move(row));
  }
  b.table = normalize(b.beliefs, table, {}, NormalizeOptions{.demote_conflicts = false});
  return b;
}

}  // namespace latent
