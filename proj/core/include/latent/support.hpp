#ifndef LATENT_SUPPORT_HPP_
#define LATENT_SUPPORT_HPP_

#include <optional>
#include <vector>

#include "latent/belief.hpp"

namespace latent {

// X \\ Y: drops members of X that are L-equal to some member of Y, except
// tautologies.
FormulaSet double_diff(const FormulaSet& x, const FormulaSet& y, const Signature& sig);

// Support registered for a triggered payload, by dependency mode.
FormulaSet rho(const Quadruple& q);

// Dense tables satisfying the propagation axioms are determined by one
// label per valuation w of the support space: w lies in the support closure
// of every believed class (Always), of none (Never), or of exactly the
// classes that do not contain a fixed non-model v of the theory.
struct SupportLabel {
  enum class Kind : std::uint8_t { Always, Never, Witness };
  Kind kind = Kind::Never;
  std::size_t witness = 0;

  friend bool operator==(const SupportLabel&, const SupportLabel&) = default;
};

class SupportLabeling {
 public:
  // Labels fitting the pinned rows (class, closure), or nullopt if no
  // labeling reproduces them all.
  static std::optional<SupportLabeling> fit(const Signature& sig, ModelSet theory,
                                            const std::vector<std::pair<ModelSet, ModelSet>>& pins);

  // Closure model set the labeling assigns to a believed class.
  ModelSet closure(ModelSet cls) const;
  const std::vector<SupportLabel>& labels() const { return labels_; }

 private:
  ModelSet non_models_;
  std::vector<SupportLabel> labels_;
};

// Generators of the labeling's support for a believed class.
FormulaSet derive_support(const SupportLabeling& labeling, ModelSet cls, const Signature& sig);

struct NormalizeOptions {
  // Registered rows that cannot be pinned consistently become derived rows.
  // When false they are kept verbatim so check_axioms can report them.
  bool demote_conflicts = true;
};

// Rebuilds π3 densely over the believed classes. Registered rows with a
// nonempty support are pinned in table order, then those in `late` (in
// order); every other believed class gets a derived row.
SupportTable normalize(const Theory& beliefs, const SupportTable& table,
                       const std::vector<ModelSet>& late = {},
                       NormalizeOptions options = {});

// −_B: applies \\ G to every row, drops rows for unbelieved subjects and
// re-derives the rest.
BeliefBase reduce(const BeliefBase& b, const FormulaSet& g);

// ∘_B. Throws LogicError if a subject is not believed.
BeliefBase augment(const BeliefBase& b, const std::vector<SupportRow>& rows);

// A base believing L(believed), with π2 from Cond and the given rows
// registered verbatim (conflicts are left for check_axioms to report).
// Throws LogicError if a row's subject is not believed.
BeliefBase make_base(AssociationMapRef assoc, const FormulaSet& believed,
                     const std::vector<SupportRow>& rows = {});

}  // namespace latent

#endif  // LATENT_SUPPORT_HPP_
