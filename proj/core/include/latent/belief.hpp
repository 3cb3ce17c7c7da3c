#ifndef LATENT_BELIEF_HPP_
#define LATENT_BELIEF_HPP_

#include <array>
#include <map>
#include <memory>
#include <set>
#include <string>

#include "latent/logic.hpp"
#include "latent/table.hpp"

namespace latent {

// How a payload depends on its head and trigger once it becomes visible.
enum class DependencyMode : std::uint8_t {
  Autonomous = 0,
  OnHead = 1,
  OnTrigger = 2,
  OnBoth = 3,
};

std::optional<DependencyMode> dependency_mode(int n);

// (trigger, payload, mode), an entry of I(literal) or of Assoc(P).
struct Triple {
  Formula trigger;
  Formula payload;
  DependencyMode mode = DependencyMode::Autonomous;

  friend auto operator<=>(const Triple&, const Triple&) = default;
  friend bool operator==(const Triple&, const Triple&) = default;
};

// P(P1, P2, n): payload P2 attached to head P, triggered by P1.
struct Quadruple {
  Formula head;
  Formula trigger;
  Formula payload;
  DependencyMode mode = DependencyMode::Autonomous;

  friend auto operator<=>(const Quadruple&, const Quadruple&) = default;
  friend bool operator==(const Quadruple&, const Quadruple&) = default;
};

using QuadSet = std::set<Quadruple>;

// Throws LogicError if trigger or payload lies in Exc(head).
Quadruple make_quadruple(Formula head, Formula trigger, Formula payload,
                         DependencyMode mode, const Signature& sig);
bool respects_exclusion(const Quadruple& q, const Signature& sig);

std::string render(const Quadruple& q, const Signature& sig);

// I, plus the finite carrier over which Cond is materialized.
class AssociationMap {
 public:
  explicit AssociationMap(SignatureRef sig);

  const Signature& signature() const { return *sig_; }
  const SignatureRef& signature_ref() const { return sig_; }

  // Adds (trigger, payload, mode) to I(literal). Throws on a non-literal key
  // or on an Exc violation.
  void associate(const Formula& literal, Triple triple);
  // Extends the carrier with f and its canonical representative.
  void add_to_carrier(const Formula& f);

  const std::set<Triple>& entries(const Formula& literal) const;
  const std::map<Formula, std::set<Triple>>& all_entries() const { return entries_; }
  const FormulaSet& carrier() const { return carrier_; }

 private:
  SignatureRef sig_;
  std::map<Formula, std::set<Triple>> entries_;
  FormulaSet carrier_;
};

using AssociationMapRef = std::shared_ptr<const AssociationMap>;

// (I, X, Assoc). X is always π1 of the base the tuple belongs to.
struct AssociationTuple {
  AssociationMapRef map;
  Theory x;
};

struct AssocResult {
  enum class Kind : std::uint8_t { Empty, Universal, Triples };
  Kind kind = Kind::Empty;
  std::set<Triple> triples;

  static AssocResult empty() { return {}; }
  static AssocResult universal() { return {Kind::Universal, {}}; }
  static AssocResult of(std::set<Triple> ts) { return {Kind::Triples, std::move(ts)}; }

  friend bool operator==(const AssocResult&, const AssocResult&) = default;
};

AssocResult assoc(const Formula& p, const AssociationTuple& tuple);
QuadSet cond(const Formula& p, const AssociationTuple& tuple);
QuadSet cond_set(const FormulaSet& ps, const AssociationTuple& tuple);
// Cond over the carrier members believed in X: the π2 every base carries.
QuadSet attributive_beliefs(const AssociationTuple& tuple);

// {P}^⋄: primary propositions and their attributive quadruples.
struct Evidence {
  FormulaSet primaries;
  QuadSet quads;
};

// Throws LogicError when a quadruple's head is not a primary or a
// quadruple violates the Exc constraint.
void validate(const Evidence& e, const Signature& sig);

struct BeliefBase {
  Theory beliefs;           // π1
  QuadSet quads;            // π2
  SupportTable table;       // π3
  AssociationMapRef assoc;  // I and the Cond carrier

  const Signature& signature() const { return beliefs.signature(); }
  AssociationTuple association() const { return {assoc, beliefs}; }

  friend bool operator==(const BeliefBase& a, const BeliefBase& b) {
    return a.beliefs == b.beliefs && a.quads == b.quads && a.table == b.table;
  }
};

FormulaSet visible(const BeliefBase& b, const Evidence& e);
// {¬Q | Q ∈ visible(b, e)}; Full fragment only.
FormulaSet visible_neg(const BeliefBase& b, const Evidence& e);

struct AxiomResult {
  int number = 0;
  std::string name;
  bool pass = true;
  std::string witness;
};

struct AxiomReport {
  std::array<AxiomResult, 10> results;

  bool all_pass() const;
  std::string summary() const;
};

AxiomReport check_axioms(const BeliefBase& b);
inline bool is_belief_set(const BeliefBase& b) { return check_axioms(b).all_pass(); }

}  // namespace latent

#endif  // LATENT_BELIEF_HPP_
