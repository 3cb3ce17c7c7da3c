#ifndef LATENT_LOGIC_HPP_
#define LATENT_LOGIC_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace latent {

// {{{ Errors

class LogicError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public LogicError {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Raised when an operation needs a connective the fragment lacks.
class UnsupportedOperation : public LogicError {
 public:
  using LogicError::LogicError;
};

class CapacityError : public LogicError {
 public:
  using LogicError::LogicError;
};

// }}}

enum class Fragment : std::uint8_t { Full, Monotone };

std::string_view to_string(Fragment f);
std::optional<Fragment> parse_fragment(std::string_view text);

// A set of valuations over a signature of at most four atoms. Valuation v
// assigns atom i the value of bit i of v.
struct ModelSet {
  std::uint32_t bits = 0;

  constexpr bool contains(std::size_t valuation) const {
    return (bits >> valuation) & 1u;
  }
  constexpr bool subset_of(ModelSet other) const {
    return (bits & ~other.bits) == 0;
  }
  constexpr bool empty() const { return bits == 0; }
  int count() const;

  friend constexpr ModelSet operator|(ModelSet a, ModelSet b) {
    return {a.bits | b.bits};
  }
  friend constexpr ModelSet operator&(ModelSet a, ModelSet b) {
    return {a.bits & b.bits};
  }
  friend constexpr ModelSet operator-(ModelSet a, ModelSet b) {
    return {a.bits & ~b.bits};
  }
  friend constexpr auto operator<=>(ModelSet, ModelSet) = default;
};

class Signature {
 public:
  static constexpr std::size_t kMaxAtoms = 4;

  explicit Signature(std::vector<std::string> atoms,
                     Fragment fragment = Fragment::Full);

  const std::vector<std::string>& atoms() const { return atoms_; }
  Fragment fragment() const { return fragment_; }
  std::size_t size() const { return atoms_.size(); }
  std::size_t valuation_count() const { return std::size_t{1} << size(); }

  ModelSet universe() const { return universe_; }
  ModelSet complement(ModelSet m) const { return universe_ - m; }
  ModelSet atom_models(std::size_t atom) const { return atom_models_[atom]; }
  std::optional<std::size_t> find(std::string_view name) const;

  // Full: every model set is a class. Monotone: exactly the up-sets.
  bool is_class(ModelSet m) const;
  bool is_up_set(ModelSet m) const;
  ModelSet up_closure(ModelSet m) const;
  ModelSet canonical(ModelSet m) const {
    return fragment_ == Fragment::Monotone ? up_closure(m) : m;
  }

  // All classes of the fragment in ascending bit order.
  const std::vector<ModelSet>& classes() const { return classes_; }
  std::vector<ModelSet> classes_above(ModelSet lower) const;

  // Atom values of a valuation, atom order, e.g. "101".
  std::string valuation_string(std::size_t valuation) const;
  std::string model_string(ModelSet m) const;

  friend bool operator==(const Signature& a, const Signature& b) {
    return a.atoms_ == b.atoms_ && a.fragment_ == b.fragment_;
  }

 private:
  std::vector<std::string> atoms_;
  Fragment fragment_;
  ModelSet universe_;
  std::vector<ModelSet> atom_models_;
  std::vector<ModelSet> classes_;
};

using SignatureRef = std::shared_ptr<const Signature>;

SignatureRef make_signature(std::vector<std::string> atoms,
                            Fragment fragment = Fragment::Full);

// Immutable propositional syntax tree over atom indices. Implication is
// surface syntax only; the tree never stores it.
class Formula {
 public:
  enum class Kind : std::uint8_t { Top, Bottom, Atom, Not, And, Or };

  Formula();  // ⊤

  static Formula top();
  static Formula bottom();
  static Formula atom(std::size_t index);
  static Formula negation(Formula operand);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula implication(Formula lhs, Formula rhs);

  Kind kind() const;
  std::size_t atom_index() const;
  const Formula& operand() const;  // Not
  const Formula& lhs() const;      // And, Or
  const Formula& rhs() const;

  bool is_literal() const;
  bool is_negation_free() const;
  // A leaf has depth 1.
  std::size_t depth() const;

  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);
  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

using FormulaSet = std::set<Formula>;

Formula parse_formula(std::string_view text, const Signature& sig);
std::string render(const Formula& f, const Signature& sig);
std::string render(const FormulaSet& fs, const Signature& sig);

ModelSet models(const Formula& f, const Signature& sig);
// Models of the conjunction of a set; the universe for an empty set.
ModelSet models(std::span<const Formula> fs, const Signature& sig);
ModelSet models(const FormulaSet& fs, const Signature& sig);

bool is_tautology(const Formula& f, const Signature& sig);
bool is_contradiction(const Formula& f, const Signature& sig);
bool equivalent(const Formula& a, const Formula& b, const Signature& sig);
bool entails(std::span<const Formula> premises, const Formula& conclusion,
             const Signature& sig);

// Classical satisfiability.
bool is_consistent(std::span<const Formula> fs, const Signature& sig);
// No member P with ¬P also a member (syntactic).
bool is_pairwise_consistent(std::span<const Formula> fs);

// Exc(P) = L({P}) ∪ {Q | P ∈ L({Q})}, as a membership view.
class ExcView {
 public:
  ExcView(ModelSet center) : center_(center) {}
  bool contains(ModelSet q) const {
    return center_.subset_of(q) || q.subset_of(center_);
  }

 private:
  ModelSet center_;
};

ExcView exc(const Formula& p, const Signature& sig);
bool in_exc(const Formula& q, const Formula& p, const Signature& sig);

// Minimal DNF (exact cover of prime implicants, fewest terms then fewest
// literals, ties by atom order). Monotone classes use positive primes.
Formula representative(ModelSet m, const Signature& sig);
Formula canonical_representative(const Formula& f, const Signature& sig);
std::vector<Formula> enumerate_classes(const Signature& sig);

// A logically closed proposition set, held as the models of its members.
class Theory {
 public:
  Theory(SignatureRef sig, ModelSet models);

  static Theory closure_of(SignatureRef sig, std::span<const Formula> fs);
  static Theory closure_of(SignatureRef sig, const FormulaSet& fs);

  const Signature& signature() const { return *sig_; }
  const SignatureRef& signature_ref() const { return sig_; }
  ModelSet models() const { return models_; }

  // Throws UnsupportedOperation for a non-fragment query in Monotone mode.
  bool contains(const Formula& f) const;
  bool contains_class(ModelSet m) const { return models_.subset_of(m); }
  bool is_consistent() const { return !models_.empty(); }

  // π1(a) ⊆ π1(b).
  bool subset_of(const Theory& other) const {
    return other.models_.subset_of(models_);
  }

  friend bool operator==(const Theory& a, const Theory& b) {
    return a.models_ == b.models_ && *a.sig_ == *b.sig_;
  }

 private:
  SignatureRef sig_;
  ModelSet models_;
};

}  // namespace latent

#endif  // LATENT_LOGIC_HPP_
