#include "latent/logic.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <sstream>
#include <unordered_set>

namespace latent {

ParseError::ParseError(const std::string& what, std::size_t position)
    : LogicError(what + " at position " + std::to_string(position)),
      position_(position) {}

std::string_view to_string(Fragment f) {
  return f == Fragment::Full ? "full" : "monotone";
}

std::optional<Fragment> parse_fragment(std::string_view text) {
  if (text == "full") return Fragment::Full;
  if (text == "monotone") return Fragment::Monotone;
  return std::nullopt;
}

int ModelSet::count() const { return std::popcount(bits); }

// {{{ Signature

namespace {

bool valid_atom_name(std::string_view name) {
  if (name.empty() || name == "T" || name == "F") return false;
  auto alpha = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(name.front())) return false;
  return std::all_of(name.begin(), name.end(),
                     [&](char c) { return alpha(c) || digit(c) || c == '_'; });
}

}  // namespace

Signature::Signature(std::vector<std::string> atoms, Fragment fragment)
    : atoms_(std::move(atoms)), fragment_(fragment) {
  if (atoms_.empty()) throw LogicError("signature needs at least one atom");
  if (atoms_.size() > kMaxAtoms) {
    throw CapacityError("signature has " + std::to_string(atoms_.size()) +
                        " atoms; at most " + std::to_string(kMaxAtoms) +
                        " are supported");
  }
  std::unordered_set<std::string> seen;
  for (const auto& a : atoms_) {
    if (!valid_atom_name(a)) throw LogicError("invalid atom name '" + a + "'");
    if (!seen.insert(a).second) throw LogicError("duplicate atom '" + a + "'");
  }
  const std::size_t n = valuation_count();
  universe_ = {static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1u)};
  atom_models_.resize(atoms_.size());
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    for (std::size_t v = 0; v < n; ++v) {
      if ((v >> i) & 1u) atom_models_[i].bits |= 1u << v;
    }
  }
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t b = 0; b < total; ++b) {
    ModelSet m{static_cast<std::uint32_t>(b)};
    if (is_class(m)) classes_.push_back(m);
  }
}

std::optional<std::size_t> Signature::find(std::string_view name) const {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i] == name) return i;
  }
  return std::nullopt;
}

bool Signature::is_up_set(ModelSet m) const {
  const std::size_t n = valuation_count();
  for (std::size_t v = 0; v < n; ++v) {
    if (!m.contains(v)) continue;
    for (std::size_t i = 0; i < size(); ++i) {
      if (!m.contains(v | (std::size_t{1} << i))) return false;
    }
  }
  return true;
}

bool Signature::is_class(ModelSet m) const {
  if (!m.subset_of(universe_)) return false;
  return fragment_ == Fragment::Full || is_up_set(m);
}

ModelSet Signature::up_closure(ModelSet m) const {
  ModelSet out = m;
  const std::size_t n = valuation_count();
  for (std::size_t v = 0; v < n; ++v) {
    if (!out.contains(v)) continue;
    for (std::size_t w = 0; w < n; ++w) {
      if ((v & w) == v) out.bits |= 1u << w;
    }
  }
  return out;
}

std::vector<ModelSet> Signature::classes_above(ModelSet lower) const {
  std::vector<ModelSet> out;
  for (ModelSet c : classes_) {
    if (lower.subset_of(c)) out.push_back(c);
  }
  return out;
}

std::string Signature::valuation_string(std::size_t valuation) const {
  std::string s(size(), '0');
  for (std::size_t i = 0; i < size(); ++i) {
    if ((valuation >> i) & 1u) s[i] = '1';
  }
  return s;
}

std::string Signature::model_string(ModelSet m) const {
  std::vector<std::string> vs;
  for (std::size_t v = 0; v < valuation_count(); ++v) {
    if (m.contains(v)) vs.push_back(valuation_string(v));
  }
  std::sort(vs.begin(), vs.end());
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < vs.size(); ++i) os << (i ? "," : "") << vs[i];
  os << '}';
  return os.str();
}

SignatureRef make_signature(std::vector<std::string> atoms, Fragment fragment) {
  return std::make_shared<const Signature>(std::move(atoms), fragment);
}

// }}}

// {{{ Formula

struct Formula::Node {
  explicit Node(Kind k, std::size_t a = 0) : kind(k), atom(a) {}

  Kind kind;
  std::size_t atom = 0;
  std::size_t depth = 1;
  bool negation_free = true;
  std::array<Formula, 2> children;
};

Formula::Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

// A null node is ⊤; it keeps Node's default-constructed children cheap.
Formula::Formula() = default;

Formula Formula::top() { return Formula(); }

Formula Formula::bottom() {
  static const auto node = std::make_shared<const Node>(Node(Kind::Bottom));
  return Formula(node);
}

Formula Formula::atom(std::size_t index) {
  return Formula(std::make_shared<const Node>(Node(Kind::Atom, index)));
}

Formula Formula::negation(Formula operand) {
  Node n(Kind::Not);
  n.depth = operand.depth() + 1;
  n.negation_free = false;
  n.children[0] = std::move(operand);
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::conjunction(Formula lhs, Formula rhs) {
  Node n(Kind::And);
  n.depth = std::max(lhs.depth(), rhs.depth()) + 1;
  n.negation_free = lhs.is_negation_free() && rhs.is_negation_free();
  n.children = {std::move(lhs), std::move(rhs)};
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::disjunction(Formula lhs, Formula rhs) {
  Node n(Kind::Or);
  n.depth = std::max(lhs.depth(), rhs.depth()) + 1;
  n.negation_free = lhs.is_negation_free() && rhs.is_negation_free();
  n.children = {std::move(lhs), std::move(rhs)};
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::implication(Formula lhs, Formula rhs) {
  return disjunction(negation(std::move(lhs)), std::move(rhs));
}

Formula::Kind Formula::kind() const {
  return node_ ? node_->kind : Kind::Top;
}
std::size_t Formula::atom_index() const { return node_->atom; }
const Formula& Formula::operand() const { return node_->children[0]; }
const Formula& Formula::lhs() const { return node_->children[0]; }
const Formula& Formula::rhs() const { return node_->children[1]; }
std::size_t Formula::depth() const { return node_ ? node_->depth : 1; }
bool Formula::is_negation_free() const {
  return node_ ? node_->negation_free : true;
}

bool Formula::is_literal() const {
  return kind() == Kind::Atom ||
         (kind() == Kind::Not && operand().kind() == Kind::Atom);
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  switch (a.kind()) {
    case Formula::Kind::Top:
    case Formula::Kind::Bottom:
      return std::strong_ordering::equal;
    case Formula::Kind::Atom:
      return a.atom_index() <=> b.atom_index();
    case Formula::Kind::Not:
      return a.operand() <=> b.operand();
    case Formula::Kind::And:
    case Formula::Kind::Or:
      if (auto c = a.lhs() <=> b.lhs(); c != 0) return c;
      return a.rhs() <=> b.rhs();
  }
  return std::strong_ordering::equal;
}

bool operator==(const Formula& a, const Formula& b) {
  return (a <=> b) == 0;
}

// }}}

// {{{ Semantics

ModelSet models(const Formula& f, const Signature& sig) {
  switch (f.kind()) {
    case Formula::Kind::Top:
      return sig.universe();
    case Formula::Kind::Bottom:
      return {};
    case Formula::Kind::Atom:
      if (f.atom_index() >= sig.size()) {
        throw LogicError("atom index outside the signature");
      }
      return sig.atom_models(f.atom_index());
    case Formula::Kind::Not:
      return sig.complement(models(f.operand(), sig));
    case Formula::Kind::And:
      return models(f.lhs(), sig) & models(f.rhs(), sig);
    case Formula::Kind::Or:
      return models(f.lhs(), sig) | models(f.rhs(), sig);
  }
  return {};
}

ModelSet models(std::span<const Formula> fs, const Signature& sig) {
  ModelSet m = sig.universe();
  for (const auto& f : fs) m = m & models(f, sig);
  return m;
}

ModelSet models(const FormulaSet& fs, const Signature& sig) {
  ModelSet m = sig.universe();
  for (const auto& f : fs) m = m & models(f, sig);
  return m;
}

bool is_tautology(const Formula& f, const Signature& sig) {
  return models(f, sig) == sig.universe();
}

bool is_contradiction(const Formula& f, const Signature& sig) {
  return models(f, sig).empty();
}

bool equivalent(const Formula& a, const Formula& b, const Signature& sig) {
  return models(a, sig) == models(b, sig);
}

bool entails(std::span<const Formula> premises, const Formula& conclusion,
             const Signature& sig) {
  return models(premises, sig).subset_of(models(conclusion, sig));
}

bool is_consistent(std::span<const Formula> fs, const Signature& sig) {
  return !models(fs, sig).empty();
}

bool is_pairwise_consistent(std::span<const Formula> fs) {
  FormulaSet present(fs.begin(), fs.end());
  for (const auto& f : present) {
    if (present.contains(Formula::negation(f))) return false;
  }
  return true;
}

ExcView exc(const Formula& p, const Signature& sig) {
  return ExcView(models(p, sig));
}

bool in_exc(const Formula& q, const Formula& p, const Signature& sig) {
  return exc(p, sig).contains(models(q, sig));
}

// }}}

// {{{ Theory

Theory::Theory(SignatureRef sig, ModelSet models)
    : sig_(std::move(sig)), models_(sig_->canonical(models)) {
  if (!models_.subset_of(sig_->universe())) {
    throw LogicError("model set exceeds the signature's valuations");
  }
}

Theory Theory::closure_of(SignatureRef sig, std::span<const Formula> fs) {
  ModelSet m = latent::models(fs, *sig);
  return Theory(std::move(sig), m);
}

Theory Theory::closure_of(SignatureRef sig, const FormulaSet& fs) {
  ModelSet m = latent::models(fs, *sig);
  return Theory(std::move(sig), m);
}

bool Theory::contains(const Formula& f) const {
  if (sig_->fragment() == Fragment::Monotone && !f.is_negation_free()) {
    throw UnsupportedOperation(
        "membership of a formula with negation in a monotone theory");
  }
  return contains_class(latent::models(f, *sig_));
}

// }}}

}  // namespace latent
