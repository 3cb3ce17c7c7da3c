#include <cctype>
#include <sstream>

#include "latent/logic.hpp"

namespace latent {

namespace {

// formula := disj ("->" formula)?     (right associative)
// disj    := conj ("|" conj)*
// conj    := neg ("&" neg)*
// neg     := "~" neg | atom | "T" | "F" | "(" formula ")"
class Parser {
 public:
  Parser(std::string_view text, const Signature& sig) : text_(text), sig_(sig) {}

  Formula parse() {
    Formula f = formula();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, pos_);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  bool monotone() const { return sig_.fragment() == Fragment::Monotone; }

  Formula formula() {
    Formula lhs = disj();
    skip_space();
    const std::size_t at = pos_;
    if (accept("->")) {
      if (monotone()) {
        pos_ = at;
        fail("implication is not available in the monotone fragment");
      }
      return Formula::implication(std::move(lhs), formula());
    }
    return lhs;
  }

  Formula disj() {
    Formula f = conj();
    while (true) {
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == '|') {
        ++pos_;
        f = Formula::disjunction(std::move(f), conj());
      } else {
        return f;
      }
    }
  }

  Formula conj() {
    Formula f = neg();
    while (accept("&")) f = Formula::conjunction(std::move(f), neg());
    return f;
  }

  Formula neg() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '~') {
      if (monotone()) fail("negation is not available in the monotone fragment");
      ++pos_;
      return Formula::negation(neg());
    }
    if (c == '(') {
      ++pos_;
      Formula f = formula();
      if (!accept(")")) fail("expected ')'");
      return f;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view name = text_.substr(start, pos_ - start);
      if (name == "T") return Formula::top();
      if (name == "F") return Formula::bottom();
      auto index = sig_.find(name);
      if (!index) {
        pos_ = start;
        fail("unknown atom '" + std::string(name) + "'");
      }
      return Formula::atom(*index);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const Signature& sig_;
  std::size_t pos_ = 0;
};

int precedence(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Or:
      return 1;
    case Formula::Kind::And:
      return 2;
    case Formula::Kind::Not:
      return 3;
    default:
      return 4;
  }
}

void render_to(std::ostream& os, const Formula& f, const Signature& sig);

void render_child(std::ostream& os, const Formula& child, bool parens,
                  const Signature& sig) {
  if (parens) os << '(';
  render_to(os, child, sig);
  if (parens) os << ')';
}

void render_to(std::ostream& os, const Formula& f, const Signature& sig) {
  switch (f.kind()) {
    case Formula::Kind::Top:
      os << 'T';
      return;
    case Formula::Kind::Bottom:
      os << 'F';
      return;
    case Formula::Kind::Atom:
      os << sig.atoms().at(f.atom_index());
      return;
    case Formula::Kind::Not:
      os << '~';
      render_child(os, f.operand(), precedence(f.operand()) < 3, sig);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      const int p = precedence(f);
      // Both connectives associate to the left.
      render_child(os, f.lhs(), precedence(f.lhs()) < p, sig);
      os << (f.kind() == Formula::Kind::And ? " & " : " | ");
      render_child(os, f.rhs(), precedence(f.rhs()) <= p, sig);
      return;
    }
  }
}

}  // namespace

Formula parse_formula(std::string_view text, const Signature& sig) {
  return Parser(text, sig).parse();
}

std::string render(const Formula& f, const Signature& sig) {
  std::ostringstream os;
  render_to(os, f, sig);
  return os.str();
}

std::string render(const FormulaSet& fs, const Signature& sig) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& f : fs) {
    os << (first ? "" : ", ");
    render_to(os, f, sig);
    first = false;
  }
  os << '}';
  return os.str();
}

}  // namespace latent
