#ifndef LATENT_CHANGE_HPP_
#define LATENT_CHANGE_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "latent/belief.hpp"
#include "latent/support.hpp"

namespace latent {

struct FullMeet {
  friend bool operator==(const FullMeet&, const FullMeet&) = default;
};
// Keeps the remainder with the highest model-set encoding.
struct Maxichoice {
  friend bool operator==(const Maxichoice&, const Maxichoice&) = default;
};
struct Seeded {
  std::uint64_t seed = 0;
  friend bool operator==(const Seeded&, const Seeded&) = default;
};
// One remainder index per selection; past the end of the list, index 0.
struct Scripted {
  std::vector<std::size_t> choices;
  friend bool operator==(const Scripted&, const Scripted&) = default;
};

using SelectionStrategy = std::variant<FullMeet, Maxichoice, Seeded, Scripted>;

// full-meet | maxichoice | seeded:<n> | script:<i,j,...>
SelectionStrategy parse_strategy(std::string_view text);
std::string to_string(const SelectionStrategy& s);

// γ with its state: the PRNG stream and the script cursor persist across
// every ÷ of one run.
class Selector {
 public:
  explicit Selector(SelectionStrategy strategy = FullMeet{});

  // Indices of a nonempty subset of `remainders` (which must be nonempty
  // and sorted by mask).
  std::vector<std::size_t> select(const std::vector<ModelSet>& remainders);

  const SelectionStrategy& strategy() const { return strategy_; }
  // |Ξ| at each selection so far.
  const std::vector<std::size_t>& branching() const { return branching_; }

 private:
  SelectionStrategy strategy_;
  std::mt19937_64 rng_;
  std::size_t cursor_ = 0;
  std::vector<std::size_t> branching_;
};

// Ξ(T, G) as model sets in ascending mask order. Empty when G has no
// non-tautological member.
std::vector<ModelSet> remainders(const Theory& t, const FormulaSet& g);

// True when ÷ by G leaves T alone: no non-tautological member is believed.
bool contraction_vacuous(const Theory& t, const FormulaSet& g);

// + and ÷. `extra` quads with a believed head join π2 beside Cond.
BeliefBase internal_expand(const BeliefBase& b, const FormulaSet& g, const QuadSet& extra = {});
BeliefBase internal_contract(const BeliefBase& b, const FormulaSet& g, Selector& selector);

FormulaSet gen_minus(const BeliefBase& b);
FormulaSet gen_plus(const BeliefBase& b);
BeliefBase update_minus(const BeliefBase& b);
// `primaries` without a registered row receive the default support {⊤}.
BeliefBase update_plus(const BeliefBase& b, const FormulaSet& primaries = {});

enum class ChangeOp : std::uint8_t { Contract, Expand };
std::string_view to_string(ChangeOp op);

struct Round {
  ChangeOp op = ChangeOp::Expand;
  FormulaSet gamma;
  BeliefBase stepped;  // B1: after + or ÷
  FormulaSet gen;
  BeliefBase updated;  // B0 for the next round
};

struct ChangeTrace {
  std::vector<Round> rounds;

  void append(const ChangeTrace& other) {
    rounds.insert(rounds.end(), other.rounds.begin(), other.rounds.end());
  }
};

struct ChangeResult {
  BeliefBase base;
  ChangeTrace trace;
};

struct ChangeOptions {
  // Rounds allowed per loop; 0 means the class count plus one.
  std::size_t max_rounds = 0;
  // Fault injection for mutation tests: the Update step is skipped.
  bool skip_update = false;
};

class IterationOverflow : public LogicError {
 public:
  using LogicError::LogicError;
};

// ⊕, ⊖ and ★.
ChangeResult expand_evidence(const BeliefBase& b, const Evidence& e, const ChangeOptions& options = {});
ChangeResult contract_evidence(const BeliefBase& b, const Evidence& e, Selector& selector,
                               const ChangeOptions& options = {});
// Full fragment only.
ChangeResult revise(const BeliefBase& b, const Evidence& e, Selector& selector,
                    const ChangeOptions& options = {});

}  // namespace latent

#endif  // LATENT_CHANGE_HPP_
