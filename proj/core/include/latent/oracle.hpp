#ifndef LATENT_ORACLE_HPP_
#define LATENT_ORACLE_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "latent/change.hpp"

namespace latent {

// Ξ by exhaustive search: the minimal fragment classes above T that
// exclude every non-tautological target. Ascending mask order.
std::vector<ModelSet> brute_remainders(const Theory& t, const FormulaSet& g);

// {{{ Random instances

using Rng = std::mt19937_64;

Formula random_formula(const Signature& sig, std::size_t depth, Rng& rng);
Formula random_literal(const Signature& sig, Rng& rng);
// A base that passes check_axioms, with random I, beliefs and registered rows.
BeliefBase random_base(const SignatureRef& sig, Rng& rng);
// Primaries and quadruples headed by literal primaries; the quadruples are
// also associated in the base's I so Cond sees them.
Evidence random_evidence(BeliefBase& b, Rng& rng);
SelectionStrategy random_strategy(Rng& rng);

// }}}

enum class EvidenceOp : std::uint8_t { Expand, Contract, Revise };
std::string_view to_string(EvidenceOp op);

ChangeResult apply(const BeliefBase& b, const Evidence& e, EvidenceOp op, Selector& selector,
                   const ChangeOptions& options = {});

// The op's output passes all ten axioms.
bool preservation_check(const BeliefBase& b, const Evidence& e, EvidenceOp op, Selector& selector,
                        const ChangeOptions& options = {});

struct BatteryConfig {
  std::size_t count = 200;
  std::uint64_t seed = 1;
  std::size_t atoms = 3;
  ChangeOptions options;
};

struct BatteryReport {
  std::size_t cases = 0;
  std::size_t max_rounds = 0;  // longest single fixpoint loop seen
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

// Theorem 1: ⊕, ⊖ and ★ under every strategy keep random bases belief sets.
BatteryReport preservation_battery(const BatteryConfig& config);
// ÷ postulates: success, inclusion, vacuity, extensionality, internal
// recovery, plus π3 carried over and π2 recomputed.
BatteryReport contraction_battery(const BatteryConfig& config);

// Rounds in the longest contiguous same-op run of a trace.
std::size_t longest_loop(const ChangeTrace& trace);

// {{{ No-recovery witness

struct WitnessRun {
  Scripted script;
  std::vector<std::size_t> branching;
  ChangeResult contracted;
  ChangeResult expanded;
  bool recovered = false;
  // A final model where p3 is false, when not recovered.
  std::optional<std::size_t> counter_model;
};

struct WitnessReport {
  Fragment fragment = Fragment::Monotone;
  BeliefBase base;
  Evidence evidence;
  std::size_t runs = 0;
  std::size_t failing = 0;
  std::optional<WitnessRun> witness;  // first failing run in DFS order
  bool contrast_holds = false;        // (B ÷ {p1}) + {p1} ⊇ B for every choice

  bool universal_failure() const { return runs > 0 && failing == runs; }
};

// The three-atom base with π1 = L({p1, p3}), quadruple p1(p2, p3, 1) and
// rows (p3, {p1}), (p1, {⊤}).
BeliefBase witness_base(Fragment fragment);
// Replays (B ⊖ ({p1}, ∅)) ⊕ ({p1}, ∅) under a script.
WitnessRun replay_witness(const BeliefBase& b, const Scripted& script);
// Enumerates every selection script depth first.
WitnessReport no_recovery_witness(Fragment fragment);

// }}}

}  // namespace latent

#endif  // LATENT_ORACLE_HPP_
