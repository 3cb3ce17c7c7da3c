#include <algorithm>
#include <bit>
#include <limits>

#include "latent/logic.hpp"

namespace latent {

namespace {

// A product term: atoms in `care` are fixed to the matching bit of `value`.
struct Cube {
  std::uint32_t care = 0;
  std::uint32_t value = 0;

  int literals() const { return std::popcount(care); }

  ModelSet cover(const Signature& sig) const {
    ModelSet m;
    for (std::size_t v = 0; v < sig.valuation_count(); ++v) {
      if ((v & care) == value) m.bits |= 1u << v;
    }
    return m;
  }

  // Literal codes in atom order; 2*i for p_i, 2*i+1 for ~p_i.
  std::vector<int> key(std::size_t n) const {
    std::vector<int> k;
    for (std::size_t i = 0; i < n; ++i) {
      if ((care >> i) & 1u) k.push_back(2 * static_cast<int>(i) + (((value >> i) & 1u) ? 0 : 1));
    }
    return k;
  }
};

bool term_less(const Cube& a, const Cube& b, std::size_t n) {
  if (a.literals() != b.literals()) return a.literals() < b.literals();
  return a.key(n) < b.key(n);
}

std::vector<Cube> prime_implicants(ModelSet target, const Signature& sig) {
  const std::size_t n = sig.size();
  const bool monotone = sig.fragment() == Fragment::Monotone;
  std::vector<std::pair<Cube, ModelSet>> implicants;
  // Enumerate every cube (3^n of them) and keep those inside the target.
  const std::uint32_t full = (1u << n) - 1u;
  for (std::uint32_t care = 0; care <= full; ++care) {
    for (std::uint32_t value = care;; value = (value - 1) & care) {
      if (!monotone || value == care) {
        Cube c{care, value};
        ModelSet m = c.cover(sig);
        if (m.subset_of(target)) implicants.emplace_back(c, m);
      }
      if (value == 0) break;
    }
  }
  std::vector<Cube> primes;
  for (const auto& [c, m] : implicants) {
    bool prime = true;
    for (const auto& [d, dm] : implicants) {
      if (dm != m && m.subset_of(dm)) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(c);
  }
  std::sort(primes.begin(), primes.end(),
            [n](const Cube& a, const Cube& b) { return term_less(a, b, n); });
  return primes;
}

struct CoverSearch {
  const std::vector<Cube>& primes;
  const std::vector<ModelSet>& covers;
  std::size_t n;
  std::vector<std::size_t> best;
  int best_literals = std::numeric_limits<int>::max();
  bool found = false;

  int literals(const std::vector<std::size_t>& chosen) const {
    int total = 0;
    for (auto i : chosen) total += primes[i].literals();
    return total;
  }

  // Chosen index lists are kept sorted, so comparing them compares the
  // sorted term sequences.
  bool better(std::vector<std::size_t> chosen) const {
    if (!found) return true;
    if (chosen.size() != best.size()) return chosen.size() < best.size();
    const int lits = literals(chosen);
    if (lits != best_literals) return lits < best_literals;
    std::sort(chosen.begin(), chosen.end());
    return chosen < best;
  }

  void run(ModelSet uncovered, std::vector<std::size_t>& chosen) {
    if (found && chosen.size() > best.size()) return;
    if (uncovered.empty()) {
      if (better(chosen)) {
        best = chosen;
        std::sort(best.begin(), best.end());
        best_literals = literals(best);
        found = true;
      }
      return;
    }
    if (found && chosen.size() == best.size()) return;
    const std::size_t v = static_cast<std::size_t>(std::countr_zero(uncovered.bits));
    for (std::size_t i = 0; i < primes.size(); ++i) {
      if (!covers[i].contains(v)) continue;
      chosen.push_back(i);
      run(uncovered - covers[i], chosen);
      chosen.pop_back();
    }
  }
};

Formula cube_formula(const Cube& c, std::size_t n) {
  std::optional<Formula> f;
  for (std::size_t i = 0; i < n; ++i) {
    if (!((c.care >> i) & 1u)) continue;
    Formula lit = Formula::atom(i);
    if (!((c.value >> i) & 1u)) lit = Formula::negation(lit);
    f = f ? Formula::conjunction(*f, lit) : lit;
  }
  return f ? *f : Formula::top();
}

}  // namespace

Formula representative(ModelSet m, const Signature& sig) {
  if (!sig.is_class(m)) {
    throw LogicError("model set " + sig.model_string(m) +
                     " is not a class of the " +
                     std::string(to_string(sig.fragment())) + " fragment");
  }
  if (m.empty()) return Formula::bottom();
  if (m == sig.universe()) return Formula::top();
  const std::size_t n = sig.size();
  std::vector<Cube> primes = prime_implicants(m, sig);
  std::vector<ModelSet> covers;
  covers.reserve(primes.size());
  for (const auto& p : primes) covers.push_back(p.cover(sig));

  std::vector<std::size_t> chosen;
  if (sig.fragment() == Fragment::Monotone) {
    // The positive primes of a monotone function form its unique minimal DNF.
    for (std::size_t i = 0; i < primes.size(); ++i) chosen.push_back(i);
  } else {
    CoverSearch search{primes, covers, n, {}};
    std::vector<std::size_t> scratch;
    search.run(m, scratch);
    chosen = search.best;
  }
  std::sort(chosen.begin(), chosen.end());
  std::optional<Formula> f;
  for (auto i : chosen) {
    Formula term = cube_formula(primes[i], n);
    f = f ? Formula::disjunction(*f, term) : term;
  }
  return *f;
}

Formula canonical_representative(const Formula& f, const Signature& sig) {
  return representative(sig.canonical(models(f, sig)), sig);
}

std::vector<Formula> enumerate_classes(const Signature& sig) {
  std::vector<Formula> out;
  out.reserve(sig.classes().size());
  for (ModelSet m : sig.classes()) out.push_back(representative(m, sig));
  return out;
}

}  // namespace latent
