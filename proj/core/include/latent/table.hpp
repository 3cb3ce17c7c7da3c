#ifndef LATENT_TABLE_HPP_
#define LATENT_TABLE_HPP_

#include <map>
#include <optional>

#include "latent/logic.hpp"

namespace latent {

// (P, Γ): the beliefs Γ that sustain P. `registered` marks rows that were
// stated (by a scenario, ρ, or a default for accepted evidence); every other
// row is synthesized from the registered ones.
struct SupportRow {
  Formula subject;
  FormulaSet support;
  bool registered = false;

  friend bool operator==(const SupportRow&, const SupportRow&) = default;
};

// Π, keyed by the subject's model set so there is at most one row per
// L-class.
class SupportTable {
 public:
  using Rows = std::map<ModelSet, SupportRow>;

  const SupportRow* find(ModelSet cls) const;
  bool contains(ModelSet cls) const { return rows_.contains(cls); }
  void set(ModelSet cls, SupportRow row) { rows_.insert_or_assign(cls, std::move(row)); }
  void erase(ModelSet cls) { rows_.erase(cls); }

  const Rows& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }
  Rows::const_iterator begin() const { return rows_.begin(); }
  Rows::const_iterator end() const { return rows_.end(); }

  friend bool operator==(const SupportTable&, const SupportTable&) = default;

 private:
  Rows rows_;
};

inline const SupportRow* SupportTable::find(ModelSet cls) const {
  auto it = rows_.find(cls);
  return it == rows_.end() ? nullptr : &it->second;
}

}  // namespace latent

#endif  // LATENT_TABLE_HPP_
