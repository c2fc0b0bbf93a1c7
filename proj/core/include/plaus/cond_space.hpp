#pragma once

#include <string>
#include <vector>

#include "plaus/event.hpp"
#include "plaus/poset.hpp"
#include "plaus/space.hpp"

namespace plaus {

/// Family of plausibility spaces indexed by conditioning event:
/// value(b, a) is Pl(b | a). In a standard space every conditioner shares
/// one domain and null conditioners map every event to its bottom.
class CondPlSpace {
 public:
  /// Standard space over a shared domain; table[a][b] = Pl(b|a).
  static CondPlSpace standard(WorldSet worlds, PosetPtr domain,
                              std::vector<std::vector<Elem>> table, std::string conditioning);
  /// One private domain per conditioner; values across conditioners are
  /// not comparable.
  static CondPlSpace per_conditioner(WorldSet worlds, std::vector<PosetPtr> domains,
                                     std::vector<std::vector<Elem>> table,
                                     std::string conditioning);

  const WorldSet& worlds() const { return worlds_; }
  bool is_standard() const { return standard_; }
  const std::string& conditioning() const { return conditioning_; }

  /// Pl(b | given).
  Elem value(Event b, Event given) const { return table_[given.bits()][b.bits()]; }
  const Poset& domain(Event given) const { return *domains_[given.bits()]; }
  const PosetPtr& domain_ptr(Event given) const { return domains_[given.bits()]; }
  /// Throws not-applicable for non-standard spaces.
  const Poset& shared_domain() const;
  const PosetPtr& shared_domain_ptr() const;

  const std::string& label(Event b, Event given) const {
    return domain(given).label(value(b, given));
  }

  /// Pl(given) is bottom in the unconditional layer.
  bool null_conditioner(Event given) const;
  bool degenerate(Event given) const;

  /// The member space Pl_given. Degenerate standard members come back over
  /// a one-element domain.
  PlSpace member(Event given) const;
  PlSpace unconditional() const { return member(worlds_.full()); }

  const std::vector<std::vector<Elem>>& table() const { return table_; }

 private:
  void validate() const;

  WorldSet worlds_;
  bool standard_ = true;
  std::vector<PosetPtr> domains_;
  std::vector<std::vector<Elem>> table_;
  std::string conditioning_;
};

}  // namespace plaus
