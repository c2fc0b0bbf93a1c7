#include "plaus/cond_space.hpp"

#include "plaus/error.hpp"

namespace plaus {

CondPlSpace CondPlSpace::standard(WorldSet worlds, PosetPtr domain,
                                  std::vector<std::vector<Elem>> table, std::string conditioning) {
  CondPlSpace c;
  c.worlds_ = std::move(worlds);
  c.standard_ = true;
  c.domains_.assign(c.worlds_.event_count(), std::move(domain));
  c.table_ = std::move(table);
  c.conditioning_ = std::move(conditioning);
  c.validate();
  return c;
}

CondPlSpace CondPlSpace::per_conditioner(WorldSet worlds, std::vector<PosetPtr> domains,
                                         std::vector<std::vector<Elem>> table,
                                         std::string conditioning) {
  CondPlSpace c;
  c.worlds_ = std::move(worlds);
  c.standard_ = false;
  c.domains_ = std::move(domains);
  c.table_ = std::move(table);
  c.conditioning_ = std::move(conditioning);
  c.validate();
  return c;
}

void CondPlSpace::validate() const {
  const auto m = worlds_.event_count();
  if (domains_.size() != m || table_.size() != m) {
    throw malformed("conditional space needs one member per conditioning event");
  }
  for (std::size_t a = 0; a < m; ++a) {
    if (!domains_[a]) throw malformed("conditional member without a domain");
    const auto& row = table_[a];
    const auto& d = *domains_[a];
    if (row.size() != m) throw malformed("conditional member must rank every event");
    for (Elem e : row) {
      if (e >= d.size()) throw malformed("conditional value outside its domain");
    }
    if (row.front() != d.bottom()) throw malformed("Pl(empty|A) must be bottom");
    const bool degenerate_row = standard_ && row.back() == d.bottom();
    if (!degenerate_row && row.back() != d.top()) {
      throw malformed("Pl(W|A) must be top for conditioner " + worlds_.render(Event(a)));
    }
    if (degenerate_row) {
      for (Elem e : row) {
        if (e != d.bottom()) throw malformed("degenerate conditioner must be all bottom");
      }
    }
  }
}

const Poset& CondPlSpace::shared_domain() const { return *shared_domain_ptr(); }

const PosetPtr& CondPlSpace::shared_domain_ptr() const {
  if (!standard_) {
    throw Error(ErrorKind::not_applicable, "conditional space is not standard");
  }
  return domains_.front();
}

bool CondPlSpace::null_conditioner(Event given) const {
  const Event w = worlds_.full();
  return value(given, w) == domain(w).bottom();
}

bool CondPlSpace::degenerate(Event given) const {
  const auto& row = table_[given.bits()];
  return row.back() == domain(given).bottom();
}

PlSpace CondPlSpace::member(Event given) const {
  if (degenerate(given)) {
    const auto& d = domain(given);
    auto single = std::make_shared<const Poset>(
        Poset({d.label(d.bottom())}, {{0, 0}}, 0, 0));
    return PlSpace(worlds_, std::move(single), std::vector<Elem>(worlds_.event_count(), 0));
  }
  return PlSpace(worlds_, domains_[given.bits()], table_[given.bits()]);
}

}  // namespace plaus
