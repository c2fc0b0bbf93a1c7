#include "plaus/independence.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <tuple>

#include "plaus/axioms.hpp"
#include "plaus/error.hpp"

namespace plaus {

EventFamily::EventFamily(std::vector<Event> events) : events_(std::move(events)) {
  if (events_.empty()) throw malformed("event family must not be empty");
}

EventFamily EventFamily::joined(const EventFamily& other) const {
  auto out = events_;
  for (Event e : other.events_)
    if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
  return EventFamily(std::move(out));
}

bool EventFamily::shares_event(const EventFamily& other) const {
  for (Event e : events_)
    if (std::find(other.events_.begin(), other.events_.end(), e) != other.events_.end())
      return true;
  return false;
}

std::string EventFamily::render(const WorldSet& ws) const {
  std::string out = "[";
  for (std::size_t i = 0; i < events_.size(); ++i) out += (i ? "," : "") + ws.render(events_[i]);
  return out + "]";
}

std::vector<Event> atoms(const WorldSet& ws, const EventFamily& fam) {
  const auto k = fam.size();
  if (k > 6) throw Error(ErrorKind::precondition, "atoms are limited to families of 6 events");
  std::vector<Event> out;
  out.reserve(std::size_t{1} << k);
  for (std::uint32_t pattern = 0; pattern < (1U << k); ++pattern) {
    Event atom = ws.full();
    for (std::size_t i = 0; i < k; ++i) {
      const bool complement = (pattern >> (k - 1 - i)) & 1U;
      const Event e = fam.events()[i];
      atom = atom & (complement ? ws.complement(e) : e);
    }
    out.push_back(atom);
  }
  return out;
}

namespace {

void require_standard(const CondPlSpace& c) {
  if (!c.is_standard()) {
    throw Error(ErrorKind::not_applicable, "independence needs a standard conditional space");
  }
}

bool null_event(const CondPlSpace& c, Event e) { return c.value(e, c.worlds().full()) == c.domain(c.worlds().full()).bottom(); }

}  // namespace

bool ind_s(const CondPlSpace& c, Event a, Event b, Event cond) {
  require_standard(c);
  return null_event(c, b & cond) || c.value(a, cond) == c.value(a, b & cond);
}

bool IND_s(const CondPlSpace& c, const EventFamily& a, const EventFamily& b,
           const EventFamily& cond) {
  const auto& ws = c.worlds();
  const auto xs = atoms(ws, a);
  const auto ys = atoms(ws, b);
  const auto zs = atoms(ws, cond);
  for (Event z : zs)
    for (Event y : ys)
      for (Event x : xs)
        if (!ind_s(c, x, y, z)) return false;
  return true;
}

bool ind_w(const CondPlSpace& c, const EventFamily& a, Event b, Event cond) {
  require_standard(c);
  if (null_event(c, b & cond)) return true;
  const auto& d = c.shared_domain();
  const auto xs = atoms(c.worlds(), a);
  for (Event x : xs)
    for (Event x2 : xs) {
      const bool before = d.leq(c.value(x, cond), c.value(x2, cond));
      const bool after = d.leq(c.value(x, b & cond), c.value(x2, b & cond));
      if (before != after) return false;
    }
  return true;
}

bool IND_w(const CondPlSpace& c, const EventFamily& a, const EventFamily& b,
           const EventFamily& cond) {
  const auto& ws = c.worlds();
  for (Event z : atoms(ws, cond))
    for (Event y : atoms(ws, b))
      if (!ind_w(c, a, y, z)) return false;
  return true;
}

std::string_view to_string(GraphoidRule r) {
  switch (r) {
    case GraphoidRule::symmetry: return "G1";
    case GraphoidRule::decomposition: return "G2";
    case GraphoidRule::weak_union: return "G3";
    case GraphoidRule::contraction: return "G4";
  }
  return "?";
}

namespace {

/// Non-empty atoms, sorted. IND_s only depends on this partition, since
/// empty atoms are vacuous in every position.
using Partition = std::vector<std::uint32_t>;

Partition partition_of(const WorldSet& ws, const EventFamily& fam) {
  Partition out;
  for (Event e : atoms(ws, fam))
    if (!e.empty()) out.push_back(e.bits());
  std::sort(out.begin(), out.end());
  return out;
}

Partition refine(const Partition& a, const Partition& b) {
  Partition out;
  for (auto x : a)
    for (auto y : b)
      if ((x & y) != 0) out.push_back(x & y);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

CheckReport semigraphoid_check(const CondPlSpace& c, const std::vector<EventFamily>& families,
                               const std::vector<GraphoidRule>& which) {
  require_standard(c);
  CheckReport r{"semi-graphoid", Verdict::pass, {}, 0, {}};
  const auto& ws = c.worlds();

  // Group the families by the partition their atoms generate.
  std::vector<Partition> parts;
  std::vector<std::vector<std::size_t>> members;
  {
    std::map<Partition, std::size_t> index;
    for (std::size_t i = 0; i < families.size(); ++i) {
      auto [it, fresh] = index.emplace(partition_of(ws, families[i]), parts.size());
      if (fresh) {
        parts.push_back(it->first);
        members.emplace_back();
      }
      members[it->second].push_back(i);
    }
  }

  // Partitions are interned so memo keys stay small; refinements join the pool.
  std::map<Partition, std::size_t> pool_index;
  std::vector<Partition> pool;
  auto intern = [&](Partition p) {
    auto [it, fresh] = pool_index.emplace(std::move(p), pool.size());
    if (fresh) pool.push_back(it->first);
    return it->second;
  };
  std::vector<std::size_t> part_id;
  for (const auto& p : parts) part_id.push_back(intern(p));
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> refined;
  auto refine_id = [&](std::size_t a, std::size_t b) {
    auto key = std::minmax(a, b);
    auto it = refined.find(key);
    if (it != refined.end()) return it->second;
    const auto id = intern(refine(pool[a], pool[b]));
    refined.emplace(key, id);
    return id;
  };
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, bool> memo;
  auto ind = [&](std::size_t a, std::size_t b, std::size_t cond) {
    auto key = std::make_tuple(a, b, cond);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    bool v = true;
    for (auto z : pool[cond])
      for (auto y : pool[b])
        for (auto x : pool[a])
          if (v && !ind_s(c, Event(x), Event(y), Event(z))) v = false;
    memo.emplace(key, v);
    return v;
  };

  // A violation counts once some pairwise event-disjoint choice of families
  // realizes the class tuple.
  auto realize = [&](const std::vector<std::size_t>& classes) -> std::optional<std::vector<std::size_t>> {
    std::vector<std::size_t> pick;
    std::function<bool(std::size_t)> go = [&](std::size_t k) {
      if (k == classes.size()) return true;
      for (std::size_t f : members[classes[k]]) {
        bool ok = true;
        for (std::size_t g : pick) ok = ok && f != g && !families[f].shares_event(families[g]);
        if (!ok) continue;
        pick.push_back(f);
        if (go(k + 1)) return true;
        pick.pop_back();
      }
      return false;
    };
    if (go(0)) return pick;
    return std::nullopt;
  };
  auto fail = [&](GraphoidRule rule, const std::vector<std::size_t>& classes) {
    auto pick = realize(classes);
    if (!pick) return false;
    r.verdict = Verdict::fail;
    Witness w;
    const char* roles[] = {"A", "B", "C", "D"};
    for (std::size_t k = 0; k < pick->size(); ++k)
      w.terms.push_back({roles[k], std::nullopt, families[(*pick)[k]].render(ws), ""});
    w.note = std::string(to_string(rule));
    r.witnesses.push_back(std::move(w));
    return true;
  };
  auto wants = [&](GraphoidRule rule) {
    return std::find(which.begin(), which.end(), rule) != which.end();
  };
  const bool quadruples = wants(GraphoidRule::decomposition) || wants(GraphoidRule::weak_union) ||
                          wants(GraphoidRule::contraction);
  const auto n = parts.size();
  for (std::size_t ia = 0; ia < n; ++ia)
    for (std::size_t ib = 0; ib < n; ++ib)
      for (std::size_t ic = 0; ic < n; ++ic) {
        const auto A = part_id[ia];
        const auto B = part_id[ib];
        const auto C = part_id[ic];
        if (wants(GraphoidRule::symmetry)) {
          ++r.search_space;
          if (ind(A, B, C) && !ind(B, A, C) && fail(GraphoidRule::symmetry, {ia, ib, ic})) return r;
        }
        if (!quadruples) continue;
        for (std::size_t id = 0; id < n; ++id) {
          const auto D = part_id[id];
          const auto BD = refine_id(B, D);
          ++r.search_space;
          const bool whole = ind(A, BD, C);
          if (wants(GraphoidRule::decomposition) && whole && !ind(A, B, C) &&
              fail(GraphoidRule::decomposition, {ia, ib, ic, id}))
            return r;
          if (wants(GraphoidRule::weak_union) && whole && !ind(A, B, refine_id(C, D)) &&
              fail(GraphoidRule::weak_union, {ia, ib, ic, id}))
            return r;
          if (wants(GraphoidRule::contraction) && !whole && ind(A, B, C) &&
              ind(A, D, refine_id(C, B)) && fail(GraphoidRule::contraction, {ia, ib, ic, id}))
            return r;
        }
      }
  return r;
}

namespace {

WitnessTerm term(const CondPlSpace& c, const char* role, Event e) {
  return WitnessTerm{role, e, c.worlds().render(e), ""};
}

PartialOpTable product_table(const CondPlSpace& c) {
  PartialOpTable table(c.shared_domain_ptr());
  const auto m = static_cast<std::uint32_t>(c.worlds().event_count());
  for (std::uint32_t a = 0; a < m; ++a)
    for (std::uint32_t b = 0; b < m; ++b)
      for (std::uint32_t g = 0; g < m; ++g)
        table.define(c.value(Event(a), Event(b & g)), c.value(Event(b), Event(g)),
                     c.value(Event(a & b), Event(g)));
  return table;
}

}  // namespace

std::vector<CheckReport> check_independence_factorization(const CondPlSpace& c) {
  CheckReport product{"ind-product", Verdict::pass, {}, 0, {}};
  CheckReport characterized{"ind-product-iff", Verdict::pass, {}, 0, {}};
  CheckReport unions{"ind-disjoint-union", Verdict::pass, {}, 0, {}};
  const auto& ws = c.worlds();
  const auto m = static_cast<std::uint32_t>(ws.event_count());
  const auto full = m - 1;

  const bool c2 = c.is_standard() && check_C2(c, false).passed();
  const bool c3 = c2 && check_C3(c, false).passed();
  if (!c2) {
    product.verdict = characterized.verdict = Verdict::not_applicable;
    product.detail = characterized.detail = "C2= fails";
  } else {
    if (!c3) {
      characterized.verdict = Verdict::not_applicable;
      characterized.detail = "C3= fails";
    }
    const auto otimes = product_table(c);
    for (std::uint32_t g = 0; g < m; ++g)
      for (std::uint32_t b = 0; b < m; ++b) {
        const Event B(b), C(g);
        // With Pl(B & C) = bottom the pair (Pl(A|C), Pl(B|C)) lies outside
        // the product's domain, so the clauses only speak about the rest.
        if (null_event(c, B & C)) continue;
        for (std::uint32_t a = 0; a < m; ++a) {
          const Event A(a);
          const bool independent = ind_s(c, A, B, C);
          const auto prod = otimes.apply(c.value(A, C), c.value(B, C));
          const bool factors = prod && *prod == c.value(A & B, C);
          ++product.search_space;
          if (product.passed() && independent && !factors) {
            product.verdict = Verdict::fail;
            product.witnesses.push_back(
                Witness{{term(c, "A", A), term(c, "B", B), term(c, "C", C)},
                        "independent but Pl(A&B|C) != Pl(A|C) x Pl(B|C)"});
          }
          if (!c3) continue;
          ++characterized.search_space;
          if (characterized.passed() && independent != factors) {
            characterized.verdict = Verdict::fail;
            characterized.witnesses.push_back(
                Witness{{term(c, "A", A), term(c, "B", B), term(c, "C", C)},
                        independent ? "independent without product form"
                                    : "product form without independence"});
          }
        }
      }
  }

  if (!c.is_standard() || !check_decomp_c(c, DecompScope::global, false).passed()) {
    unions.verdict = Verdict::not_applicable;
    unions.detail = "DECOMP_c= fails";
  } else {
    for (std::uint32_t a1 = 0; a1 < m && unions.passed(); ++a1) {
      const std::uint32_t rest = full & ~a1;
      for (std::uint32_t a2 = 0; unions.passed(); a2 = (a2 - rest) & rest) {
        for (std::uint32_t b = 0; b < m && unions.passed(); ++b)
          for (std::uint32_t g = 0; g < m; ++g) {
            const Event A1(a1), A2(a2), B(b), C(g);
            ++unions.search_space;
            if (ind_s(c, A1, B, C) && ind_s(c, A2, B, C) && !ind_s(c, A1 | A2, B, C)) {
              unions.verdict = Verdict::fail;
              unions.witnesses.push_back(Witness{
                  {term(c, "A1", A1), term(c, "A2", A2), term(c, "B", B), term(c, "C", C)},
                  "A1 and A2 independent of B given C, their union is not"});
              break;
            }
          }
        if (a2 == rest) break;
      }
    }
  }
  return {product, characterized, unions};
}

CheckReport check_independence_symmetry(const CondPlSpace& c) {
  CheckReport r{"ind-symmetry", Verdict::pass, {}, 0, {}};
  if (!c.is_standard()) {
    r.verdict = Verdict::not_applicable;
    r.detail = "space is not standard";
    return r;
  }
  if (!check_C2(c, false).passed()) {
    r.verdict = Verdict::not_applicable;
    r.detail = "C2= fails";
  } else if (!check_C4eq(c).passed()) {
    r.verdict = Verdict::not_applicable;
    r.detail = "C4= fails";
  }
  const auto m = static_cast<std::uint32_t>(c.worlds().event_count());
  for (std::uint32_t g = 0; g < m; ++g)
    for (std::uint32_t a = 0; a < m; ++a)
      for (std::uint32_t b = 0; b < m; ++b) {
        const Event A(a), B(b), C(g);
        ++r.search_space;
        if (ind_s(c, A, B, C) != ind_s(c, B, A, C)) {
          if (r.verdict == Verdict::pass) r.verdict = Verdict::fail;
          const auto& d = c.shared_domain();
          r.witnesses.push_back(Witness{
              {term(c, "A", A), term(c, "B", B), term(c, "C", C),
               WitnessTerm{"A|C", std::nullopt, {}, d.label(c.value(A, C))},
               WitnessTerm{"A|B,C", std::nullopt, {}, d.label(c.value(A, B & C))},
               WitnessTerm{"B|C", std::nullopt, {}, d.label(c.value(B, C))},
               WitnessTerm{"B|A,C", std::nullopt, {}, d.label(c.value(B, A & C))}},
              ind_s(c, A, B, C) ? "A independent of B given C, not conversely"
                                : "B independent of A given C, not conversely"});
          return r;
        }
      }
  return r;
}

}  // namespace plaus
