#pragma once

#include <algorithm>
#include <bit>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "plaus/cond_space.hpp"
#include "plaus/conditional.hpp"
#include "plaus/defaults.hpp"
#include "plaus/independence.hpp"
#include "plaus/space.hpp"

namespace testing_support {

using namespace plaus;

/// Possibility weights (1/4, 1/2, 3/4, 1).
inline PlSpace fix_a() {
  return from_possibility(WorldSet::numbered(4),
                          {Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)});
}

/// Vacuous belief on {a,b,c}.
inline PlSpace fix_b() {
  const WorldSet ws({"a", "b", "c"});
  return from_belief(ws, MassFunction{{{ws.full(), Rational(1)}}});
}

/// Uniform probability on four worlds.
inline PlSpace fix_c() {
  return from_probability(WorldSet::numbered(4), std::vector<Rational>(4, Rational(1, 4)));
}

/// a preferred to b preferred to c.
inline PlSpace fix_e() {
  return from_preference(WorldSet({"a", "b", "c"}), {{0, 1}, {1, 2}, {0, 2}});
}

inline PlSpace kappa_fixture() { return from_kappa(WorldSet::numbered(3), {0, 1, 2}); }

inline Event ev(const PlSpace& s, const char* text) { return s.worlds().parse(text); }

// Random generators ---------------------------------------------------------

using Rng = std::mt19937_64;

inline std::vector<Rational> random_distribution(std::size_t n, Rng& rng, bool allow_zero = true) {
  std::vector<long> raw(n);
  long total = 0;
  do {
    total = 0;
    for (auto& r : raw) {
      r = static_cast<long>(rng() % 5) + (allow_zero ? 0 : 1);
      total += r;
    }
  } while (total == 0);
  std::vector<Rational> out;
  for (long r : raw) out.emplace_back(r, total);
  return out;
}

inline PlSpace random_probability(std::size_t n, Rng& rng) {
  return from_probability(WorldSet::numbered(n), random_distribution(n, rng));
}

inline PlSpace random_possibility(std::size_t n, Rng& rng) {
  std::vector<Rational> w(n);
  for (auto& x : w) x = Rational(static_cast<long>(rng() % 5), 4);
  w[rng() % n] = Rational(1);
  return from_possibility(WorldSet::numbered(n), w);
}

inline PlSpace random_kappa(std::size_t n, Rng& rng) {
  std::vector<Rank> r(n);
  for (auto& x : r) x = rng() % 4 == 0 ? kInfinity : static_cast<Rank>(rng() % 3);
  r[rng() % n] = 0;
  return from_kappa(WorldSet::numbered(n), r);
}

inline PlSpace random_belief(std::size_t n, Rng& rng) {
  const auto ws = WorldSet::numbered(n);
  const auto m = static_cast<std::uint32_t>(ws.event_count());
  std::vector<std::uint32_t> focal;
  const std::size_t k = std::min<std::size_t>(1 + rng() % 3, m - 1);
  while (focal.size() < k) {
    const std::uint32_t e = 1 + static_cast<std::uint32_t>(rng() % (m - 1));
    if (std::find(focal.begin(), focal.end(), e) == focal.end()) focal.push_back(e);
  }
  const auto weights = random_distribution(k, rng, false);
  MassFunction mf;
  for (std::size_t i = 0; i < k; ++i) mf.masses.emplace_back(Event(focal[i]), weights[i]);
  return from_belief(ws, mf);
}

/// Random monotone scores, so any total preorder respecting A1 can come out.
inline PlSpace random_qualitative(std::size_t n, Rng& rng, long levels = 4) {
  const auto ws = WorldSet::numbered(n);
  const auto m = ws.event_count();
  std::vector<long> score(m, 0);
  for (std::size_t a = 1; a < m; ++a) score[a] = static_cast<long>(rng() % levels);
  for (std::uint32_t a = 1; a < m; ++a)
    for (std::size_t w = 0; w < n; ++w)
      if ((a >> w) & 1U) score[a] = std::max(score[a], score[a & ~(1U << w)]);
  score[m - 1] = levels;
  return from_qualitative(ws, score);
}

/// A1 assignment into a random pointed poset on `size` elements.
inline PlSpace random_poset_space(std::size_t n, std::size_t size, Rng& rng) {
  const auto ws = WorldSet::numbered(n);
  const auto m = ws.event_count();
  // Random order among the middle elements: i < j only if i < j as indices.
  std::vector<std::pair<Elem, Elem>> pairs;
  for (Elem i = 1; i + 1 < size; ++i) {
    pairs.emplace_back(0, i);
    pairs.emplace_back(i, static_cast<Elem>(size - 1));
    for (Elem j = i + 1; j + 1 < size; ++j)
      if (rng() % 2) pairs.emplace_back(i, j);
  }
  pairs.emplace_back(0, static_cast<Elem>(size - 1));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < size; ++i) labels.push_back("e" + std::to_string(i));
  auto p = std::make_shared<const Poset>(
      Poset::closure_of(labels, pairs, 0, static_cast<Elem>(size - 1)));
  // Assign bottom-up by cardinality; each event gets a random upper bound of
  // its maximal proper subsets.
  std::vector<Elem> assign(m, 0);
  for (int card = 1; card <= static_cast<int>(n); ++card)
    for (std::uint32_t a = 1; a < m; ++a) {
      if (std::popcount(a) != card) continue;
      if (a == m - 1) {
        assign[a] = static_cast<Elem>(size - 1);
        continue;
      }
      std::vector<Elem> candidates;
      for (Elem e = 0; e < size; ++e) {
        bool ok = true;
        for (std::size_t w = 0; w < n && ok; ++w)
          if ((a >> w) & 1U) ok = p->leq(assign[a & ~(1U << w)], e);
        if (ok) candidates.push_back(e);
      }
      assign[a] = candidates[rng() % candidates.size()];
    }
  return PlSpace(ws, p, assign);
}

/// Standard conditional space over the chain of all values produced by
/// `value(b, given)`, which must return 0 for every b when given is null.
template <typename Fn>
CondPlSpace numeric_conditional(const WorldSet& ws, Fn&& value, std::string name) {
  const auto m = ws.event_count();
  std::vector<std::vector<Rational>> raw(m, std::vector<Rational>(m));
  std::vector<Rational> all;
  for (std::uint32_t g = 0; g < m; ++g)
    for (std::uint32_t b = 0; b < m; ++b) {
      raw[g][b] = value(Event(b), Event(g));
      all.push_back(raw[g][b]);
    }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  std::vector<std::string> labels;
  for (const auto& v : all) labels.push_back(format_rational(v));
  auto domain = std::make_shared<const Poset>(Poset::chain(labels));
  std::vector<std::vector<Elem>> table(m, std::vector<Elem>(m));
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t b = 0; b < m; ++b)
      table[g][b] = static_cast<Elem>(std::lower_bound(all.begin(), all.end(), raw[g][b]) -
                                      all.begin());
  return CondPlSpace::standard(ws, domain, std::move(table), std::move(name));
}

/// Min-conditioning on conditioners of even size, division otherwise.
inline CondPlSpace hybrid_min_div(const PlSpace& s) {
  return numeric_conditional(
      s.worlds(),
      [&](Event b, Event g) {
        const Rational pg = rational_value(s, g);
        const Rational pbg = rational_value(s, b & g);
        if (pg == Rational(0)) return Rational(0);
        if (g.count() % 2 == 0) return pbg == pg ? Rational(1) : pbg;
        return pbg / pg;
      },
      "hybrid");
}

struct NamedCond {
  std::string name;
  CondPlSpace space;
};

/// Standard conditional spaces over 1..4 worlds: the fixtures, textbook
/// conditioning of random numeric spaces, algebraic extensions and the
/// min/div hybrid.
inline std::vector<NamedCond> conditional_zoo(Rng& rng, int per_size) {
  std::vector<NamedCond> out;
  out.push_back({"fix-a min", condition_standard(fix_a(), ConditioningKind::possibility_min)});
  out.push_back({"fix-a div", condition_standard(fix_a(), ConditioningKind::possibility_div)});
  out.push_back({"fix-c prob", condition_standard(fix_c(), ConditioningKind::probability)});
  out.push_back({"kappa", condition_standard(kappa_fixture(), ConditioningKind::kappa)});
  out.push_back({"fix-a hybrid", hybrid_min_div(fix_a())});
  out.push_back({"fix-c algebraic", algebraic_extension(fix_c()).space});
  out.push_back({"fix-a algebraic", algebraic_extension(fix_a()).space});
  for (std::size_t n = 1; n <= 4; ++n)
    for (int t = 0; t < per_size; ++t) {
      const auto pr = random_probability(n, rng);
      const auto po = random_possibility(n, rng);
      const auto ka = random_kappa(n, rng);
      out.push_back({"prob", condition_standard(pr, ConditioningKind::probability)});
      out.push_back({"kappa", condition_standard(ka, ConditioningKind::kappa)});
      out.push_back({"min", condition_standard(po, ConditioningKind::possibility_min)});
      out.push_back({"div", condition_standard(po, ConditioningKind::possibility_div)});
      out.push_back({"hybrid", hybrid_min_div(po)});
      out.push_back({"algebraic prob", algebraic_extension(pr).space});
      out.push_back({"algebraic poss", algebraic_extension(po).space});
      out.push_back({"algebraic kappa", algebraic_extension(ka).space});
      out.push_back({"algebraic qual", algebraic_extension(random_qualitative(n, rng)).space});
    }
  return out;
}

/// Every family of one or two events over ws.
inline std::vector<EventFamily> small_families(const WorldSet& ws) {
  std::vector<EventFamily> out;
  const auto m = static_cast<std::uint32_t>(ws.event_count());
  for (std::uint32_t a = 0; a < m; ++a) {
    out.emplace_back(std::vector<Event>{Event(a)});
    for (std::uint32_t b = 0; b < m; ++b)
      if (a != b) out.emplace_back(std::vector<Event>{Event(a), Event(b)});
  }
  return out;
}

/// Every strict partial order on n labeled worlds as (better, worse) pairs.
inline std::vector<std::vector<std::pair<std::size_t, std::size_t>>> strict_partial_orders(
    std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (u != v) slots.emplace_back(u, v);
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out;
  for (std::uint32_t mask = 0; mask < (1U << slots.size()); ++mask) {
    std::vector<std::uint32_t> below(n, 0);  // below[u]: worlds u is better than
    for (std::size_t k = 0; k < slots.size(); ++k)
      if ((mask >> k) & 1U) below[slots[k].first] |= 1U << slots[k].second;
    bool ok = true;
    for (std::size_t u = 0; u < n && ok; ++u) {
      if ((below[u] >> u) & 1U) ok = false;
      for (std::size_t v = 0; v < n && ok; ++v)
        if ((below[u] >> v) & 1U) ok = (below[v] & ~below[u]) == 0;
    }
    if (!ok) continue;
    std::vector<std::pair<std::size_t, std::size_t>> rel;
    for (std::size_t k = 0; k < slots.size(); ++k)
      if ((mask >> k) & 1U) rel.push_back(slots[k]);
    out.push_back(std::move(rel));
  }
  return out;
}

/// Every pointed poset with at most four elements, up to isomorphism.
inline std::vector<PosetPtr> small_posets() {
  return {
      std::make_shared<const Poset>(Poset::chain({"0", "1"})),
      std::make_shared<const Poset>(Poset::chain({"0", "a", "1"})),
      std::make_shared<const Poset>(Poset::chain({"0", "a", "b", "1"})),
      std::make_shared<const Poset>(
          Poset::closure_of({"0", "a", "b", "1"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}, 0, 3)),
  };
}

/// Calls fn(pl) for every assignment of poset elements to n worlds.
template <typename Fn>
void for_each_assignment(std::size_t n, std::size_t size, Fn&& fn) {
  std::vector<Elem> pl(n, 0);
  for (;;) {
    fn(pl);
    std::size_t i = 0;
    while (i < n && ++pl[i] == size) pl[i++] = 0;
    if (i == n) return;
  }
}

/// Strictly increasing random levels along a random linear extension of p,
/// with level 0 for bottom.
inline std::vector<long> random_levels(const Poset& p, Rng& rng) {
  const auto n = p.size();
  std::vector<Elem> order;
  std::vector<char> placed(n, 0);
  while (order.size() < n) {
    std::vector<Elem> ready;
    for (Elem e = 0; e < n; ++e) {
      if (placed[e]) continue;
      bool ok = true;
      for (Elem f = 0; f < n && ok; ++f) ok = placed[f] || f == e || !p.lt(f, e);
      if (ok) ready.push_back(e);
    }
    const Elem pick = ready[rng() % ready.size()];
    placed[pick] = 1;
    order.push_back(pick);
  }
  std::vector<long> level(n, 0);
  long current = 0;
  for (Elem e : order) {
    if (e == p.bottom()) continue;
    current += 1 + static_cast<long>(rng() % 3);
    level[e] = current;
  }
  return level;
}


// Shared by the unit tests and the acceptance run ----------------------

inline Rational sum_of(const std::vector<Rational>& xs) {
  Rational t = 0;
  for (const auto& x : xs) t += x;
  return t;
}

/// Probability weights ordered like pl, or nullopt if no such measure
/// keeps bottom worlds at 0 and top worlds at 1.
inline std::optional<std::vector<Rational>> compatible_probability(const Poset& p,
                                                            const std::vector<Elem>& pl,
                                                            Rng& rng) {
  std::size_t tops = 0, nonbottom = 0;
  for (Elem e : pl) {
    tops += e == p.top() ? 1 : 0;
    nonbottom += e != p.bottom() ? 1 : 0;
  }
  if (nonbottom == 0 || tops > 1 || (tops == 1 && nonbottom > 1)) return std::nullopt;
  const auto level = random_levels(p, rng);
  std::vector<Rational> w;
  for (Elem e : pl) w.emplace_back(level[e]);
  const Rational total = sum_of(w);
  for (auto& x : w) x /= total;
  return w;
}

inline std::optional<std::vector<Rational>> compatible_possibility(const Poset& p,
                                                            const std::vector<Elem>& pl,
                                                            Rng& rng) {
  long best = 0;
  const auto level = random_levels(p, rng);
  for (Elem e : pl) best = std::max(best, level[e]);
  if (best == 0) return std::nullopt;
  std::vector<Rational> w;
  for (Elem e : pl) w.emplace_back(level[e], best);
  return w;
}

inline bool all_bottom(const Poset& p, const std::vector<Elem>& pl) {
  return std::all_of(pl.begin(), pl.end(), [&](Elem e) { return e == p.bottom(); });
}

/// Formulas with at most two connectives over the first k atoms.
inline std::vector<Formula> small_formulas(std::size_t k) {
  std::vector<Formula> f0{Formula::constant(true), Formula::constant(false)};
  for (std::size_t i = 0; i < k; ++i) f0.push_back(Formula::atom(i));
  auto grow = [](const std::vector<Formula>& xs, const std::vector<Formula>& ys,
                 std::vector<Formula>& out) {
    for (const auto& x : xs)
      for (const auto& y : ys) {
        out.push_back(x & y);
        out.push_back(x | y);
        out.push_back(x.implies(y));
      }
  };
  std::vector<Formula> f1;
  for (const auto& x : f0) f1.push_back(!x);
  grow(f0, f0, f1);
  std::vector<Formula> out = f0;
  out.insert(out.end(), f1.begin(), f1.end());
  for (const auto& x : f1) out.push_back(!x);
  grow(f0, f1, out);
  grow(f1, f0, out);
  return out;
}

/// A -> B holds iff every most preferred world of A lies in B.
inline bool minimal_world_oracle(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& rel,
                          std::uint32_t a, std::uint32_t b) {
  for (std::size_t w = 0; w < n; ++w) {
    if (!((a >> w) & 1U)) continue;
    bool minimal = true;
    for (auto [u, v] : rel)
      if (v == w && ((a >> u) & 1U)) minimal = false;
    if (minimal && !((b >> w) & 1U)) return false;
  }
  return true;
}

/// One family per distinct (atom partition, has empty atom) key. IND_s and
/// IND_w only depend on that key, so these cover every family.
inline std::vector<EventFamily> family_representatives(const WorldSet& ws) {
  std::map<std::pair<std::vector<std::uint32_t>, bool>, EventFamily> reps;
  for (const auto& f : small_families(ws)) {
    std::vector<std::uint32_t> part;
    bool empty = false;
    for (Event a : atoms(ws, f)) {
      if (a.empty()) {
        empty = true;
      } else {
        part.push_back(a.bits());
      }
    }
    std::sort(part.begin(), part.end());
    reps.emplace(std::make_pair(part, empty), f);
  }
  std::vector<EventFamily> out;
  for (auto& [key, f] : reps) out.push_back(f);
  return out;
}

// Brute-force oracles, written straight from the axiom statements --------

inline bool oracle_A1(const PlSpace& s) {
  const auto m = static_cast<std::uint32_t>(s.worlds().event_count());
  for (std::uint32_t a = 0; a < m; ++a)
    for (std::uint32_t b = 0; b < m; ++b)
      if ((a & ~b) == 0 && !s.leq(Event(a), Event(b))) return false;
  return true;
}

inline bool oracle_decomp(const PlSpace& s, bool strict) {
  const auto m = static_cast<std::uint32_t>(s.worlds().event_count());
  const auto& d = s.domain();
  auto rel = [&](Elem x, Elem y) { return strict ? d.leq(x, y) : x == y; };
  for (std::uint32_t a = 0; a < m; ++a)
    for (std::uint32_t b = 0; b < m; ++b) {
      if (a & b) continue;
      for (std::uint32_t a2 = 0; a2 < m; ++a2)
        for (std::uint32_t b2 = 0; b2 < m; ++b2) {
          if (a2 & b2) continue;
          if (rel(s(Event(a)), s(Event(a2))) && rel(s(Event(b)), s(Event(b2))) &&
              !rel(s(Event(a | b)), s(Event(a2 | b2))))
            return false;
        }
    }
  return true;
}

inline bool oracle_A2(const PlSpace& s) {
  const auto m = static_cast<std::uint32_t>(s.worlds().event_count());
  for (std::uint32_t a = 0; a < m; ++a)
    for (std::uint32_t b = 0; b < m; ++b)
      for (std::uint32_t c = 0; c < m; ++c) {
        if ((a & b) || (a & c) || (b & c)) continue;
        const Event A(a), B(b), C(c);
        if (s.lt(C, A | B) && s.lt(B, A | C) && !s.lt(B | C, A)) return false;
      }
  return true;
}

inline bool oracle_A3(const PlSpace& s) {
  const auto m = static_cast<std::uint32_t>(s.worlds().event_count());
  for (std::uint32_t a = 0; a < m; ++a)
    for (std::uint32_t b = 0; b < m; ++b)
      if (s.is_bottom(Event(a)) && s.is_bottom(Event(b)) && !s.is_bottom(Event(a | b))) return false;
  return true;
}

/// C2 (strict) or C2= straight from the statement, for standard spaces.
inline bool oracle_C2(const CondPlSpace& c, bool strict) {
  const auto m = static_cast<std::uint32_t>(c.worlds().event_count());
  const auto& d = c.shared_domain();
  auto rel = [&](Elem x, Elem y) { return strict ? d.leq(x, y) : x == y; };
  for (std::uint32_t a = 0; a < m; ++a)
    for (std::uint32_t b = 0; b < m; ++b)
      for (std::uint32_t g = 0; g < m; ++g)
        for (std::uint32_t a2 = 0; a2 < m; ++a2)
          for (std::uint32_t b2 = 0; b2 < m; ++b2)
            for (std::uint32_t g2 = 0; g2 < m; ++g2) {
              const Event A(a), B(b), C(g), A2(a2), B2(b2), C2(g2);
              if (rel(c.value(A, B & C), c.value(A2, B2 & C2)) && rel(c.value(B, C), c.value(B2, C2)) &&
                  !rel(c.value(A & B, C), c.value(A2 & B2, C2)))
                return false;
            }
  return true;
}

inline bool oracle_C3(const CondPlSpace& c, bool strict) {
  const auto m = static_cast<std::uint32_t>(c.worlds().event_count());
  const auto& d = c.shared_domain();
  auto rel = [&](Elem x, Elem y) { return strict ? d.leq(x, y) : x == y; };
  for (std::uint32_t a = 0; a < m; ++a)
    for (std::uint32_t b = 0; b < m; ++b)
      for (std::uint32_t g = 0; g < m; ++g)
        for (std::uint32_t a2 = 0; a2 < m; ++a2)
          for (std::uint32_t b2 = 0; b2 < m; ++b2)
            for (std::uint32_t g2 = 0; g2 < m; ++g2) {
              const Event A(a), B(b), C(g), A2(a2), B2(b2), C2(g2);
              if (rel(c.value(A & B, C), c.value(A2 & B2, C2)) && rel(c.value(B2, C2), c.value(B, C)) &&
                  c.value(B2, C2) != d.bottom() && !rel(c.value(A, B & C), c.value(A2, B2 & C2)))
                return false;
            }
  return true;
}

/// The symmetric inversion law: Pl(A&B|C) = Pl(A'&B'|C') and
/// Pl(A|C) = Pl(A'|B',C') > bottom imply Pl(B|A,C) = Pl(B'|C').
inline bool oracle_C4(const CondPlSpace& c) {
  const auto m = static_cast<std::uint32_t>(c.worlds().event_count());
  const auto bot = c.shared_domain().bottom();
  for (std::uint32_t a = 0; a < m; ++a)
    for (std::uint32_t b = 0; b < m; ++b)
      for (std::uint32_t g = 0; g < m; ++g)
        for (std::uint32_t a2 = 0; a2 < m; ++a2)
          for (std::uint32_t b2 = 0; b2 < m; ++b2)
            for (std::uint32_t g2 = 0; g2 < m; ++g2) {
              const Event A(a), B(b), C(g), A2(a2), B2(b2), C2(g2);
              if (c.value(A & B, C) == c.value(A2 & B2, C2) && c.value(A, C) == c.value(A2, B2 & C2) &&
                  c.value(A, C) != bot && c.value(B, A & C) != c.value(B2, C2))
                return false;
            }
  return true;
}

}  // namespace testing_support
