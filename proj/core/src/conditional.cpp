#include "plaus/conditional.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "plaus/axioms.hpp"
#include "plaus/error.hpp"

namespace plaus {

std::string_view to_string(ConditioningKind k) {
  switch (k) {
    case ConditioningKind::probability: return "prob";
    case ConditioningKind::kappa: return "kappa";
    case ConditioningKind::possibility_min: return "min";
    case ConditioningKind::possibility_div: return "div";
  }
  return "?";
}

namespace {

// Infinite rank, placed below every finite rank in the plausibility order.
const Rational kInfinityKey(-(std::int64_t{1} << 40));

Rational kappa_key(Rank r) { return r == kInfinity ? kInfinityKey : -Rational(r); }

std::string key_label(const Rational& key, bool kappa) {
  if (!kappa) return format_rational(key);
  if (key == kInfinityKey) return format_rank(kInfinity);
  return format_rank(static_cast<Rank>((-key).numerator()));
}

}  // namespace

CondPlSpace condition_standard(const PlSpace& s, ConditioningKind kind) {
  const bool want_possibility =
      kind == ConditioningKind::possibility_min || kind == ConditioningKind::possibility_div;
  const bool ok = (kind == ConditioningKind::probability && s.kind() == MeasureKind::probability) ||
                  (kind == ConditioningKind::kappa && s.kind() == MeasureKind::kappa) ||
                  (want_possibility && s.kind() == MeasureKind::possibility);
  if (!ok) {
    throw malformed(std::string(to_string(kind)) + " conditioning does not apply to a " +
                    std::string(to_string(s.kind())) + " space");
  }
  const bool kappa = kind == ConditioningKind::kappa;
  const auto& ws = s.worlds();
  const auto m = ws.event_count();
  std::vector<Rational> base(m);
  for (std::size_t b = 0; b < m; ++b) {
    const Event e(static_cast<std::uint32_t>(b));
    base[b] = kappa ? kappa_key(rank_value(s, e)) : rational_value(s, e);
  }
  const Rational bottom_key = kappa ? kInfinityKey : Rational(0);

  std::vector<std::vector<Rational>> keys(m, std::vector<Rational>(m, bottom_key));
  for (std::uint32_t a = 0; a < m; ++a) {
    if (s.is_bottom(Event(a))) continue;
    for (std::uint32_t b = 0; b < m; ++b) {
      const Rational joint = base[a & b];
      const Rational given = base[a];
      Rational& out = keys[a][b];
      switch (kind) {
        case ConditioningKind::probability:
        case ConditioningKind::possibility_div:
          out = joint / given;
          break;
        case ConditioningKind::kappa:
          // keys are negated ranks: kappa(A&B) - kappa(A)
          out = joint == kInfinityKey ? kInfinityKey : joint - given;
          break;
        case ConditioningKind::possibility_min:
          out = joint == given ? Rational(1) : joint;
          break;
      }
    }
  }

  std::set<Rational> distinct;
  for (const auto& row : keys) distinct.insert(row.begin(), row.end());
  std::vector<Rational> sorted(distinct.begin(), distinct.end());
  std::vector<std::string> labels;
  for (const auto& k : sorted) labels.push_back(key_label(k, kappa));
  auto domain = std::make_shared<const Poset>(Poset::chain(std::move(labels)));
  std::vector<std::vector<Elem>> table(m, std::vector<Elem>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      table[a][b] = static_cast<Elem>(
          std::lower_bound(sorted.begin(), sorted.end(), keys[a][b]) - sorted.begin());
  return CondPlSpace::standard(ws, std::move(domain), std::move(table),
                               std::string(to_string(kind)));
}

CondPlSpace minimal_c1_extension(const PlSpace& s) {
  const auto& ws = s.worlds();
  const auto& d = s.domain();
  const auto m = ws.event_count();
  std::vector<PosetPtr> domains(m);
  std::vector<std::vector<Elem>> table(m, std::vector<Elem>(m));
  for (std::uint32_t a = 0; a < m; ++a) {
    const Event A(a);
    const Elem cap = s(A);
    std::vector<Elem> kept;
    std::vector<Elem> copy_of(d.size(), 0);
    for (Elem e = 0; e < d.size(); ++e) {
      if (d.leq(e, cap)) {
        copy_of[e] = static_cast<Elem>(kept.size());
        kept.push_back(e);
      }
    }
    std::vector<std::string> labels;
    for (Elem e : kept) labels.push_back(d.label(e) + "@" + ws.render(A));
    std::vector<std::uint8_t> order(kept.size() * kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i)
      for (std::size_t j = 0; j < kept.size(); ++j)
        order[i * kept.size() + j] = d.leq(kept[i], kept[j]) ? 1 : 0;
    domains[a] = std::make_shared<const Poset>(Poset::from_matrix(
        std::move(labels), std::move(order), copy_of[d.bottom()], copy_of[cap]));
    for (std::uint32_t b = 0; b < m; ++b) table[a][b] = copy_of[s(A & Event(b))];
  }
  return CondPlSpace::per_conditioner(ws, std::move(domains), std::move(table), "minimal");
}

PartialOpTable extract_otimes(const CondPlSpace& c) {
  if (!c.is_standard()) {
    throw Error(ErrorKind::not_applicable, "the product table needs a standard space");
  }
  if (auto r = check_C1(c); !r.passed()) throw CheckFailure(r);
  if (auto r = check_C2(c, false); !r.passed()) throw CheckFailure(r);
  PartialOpTable table(c.shared_domain_ptr());
  const auto m = static_cast<std::uint32_t>(c.worlds().event_count());
  for (std::uint32_t a = 0; a < m; ++a)
    for (std::uint32_t b = 0; b < m; ++b)
      for (std::uint32_t g = 0; g < m; ++g) {
        const Event A(a), B(b), G(g);
        table.define(c.value(A, B & G), c.value(B, G), c.value(A & B, G));
      }
  return table;
}

CheckReport check_limited_associativity(const CondPlSpace& c, const PartialOpTable& otimes) {
  CheckReport r{"limited-associativity", Verdict::pass, {}, 0, {}};
  const auto& ws = c.worlds();
  const auto& d = otimes.carrier();
  const auto m = static_cast<std::uint32_t>(ws.event_count());
  for (std::uint32_t a = 0; a < m; ++a)
    for (std::uint32_t b = 0; b < m; ++b)
      for (std::uint32_t cc = 0; cc < m; ++cc)
        for (std::uint32_t dd = 0; dd < m; ++dd) {
          const Event A(a), B(b), C(cc), D(dd);
          const Elem d1 = c.value(A, B & C & D);
          const Elem d2 = c.value(B, C & D);
          const Elem d3 = c.value(C, D);
          ++r.search_space;
          auto d12 = otimes.apply(d1, d2);
          auto d23 = otimes.apply(d2, d3);
          std::optional<Elem> left = d12 ? otimes.apply(*d12, d3) : std::nullopt;
          std::optional<Elem> right = d23 ? otimes.apply(d1, *d23) : std::nullopt;
          if (!left || !right || *left != *right) {
            r.verdict = Verdict::fail;
            auto lab = [&](std::optional<Elem> e) { return e ? d.label(*e) : std::string("undef"); };
            r.witnesses.push_back(Witness{
                {WitnessTerm{"A", A, ws.render(A), d.label(d1)},
                 WitnessTerm{"B", B, ws.render(B), d.label(d2)},
                 WitnessTerm{"C", C, ws.render(C), d.label(d3)},
                 WitnessTerm{"D", D, ws.render(D), ""},
                 WitnessTerm{"left", std::nullopt, {}, lab(left)},
                 WitnessTerm{"right", std::nullopt, {}, lab(right)}},
                "d1=Pl(A|B,C,D), d2=Pl(B|C,D), d3=Pl(C|D)"});
            return r;
          }
        }
  return r;
}

PartialOpTable extract_conditional_oplus(const CondPlSpace& c) {
  if (auto r = check_decomp_c(c, DecompScope::global, false); !r.passed()) throw CheckFailure(r);
  PartialOpTable table(c.shared_domain_ptr());
  const auto full = c.worlds().full().bits();
  for (std::uint32_t g = 0; g <= full; ++g)
    for (std::uint32_t a = 0; a <= full; ++a) {
      const std::uint32_t rest = full & ~a;
      for (std::uint32_t b = 0;; b = (b - rest) & rest) {
        const Event A(a), B(b), G(g);
        table.define(c.value(A, G), c.value(B, G), c.value(A | B, G));
        if (b == rest) break;
      }
    }
  return table;
}

CheckReport check_distributivity(const PartialOpTable& otimes, const PartialOpTable& oplus) {
  CheckReport r{"distributivity", Verdict::pass, {}, 0, {}};
  const auto& d = otimes.carrier();
  const auto n = static_cast<Elem>(d.size());
  for (const auto& [args, sum] : oplus.entries()) {
    const auto [x1, x2] = args;
    for (Elem y = 0; y < n; ++y) {
      auto left = otimes.apply(sum, y);
      auto p1 = otimes.apply(x1, y);
      auto p2 = otimes.apply(x2, y);
      if (!left || !p1 || !p2) continue;
      auto right = oplus.apply(*p1, *p2);
      if (!right) continue;
      ++r.search_space;
      if (*left != *right) {
        r.verdict = Verdict::fail;
        r.witnesses.push_back(Witness{{WitnessTerm{"x1", std::nullopt, {}, d.label(x1)},
                                       WitnessTerm{"x2", std::nullopt, {}, d.label(x2)},
                                       WitnessTerm{"y", std::nullopt, {}, d.label(y)},
                                       WitnessTerm{"left", std::nullopt, {}, d.label(*left)},
                                       WitnessTerm{"right", std::nullopt, {}, d.label(*right)}},
                                      "(x1+x2)*y != x1*y + x2*y"});
        return r;
      }
    }
  }
  return r;
}

FormalFraction FormalFraction::make(std::vector<Elem> num, std::vector<Elem> den) {
  std::sort(num.begin(), num.end());
  std::sort(den.begin(), den.end());
  FormalFraction f;
  std::set_difference(num.begin(), num.end(), den.begin(), den.end(),
                      std::back_inserter(f.numerator));
  std::set_difference(den.begin(), den.end(), num.begin(), num.end(),
                      std::back_inserter(f.denominator));
  return f;
}

FormalFraction multiply(const FormalFraction& a, const FormalFraction& b) {
  if (a.bottom || b.bottom) return FormalFraction::bottom_value();
  std::vector<Elem> num(a.numerator);
  num.insert(num.end(), b.numerator.begin(), b.numerator.end());
  std::vector<Elem> den(a.denominator);
  den.insert(den.end(), b.denominator.begin(), b.denominator.end());
  return FormalFraction::make(std::move(num), std::move(den));
}

std::string AlgebraicExtension::render(const FormalFraction& f) const {
  return space.shared_domain().label(element(f));
}

Elem AlgebraicExtension::element(const FormalFraction& f) const {
  auto it = std::find(fractions.begin(), fractions.end(), f);
  if (it == fractions.end()) throw malformed("fraction is not realized in this extension");
  return class_of[static_cast<std::size_t>(it - fractions.begin())];
}

namespace {

/// Dense boolean relation with bitset rows.
class Relation {
 public:
  explicit Relation(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

  bool get(std::size_t i, std::size_t j) const { return (row(i)[j / 64] >> (j % 64)) & 1U; }
  bool set(std::size_t i, std::size_t j) {
    auto& w = bits_[i * words_ + j / 64];
    const auto mask = std::uint64_t{1} << (j % 64);
    if (w & mask) return false;
    w |= mask;
    return true;
  }
  void close() {
    for (std::size_t k = 0; k < n_; ++k)
      for (std::size_t i = 0; i < n_; ++i)
        if (get(i, k))
          for (std::size_t w = 0; w < words_; ++w) bits_[i * words_ + w] |= bits_[k * words_ + w];
  }

 private:
  const std::uint64_t* row(std::size_t i) const { return &bits_[i * words_]; }

  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

std::string fraction_label(const Poset& d, const FormalFraction& f) {
  if (f.bottom) return d.label(d.bottom());
  if (f.is_unit()) return d.label(d.top());
  if (f.numerator.size() == 1 && f.denominator.size() == 1 && f.denominator[0] == d.top()) {
    return d.label(f.numerator[0]);
  }
  auto join = [&](const std::vector<Elem>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "*" : "") + d.label(xs[i]);
    return out;
  };
  return "[" + join(f.numerator) + "]/[" + join(f.denominator) + "]";
}

}  // namespace

AlgebraicExtension algebraic_extension(const PlSpace& s) {
  const auto& ws = s.worlds();
  const auto& d = s.domain();
  if (ws.size() > kMaxConditionalWorlds) {
    throw Error(ErrorKind::precondition, "algebraic extension supports at most 4 worlds");
  }
  const auto m = static_cast<std::uint32_t>(ws.event_count());
  const std::uint32_t full = m - 1;

  std::vector<FormalFraction> fr;
  std::map<FormalFraction, std::size_t> index;
  auto intern = [&](const FormalFraction& f) {
    auto [it, inserted] = index.emplace(f, fr.size());
    if (inserted) fr.push_back(f);
    return it->second;
  };
  intern(FormalFraction::bottom_value());

  // at[b][a] = index of Pl(a|b); the unconditional row is interned first.
  std::vector<std::vector<std::size_t>> at(m, std::vector<std::size_t>(m, 0));
  std::vector<std::uint32_t> conditioners{full};
  for (std::uint32_t b = 0; b < full; ++b) conditioners.push_back(b);
  for (std::uint32_t b : conditioners) {
    if (s.is_bottom(Event(b))) continue;
    for (std::uint32_t a = 0; a < m; ++a) {
      const Elem num = s(Event(a & b));
      at[b][a] = num == d.bottom() ? 0 : intern(FormalFraction::make({num}, {s(Event(b))}));
    }
  }
  const std::size_t k = fr.size();
  const std::size_t unit = index.at(FormalFraction{});

  Relation le(k);
  for (std::size_t i = 0; i < k; ++i) {
    le.set(i, i);
    le.set(0, i);
    le.set(i, unit);
  }
  for (std::uint32_t b : conditioners) {
    if (s.is_bottom(Event(b))) continue;
    for (std::uint32_t a1 = 0; a1 < m; ++a1)
      for (std::uint32_t a2 = 0; a2 < m; ++a2)
        if (d.leq(s(Event(a1 & b)), s(Event(a2 & b)))) le.set(at[b][a1], at[b][a2]);
  }

  struct Triple {
    std::size_t x, y, z;
  };
  std::vector<Triple> products;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      auto it = index.find(multiply(fr[i], fr[j]));
      if (it != index.end()) products.push_back({i, j, it->second});
    }
  std::vector<Triple> sums;
  if (check_decomp(s, true).passed()) {
    std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
    for (std::uint32_t b : conditioners) {
      if (s.is_bottom(Event(b))) continue;
      for (std::uint32_t a1 = 0; a1 < m; ++a1) {
        const std::uint32_t rest = full & ~a1;
        for (std::uint32_t a2 = 0;; a2 = (a2 - rest) & rest) {
          if (seen.emplace(at[b][a1], at[b][a2], at[b][a1 | a2]).second) {
            sums.push_back({at[b][a1], at[b][a2], at[b][a1 | a2]});
          }
          if (a2 == rest) break;
        }
      }
    }
  }

  std::vector<Elem> cls(k);
  std::vector<std::size_t> reps;
  // Quotient mutually comparable fractions.
  auto classify = [&] {
    reps.clear();
    for (std::size_t i = 0; i < k; ++i) {
      auto it = std::find_if(reps.begin(), reps.end(),
                             [&](std::size_t r) { return le.get(i, r) && le.get(r, i); });
      if (it != reps.end()) {
        cls[i] = static_cast<Elem>(it - reps.begin());
      } else {
        cls[i] = static_cast<Elem>(reps.size());
        reps.push_back(i);
      }
    }
  };

  // (x1 + x2) * y and x1 * y + x2 * y must land in one class whenever both
  // sides are realized. Returns true if it had to merge classes.
  auto distribute = [&] {
    using Key = std::pair<Elem, Elem>;
    std::map<Key, std::set<Elem>> prod, sum;
    for (const auto& t : products) prod[{cls[t.x], cls[t.y]}].insert(cls[t.z]);
    for (const auto& u : sums) sum[{cls[u.x], cls[u.y]}].insert(cls[u.z]);
    auto lookup = [](const std::map<Key, std::set<Elem>>& m, Elem a, Elem b) -> const std::set<Elem>* {
      auto it = m.find({a, b});
      return it == m.end() ? nullptr : &it->second;
    };
    bool merged = false;
    const auto q = static_cast<Elem>(reps.size());
    for (const auto& [args, totals] : sum)
      for (Elem y = 0; y < q; ++y) {
        const auto* p1 = lookup(prod, args.first, y);
        const auto* p2 = lookup(prod, args.second, y);
        if (!p1 || !p2) continue;
        for (Elem s1 : totals) {
          const auto* left = lookup(prod, s1, y);
          if (!left) continue;
          for (Elem a : *p1)
            for (Elem b : *p2) {
              const auto* right = lookup(sum, a, b);
              if (!right) continue;
              for (Elem l : *left)
                for (Elem r : *right) {
                  merged |= le.set(reps[l], reps[r]);
                  merged |= le.set(reps[r], reps[l]);
                }
            }
        }
      }
    return merged;
  };

  std::size_t rounds = 0;
  for (;;) {
    le.close();
    ++rounds;
    bool changed = false;
    for (const auto& t1 : products)
      for (const auto& t2 : products) {
        if (le.get(t1.x, t2.x) && le.get(t1.y, t2.y)) changed |= le.set(t1.z, t2.z);
        if (t2.y != 0 && le.get(t1.z, t2.z) && le.get(t2.y, t1.y)) changed |= le.set(t1.x, t2.x);
      }
    for (const auto& u1 : sums)
      for (const auto& u2 : sums)
        if (le.get(u1.x, u2.x) && le.get(u1.y, u2.y)) changed |= le.set(u1.z, u2.z);
    if (changed) continue;
    classify();
    if (sums.empty() || !distribute()) break;
  }

  // The unconditional layer must survive unchanged.
  for (std::uint32_t a1 = 0; a1 < m; ++a1)
    for (std::uint32_t a2 = 0; a2 < m; ++a2) {
      const Event A1(a1), A2(a2);
      const bool before = s.leq(A1, A2);
      const bool after = le.get(at[full][a1], at[full][a2]);
      if (before != after) {
        throw Error(ErrorKind::construction_failure,
                    "closure changes the unconditional order between " + ws.render(A1) + " (" +
                        s.label(A1) + ") and " + ws.render(A2) + " (" + s.label(A2) + ")");
      }
    }

  const std::size_t q = reps.size();
  std::vector<std::string> labels;
  for (auto r : reps) labels.push_back(fraction_label(d, fr[r]));
  std::vector<std::uint8_t> order(q * q);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) order[i * q + j] = le.get(reps[i], reps[j]) ? 1 : 0;
  auto domain = std::make_shared<const Poset>(
      Poset::from_matrix(std::move(labels), std::move(order), cls[0], cls[unit]));

  std::vector<std::vector<Elem>> table(m, std::vector<Elem>(m));
  for (std::uint32_t b = 0; b < m; ++b)
    for (std::uint32_t a = 0; a < m; ++a) table[b][a] = cls[at[b][a]];

  PartialOpTable otimes(domain);
  for (const auto& t : products) {
    if (!otimes.define(cls[t.x], cls[t.y], cls[t.z])) {
      throw Error(ErrorKind::construction_failure,
                  "formal product is not well defined on the quotient at " +
                      fraction_label(d, fr[t.x]) + " * " + fraction_label(d, fr[t.y]));
    }
  }

  return AlgebraicExtension{
      CondPlSpace::standard(ws, domain, std::move(table), "algebraic"), std::move(fr),
      std::move(cls), std::move(otimes), rounds};
}

bool order_isomorphic(const PlSpace& s1, const PlSpace& s2) {
  if (!(s1.worlds() == s2.worlds())) throw malformed("spaces are over different world sets");
  const auto m = static_cast<std::uint32_t>(s1.worlds().event_count());
  for (std::uint32_t a = 0; a < m; ++a)
    for (std::uint32_t b = 0; b < m; ++b)
      if (s1.leq(Event(a), Event(b)) != s2.leq(Event(a), Event(b))) return false;
  return true;
}

CheckReport check_member_isomorphism(const CondPlSpace& c1, const CondPlSpace& c2) {
  CheckReport r{"member-isomorphism", Verdict::pass, {}, 0, {}};
  if (!(c1.worlds() == c2.worlds())) throw malformed("spaces are over different world sets");
  if (!check_C1(c1).passed() || !check_C1(c2).passed()) {
    r.verdict = Verdict::not_applicable;
    r.detail = "both spaces must satisfy C1";
    return r;
  }
  if (!order_isomorphic(c1.unconditional(), c2.unconditional())) {
    r.verdict = Verdict::not_applicable;
    r.detail = "unconditional layers are not order-isomorphic";
    return r;
  }
  const auto& ws = c1.worlds();
  const auto m = static_cast<std::uint32_t>(ws.event_count());
  for (std::uint32_t a = 0; a < m; ++a) {
    ++r.search_space;
    const Event A(a);
    if (!order_isomorphic(c1.member(A), c2.member(A))) {
      r.verdict = Verdict::fail;
      r.witnesses.push_back(
          Witness{{WitnessTerm{"given", A, ws.render(A), ""}}, "members are not isomorphic"});
      return r;
    }
  }
  return r;
}

}  // namespace plaus
