#include "plaus/algebra.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <random>

#include "plaus/axioms.hpp"
#include "plaus/error.hpp"

namespace plaus {

PartialOpTable extract_oplus(const PlSpace& s) {
  if (auto r = check_decomp(s, false); !r.passed()) throw CheckFailure(r);
  PartialOpTable table(s.domain_ptr());
  const auto full = s.worlds().full().bits();
  for (std::uint32_t a = 0; a <= full; ++a) {
    const std::uint32_t rest = full & ~a;
    for (std::uint32_t b = 0;; b = (b - rest) & rest) {
      table.define(s(Event(a)), s(Event(b)), s(Event(a | b)));
      if (b == rest) break;
    }
  }
  return table;
}

namespace {

std::string multiset_label(const Poset& p, const ValueMultiset& m) {
  std::string out = "{";
  bool first = true;
  for (Elem e : m.flatten()) {
    out += (first ? "" : ",") + p.label(e);
    first = false;
  }
  return out + "}";
}

}  // namespace

DecompExtension minimal_decomposable_extension(const WorldSet& worlds, PosetPtr base,
                                               const std::vector<Elem>& pl) {
  const Poset& p = *base;
  if (pl.size() != worlds.size()) throw malformed("pointwise assignment needs one value per world");
  for (Elem e : pl)
    if (e >= p.size()) throw malformed("pointwise value outside the base domain");
  if (std::all_of(pl.begin(), pl.end(), [&](Elem e) { return e == p.bottom(); })) {
    // bottom + bottom would have to be both bottom and Pl(W).
    throw Error(ErrorKind::precondition, "every world is bottom; no decomposable extension exists");
  }

  const ValueMultiset full(p, pl);
  auto collapses = [&](const ValueMultiset& m) {
    if (m.empty()) return false;
    if (m.contains(p.top())) return true;
    return !(injection_order(m, full, p) && !injection_order(full, m, p));
  };
  // nullopt stands for the collapsed top.
  auto normalize = [&](ValueMultiset m) -> std::optional<ValueMultiset> {
    if (collapses(m)) return std::nullopt;
    return m;
  };

  const auto count = worlds.event_count();
  std::vector<std::optional<ValueMultiset>> event_value(count);
  for (std::uint32_t a = 0; a < count; ++a) {
    const Event A(a);
    if (A == worlds.full()) continue;
    ValueMultiset m;
    for (std::size_t w = 0; w < worlds.size(); ++w)
      if (A.contains(w)) m.add(p, pl[w]);
    event_value[a] = normalize(std::move(m));
  }

  auto plus = [&](const std::optional<ValueMultiset>& x, const std::optional<ValueMultiset>& y)
      -> std::optional<ValueMultiset> {
    if (!x || !y) return std::nullopt;
    return normalize(x->united(*y));
  };

  // Close the realized values under the sum.
  std::vector<std::optional<ValueMultiset>> values{ValueMultiset{}, std::nullopt};
  auto known = [&](const std::optional<ValueMultiset>& v) {
    return std::find(values.begin(), values.end(), v) != values.end();
  };
  for (const auto& v : event_value)
    if (!known(v)) values.push_back(v);
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      auto v = plus(values[i], values[j]);
      if (!known(v)) values.push_back(std::move(v));
    }

  // Deterministic element order: by size, then multiset, top last.
  std::sort(values.begin(), values.end(),
            [](const std::optional<ValueMultiset>& x, const std::optional<ValueMultiset>& y) {
              if (!x || !y) return static_cast<bool>(x) && !y;
              if (x->total() != y->total()) return x->total() < y->total();
              return *x < *y;
            });
  const auto n = values.size();
  std::map<ValueMultiset, Elem> index;
  for (std::size_t i = 0; i + 1 < n; ++i) index.emplace(*values[i], static_cast<Elem>(i));
  const Elem top = static_cast<Elem>(n - 1);
  auto element = [&](const std::optional<ValueMultiset>& v) { return v ? index.at(*v) : top; };

  std::vector<std::string> labels;
  for (const auto& v : values) labels.push_back(v ? multiset_label(p, *v) : "top");
  std::vector<std::uint8_t> order(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& x = values[i];
      const auto& y = values[j];
      order[i * n + j] = !y ? 1 : (!x ? 0 : injection_order(*x, *y, p));
    }
  auto domain = std::make_shared<const Poset>(
      Poset::from_matrix(std::move(labels), std::move(order), 0, top));

  std::vector<Elem> assign(count);
  for (std::uint32_t a = 0; a < count; ++a) assign[a] = element(event_value[a]);

  PartialOpTable oplus(domain);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      oplus.define(static_cast<Elem>(i), static_cast<Elem>(j), element(plus(values[i], values[j])));

  return DecompExtension{std::move(base), pl,
                         PlSpace(worlds, domain, std::move(assign), MeasureKind::extension),
                         std::move(oplus), std::move(values)};
}

CheckReport check_minimality(const DecompExtension& ext, const PlSpace& other) {
  CheckReport r{"minimality", Verdict::pass, {}, 0, {}};
  const auto& ws = ext.space.worlds();
  if (!(ws == other.worlds())) throw malformed("spaces are over different world sets");
  auto not_applicable = [&](std::string why) {
    r.verdict = Verdict::not_applicable;
    r.detail = std::move(why);
    return r;
  };
  if (!check_decomp(other, true).passed()) return not_applicable("other space is not decomposable");
  const Poset& p = *ext.base;
  for (std::size_t v = 0; v < ws.size(); ++v) {
    const Event V = Event::singleton(v);
    if (ext.pl[v] == p.bottom() && !other.is_bottom(V))
      return not_applicable("other space lifts bottom world " + ws.name(v));
    if (ext.pl[v] == p.top() && other(V) != other.domain().top())
      return not_applicable("other space lowers top world " + ws.name(v));
    for (std::size_t w = 0; w < ws.size(); ++w)
      if (p.leq(ext.pl[v], ext.pl[w]) && !other.leq(V, Event::singleton(w)))
        return not_applicable("other space reverses worlds " + ws.name(v) + ", " + ws.name(w));
  }
  const auto count = static_cast<std::uint32_t>(ws.event_count());
  for (std::uint32_t a = 0; a < count; ++a)
    for (std::uint32_t b = 0; b < count; ++b) {
      const Event A(a), B(b);
      ++r.search_space;
      if (ext.space.leq(A, B) && !other.leq(A, B)) {
        r.verdict = Verdict::fail;
        r.witnesses.push_back(Witness{{WitnessTerm{"A", A, ws.render(A), other.label(A)},
                                       WitnessTerm{"B", B, ws.render(B), other.label(B)}},
                                      "extension orders A below B, other space does not"});
        return r;
      }
    }
  return r;
}

namespace {

/// Space from a class per event and a partial order on classes.
PlSpace classed_space(const WorldSet& ws, const std::vector<std::size_t>& cls, std::size_t classes,
                      const std::function<bool(std::size_t, std::size_t)>& leq) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < classes; ++i) labels.push_back("c" + std::to_string(i));
  std::vector<std::uint8_t> order(classes * classes);
  for (std::size_t i = 0; i < classes; ++i)
    for (std::size_t j = 0; j < classes; ++j) order[i * classes + j] = leq(i, j) ? 1 : 0;
  auto domain = std::make_shared<const Poset>(Poset::from_matrix(
      std::move(labels), std::move(order), static_cast<Elem>(cls.front()),
      static_cast<Elem>(cls.back())));
  std::vector<Elem> assign(cls.begin(), cls.end());
  return PlSpace(ws, std::move(domain), std::move(assign));
}

/// Distinct values, ascending, with a random subset of gaps merged.
std::vector<std::size_t> coarsen(const std::vector<long>& raw, std::mt19937_64& rng) {
  std::vector<long> distinct(raw);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<std::size_t> bin(distinct.size(), 0);
  for (std::size_t i = 1; i < distinct.size(); ++i) bin[i] = bin[i - 1] + (rng() % 2);
  std::vector<std::size_t> out;
  for (long v : raw)
    out.push_back(bin[std::lower_bound(distinct.begin(), distinct.end(), v) - distinct.begin()]);
  return out;
}

std::vector<long> additive(const WorldSet& ws, std::mt19937_64& rng) {
  std::vector<long> weight(ws.size());
  for (auto& w : weight) w = static_cast<long>(rng() % 7);
  weight[rng() % ws.size()] += 1;
  std::vector<long> sum(ws.event_count(), 0);
  for (std::uint32_t a = 1; a < sum.size(); ++a) {
    const auto low = static_cast<std::size_t>(std::countr_zero(a));
    sum[a] = sum[a & (a - 1)] + weight[low];
  }
  return sum;
}

PlSpace sample_space(std::size_t n, std::mt19937_64& rng) {
  const auto ws = WorldSet::numbered(n);
  const auto count = ws.event_count();
  switch (rng() % 3) {
    case 0: {
      // Coarsened additive measure.
      auto cls = coarsen(additive(ws, rng), rng);
      const auto classes = cls.back() + 1;
      return classed_space(ws, cls, classes, [](auto i, auto j) { return i <= j; });
    }
    case 1: {
      // Random scores made monotone by taking the max over subsets.
      std::vector<long> score(count, 0);
      for (std::size_t a = 1; a < count; ++a) score[a] = 1 + static_cast<long>(rng() % 5);
      for (std::uint32_t a = 1; a < count; ++a)
        for (std::size_t w = 0; w < n; ++w)
          if (a >> w & 1U) score[a] = std::max(score[a], score[a & ~(1U << w)]);
      auto cls = coarsen(score, rng);
      return classed_space(ws, cls, cls.back() + 1, [](auto i, auto j) { return i <= j; });
    }
    default: {
      // Product of two coarsened additive measures.
      auto c1 = coarsen(additive(ws, rng), rng);
      auto c2 = coarsen(additive(ws, rng), rng);
      std::map<std::pair<std::size_t, std::size_t>, std::size_t> pair_index;
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      std::vector<std::size_t> cls(count);
      for (std::size_t a = 0; a < count; ++a) {
        auto [it, fresh] = pair_index.emplace(std::make_pair(c1[a], c2[a]), pairs.size());
        if (fresh) pairs.push_back(it->first);
        cls[a] = it->second;
      }
      return classed_space(ws, cls, pairs.size(), [&](auto i, auto j) {
        return pairs[i].first <= pairs[j].first && pairs[i].second <= pairs[j].second;
      });
    }
  }
}

std::optional<std::pair<Event, Event>> realize(const PlSpace& s, Elem x, Elem y) {
  const auto full = s.worlds().full().bits();
  for (std::uint32_t a = 0; a <= full; ++a) {
    if (s(Event(a)) != x) continue;
    const std::uint32_t rest = full & ~a;
    for (std::uint32_t b = 0;; b = (b - rest) & rest) {
      if (s(Event(b)) == y) return std::make_pair(Event(a), Event(b));
      if (b == rest) break;
    }
  }
  return std::nullopt;
}

std::optional<NonassocWitness> find_nonassoc(const PlSpace& s, const PartialOpTable& oplus,
                                             std::uint64_t sample) {
  const auto& d = s.domain();
  const auto n = static_cast<Elem>(d.size());
  for (const auto& [args, d12] : oplus.entries()) {
    const auto [d1, d2] = args;
    for (Elem d3 = 0; d3 < n; ++d3) {
      auto left = oplus.apply(d12, d3);
      auto d23 = oplus.apply(d2, d3);
      if (!left || !d23) continue;
      auto right = oplus.apply(d1, *d23);
      if (!right || *left == *right) continue;
      const auto& ws = s.worlds();
      Witness w;
      const std::pair<Elem, Elem> apps[] = {{d1, d2}, {d12, d3}, {d2, d3}, {d1, *d23}};
      const char* roles[] = {"A", "B", "C", "D", "E", "F", "G", "H"};
      for (std::size_t k = 0; k < 4; ++k) {
        auto pr = realize(s, apps[k].first, apps[k].second);
        w.terms.push_back({roles[2 * k], pr->first, ws.render(pr->first), s.label(pr->first)});
        w.terms.push_back(
            {roles[2 * k + 1], pr->second, ws.render(pr->second), s.label(pr->second)});
      }
      w.terms.push_back({"left", std::nullopt, {}, d.label(*left)});
      w.terms.push_back({"right", std::nullopt, {}, d.label(*right)});
      w.note = "(d1+d2)+d3 != d1+(d2+d3) with d1=Pl(A), d2=Pl(B), d3=Pl(D)";
      return NonassocWitness{s, d1, d2, d3, *left, *right, sample, std::move(w)};
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<NonassocWitness> search_nonassociative_oplus(std::size_t max_worlds,
                                                           std::uint64_t budget,
                                                           std::uint64_t seed) {
  if (max_worlds > 6) throw Error(ErrorKind::precondition, "the search supports at most 6 worlds");
  if (max_worlds < 2) throw Error(ErrorKind::precondition, "the search needs at least 2 worlds");
  std::mt19937_64 rng(seed);
  for (std::uint64_t k = 0; k < budget; ++k) {
    const std::size_t n = 2 + rng() % (max_worlds - 1);
    PlSpace s = sample_space(n, rng);
    if (!check_decomp(s, true).passed()) continue;
    if (auto w = find_nonassoc(s, extract_oplus(s), k)) return w;
  }
  return std::nullopt;
}

bool verify_nonassoc(const NonassocWitness& w) {
  if (!check_A1(w.space).passed() || !check_decomp(w.space, true).passed()) return false;
  const auto oplus = extract_oplus(w.space);
  auto d12 = oplus.apply(w.d1, w.d2);
  auto d23 = oplus.apply(w.d2, w.d3);
  if (!d12 || !d23) return false;
  auto left = oplus.apply(*d12, w.d3);
  auto right = oplus.apply(w.d1, *d23);
  return left && right && *left == w.left && *right == w.right && *left != *right;
}

}  // namespace plaus
