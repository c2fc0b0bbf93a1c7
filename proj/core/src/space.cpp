#include "plaus/space.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "plaus/error.hpp"

namespace plaus {

std::string_view to_string(MeasureKind k) {
  switch (k) {
    case MeasureKind::probability: return "probability";
    case MeasureKind::possibility: return "possibility";
    case MeasureKind::kappa: return "kappa";
    case MeasureKind::belief: return "belief";
    case MeasureKind::preference: return "preference";
    case MeasureKind::qualitative: return "qualitative";
    case MeasureKind::explicit_table: return "explicit";
    case MeasureKind::extension: return "extension";
  }
  return "?";
}

std::string_view to_string(DualOrder d) {
  switch (d) {
    case DualOrder::leq: return "leq";
    case DualOrder::geq: return "geq";
    case DualOrder::eq: return "eq";
    case DualOrder::incomparable: return "incomparable";
  }
  return "?";
}

PlSpace::PlSpace(WorldSet worlds, PosetPtr domain, std::vector<Elem> assign, MeasureKind kind)
    : worlds_(std::move(worlds)), domain_(std::move(domain)), assign_(std::move(assign)),
      kind_(kind) {
  if (!domain_) throw malformed("plausibility space needs a domain");
  if (assign_.size() != worlds_.event_count()) {
    throw malformed("assignment must cover all " + std::to_string(worlds_.event_count()) +
                    " events");
  }
  for (Elem e : assign_) {
    if (e >= domain_->size()) throw malformed("assignment refers to a missing domain value");
  }
  if (assign_.front() != domain_->bottom()) throw malformed("Pl(empty) must be bottom");
  if (assign_.back() != domain_->top()) throw malformed("Pl(W) must be top");
}

void MassFunction::validate(const WorldSet& worlds) const {
  Rational total = 0;
  std::set<std::uint32_t> seen;
  for (const auto& [event, mass] : masses) {
    if (event.empty()) throw malformed("mass assigned to the empty set");
    if (!event.subset_of(worlds.full())) throw malformed("mass on an event outside W");
    if (mass <= Rational(0)) throw malformed("masses must be positive");
    if (!seen.insert(event.bits()).second) {
      throw malformed("event " + worlds.render(event) + " has two masses");
    }
    total += mass;
  }
  if (total != Rational(1)) throw malformed("masses sum to " + format_rational(total) + ", not 1");
}

PlSpace numeric_space(const WorldSet& worlds, const std::vector<Rational>& values,
                      MeasureKind kind) {
  std::vector<Rational> sorted(values);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<std::string> labels;
  for (const auto& v : sorted) labels.push_back(format_rational(v));
  auto domain = std::make_shared<const Poset>(Poset::chain(std::move(labels)));
  std::vector<Elem> assign;
  assign.reserve(values.size());
  for (const auto& v : values) {
    assign.push_back(
        static_cast<Elem>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin()));
  }
  return PlSpace(worlds, std::move(domain), std::move(assign), kind);
}

PlSpace from_probability(const WorldSet& worlds, const std::vector<Rational>& weights) {
  if (weights.size() != worlds.size()) throw malformed("one weight per world required");
  Rational total = 0;
  for (const auto& w : weights) {
    if (w < Rational(0)) throw malformed("probability weights must be nonnegative");
    total += w;
  }
  if (total != Rational(1)) throw malformed("probability weights sum to " + format_rational(total));
  std::vector<Rational> values(worlds.event_count());
  for (std::size_t bits = 1; bits < values.size(); ++bits) {
    const auto low = static_cast<std::size_t>(std::countr_zero(bits));
    values[bits] = values[bits & (bits - 1)] + weights[low];
  }
  return numeric_space(worlds, values, MeasureKind::probability);
}

PlSpace from_possibility(const WorldSet& worlds, const std::vector<Rational>& weights) {
  if (weights.size() != worlds.size()) throw malformed("one weight per world required");
  Rational best = 0;
  for (const auto& w : weights) {
    if (w < Rational(0) || w > Rational(1)) throw malformed("possibility weights must lie in [0,1]");
    best = std::max(best, w);
  }
  if (best != Rational(1)) throw malformed("some world must have possibility 1");
  std::vector<Rational> values(worlds.event_count());
  for (std::size_t bits = 1; bits < values.size(); ++bits) {
    const auto low = static_cast<std::size_t>(std::countr_zero(bits));
    values[bits] = std::max(values[bits & (bits - 1)], weights[low]);
  }
  return numeric_space(worlds, values, MeasureKind::possibility);
}

PlSpace from_kappa(const WorldSet& worlds, const std::vector<Rank>& ranks) {
  if (ranks.size() != worlds.size()) throw malformed("one rank per world required");
  if (std::find(ranks.begin(), ranks.end(), Rank{0}) == ranks.end()) {
    throw malformed("some world must have rank 0");
  }
  std::vector<Rank> values(worlds.event_count(), kInfinity);
  for (std::size_t bits = 1; bits < values.size(); ++bits) {
    const auto low = static_cast<std::size_t>(std::countr_zero(bits));
    values[bits] = std::min(values[bits & (bits - 1)], ranks[low]);
  }
  // Plausibility grows as the rank shrinks.
  std::set<Rank, std::greater<>> distinct(values.begin(), values.end());
  std::vector<Rank> ascending(distinct.begin(), distinct.end());
  std::vector<std::string> labels;
  for (Rank r : ascending) labels.push_back(format_rank(r));
  auto domain = std::make_shared<const Poset>(Poset::chain(std::move(labels)));
  std::vector<Elem> assign;
  for (Rank r : values) {
    assign.push_back(static_cast<Elem>(
        std::find(ascending.begin(), ascending.end(), r) - ascending.begin()));
  }
  return PlSpace(worlds, std::move(domain), std::move(assign), MeasureKind::kappa);
}

PlSpace from_belief(const WorldSet& worlds, const MassFunction& m) {
  m.validate(worlds);
  std::vector<Rational> values(worlds.event_count());
  for (std::size_t bits = 0; bits < values.size(); ++bits) {
    for (const auto& [event, mass] : m.masses) {
      if (event.subset_of(Event(static_cast<std::uint32_t>(bits)))) values[bits] += mass;
    }
  }
  return numeric_space(worlds, values, MeasureKind::belief);
}

PlSpace from_preference(const WorldSet& worlds,
                        const std::vector<std::pair<std::size_t, std::size_t>>& prefers) {
  const auto n = worlds.size();
  if (n > 8) throw malformed("preference embedding supports at most 8 worlds");
  // better[v] = worlds strictly preferred to v, transitively closed.
  std::vector<std::uint32_t> better(n, 0);
  for (auto [u, v] : prefers) {
    if (u >= n || v >= n) throw malformed("preference refers to a missing world");
    better[v] |= std::uint32_t{1} << u;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t v = 0; v < n; ++v)
      if ((better[v] >> k) & 1U) better[v] |= better[k];
  for (std::size_t v = 0; v < n; ++v) {
    if ((better[v] >> v) & 1U) {
      throw malformed("preference relation is cyclic through world " + worlds.name(v));
    }
  }

  const auto m = worlds.event_count();
  auto dominated = [&](std::uint32_t a, std::uint32_t b) {
    std::uint32_t rest = a & ~b;
    while (rest != 0) {
      const auto w = static_cast<std::size_t>(std::countr_zero(rest));
      if ((better[w] & b) == 0) return false;
      rest &= rest - 1;
    }
    return true;
  };
  std::vector<std::uint8_t> rel(m * m, 0);
  for (std::uint32_t a = 0; a < m; ++a)
    for (std::uint32_t b = 0; b < m; ++b) rel[a * m + b] = dominated(a, b) ? 1 : 0;

  // Quotient events that dominate each other.
  std::vector<Elem> cls(m, 0);
  std::vector<std::uint32_t> reps;
  for (std::uint32_t a = 0; a < m; ++a) {
    bool found = false;
    for (std::size_t c = 0; c < reps.size(); ++c) {
      const auto r = reps[c];
      if (rel[a * m + r] && rel[r * m + a]) {
        cls[a] = static_cast<Elem>(c);
        found = true;
        break;
      }
    }
    if (!found) {
      cls[a] = static_cast<Elem>(reps.size());
      reps.push_back(a);
    }
  }
  const auto k = reps.size();
  std::vector<std::string> labels;
  for (auto r : reps) labels.push_back(worlds.render(Event(r)));
  std::vector<std::uint8_t> order(k * k, 0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) order[i * k + j] = rel[reps[i] * m + reps[j]];
  auto domain = std::make_shared<Poset>(
      Poset::from_matrix(std::move(labels), std::move(order), cls.front(), cls.back()));
  if (!verify_poset(*domain).passed()) {
    throw Error(ErrorKind::construction_failure, "preference domination order is not a poset");
  }
  return PlSpace(worlds, std::move(domain), std::move(cls), MeasureKind::preference);
}

PlSpace from_qualitative(const WorldSet& worlds, const std::vector<long>& score) {
  const auto m = worlds.event_count();
  if (score.size() != m) throw malformed("qualitative order must rank every event");
  for (std::size_t b = 0; b < m; ++b) {
    if (score[b] < score[0]) throw malformed("the empty set must be least plausible");
    if (score[b] > score[m - 1]) throw malformed("W must be most plausible");
  }
  for (std::uint32_t b = 1; b < m; ++b) {
    for (std::uint32_t rest = b; rest != 0; rest &= rest - 1) {
      const std::uint32_t a = b & ~(rest & (~rest + 1));
      if (score[a] > score[b]) {
        throw malformed("A1 violated: " + worlds.render(Event(a)) + " ranked above " +
                        worlds.render(Event(b)));
      }
    }
  }
  std::set<long> distinct(score.begin(), score.end());
  if (distinct.size() < 2) throw malformed("qualitative order must separate empty set and W");
  std::vector<long> levels(distinct.begin(), distinct.end());
  std::vector<std::string> labels;
  for (long l : levels) labels.push_back("q" + std::to_string(l));
  auto domain = std::make_shared<const Poset>(Poset::chain(std::move(labels)));
  std::vector<Elem> assign;
  for (long s : score) {
    assign.push_back(
        static_cast<Elem>(std::lower_bound(levels.begin(), levels.end(), s) - levels.begin()));
  }
  return PlSpace(worlds, std::move(domain), std::move(assign), MeasureKind::qualitative);
}

Rational rational_value(const PlSpace& s, Event e) { return parse_rational(s.label(e)); }

Rank rank_value(const PlSpace& s, Event e) { return parse_rank(s.label(e)); }

DualOrder dual_compare(const PlSpace& s, Event a, Event b) {
  const auto& ws = s.worlds();
  const Event ca = ws.complement(a);
  const Event cb = ws.complement(b);
  const bool le = s.leq(cb, ca);
  const bool ge = s.leq(ca, cb);
  if (le && ge) return DualOrder::eq;
  if (le) return DualOrder::leq;
  if (ge) return DualOrder::geq;
  return DualOrder::incomparable;
}

}  // namespace plaus
