#include "plaus/poset.hpp"

#include <algorithm>
#include <functional>

#include "plaus/error.hpp"

namespace plaus {

Poset::Poset(std::vector<std::string> labels, const std::vector<std::pair<Elem, Elem>>& leq_pairs,
             Elem bottom, Elem top)
    : labels_(std::move(labels)), leq_(labels_.size() * labels_.size(), 0),
      bottom_(bottom), top_(top) {
  const auto n = labels_.size();
  for (auto [a, b] : leq_pairs) {
    if (a >= n || b >= n) throw malformed("order pair refers to a missing element");
    leq_[a * n + b] = 1;
  }
  if (n != 0 && (bottom_ >= n || top_ >= n)) throw malformed("bottom/top out of range");
  index_labels();
}

Poset Poset::from_matrix(std::vector<std::string> labels, std::vector<std::uint8_t> leq,
                         Elem bottom, Elem top) {
  Poset p;
  if (leq.size() != labels.size() * labels.size()) throw malformed("order matrix size mismatch");
  p.labels_ = std::move(labels);
  p.leq_ = std::move(leq);
  p.bottom_ = bottom;
  p.top_ = top;
  p.index_labels();
  return p;
}

Poset Poset::closure_of(std::vector<std::string> labels,
                        const std::vector<std::pair<Elem, Elem>>& pairs, Elem bottom, Elem top) {
  const auto n = labels.size();
  std::vector<std::uint8_t> m(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1;
  for (auto [a, b] : pairs) {
    if (a >= n || b >= n) throw malformed("order pair refers to a missing element");
    m[a * n + b] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (m[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (m[k * n + j]) m[i * n + j] = 1;
  return from_matrix(std::move(labels), std::move(m), bottom, top);
}

Poset Poset::chain(std::vector<std::string> labels) {
  const auto n = labels.size();
  std::vector<std::uint8_t> m(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m[i * n + j] = 1;
  const Elem top = n == 0 ? 0 : static_cast<Elem>(n - 1);
  return from_matrix(std::move(labels), std::move(m), 0, top);
}

void Poset::index_labels() {
  by_label_.clear();
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (!by_label_.emplace(labels_[i], static_cast<Elem>(i)).second) {
      throw malformed("duplicate domain label '" + labels_[i] + "'");
    }
  }
}

std::optional<Elem> Poset::find(std::string_view label) const {
  auto it = by_label_.find(std::string(label));
  if (it == by_label_.end()) return std::nullopt;
  return it->second;
}

Elem Poset::at(std::string_view label) const {
  auto e = find(label);
  if (!e) throw malformed("unknown domain value '" + std::string(label) + "'");
  return *e;
}

namespace {

WitnessTerm value_term(const Poset& p, std::string role, Elem e) {
  return WitnessTerm{std::move(role), std::nullopt, {}, p.label(e)};
}

Witness value_witness(const Poset& p, std::string note,
                      std::initializer_list<std::pair<const char*, Elem>> items) {
  Witness w;
  w.note = std::move(note);
  for (auto [role, e] : items) w.terms.push_back(value_term(p, role, e));
  return w;
}

}  // namespace

CheckReport verify_poset(const Poset& p) {
  if (p.size() == 0) throw malformed("poset has no elements");
  CheckReport r{"poset", Verdict::pass, {}, 0, {}};
  const auto n = static_cast<Elem>(p.size());
  auto fail = [&](Witness w) {
    r.verdict = Verdict::fail;
    r.witnesses.push_back(std::move(w));
  };

  if (n < 2 || p.bottom() == p.top()) {
    fail(value_witness(p, "bottom equals top", {{"bottom", p.bottom()}, {"top", p.top()}}));
  }
  for (Elem a = 0; a < n; ++a) {
    ++r.search_space;
    if (!p.leq(a, a)) {
      fail(value_witness(p, "reflexivity", {{"a", a}}));
      break;
    }
  }
  [&] {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = a + 1; b < n; ++b) {
        ++r.search_space;
        if (p.leq(a, b) && p.leq(b, a)) {
          fail(value_witness(p, "antisymmetry", {{"a", a}, {"b", b}}));
          return;
        }
      }
  }();
  [&] {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) {
        if (!p.leq(a, b)) continue;
        for (Elem c = 0; c < n; ++c) {
          ++r.search_space;
          if (p.leq(b, c) && !p.leq(a, c)) {
            fail(value_witness(p, "transitivity", {{"a", a}, {"b", b}, {"c", c}}));
            return;
          }
        }
      }
  }();
  for (Elem d = 0; d < n; ++d) {
    ++r.search_space;
    if (!p.leq(p.bottom(), d)) {
      fail(value_witness(p, "bottom is least", {{"bottom", p.bottom()}, {"d", d}}));
      break;
    }
  }
  for (Elem d = 0; d < n; ++d) {
    ++r.search_space;
    if (!p.leq(d, p.top())) {
      fail(value_witness(p, "top is greatest", {{"d", d}, {"top", p.top()}}));
      break;
    }
  }
  return r;
}

bool PartialOpTable::define(Elem a, Elem b, Elem r) {
  auto [it, inserted] = map_.emplace(std::make_pair(a, b), r);
  return inserted || it->second == r;
}

std::optional<Elem> PartialOpTable::apply(Elem a, Elem b) const {
  auto it = map_.find({a, b});
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

PropertyReport op_properties(const PartialOpTable& op) {
  const Poset& p = op.carrier();
  const auto n = static_cast<Elem>(p.size());
  const auto& entries = op.entries();
  auto make = [](const char* name) { return CheckReport{name, Verdict::pass, {}, 0, {}}; };
  PropertyReport out{make("commutative"),    make("associative"),
                     make("monotonic"),      make("additive"),
                     make("multiplicative"), make("invertible")};
  auto fail = [&](CheckReport& r, Witness w) {
    if (r.verdict == Verdict::pass) {
      r.verdict = Verdict::fail;
      r.witnesses.push_back(std::move(w));
    }
  };

  for (const auto& [args, res] : entries) {
    ++out.commutative.search_space;
    auto swapped = op.apply(args.second, args.first);
    if (swapped && *swapped != res) {
      fail(out.commutative, value_witness(p, "d1 o d2 != d2 o d1",
                                          {{"d1", args.first}, {"d2", args.second}}));
    }
  }

  for (const auto& [args, d12] : entries) {
    const auto [d1, d2] = args;
    for (Elem d3 = 0; d3 < n; ++d3) {
      auto left = op.apply(d12, d3);
      if (!left) continue;
      auto d23 = op.apply(d2, d3);
      if (!d23) continue;
      auto right = op.apply(d1, *d23);
      if (!right) continue;
      ++out.associative.search_space;
      if (*left != *right) {
        fail(out.associative,
             value_witness(p, "(d1 o d2) o d3 != d1 o (d2 o d3)",
                           {{"d1", d1}, {"d2", d2}, {"d3", d3}, {"left", *left}, {"right", *right}}));
      }
    }
  }

  for (const auto& [a, r1] : entries) {
    for (const auto& [b, r2] : entries) {
      const auto [d1, d2] = a;
      const auto [d3, d4] = b;
      if (p.leq(d1, d3) && p.leq(d2, d4)) {
        ++out.monotonic.search_space;
        if (!p.leq(r1, r2)) {
          fail(out.monotonic, value_witness(p, "d1<=d3, d2<=d4 but d1 o d2 > d3 o d4",
                                            {{"d1", d1}, {"d2", d2}, {"d3", d3}, {"d4", d4}}));
        }
      }
      // d1 o d2 <= d3 o d4 and d2 >= d4 > bottom implies d1 <= d3
      if (p.leq(r1, r2) && p.leq(d4, d2) && d4 != p.bottom()) {
        ++out.invertible.search_space;
        if (!p.leq(d1, d3)) {
          fail(out.invertible,
               value_witness(p, "d1 o d2 <= d3 o d4, d2 >= d4 > bottom, but not d1 <= d3",
                             {{"d1", d1}, {"d2", d2}, {"d3", d3}, {"d4", d4}}));
        }
      }
    }
  }

  for (Elem d = 0; d < n; ++d) {
    auto with_bottom = op.apply(d, p.bottom());
    auto with_top = op.apply(d, p.top());
    ++out.additive.search_space;
    ++out.multiplicative.search_space;
    if (with_bottom && *with_bottom != d) {
      fail(out.additive, value_witness(p, "d o bottom != d", {{"d", d}, {"result", *with_bottom}}));
    }
    if (with_top && *with_top != p.top()) {
      fail(out.additive, value_witness(p, "d o top != top", {{"d", d}, {"result", *with_top}}));
    }
    if (with_bottom && *with_bottom != p.bottom()) {
      fail(out.multiplicative,
           value_witness(p, "d o bottom != bottom", {{"d", d}, {"result", *with_bottom}}));
    }
    if (with_top && *with_top != d) {
      fail(out.multiplicative, value_witness(p, "d o top != d", {{"d", d}, {"result", *with_top}}));
    }
  }
  return out;
}

ValueMultiset::ValueMultiset(const Poset& carrier, const std::vector<Elem>& values) {
  for (Elem e : values) add(carrier, e);
}

void ValueMultiset::add(const Poset& carrier, Elem e, std::uint32_t times) {
  if (e == carrier.bottom() || times == 0) return;
  counts_[e] += times;
}

ValueMultiset ValueMultiset::united(const ValueMultiset& other) const {
  ValueMultiset out = *this;
  for (auto [e, c] : other.counts_) out.counts_[e] += c;
  return out;
}

std::size_t ValueMultiset::total() const {
  std::size_t t = 0;
  for (auto [e, c] : counts_) t += c;
  return t;
}

std::vector<Elem> ValueMultiset::flatten() const {
  std::vector<Elem> out;
  for (auto [e, c] : counts_) out.insert(out.end(), c, e);
  return out;
}

bool injection_order(const ValueMultiset& lower, const ValueMultiset& upper, const Poset& p) {
  const auto left = lower.flatten();
  const auto right = upper.flatten();
  if (left.size() > right.size()) return false;
  // Kuhn's augmenting paths; match[j] is the left occurrence holding right slot j.
  std::vector<int> match(right.size(), -1);
  std::vector<char> seen;
  std::function<bool(std::size_t)> augment = [&](std::size_t i) {
    for (std::size_t j = 0; j < right.size(); ++j) {
      if (seen[j] || !p.leq(left[i], right[j])) continue;
      seen[j] = 1;
      if (match[j] < 0 || augment(static_cast<std::size_t>(match[j]))) {
        match[j] = static_cast<int>(i);
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < left.size(); ++i) {
    seen.assign(right.size(), 0);
    if (!augment(i)) return false;
  }
  return true;
}

}  // namespace plaus
