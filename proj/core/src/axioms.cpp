#include "plaus/axioms.hpp"

#include <array>
#include <map>
#include <string>

#include "plaus/error.hpp"

namespace plaus {

namespace {

WitnessTerm term(const WorldSet& ws, std::string role, Event e, const std::string& value) {
  return WitnessTerm{std::move(role), e, ws.render(e), value};
}

CheckReport start(std::string name) { return CheckReport{std::move(name), Verdict::pass, {}, 0, {}}; }

void require_small(const CondPlSpace& c, const char* what) {
  if (c.worlds().size() > kMaxConditionalWorlds) {
    throw Error(ErrorKind::precondition,
                std::string(what) + " enumerates conditional tuples and supports at most " +
                    std::to_string(kMaxConditionalWorlds) + " worlds");
  }
}

/// Distinct value triples with the event tuple that first realized them.
template <std::size_t K>
struct Signatures {
  std::vector<std::array<Elem, 3>> values;
  std::vector<std::array<Event, K>> origin;
  std::map<std::array<Elem, 3>, std::size_t> index;
  std::uint64_t tuples = 0;

  void add(std::array<Elem, 3> v, std::array<Event, K> events) {
    ++tuples;
    if (index.emplace(v, values.size()).second) {
      values.push_back(v);
      origin.push_back(events);
    }
  }
};

/// Scans ordered signature pairs; `violates(i, j)` decides one pair. Stops at
/// the first violation, which is the lexicographically first tuple pair.
template <std::size_t K, typename Violates>
std::optional<std::pair<std::size_t, std::size_t>> scan_pairs(const Signatures<K>& sigs,
                                                              Violates&& violates) {
  const auto n = sigs.values.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (violates(sigs.values[i], sigs.values[j])) return std::make_pair(i, j);
  return std::nullopt;
}

template <typename Fn>
void for_disjoint_pairs(const WorldSet& ws, Fn&& fn) {
  const auto full = ws.full().bits();
  for (std::uint32_t a = 0; a <= full; ++a) {
    const std::uint32_t rest = full & ~a;
    // Subsets of `rest` in ascending order.
    for (std::uint32_t b = 0;; b = (b - rest) & rest) {
      fn(Event(a), Event(b));
      if (b == rest) break;
    }
  }
}

}  // namespace

CheckReport check_A1(const PlSpace& s) {
  auto r = start("A1");
  const auto& ws = s.worlds();
  const auto full = ws.full().bits();
  for (std::uint32_t a = 0; a <= full; ++a) {
    const std::uint32_t rest = full & ~a;
    for (std::uint32_t extra = 0;; extra = (extra - rest) & rest) {
      const Event A(a), B(a | extra);
      ++r.search_space;
      if (!s.leq(A, B)) {
        r.verdict = Verdict::fail;
        r.witnesses.push_back(Witness{{term(ws, "A", A, s.label(A)), term(ws, "B", B, s.label(B))},
                                      "A subset of B but Pl(A) not <= Pl(B)"});
        return r;
      }
      if (extra == rest) break;
    }
  }
  return r;
}

CheckReport check_decomp(const PlSpace& s, bool strict) {
  auto r = start(strict ? "DECOMP" : "DECOMP=");
  const auto& ws = s.worlds();
  const auto& d = s.domain();
  Signatures<2> sigs;
  for_disjoint_pairs(ws, [&](Event a, Event b) {
    sigs.add({s(a), s(b), s(a | b)}, {a, b});
  });
  r.search_space = sigs.tuples * sigs.tuples;
  auto hit = scan_pairs(sigs, [&](const auto& p, const auto& q) {
    if (strict) return d.leq(p[0], q[0]) && d.leq(p[1], q[1]) && !d.leq(p[2], q[2]);
    return p[0] == q[0] && p[1] == q[1] && p[2] != q[2];
  });
  if (hit) {
    const auto [A, B] = sigs.origin[hit->first];
    const auto [A2, B2] = sigs.origin[hit->second];
    r.verdict = Verdict::fail;
    r.witnesses.push_back(Witness{{term(ws, "A", A, s.label(A)), term(ws, "B", B, s.label(B)),
                                   term(ws, "A'", A2, s.label(A2)), term(ws, "B'", B2, s.label(B2)),
                                   term(ws, "AuB", A | B, s.label(A | B)),
                                   term(ws, "A'uB'", A2 | B2, s.label(A2 | B2))},
                                  strict ? "Pl(A)<=Pl(A'), Pl(B)<=Pl(B') but Pl(AuB) not <= Pl(A'uB')"
                                         : "equal parts, different unions"});
  }
  return r;
}

CheckReport check_A2(const PlSpace& s) {
  auto r = start("A2");
  const auto& ws = s.worlds();
  const auto full = ws.full().bits();
  for (std::uint32_t a = 0; a <= full; ++a) {
    const std::uint32_t rest_a = full & ~a;
    for (std::uint32_t b = 0;; b = (b - rest_a) & rest_a) {
      const std::uint32_t rest_b = rest_a & ~b;
      for (std::uint32_t c = 0;; c = (c - rest_b) & rest_b) {
        const Event A(a), B(b), C(c);
        ++r.search_space;
        if (s.lt(C, A | B) && s.lt(B, A | C) && !s.lt(B | C, A)) {
          r.verdict = Verdict::fail;
          r.witnesses.push_back(
              Witness{{term(ws, "A", A, s.label(A)), term(ws, "B", B, s.label(B)),
                       term(ws, "C", C, s.label(C)), term(ws, "AuB", A | B, s.label(A | B)),
                       term(ws, "AuC", A | C, s.label(A | C)),
                       term(ws, "BuC", B | C, s.label(B | C))},
                      "Pl(AuB)>Pl(C), Pl(AuC)>Pl(B) but not Pl(A)>Pl(BuC)"});
          return r;
        }
        if (c == rest_b) break;
      }
      if (b == rest_a) break;
    }
  }
  return r;
}

CheckReport check_A3(const PlSpace& s) {
  auto r = start("A3");
  const auto& ws = s.worlds();
  bool done = false;
  for_disjoint_pairs(ws, [&](Event a, Event b) {
    if (done) return;
    ++r.search_space;
    if (s.is_bottom(a) && s.is_bottom(b) && !s.is_bottom(a | b)) {
      r.verdict = Verdict::fail;
      r.witnesses.push_back(Witness{{term(ws, "A", a, s.label(a)), term(ws, "B", b, s.label(b)),
                                     term(ws, "AuB", a | b, s.label(a | b))},
                                    "Pl(A)=Pl(B)=bottom but Pl(AuB) > bottom"});
      done = true;
    }
  });
  return r;
}

CheckReport check_C1(const CondPlSpace& c) {
  require_small(c, "C1");
  auto r = start("C1");
  const auto& ws = c.worlds();
  const auto m = static_cast<std::uint32_t>(ws.event_count());
  for (std::uint32_t a = 0; a < m; ++a)
    for (std::uint32_t b = 0; b < m; ++b)
      for (std::uint32_t cc = 0; cc < m; ++cc)
        for (std::uint32_t e = 0; e < m; ++e) {
          const Event A(a), B(b), C(cc), E(e);
          const Event AE = A & E;
          ++r.search_space;
          const auto& left = c.domain(AE);
          const auto& right = c.domain(E);
          const bool l = left.leq(c.value(B, AE), c.value(C, AE));
          const bool rr = right.leq(c.value(A & B, E), c.value(A & C, E));
          if (l != rr) {
            r.verdict = Verdict::fail;
            r.witnesses.push_back(Witness{
                {term(ws, "A", A, ""), term(ws, "B", B, c.label(B, AE)),
                 term(ws, "C", C, c.label(C, AE)), term(ws, "E", E, ""),
                 term(ws, "A&B", A & B, c.label(A & B, E)),
                 term(ws, "A&C", A & C, c.label(A & C, E))},
                l ? "Pl(B|A,E)<=Pl(C|A,E) but not Pl(A&B|E)<=Pl(A&C|E)"
                  : "Pl(A&B|E)<=Pl(A&C|E) but not Pl(B|A,E)<=Pl(C|A,E)"});
            return r;
          }
        }
  return r;
}

namespace {

/// (Pl(A|B,C), Pl(B|C), Pl(A&B|C)) over all event triples.
Signatures<3> product_signatures(const CondPlSpace& c) {
  Signatures<3> sigs;
  const auto m = static_cast<std::uint32_t>(c.worlds().event_count());
  for (std::uint32_t a = 0; a < m; ++a)
    for (std::uint32_t b = 0; b < m; ++b)
      for (std::uint32_t cc = 0; cc < m; ++cc) {
        const Event A(a), B(b), C(cc);
        sigs.add({c.value(A, B & C), c.value(B, C), c.value(A & B, C)}, {A, B, C});
      }
  return sigs;
}

Witness product_witness(const CondPlSpace& c, const std::array<Event, 3>& one,
                        const std::array<Event, 3>& two, std::string note) {
  const auto& ws = c.worlds();
  auto side = [&](const std::array<Event, 3>& t, const std::string& p, Witness& w) {
    const auto [A, B, C] = t;
    w.terms.push_back(term(ws, "A" + p, A, c.label(A, B & C)));
    w.terms.push_back(term(ws, "B" + p, B, c.label(B, C)));
    w.terms.push_back(term(ws, "C" + p, C, c.label(A & B, C)));
  };
  Witness w;
  side(one, "", w);
  side(two, "'", w);
  w.note = std::move(note);
  return w;
}

std::optional<CheckReport> standard_only(const CondPlSpace& c, const std::string& name) {
  if (c.is_standard()) return std::nullopt;
  auto r = start(name);
  r.verdict = Verdict::not_applicable;
  r.detail = "conditional space is not standard; values across conditioners are incomparable";
  return r;
}

}  // namespace

CheckReport check_C2(const CondPlSpace& c, bool strict) {
  const std::string name = strict ? "C2" : "C2=";
  if (auto na = standard_only(c, name)) return *na;
  require_small(c, "C2");
  auto r = start(name);
  const auto& d = c.shared_domain();
  auto sigs = product_signatures(c);
  r.search_space = sigs.tuples * sigs.tuples;
  auto hit = scan_pairs(sigs, [&](const auto& p, const auto& q) {
    if (strict) return d.leq(p[0], q[0]) && d.leq(p[1], q[1]) && !d.leq(p[2], q[2]);
    return p[0] == q[0] && p[1] == q[1] && p[2] != q[2];
  });
  if (hit) {
    r.verdict = Verdict::fail;
    r.witnesses.push_back(product_witness(
        c, sigs.origin[hit->first], sigs.origin[hit->second],
        "values Pl(A|B,C), Pl(B|C), Pl(A&B|C); the products are not ordered as their factors"));
  }
  return r;
}

CheckReport check_C3(const CondPlSpace& c, bool strict) {
  const std::string name = strict ? "C3" : "C3=";
  if (auto na = standard_only(c, name)) return *na;
  require_small(c, "C3");
  auto r = start(name);
  const auto& d = c.shared_domain();
  const Elem bot = d.bottom();
  auto sigs = product_signatures(c);
  r.search_space = sigs.tuples * sigs.tuples;
  auto hit = scan_pairs(sigs, [&](const auto& p, const auto& q) {
    if (q[1] == bot) return false;
    if (strict) return d.leq(p[2], q[2]) && d.leq(q[1], p[1]) && !d.leq(p[0], q[0]);
    return p[2] == q[2] && p[1] == q[1] && p[0] != q[0];
  });
  if (hit) {
    r.verdict = Verdict::fail;
    r.witnesses.push_back(product_witness(
        c, sigs.origin[hit->first], sigs.origin[hit->second],
        "values Pl(A|B,C), Pl(B|C), Pl(A&B|C); the quotients are not ordered as required"));
  }
  return r;
}

CheckReport check_C4eq(const CondPlSpace& c) {
  if (auto na = standard_only(c, "C4=")) return *na;
  require_small(c, "C4=");
  auto r = start("C4=");
  const Elem bot = c.shared_domain().bottom();
  // Pl(A&B|C) factored as Pl(B|A,C) x Pl(A|C) on the left and as
  // Pl(A'|B',C') x Pl(B'|C') on the right.
  Signatures<3> left;   // (Pl(A&B|C), Pl(A|C), Pl(B|A,C))
  Signatures<3> right;  // (Pl(A'&B'|C'), Pl(A'|B',C'), Pl(B'|C'))
  const auto m = static_cast<std::uint32_t>(c.worlds().event_count());
  for (std::uint32_t a = 0; a < m; ++a)
    for (std::uint32_t b = 0; b < m; ++b)
      for (std::uint32_t cc = 0; cc < m; ++cc) {
        const Event A(a), B(b), C(cc);
        left.add({c.value(A & B, C), c.value(A, C), c.value(B, A & C)}, {A, B, C});
        right.add({c.value(A & B, C), c.value(A, B & C), c.value(B, C)}, {A, B, C});
      }
  r.search_space = left.tuples * right.tuples;
  std::optional<std::pair<std::size_t, std::size_t>> hit;
  for (std::size_t i = 0; i < left.values.size() && !hit; ++i)
    for (std::size_t j = 0; j < right.values.size(); ++j) {
      const auto& p = left.values[i];
      const auto& q = right.values[j];
      if (p[0] == q[0] && p[1] == q[1] && p[1] != bot && p[2] != q[2]) {
        hit = std::make_pair(i, j);
        break;
      }
    }
  if (hit) {
    const auto& ws = c.worlds();
    const auto [A, B, C] = left.origin[hit->first];
    const auto [A2, B2, C2] = right.origin[hit->second];
    Witness w;
    w.terms.push_back(term(ws, "A", A, c.label(A, C)));
    w.terms.push_back(term(ws, "B", B, c.label(B, A & C)));
    w.terms.push_back(term(ws, "C", C, c.label(A & B, C)));
    w.terms.push_back(term(ws, "A'", A2, c.label(A2, B2 & C2)));
    w.terms.push_back(term(ws, "B'", B2, c.label(B2, C2)));
    w.terms.push_back(term(ws, "C'", C2, c.label(A2 & B2, C2)));
    w.note = "values Pl(A|C), Pl(B|A,C), Pl(A&B|C) and Pl(A'|B',C'), Pl(B'|C'), Pl(A'&B'|C'): "
             "Pl(A&B|C)=Pl(A'&B'|C'), Pl(A|C)=Pl(A'|B',C')>bottom but Pl(B|A,C)!=Pl(B'|C')";
    r.verdict = Verdict::fail;
    r.witnesses.push_back(std::move(w));
  }
  return r;
}

CheckReport check_decomp_c(const CondPlSpace& c, DecompScope scope, bool strict) {
  const auto& ws = c.worlds();
  if (scope == DecompScope::local) {
    auto r = start(strict ? "DECOMPC-local" : "DECOMPC=-local");
    const auto m = static_cast<std::uint32_t>(ws.event_count());
    for (std::uint32_t g = 0; g < m; ++g) {
      const Event G(g);
      if (c.degenerate(G)) continue;
      auto inner = check_decomp(c.member(G), strict);
      r.search_space += inner.search_space;
      if (inner.failed()) {
        r.verdict = Verdict::fail;
        for (auto w : inner.witnesses) {
          w.terms.insert(w.terms.begin(), term(ws, "given", G, ""));
          r.witnesses.push_back(std::move(w));
        }
        r.detail = "member Pl_" + ws.render(G) + " is not decomposable";
        return r;
      }
    }
    return r;
  }
  const std::string name = strict ? "DECOMPC" : "DECOMPC=";
  if (auto na = standard_only(c, name)) return *na;
  require_small(c, "DECOMPC");
  auto r = start(name);
  const auto& d = c.shared_domain();
  Signatures<3> sigs;
  const auto m = static_cast<std::uint32_t>(ws.event_count());
  for (std::uint32_t g = 0; g < m; ++g) {
    const Event G(g);
    for_disjoint_pairs(ws, [&](Event a, Event b) {
      sigs.add({c.value(a, G), c.value(b, G), c.value(a | b, G)}, {a, b, G});
    });
  }
  r.search_space = sigs.tuples * sigs.tuples;
  auto hit = scan_pairs(sigs, [&](const auto& p, const auto& q) {
    if (strict) return d.leq(p[0], q[0]) && d.leq(p[1], q[1]) && !d.leq(p[2], q[2]);
    return p[0] == q[0] && p[1] == q[1] && p[2] != q[2];
  });
  if (hit) {
    Witness w;
    for (auto [t, p] : {std::pair{sigs.origin[hit->first], std::string()},
                        std::pair{sigs.origin[hit->second], std::string("'")}}) {
      const auto [A, B, G] = t;
      w.terms.push_back(term(ws, "A" + p, A, c.label(A, G)));
      w.terms.push_back(term(ws, "B" + p, B, c.label(B, G)));
      w.terms.push_back(term(ws, "C" + p, G, c.label(A | B, G)));
    }
    w.note = "values Pl(A|C), Pl(B|C), Pl(AuB|C)";
    r.verdict = Verdict::fail;
    r.witnesses.push_back(std::move(w));
  }
  return r;
}

}  // namespace plaus
