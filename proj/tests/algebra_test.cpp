#include <gtest/gtest.h>

#include "plaus/algebra.hpp"
#include "plaus/axioms.hpp"
#include "plaus/error.hpp"
#include "support.hpp"

using namespace plaus;
using namespace testing_support;

namespace {

std::size_t ext_elem(const DecompExtension& x, std::string_view label) {
  return x.space.domain().at(label);
}

}  // namespace

TEST(ExtractOplus, ProbabilityAddsValues) {
  const auto s = fix_c();
  const auto op = extract_oplus(s);
  const auto& d = s.domain();
  EXPECT_EQ(op.apply(d.at("1/4"), d.at("1/2")), d.at("3/4"));
  EXPECT_EQ(op.apply(d.at("1/4"), d.at("1/4")), d.at("1/2"));
  EXPECT_EQ(op.apply(d.at("0"), d.at("3/4")), d.at("3/4"));
  EXPECT_FALSE(op.apply(d.at("3/4"), d.at("1/2")).has_value());
}

TEST(ExtractOplus, PossibilityTakesMax) {
  const auto s = fix_a();
  const auto op = extract_oplus(s);
  const auto& d = s.domain();
  EXPECT_EQ(op.apply(d.at("1/4"), d.at("1/2")), d.at("1/2"));
  EXPECT_EQ(op.apply(d.at("3/4"), d.at("1/4")), d.at("3/4"));
  EXPECT_EQ(op.apply(d.at("1/2"), d.at("1")), d.at("1"));
}

TEST(ExtractOplus, KappaTakesMinimumRank) {
  const auto s = kappa_fixture();
  const auto op = extract_oplus(s);
  const auto& d = s.domain();
  EXPECT_EQ(op.apply(d.at("1"), d.at("2")), d.at("1"));
  EXPECT_EQ(op.apply(d.at("2"), d.at("inf")), d.at("2"));
  EXPECT_EQ(op.apply(d.at("0"), d.at("2")), d.at("0"));
}

TEST(ExtractOplus, NumericSumsMatchArithmetic) {
  Rng rng(21);
  for (int t = 0; t < 30; ++t) {
    const auto n = 1 + rng() % 4;
    const auto pr = random_probability(n, rng);
    const auto po = random_possibility(n, rng);
    const auto pr_op = extract_oplus(pr);
    const auto po_op = extract_oplus(po);
    for (const auto& [args, r] : pr_op.entries()) {
      EXPECT_EQ(parse_rational(pr.domain().label(args.first)) +
                    parse_rational(pr.domain().label(args.second)),
                parse_rational(pr.domain().label(r)));
    }
    for (const auto& [args, r] : po_op.entries()) {
      EXPECT_EQ(std::max(parse_rational(po.domain().label(args.first)),
                         parse_rational(po.domain().label(args.second))),
                parse_rational(po.domain().label(r)));
    }
  }
}

TEST(ExtractOplus, BeliefThrowsWithDecompWitness) {
  const auto s = fix_b();
  try {
    extract_oplus(s);
    FAIL() << "expected CheckFailure";
  } catch (const CheckFailure& e) {
    const auto& r = e.report();
    ASSERT_EQ(r.verdict, Verdict::fail);
    ASSERT_FALSE(r.witnesses.empty());
    const auto& w = r.witnesses.front();
    const Event a = w.event("A"), b = w.event("B"), a2 = w.event("A'"), b2 = w.event("B'");
    EXPECT_TRUE((a & b).empty());
    EXPECT_TRUE((a2 & b2).empty());
    EXPECT_EQ(s(a), s(a2));
    EXPECT_EQ(s(b), s(b2));
    EXPECT_NE(s(a | b), s(a2 | b2));
  }
}

TEST(DecompExtension, IncomparableSingletons) {
  auto base = std::make_shared<const Poset>(
      Poset::closure_of({"0", "a", "b", "1"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}, 0, 3));
  const WorldSet ws({"x", "y"});
  const auto ext = minimal_decomposable_extension(ws, base, {1, 2});
  const auto& s = ext.space;
  EXPECT_EQ(s.label(ev(s, "{x}")), "{a}");
  EXPECT_EQ(s.label(ev(s, "{y}")), "{b}");
  EXPECT_FALSE(s.leq(ev(s, "{x}"), ev(s, "{y}")));
  EXPECT_FALSE(s.leq(ev(s, "{y}"), ev(s, "{x}")));
  EXPECT_EQ(s.label(ev(s, "{x,y}")), "top");
  EXPECT_TRUE(check_A1(s).passed());
  EXPECT_TRUE(check_decomp(s, true).passed());
}

TEST(DecompExtension, RepeatedValuesStayDistinct) {
  auto base = std::make_shared<const Poset>(Poset::chain({"0", "a", "b", "1"}));
  const WorldSet ws({"u", "v", "w"});
  const auto ext = minimal_decomposable_extension(ws, base, {1, 1, 2});
  const auto& s = ext.space;
  EXPECT_EQ(s.label(ev(s, "{u,v}")), "{a,a}");
  EXPECT_EQ(s.label(ev(s, "{u,w}")), "{a,b}");
  EXPECT_TRUE(s.domain().lt(ext_elem(ext, "{a,a}"), ext_elem(ext, "{a,b}")));
  EXPECT_TRUE(s.domain().lt(ext_elem(ext, "{b}"), ext_elem(ext, "{a,b}")));
  EXPECT_TRUE(s.domain().lt(ext_elem(ext, "{a}"), ext_elem(ext, "{b}")));
  EXPECT_EQ(s.label(ev(s, "{u,v,w}")), "top");
}

TEST(DecompExtension, SingleTopWorldDominates) {
  auto base = std::make_shared<const Poset>(Poset::chain({"0", "a", "1"}));
  const WorldSet ws({"u", "v", "w"});
  const auto ext = minimal_decomposable_extension(ws, base, {0, 2, 0});
  const auto& s = ext.space;
  for (std::uint32_t a = 0; a < ws.event_count(); ++a) {
    const Event A(a);
    if (A.contains(1)) {
      EXPECT_EQ(s(A), s.domain().top()) << ws.render(A);
    } else {
      EXPECT_TRUE(s.is_bottom(A)) << ws.render(A);
    }
  }
}

TEST(DecompExtension, ExhaustiveSmallPosetsSatisfyLaws) {
  std::size_t cases = 0;
  for (const auto& base : small_posets()) {
    const Poset& p = *base;
    for (std::size_t n = 1; n <= 4; ++n) {
      const auto ws = WorldSet::numbered(n);
      for_each_assignment(n, p.size(), [&](const std::vector<Elem>& pl) {
        if (all_bottom(p, pl)) return;
        ++cases;
        const auto ext = minimal_decomposable_extension(ws, base, pl);
        const auto& s = ext.space;
        const auto& d = s.domain();
        ASSERT_TRUE(verify_poset(d).passed());
        EXPECT_TRUE(check_A1(s).passed());
        EXPECT_TRUE(check_decomp(s, true).passed());
        EXPECT_EQ(ext.oplus.entries().size(), d.size() * d.size());
        const auto props = op_properties(ext.oplus);
        EXPECT_TRUE(props.commutative.passed());
        EXPECT_TRUE(props.associative.passed());
        EXPECT_TRUE(props.monotonic.passed());
        EXPECT_TRUE(props.additive.passed());
        // The table agrees with the space on every disjoint pair.
        for (std::uint32_t a = 0; a < ws.event_count(); ++a)
          for (std::uint32_t b = 0; b < ws.event_count(); ++b) {
            if ((a & b) != 0) continue;
            EXPECT_EQ(ext.oplus.apply(s(Event(a)), s(Event(b))), s(Event(a | b)));
          }
        // Singletons keep the pointwise order wherever they are not collapsed.
        for (std::size_t v = 0; v < n; ++v)
          for (std::size_t w = 0; w < n; ++w) {
            const Event V = Event::singleton(v), W = Event::singleton(w);
            if (p.leq(pl[v], pl[w])) {
              EXPECT_TRUE(s.leq(V, W));
            }
            if (ext.values[s(V)] && ext.values[s(W)]) {
              EXPECT_EQ(s.leq(V, W), p.leq(pl[v], pl[w]));
            }
          }
      });
    }
  }
  EXPECT_GT(cases, 300U);
}

TEST(DecompExtension, MinimalAgainstCompatibleNumericSpaces) {
  Rng rng(5);
  std::size_t checked = 0;
  for (const auto& base : small_posets()) {
    const Poset& p = *base;
    for (std::size_t n = 1; n <= 4; ++n) {
      const auto ws = WorldSet::numbered(n);
      for_each_assignment(n, p.size(), [&](const std::vector<Elem>& pl) {
        if (all_bottom(p, pl)) return;
        const auto ext = minimal_decomposable_extension(ws, base, pl);
        for (int t = 0; t < 100; ++t) {
          if (auto w = compatible_probability(p, pl, rng)) {
            const auto r = check_minimality(ext, from_probability(ws, *w));
            ASSERT_EQ(r.verdict, Verdict::pass) << r.detail;
            ++checked;
          }
          if (auto w = compatible_possibility(p, pl, rng)) {
            const auto r = check_minimality(ext, from_possibility(ws, *w));
            ASSERT_EQ(r.verdict, Verdict::pass) << r.detail;
            ++checked;
          }
        }
      });
    }
  }
  EXPECT_GT(checked, 10000U);
}

TEST(DecompExtension, MinimalAgainstItself) {
  auto base = std::make_shared<const Poset>(Poset::chain({"0", "a", "b", "1"}));
  const auto ws = WorldSet::numbered(3);
  const auto ext = minimal_decomposable_extension(ws, base, {1, 2, 1});
  EXPECT_EQ(check_minimality(ext, ext.space).verdict, Verdict::pass);
}

TEST(DecompExtension, MinimalityNotApplicable) {
  auto base = std::make_shared<const Poset>(Poset::chain({"0", "a", "b", "1"}));
  const auto ws = WorldSet::numbered(3);
  const auto ext = minimal_decomposable_extension(ws, base, {1, 2, 0});
  const Rational h(1, 2), q(1, 4), z(0);
  // Reverses w1 and w2.
  EXPECT_EQ(check_minimality(ext, from_probability(ws, {Rational(3, 4), q, z})).verdict,
            Verdict::not_applicable);
  // Lifts the bottom world.
  EXPECT_EQ(check_minimality(ext, from_probability(ws, {q, h, q})).verdict,
            Verdict::not_applicable);
  // Not decomposable.
  const MassFunction m{{{Event::singleton(0), q}, {ws.full(), Rational(3, 4)}}};
  EXPECT_EQ(check_minimality(ext, from_belief(ws, m)).verdict, Verdict::not_applicable);
}

TEST(DecompExtension, RejectsBadInput) {
  auto base = std::make_shared<const Poset>(Poset::chain({"0", "1"}));
  const auto ws = WorldSet::numbered(2);
  EXPECT_THROW(minimal_decomposable_extension(ws, base, {1}), Error);
  EXPECT_THROW(minimal_decomposable_extension(ws, base, {1, 5}), Error);
  try {
    minimal_decomposable_extension(ws, base, {0, 0});
    FAIL() << "expected precondition error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::precondition);
  }
}

TEST(NonassocSearch, FindsVerifiedWitness) {
  const auto w = search_nonassociative_oplus(5, 1000, 7);
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(verify_nonassoc(*w));
  EXPECT_NE(w->left, w->right);
  const auto& s = w->space;
  const auto& d = s.domain();
  const auto& t = w->witness;
  const auto d12 = d.at(t.value("C"));
  const auto d23 = d.at(t.value("H"));
  const std::pair<const char*, const char*> pairs[] = {{"A", "B"}, {"C", "D"}, {"E", "F"}, {"G", "H"}};
  const Elem sums[] = {d12, w->left, d23, w->right};
  for (std::size_t k = 0; k < 4; ++k) {
    const Event x = t.event(pairs[k].first), y = t.event(pairs[k].second);
    EXPECT_TRUE((x & y).empty());
    EXPECT_EQ(s(x | y), sums[k]);
  }
  EXPECT_EQ(s(t.event("A")), w->d1);
  EXPECT_EQ(s(t.event("B")), w->d2);
  EXPECT_EQ(s(t.event("D")), w->d3);
  EXPECT_EQ(d.label(w->left), t.value("left"));
  EXPECT_EQ(d.label(w->right), t.value("right"));
}

TEST(NonassocSearch, Deterministic) {
  const auto a = search_nonassociative_oplus(5, 1000, 7);
  const auto b = search_nonassociative_oplus(5, 1000, 7);
  ASSERT_TRUE(a && b);
  EXPECT_EQ(a->sample, b->sample);
  EXPECT_EQ(a->space.worlds(), b->space.worlds());
  EXPECT_EQ(a->d1, b->d1);
  EXPECT_EQ(a->witness.note, b->witness.note);
}

TEST(NonassocSearch, EmptyBudgetFindsNothing) {
  EXPECT_FALSE(search_nonassociative_oplus(5, 0, 7).has_value());
}

TEST(NonassocSearch, RejectsWorldBounds) {
  EXPECT_THROW(search_nonassociative_oplus(1, 10, 7), Error);
  EXPECT_THROW(search_nonassociative_oplus(7, 10, 7), Error);
}

TEST(NonassocSearch, NumericFamiliesAreAssociative) {
  Rng rng(8);
  for (int t = 0; t < 40; ++t) {
    const auto n = 1 + rng() % 5;
    for (const auto& s : {random_probability(n, rng), random_possibility(n, rng),
                          random_kappa(n, rng)}) {
      EXPECT_TRUE(op_properties(extract_oplus(s)).associative.passed());
    }
  }
}
