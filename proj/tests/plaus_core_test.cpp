#include <gtest/gtest.h>

#include "plaus/algebra.hpp"
#include "plaus/axioms.hpp"
#include "plaus/conditional.hpp"
#include "plaus/error.hpp"
#include "support.hpp"

using namespace plaus;
using namespace testing_support;

TEST(Probability, SubsetSums) {
  const auto s = fix_c();
  EXPECT_EQ(s.label(ev(s, "{w1,w2}")), "1/2");
  const auto t = from_probability(WorldSet::numbered(3),
                                  {Rational(1, 2), Rational(1, 3), Rational(1, 6)});
  EXPECT_EQ(rational_value(t, ev(t, "{w2,w3}")), Rational(1, 2));
  EXPECT_EQ(t.label(Event()), "0");
  EXPECT_EQ(t.label(t.worlds().full()), "1");
  EXPECT_EQ(t.kind(), MeasureKind::probability);
}

TEST(Probability, RejectsBadWeights) {
  EXPECT_THROW(from_probability(WorldSet::numbered(2), {Rational(1, 2), Rational(1, 3)}), Error);
  EXPECT_THROW(from_probability(WorldSet::numbered(2), {Rational(3, 2), Rational(-1, 2)}), Error);
  EXPECT_THROW(from_probability(WorldSet::numbered(2), {Rational(1)}), Error);
}

TEST(Possibility, MaxOverWorlds) {
  const auto s = fix_a();
  EXPECT_EQ(s.label(ev(s, "{w1}")), "1/4");
  EXPECT_EQ(s.label(ev(s, "{w1,w2}")), "1/2");
  EXPECT_EQ(s.label(ev(s, "{w1,w2,w3}")), "3/4");
  EXPECT_EQ(s.label(s.worlds().full()), "1");
  const auto t = from_possibility(WorldSet::numbered(2), {Rational(1, 2), Rational(1)});
  EXPECT_EQ(t.label(ev(t, "{w1}")), "1/2");
  try {
    from_possibility(WorldSet::numbered(2), {Rational(1, 2), Rational(1, 3)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::malformed_input);
  }
}

TEST(Kappa, ReversedRankOrder) {
  const auto s = kappa_fixture();
  // The smallest rank in {w2,w3} is 1.
  EXPECT_EQ(s.label(ev(s, "{w2,w3}")), "1");
  EXPECT_EQ(s.label(ev(s, "{w3}")), "2");
  EXPECT_TRUE(s.lt(ev(s, "{w3}"), ev(s, "{w2}")));
  EXPECT_TRUE(s.lt(ev(s, "{w2}"), ev(s, "{w1}")));
  EXPECT_EQ(s.label(Event()), "inf");
  EXPECT_TRUE(s.is_bottom(Event()));
  EXPECT_EQ(s.label(s.worlds().full()), "0");
  EXPECT_EQ(rank_value(s, ev(s, "{w3}")), Rank{2});
  EXPECT_THROW(from_kappa(WorldSet::numbered(2), {1, 2}), Error);
}

TEST(Belief, SubsetSumOfMasses) {
  const auto b = fix_b();
  EXPECT_EQ(b.label(ev(b, "{a}")), "0");
  EXPECT_EQ(b.label(ev(b, "{b,c}")), "0");
  EXPECT_EQ(b.label(b.worlds().full()), "1");

  const WorldSet ws({"a", "b", "c"});
  const auto s = from_belief(ws, MassFunction{{{ws.parse("{a,b}"), Rational(1, 2)},
                                               {ws.full(), Rational(1, 2)}}});
  EXPECT_EQ(s.label(ws.parse("{a,b}")), "1/2");
  EXPECT_EQ(s.label(ws.parse("{a}")), "0");
}

TEST(Belief, BayesianMassIsProbability) {
  Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 1 + rng() % 4;
    const auto ws = WorldSet::numbered(n);
    const auto w = random_distribution(n, rng, false);
    MassFunction m;
    for (std::size_t i = 0; i < n; ++i) m.masses.emplace_back(Event::singleton(i), w[i]);
    const auto b = from_belief(ws, m);
    const auto p = from_probability(ws, w);
    for (std::uint32_t e = 0; e < ws.event_count(); ++e)
      EXPECT_EQ(rational_value(b, Event(e)), rational_value(p, Event(e)));
  }
}

TEST(Belief, RejectsMalformedMass) {
  const WorldSet ws({"a", "b"});
  EXPECT_THROW(from_belief(ws, MassFunction{{{Event(), Rational(1)}}}), Error);
  EXPECT_THROW(from_belief(ws, MassFunction{{{ws.full(), Rational(1, 2)}}}), Error);
  EXPECT_THROW(from_belief(ws, MassFunction{{{ws.parse("{a}"), Rational(1, 2)},
                                             {ws.parse("{a}"), Rational(1, 2)}}}),
               Error);
}

TEST(Preference, ChainOrdersSingletons) {
  const auto s = fix_e();
  EXPECT_TRUE(s.lt(ev(s, "{b}"), ev(s, "{a}")));
  EXPECT_TRUE(s.lt(ev(s, "{c}"), ev(s, "{b}")));
  // {a} already dominates everything else.
  EXPECT_EQ(s(ev(s, "{a}")), s(s.worlds().full()));
}

TEST(Preference, EmptyRelationLeavesSingletonsIncomparable) {
  const auto s = from_preference(WorldSet({"a", "b", "c"}), {});
  const auto& d = s.domain();
  EXPECT_FALSE(d.comparable(s(ev(s, "{a}")), s(ev(s, "{b}"))));
  EXPECT_TRUE(s.lt(ev(s, "{a}"), ev(s, "{a,b}")));
  EXPECT_TRUE(check_A1(s).passed());
}

TEST(Preference, CyclesRejected) {
  EXPECT_THROW(from_preference(WorldSet({"a", "b"}), {{0, 1}, {1, 0}}), Error);
  EXPECT_THROW(from_preference(WorldSet({"a"}), {{0, 0}}), Error);
}

TEST(Qualitative, ProbabilityPreorderGivesIsomorphicSpace) {
  Rng rng(9);
  for (int t = 0; t < 30; ++t) {
    const auto p = random_probability(3, rng);
    std::vector<long> score;
    for (std::uint32_t e = 0; e < 8; ++e)
      score.push_back(static_cast<long>(rational_value(p, Event(e)).numerator() * 1000 /
                                        rational_value(p, Event(e)).denominator()));
    const auto q = from_qualitative(p.worlds(), score);
    EXPECT_TRUE(order_isomorphic(p, q));
    EXPECT_EQ(q.domain().size(), p.domain().size());
  }
}

TEST(Qualitative, CoarsestPreorderIsThreeChain) {
  std::vector<long> score(8, 1);
  score[0] = 0;
  score[7] = 2;
  const auto q = from_qualitative(WorldSet::numbered(3), score);
  EXPECT_EQ(q.domain().size(), 3U);
}

TEST(Qualitative, A1ViolationRejectedWithEvents) {
  const WorldSet ws({"a", "b", "c"});
  std::vector<long> score{0, 2, 1, 2, 1, 2, 2, 3};
  EXPECT_NO_THROW(from_qualitative(ws, score));
  score[3] = 1;  // {a,b} below {a}
  try {
    from_qualitative(ws, score);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::malformed_input);
    EXPECT_NE(std::string(e.what()).find("{a,b}"), std::string::npos);
  }
}

TEST(DualOrder, ProbabilityIsSelfDual) {
  const auto s = fix_c();
  for (std::uint32_t a = 0; a < 16; ++a)
    for (std::uint32_t b = 0; b < 16; ++b) {
      const auto d = dual_compare(s, Event(a), Event(b));
      const bool le = s.leq(Event(a), Event(b));
      const bool ge = s.leq(Event(b), Event(a));
      const auto primal = le && ge ? DualOrder::eq
                          : le     ? DualOrder::leq
                          : ge     ? DualOrder::geq
                                   : DualOrder::incomparable;
      EXPECT_EQ(d, primal);
    }
}

TEST(DualOrder, EmptySetIsDualLeast) {
  for (const auto& s : {fix_a(), fix_c(), kappa_fixture(), fix_e()}) {
    for (std::uint32_t a = 0; a < s.worlds().event_count(); ++a) {
      const auto d = dual_compare(s, Event(), Event(a));
      EXPECT_TRUE(d == DualOrder::leq || d == DualOrder::eq);
    }
  }
}

TEST(DualOrder, PossibilityDualIsNecessity) {
  const auto s = fix_a();
  auto nec = [&](std::uint32_t a) {
    return Rational(1) - rational_value(s, s.worlds().complement(Event(a)));
  };
  for (std::uint32_t a = 0; a < 16; ++a)
    for (std::uint32_t b = 0; b < 16; ++b) {
      const auto d = dual_compare(s, Event(a), Event(b));
      EXPECT_EQ(d == DualOrder::leq || d == DualOrder::eq, nec(a) <= nec(b));
      EXPECT_EQ(d == DualOrder::geq || d == DualOrder::eq, nec(b) <= nec(a));
    }
}

TEST(PlSpace, ConstructorInvariants) {
  auto d = std::make_shared<const Poset>(Poset::chain({"0", "1"}));
  const auto ws = WorldSet::numbered(1);
  EXPECT_NO_THROW(PlSpace(ws, d, {0, 1}));
  EXPECT_THROW(PlSpace(ws, d, {1, 1}), Error);
  EXPECT_THROW(PlSpace(ws, d, {0, 0}), Error);
  EXPECT_THROW(PlSpace(ws, d, {0}), Error);
  EXPECT_THROW(PlSpace(ws, d, {0, 2}), Error);
}

namespace {

void expect_valid(const PlSpace& s) {
  EXPECT_TRUE(verify_poset(s.domain()).passed());
  EXPECT_TRUE(s.is_bottom(Event()));
  EXPECT_EQ(s(s.worlds().full()), s.domain().top());
  EXPECT_TRUE(oracle_A1(s));
}

}  // namespace

TEST(Constructors, OutputsAreValidSpacesUpToFiveWorlds) {
  Rng rng(1);
  for (std::size_t n = 1; n <= 5; ++n)
    for (int t = 0; t < 10; ++t) {
      expect_valid(random_probability(n, rng));
      expect_valid(random_possibility(n, rng));
      expect_valid(random_kappa(n, rng));
      expect_valid(random_belief(n, rng));
      expect_valid(random_qualitative(n, rng));
      std::vector<std::pair<std::size_t, std::size_t>> pref;
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
          if (rng() % 2) pref.emplace_back(u, v);
      expect_valid(from_preference(WorldSet::numbered(n), pref));
    }
}

TEST(Constructors, NumericDecomposableFamiliesPassDecomp) {
  Rng rng(2);
  for (std::size_t n = 1; n <= 4; ++n)
    for (int t = 0; t < 10; ++t) {
      EXPECT_TRUE(check_decomp(random_probability(n, rng)).passed());
      EXPECT_TRUE(check_decomp(random_possibility(n, rng)).passed());
      EXPECT_TRUE(check_decomp(random_kappa(n, rng)).passed());
    }
  EXPECT_TRUE(check_decomp(fix_b()).failed());
}
