#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plaus/cond_space.hpp"
#include "plaus/poset.hpp"
#include "plaus/report.hpp"
#include "plaus/space.hpp"

namespace plaus {

enum class ConditioningKind { probability, kappa, possibility_min, possibility_div };

std::string_view to_string(ConditioningKind k);

/// Textbook conditioning for the numeric instances. Conditioners with
/// Pl(B) = bottom yield the degenerate all-bottom member.
CondPlSpace condition_standard(const PlSpace& s, ConditioningKind kind);

/// D_A is a private copy of {d : d <= Pl(A)} and Pl_A(B) the copy of Pl(A & B).
CondPlSpace minimal_c1_extension(const PlSpace& s);

/// Table (Pl(A|B,C), Pl(B|C)) -> Pl(A&B|C). Requires a standard space that
/// passes C1 and C2=; otherwise throws CheckFailure with the witness.
PartialOpTable extract_otimes(const CondPlSpace& c);

/// (d1 x d2) x d3 = d1 x (d2 x d3) whenever d1 = Pl(A|B,C,D), d2 = Pl(B|C,D),
/// d3 = Pl(C|D).
CheckReport check_limited_associativity(const CondPlSpace& c, const PartialOpTable& otimes);

/// Table (Pl(A|C), Pl(B|C)) -> Pl(A|B|C) for disjoint A, B. Throws
/// CheckFailure when DECOMP_c= fails.
PartialOpTable extract_conditional_oplus(const CondPlSpace& c);

/// (x1 + x2) * y =_e (x1 * y) + (x2 * y) over every value triple.
CheckReport check_distributivity(const PartialOpTable& otimes, const PartialOpTable& oplus);

/// Canceled formal quotient of multisets of unconditional values.
struct FormalFraction {
  bool bottom = false;
  std::vector<Elem> numerator;    // sorted
  std::vector<Elem> denominator;  // sorted, disjoint from numerator

  static FormalFraction make(std::vector<Elem> num, std::vector<Elem> den);
  static FormalFraction bottom_value() { return FormalFraction{true, {}, {}}; }
  bool is_unit() const { return !bottom && numerator.empty() && denominator.empty(); }

  auto operator<=>(const FormalFraction&) const = default;
};

FormalFraction multiply(const FormalFraction& a, const FormalFraction& b);

struct AlgebraicExtension {
  CondPlSpace space;
  /// Realized fractions and the domain element each one landed in.
  std::vector<FormalFraction> fractions;
  std::vector<Elem> class_of;
  /// Formal product restricted to realized values.
  PartialOpTable otimes;
  std::size_t saturation_rounds = 0;

  std::string render(const FormalFraction& f) const;
  Elem element(const FormalFraction& f) const;
};

/// Conditional extension over canceled formal fractions Pl(A&B)/Pl(B). The
/// order is the least one containing the unconditional order, the
/// same-conditioner comparisons, and closed under monotonicity and
/// invertibility of the formal product. For decomposable inputs it is also
/// closed under DECOMP_c, and classes are merged until the product
/// distributes over the sum. Throws construction-failure if the closure identifies or
/// newly orders unconditional values.
AlgebraicExtension algebraic_extension(const PlSpace& s);

/// Pl1(A) <= Pl1(B) iff Pl2(A) <= Pl2(B) for all events.
bool order_isomorphic(const PlSpace& s1, const PlSpace& s2);

/// Per-conditioner isomorphism of two C1 spaces whose unconditional layers
/// are isomorphic. Unmet hypotheses give a not-applicable report.
CheckReport check_member_isomorphism(const CondPlSpace& c1, const CondPlSpace& c2);

}  // namespace plaus
