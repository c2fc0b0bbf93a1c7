#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "plaus/poset.hpp"
#include "plaus/report.hpp"
#include "plaus/space.hpp"

namespace plaus {

/// Table (Pl(A), Pl(B)) -> Pl(A u B) over disjoint A, B. Throws CheckFailure
/// carrying the DECOMP= witness when the table would be ill-defined.
PartialOpTable extract_oplus(const PlSpace& s);

/// Decomposable closure of a pointwise assignment. Values are bottom-pruned
/// multisets of base elements under injection order, plus a collapsed top
/// for multisets that contain the base top or are not strictly below the
/// full-world multiset. Throws precondition if every world is bottom.
struct DecompExtension {
  PosetPtr base;
  std::vector<Elem> pl;  // per world
  PlSpace space;
  PartialOpTable oplus;  // total on space.domain()
  /// Multiset behind each element; nullopt for the collapsed top.
  std::vector<std::optional<ValueMultiset>> values;
};

DecompExtension minimal_decomposable_extension(const WorldSet& worlds, PosetPtr base,
                                               const std::vector<Elem>& pl);

/// Ext(A) <= Ext(B) implies Other(A) <= Other(B). Reports not-applicable if
/// `other` is not decomposable or does not respect pl pointwise.
CheckReport check_minimality(const DecompExtension& ext, const PlSpace& other);

struct NonassocWitness {
  PlSpace space;
  Elem d1, d2, d3;
  Elem left, right;       // (d1+d2)+d3 and d1+(d2+d3)
  std::uint64_t sample;   // index of the sampled space
  /// Disjoint pairs realizing the four applications.
  Witness witness;
};

/// Samples decomposable spaces over at most `max_worlds` worlds and returns
/// the first one whose extracted sum is not associative. Deterministic for
/// a fixed seed and budget.
std::optional<NonassocWitness> search_nonassociative_oplus(std::size_t max_worlds,
                                                           std::uint64_t budget,
                                                           std::uint64_t seed);

/// Re-checks a witness: DECOMP holds, all four applications are defined
/// and the groupings differ.
bool verify_nonassoc(const NonassocWitness& w);

}  // namespace plaus
