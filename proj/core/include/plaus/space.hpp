#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "plaus/event.hpp"
#include "plaus/poset.hpp"
#include "plaus/rational.hpp"

namespace plaus {

/// Which formalism produced a space. Conditioning uses it to recover numbers
/// from value labels.
enum class MeasureKind {
  probability,
  possibility,
  kappa,
  belief,
  preference,
  qualitative,
  explicit_table,
  extension,
};

std::string_view to_string(MeasureKind k);

/// Plausibility space over a finite world set. The assignment is stored
/// extensionally, one domain element per event (indexed by event bits).
class PlSpace {
 public:
  /// Validates table size, Pl(empty) = bottom and Pl(W) = top. Monotonicity
  /// is not enforced here; see check_A1.
  PlSpace(WorldSet worlds, PosetPtr domain, std::vector<Elem> assign,
          MeasureKind kind = MeasureKind::explicit_table);

  const WorldSet& worlds() const { return worlds_; }
  const Poset& domain() const { return *domain_; }
  const PosetPtr& domain_ptr() const { return domain_; }
  MeasureKind kind() const { return kind_; }
  const std::vector<Elem>& assignment() const { return assign_; }

  Elem operator()(Event e) const { return assign_[e.bits()]; }
  const std::string& label(Event e) const { return domain_->label(assign_[e.bits()]); }
  bool leq(Event a, Event b) const { return domain_->leq((*this)(a), (*this)(b)); }
  bool lt(Event a, Event b) const { return domain_->lt((*this)(a), (*this)(b)); }
  bool is_bottom(Event e) const { return (*this)(e) == domain_->bottom(); }

 private:
  WorldSet worlds_;
  PosetPtr domain_;
  std::vector<Elem> assign_;
  MeasureKind kind_;
};

/// Positive masses on non-empty events, summing to exactly one.
struct MassFunction {
  std::vector<std::pair<Event, Rational>> masses;

  /// Throws malformed-input if the invariants fail.
  void validate(const WorldSet& worlds) const;
};

PlSpace from_probability(const WorldSet& worlds, const std::vector<Rational>& weights);
PlSpace from_possibility(const WorldSet& worlds, const std::vector<Rational>& weights);
/// Domain is ranks under the reversed numeric order: inf is bottom, 0 is top.
PlSpace from_kappa(const WorldSet& worlds, const std::vector<Rank>& ranks);
PlSpace from_belief(const WorldSet& worlds, const MassFunction& m);

/// `prefers` holds pairs (u, v) meaning world u is strictly preferred to v.
/// Domain values are classes of events under the domination order: A <= B iff
/// every world of A \ B is strictly dominated by some world of B.
PlSpace from_preference(const WorldSet& worlds,
                        const std::vector<std::pair<std::size_t, std::size_t>>& prefers);

/// `score[bits]` ranks every event of a total preorder (larger is more
/// plausible). Classes of equal score become the chain domain.
PlSpace from_qualitative(const WorldSet& worlds, const std::vector<long>& score);

/// Builds a chain domain from ascending numeric labels and maps each event.
PlSpace numeric_space(const WorldSet& worlds, const std::vector<Rational>& values,
                      MeasureKind kind);

/// Numeric reading of a label produced by the probability, possibility or
/// belief constructors.
Rational rational_value(const PlSpace& s, Event e);
Rank rank_value(const PlSpace& s, Event e);

enum class DualOrder { leq, geq, eq, incomparable };
std::string_view to_string(DualOrder d);

/// Dual ordering: a <=d b iff Pl(complement a) >= Pl(complement b).
DualOrder dual_compare(const PlSpace& s, Event a, Event b);

}  // namespace plaus
