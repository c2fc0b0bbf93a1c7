#pragma once

#include <vector>

#include "plaus/cond_space.hpp"
#include "plaus/report.hpp"

namespace plaus {

/// Non-empty ordered list of events over one world set.
class EventFamily {
 public:
  explicit EventFamily(std::vector<Event> events);
  const std::vector<Event>& events() const { return events_; }
  std::size_t size() const { return events_.size(); }
  /// Union of the two lists, keeping first occurrences.
  EventFamily joined(const EventFamily& other) const;
  bool shares_event(const EventFamily& other) const;
  std::string render(const WorldSet& ws) const;
  auto operator<=>(const EventFamily&) const = default;

 private:
  std::vector<Event> events_;
};

/// All 2^k intersections. Pattern bit k-1-i set means the complement of
/// event i, so the first atom intersects every event and the last every
/// complement. Empty atoms are kept.
std::vector<Event> atoms(const WorldSet& ws, const EventFamily& fam);

/// Pl(b & cond) = bottom or Pl(a|cond) = Pl(a|b & cond).
bool ind_s(const CondPlSpace& c, Event a, Event b, Event cond);
bool IND_s(const CondPlSpace& c, const EventFamily& a, const EventFamily& b,
           const EventFamily& cond);
/// Pl(b & cond) = bottom or conditioning on b preserves the order among the
/// atoms of `a` given cond.
bool ind_w(const CondPlSpace& c, const EventFamily& a, Event b, Event cond);
bool IND_w(const CondPlSpace& c, const EventFamily& a, const EventFamily& b,
           const EventFamily& cond);

enum class GraphoidRule { symmetry, decomposition, weak_union, contraction };
std::string_view to_string(GraphoidRule r);

/// Checks the selected rules for strong independence over every tuple of
/// pairwise distinct, event-disjoint families taken from `families`.
/// Families are grouped by the partition their atoms generate, so the cost
/// grows with the number of distinct partitions, not of families.
CheckReport semigraphoid_check(const CondPlSpace& c, const std::vector<EventFamily>& families,
                               const std::vector<GraphoidRule>& which);

/// Three reports: independence gives the product form; under C3= the
/// product form also characterizes independence; under DECOMP_c=
/// independence is closed under disjoint union. Each clause is
/// not-applicable when its axioms fail.
std::vector<CheckReport> check_independence_factorization(const CondPlSpace& c);

/// ind_s(A,B|C) iff ind_s(B,A|C). Not-applicable unless C2= and C4= hold; in
/// that case the first asymmetric triple, if any, is attached.
CheckReport check_independence_symmetry(const CondPlSpace& c);

}  // namespace plaus
