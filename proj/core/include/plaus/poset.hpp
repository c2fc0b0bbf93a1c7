#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "plaus/report.hpp"

namespace plaus {

/// Index of an element inside a Poset.
using Elem = std::uint32_t;

/// A finite pointed domain of plausibility values. The relation is stored
/// explicitly and is not validated on construction; use verify_poset.
class Poset {
 public:
  Poset() = default;
  Poset(std::vector<std::string> labels, const std::vector<std::pair<Elem, Elem>>& leq_pairs,
        Elem bottom, Elem top);

  /// Reflexive-transitive closure of the given pairs.
  static Poset closure_of(std::vector<std::string> labels,
                          const std::vector<std::pair<Elem, Elem>>& pairs, Elem bottom, Elem top);
  /// Total order, labels listed from bottom to top.
  static Poset chain(std::vector<std::string> labels);
  /// Builds from a dense row-major relation matrix.
  static Poset from_matrix(std::vector<std::string> labels, std::vector<std::uint8_t> leq,
                           Elem bottom, Elem top);

  std::size_t size() const { return labels_.size(); }
  Elem bottom() const { return bottom_; }
  Elem top() const { return top_; }

  bool leq(Elem a, Elem b) const { return leq_[a * labels_.size() + b] != 0; }
  bool lt(Elem a, Elem b) const { return a != b && leq(a, b); }
  bool comparable(Elem a, Elem b) const { return leq(a, b) || leq(b, a); }

  const std::string& label(Elem e) const { return labels_[e]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<Elem> find(std::string_view label) const;
  /// Like find, but throws malformed-input.
  Elem at(std::string_view label) const;

 private:
  void index_labels();

  std::vector<std::string> labels_;
  std::vector<std::uint8_t> leq_;
  Elem bottom_ = 0;
  Elem top_ = 0;
  std::unordered_map<std::string, Elem> by_label_;
};

using PosetPtr = std::shared_ptr<const Poset>;

/// Checks reflexivity, antisymmetry, transitivity and the pointed bounds.
/// Throws malformed-input on an empty element set.
CheckReport verify_poset(const Poset& p);

/// Partial binary operation on the elements of a poset.
class PartialOpTable {
 public:
  PartialOpTable() = default;
  explicit PartialOpTable(PosetPtr carrier) : carrier_(std::move(carrier)) {}

  /// Adds (a, b) -> r to the domain of definition. Returns false if (a, b)
  /// was already mapped to a different value.
  bool define(Elem a, Elem b, Elem r);
  std::optional<Elem> apply(Elem a, Elem b) const;
  bool defined(Elem a, Elem b) const { return map_.count({a, b}) != 0; }

  const Poset& carrier() const { return *carrier_; }
  const PosetPtr& carrier_ptr() const { return carrier_; }
  const std::map<std::pair<Elem, Elem>, Elem>& entries() const { return map_; }
  std::size_t dom_size() const { return map_.size(); }

 private:
  PosetPtr carrier_;
  std::map<std::pair<Elem, Elem>, Elem> map_;
};

/// One report per operation law.
struct PropertyReport {
  CheckReport commutative;
  CheckReport associative;
  CheckReport monotonic;
  CheckReport additive;
  CheckReport multiplicative;
  CheckReport invertible;

  std::vector<const CheckReport*> all() const {
    return {&commutative, &associative, &monotonic, &additive, &multiplicative, &invertible};
  }
};

/// Evaluates every operation law under =_e / <=_e semantics: a law holds
/// vacuously whenever one of its sides is undefined.
PropertyReport op_properties(const PartialOpTable& op);

/// Finite multiset of non-bottom poset elements. Bottom is dropped on
/// insertion, so the empty multiset is the unique all-bottom value.
class ValueMultiset {
 public:
  ValueMultiset() = default;
  ValueMultiset(const Poset& carrier, const std::vector<Elem>& values);

  void add(const Poset& carrier, Elem e, std::uint32_t times = 1);
  ValueMultiset united(const ValueMultiset& other) const;

  const std::map<Elem, std::uint32_t>& counts() const { return counts_; }
  std::size_t total() const;
  bool empty() const { return counts_.empty(); }
  bool contains(Elem e) const { return counts_.count(e) != 0; }
  /// Occurrences flattened in ascending element order.
  std::vector<Elem> flatten() const;

  auto operator<=>(const ValueMultiset&) const = default;

 private:
  std::map<Elem, std::uint32_t> counts_;
};

/// True iff each occurrence in `lower` can be matched to a distinct
/// occurrence in `upper` that is at least as large in `p`.
bool injection_order(const ValueMultiset& lower, const ValueMultiset& upper, const Poset& p);

}  // namespace plaus
