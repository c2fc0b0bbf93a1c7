#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "plaus/cond_space.hpp"
#include "plaus/report.hpp"
#include "plaus/space.hpp"

namespace plaus {

/// Ordered list of at most 4 distinct atom names.
class Vocabulary {
 public:
  explicit Vocabulary(std::vector<std::string> atoms);
  const std::vector<std::string>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  std::size_t index_of(std::string_view atom) const;

 private:
  std::vector<std::string> atoms_;
};

/// World i assigns atom j the value of bit (k-1-j) of i; the name is the
/// assignment as a 0/1 string in vocabulary order.
WorldSet worlds_of(const Vocabulary& vocab);

class Formula {
 public:
  enum class Op { atom, constant, negation, conjunction, disjunction, implication };

  /// Grammar, loosest first: `=>` (right associative), `|`, `&`, `!`.
  /// Atoms are identifiers from the vocabulary; `true` and `false` are
  /// constants.
  static Formula parse(std::string_view text, const Vocabulary& vocab);
  static Formula atom(std::size_t index);
  static Formula constant(bool value);
  Formula operator!() const;
  Formula operator&(const Formula& rhs) const;
  Formula operator|(const Formula& rhs) const;
  Formula implies(const Formula& rhs) const;

  bool holds(std::uint32_t world, std::size_t vocab_size) const;
  std::string render(const Vocabulary& vocab) const;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Event extension(const Formula& f, const Vocabulary& vocab);

struct Default {
  Formula antecedent;
  Formula consequent;
  /// Parses `phi -> psi`.
  static Default parse(std::string_view text, const Vocabulary& vocab);
  std::string render(const Vocabulary& vocab) const;
};

/// Pl(a) = bottom or Pl(a & b) > Pl(a & !b); incomparable values count as
/// false.
bool satisfies_default(const PlSpace& s, Event a, Event b);
bool satisfies_default(const PlSpace& s, const Default& d, const Vocabulary& vocab);

bool is_qualitative(const PlSpace& s);

/// One report per rule REF, LLE, RW, AND, OR, CM, instantiated over all
/// events, which is what formulas denote up to equivalence.
std::vector<CheckReport> klm_rules_check(const PlSpace& s);

enum class Irrelevance {
  /// c & b -> a holds iff c -> a holds.
  biconditional,
  /// Both c -> a and c & b -> a hold.
  both_accepted,
  /// Pl(b & c) = bottom, or b is biconditionally irrelevant to both c -> a
  /// and c -> !a.
  two_sided,
};

/// Default satisfaction is read in the unconditional layer of `c`.
bool irrelevant(const CondPlSpace& c, Event b, Event cond, Event a,
                Irrelevance kind = Irrelevance::biconditional);

struct KnowledgeBase {
  Vocabulary vocab;
  std::vector<Default> defaults;
  /// Header `vocab p q ...`, then one `phi -> psi` per line. Blank lines and
  /// lines starting with '#' are skipped.
  static KnowledgeBase parse(std::string_view text);
};

}  // namespace plaus
