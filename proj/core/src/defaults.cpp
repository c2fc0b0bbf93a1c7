#include "plaus/defaults.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

#include "plaus/axioms.hpp"
#include "plaus/error.hpp"

namespace plaus {

Vocabulary::Vocabulary(std::vector<std::string> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw malformed("vocabulary must not be empty");
  if (atoms_.size() > 4) throw malformed("vocabulary is limited to 4 atoms");
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const auto& a = atoms_[i];
    if (a.empty() || !(std::isalpha(static_cast<unsigned char>(a[0])) || a[0] == '_'))
      throw malformed("bad atom name '" + a + "'");
    if (a == "true" || a == "false") throw malformed("'" + a + "' is reserved");
    if (std::find(atoms_.begin(), atoms_.begin() + static_cast<long>(i), a) !=
        atoms_.begin() + static_cast<long>(i))
      throw malformed("duplicate atom '" + a + "'");
  }
}

std::size_t Vocabulary::index_of(std::string_view atom) const {
  auto it = std::find(atoms_.begin(), atoms_.end(), atom);
  if (it == atoms_.end()) throw malformed("unknown atom '" + std::string(atom) + "'");
  return static_cast<std::size_t>(it - atoms_.begin());
}

WorldSet worlds_of(const Vocabulary& vocab) {
  const auto k = vocab.size();
  std::vector<std::string> names;
  for (std::uint32_t i = 0; i < (1U << k); ++i) {
    std::string name;
    for (std::size_t j = 0; j < k; ++j) name += ((i >> (k - 1 - j)) & 1U) ? '1' : '0';
    names.push_back(std::move(name));
  }
  return WorldSet(std::move(names));
}

struct Formula::Node {
  Op op;
  std::size_t atom = 0;
  bool value = false;
  std::shared_ptr<const Node> left;
  std::shared_ptr<const Node> right;
};

Formula Formula::atom(std::size_t index) {
  return Formula(std::make_shared<const Node>(Node{Op::atom, index, false, nullptr, nullptr}));
}

Formula Formula::constant(bool value) {
  return Formula(std::make_shared<const Node>(Node{Op::constant, 0, value, nullptr, nullptr}));
}

Formula Formula::operator!() const {
  return Formula(std::make_shared<const Node>(Node{Op::negation, 0, false, node_, nullptr}));
}

Formula Formula::operator&(const Formula& rhs) const {
  return Formula(std::make_shared<const Node>(Node{Op::conjunction, 0, false, node_, rhs.node_}));
}

Formula Formula::operator|(const Formula& rhs) const {
  return Formula(std::make_shared<const Node>(Node{Op::disjunction, 0, false, node_, rhs.node_}));
}

Formula Formula::implies(const Formula& rhs) const {
  return Formula(std::make_shared<const Node>(Node{Op::implication, 0, false, node_, rhs.node_}));
}

bool Formula::holds(std::uint32_t world, std::size_t vocab_size) const {
  const Node& n = *node_;
  auto sub = [&](const std::shared_ptr<const Node>& p) { return Formula(p).holds(world, vocab_size); };
  switch (n.op) {
    case Op::atom: return (world >> (vocab_size - 1 - n.atom)) & 1U;
    case Op::constant: return n.value;
    case Op::negation: return !sub(n.left);
    case Op::conjunction: return sub(n.left) && sub(n.right);
    case Op::disjunction: return sub(n.left) || sub(n.right);
    case Op::implication: return !sub(n.left) || sub(n.right);
  }
  return false;
}

std::string Formula::render(const Vocabulary& vocab) const {
  const Node& n = *node_;
  auto sub = [&](const std::shared_ptr<const Node>& p) {
    const Formula f(p);
    const bool bare = p->op == Op::atom || p->op == Op::constant || p->op == Op::negation;
    return bare ? f.render(vocab) : "(" + f.render(vocab) + ")";
  };
  switch (n.op) {
    case Op::atom: return vocab.atoms()[n.atom];
    case Op::constant: return n.value ? "true" : "false";
    case Op::negation: return "!" + sub(n.left);
    case Op::conjunction: return sub(n.left) + " & " + sub(n.right);
    case Op::disjunction: return sub(n.left) + " | " + sub(n.right);
    case Op::implication: return sub(n.left) + " => " + sub(n.right);
  }
  return {};
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Vocabulary& vocab) : text_(text), vocab_(vocab) {}

  Formula run() {
    Formula f = implication();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw malformed("formula '" + std::string(text_) + "': " + what);
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool eat(std::string_view tok) {
    skip();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  Formula implication() {
    Formula lhs = disjunction();
    if (eat("=>")) return lhs.implies(implication());
    return lhs;
  }
  Formula disjunction() {
    Formula f = conjunction();
    while (eat("|")) f = f | conjunction();
    return f;
  }
  Formula conjunction() {
    Formula f = unary();
    while (eat("&")) f = f & unary();
    return f;
  }
  Formula unary() {
    if (eat("!")) return !unary();
    if (eat("(")) {
      Formula f = implication();
      if (!eat(")")) fail("missing ')'");
      return f;
    }
    skip();
    const auto start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (start == pos_) fail(pos_ < text_.size() ? "unexpected '" + std::string(1, text_[pos_]) + "'"
                                                : "unexpected end");
    const auto word = text_.substr(start, pos_ - start);
    if (word == "true") return Formula::constant(true);
    if (word == "false") return Formula::constant(false);
    return Formula::atom(vocab_.index_of(word));
  }

  std::string_view text_;
  const Vocabulary& vocab_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula Formula::parse(std::string_view text, const Vocabulary& vocab) {
  return Parser(text, vocab).run();
}

Event extension(const Formula& f, const Vocabulary& vocab) {
  std::uint32_t bits = 0;
  for (std::uint32_t w = 0; w < (1U << vocab.size()); ++w)
    if (f.holds(w, vocab.size())) bits |= 1U << w;
  return Event(bits);
}

Default Default::parse(std::string_view text, const Vocabulary& vocab) {
  const auto arrow = text.find("->");
  if (arrow == std::string_view::npos) throw malformed("default '" + std::string(text) + "' needs '->'");
  return Default{Formula::parse(text.substr(0, arrow), vocab),
                 Formula::parse(text.substr(arrow + 2), vocab)};
}

std::string Default::render(const Vocabulary& vocab) const {
  return antecedent.render(vocab) + " -> " + consequent.render(vocab);
}

bool satisfies_default(const PlSpace& s, Event a, Event b) {
  const Event ab = a & b;
  const Event anb = a.minus(b);
  return s.is_bottom(a) || s.lt(anb, ab);
}

bool satisfies_default(const PlSpace& s, const Default& d, const Vocabulary& vocab) {
  if (!(s.worlds() == worlds_of(vocab))) throw malformed("space is not over the vocabulary's worlds");
  return satisfies_default(s, extension(d.antecedent, vocab), extension(d.consequent, vocab));
}

bool is_qualitative(const PlSpace& s) { return check_A2(s).passed() && check_A3(s).passed(); }

std::vector<CheckReport> klm_rules_check(const PlSpace& s) {
  const auto& ws = s.worlds();
  const auto m = static_cast<std::uint32_t>(ws.event_count());
  std::vector<std::uint8_t> sat(std::size_t{m} * m);
  for (std::uint32_t a = 0; a < m; ++a)
    for (std::uint32_t b = 0; b < m; ++b) sat[std::size_t{a} * m + b] = satisfies_default(s, Event(a), Event(b));
  auto holds = [&](std::uint32_t a, std::uint32_t b) { return sat[std::size_t{a} * m + b] != 0; };

  auto report = [](const char* name) { return CheckReport{name, Verdict::pass, {}, 0, {}}; };
  CheckReport ref = report("REF"), lle = report("LLE"), rw = report("RW"), and_ = report("AND"),
              or_ = report("OR"), cm = report("CM");
  auto fail = [&](CheckReport& r, std::vector<std::pair<const char*, std::uint32_t>> terms,
                  const char* note) {
    if (!r.passed()) return;
    r.verdict = Verdict::fail;
    Witness w;
    for (auto [role, e] : terms) w.terms.push_back({role, Event(e), ws.render(Event(e)), s.label(Event(e))});
    w.note = note;
    r.witnesses.push_back(std::move(w));
  };

  // Equivalent formulas denote the same event, so LLE holds outright.
  lle.detail = "antecedents are compared as events";
  for (std::uint32_t a = 0; a < m; ++a) {
    ++ref.search_space;
    if (!holds(a, a)) fail(ref, {{"A", a}}, "A -> A fails");
    for (std::uint32_t b = 0; b < m; ++b) {
      for (std::uint32_t c = 0; c < m; ++c) {
        const bool ab = holds(a, b);
        const bool ac = holds(a, c);
        ++rw.search_space;
        if (ab && (b & ~c) == 0 && !holds(a, c))
          fail(rw, {{"A", a}, {"B", b}, {"C", c}}, "A -> B and B entails C, but not A -> C");
        ++and_.search_space;
        if (ab && ac && !holds(a, b & c))
          fail(and_, {{"A", a}, {"B", b}, {"C", c}}, "A -> B and A -> C, but not A -> B&C");
        ++or_.search_space;
        if (ac && holds(b, c) && !holds(a | b, c))
          fail(or_, {{"A", a}, {"B", b}, {"C", c}}, "A -> C and B -> C, but not A|B -> C");
        ++cm.search_space;
        if (ab && ac && !holds(a & b, c))
          fail(cm, {{"A", a}, {"B", b}, {"C", c}}, "A -> B and A -> C, but not A&B -> C");
      }
    }
  }
  return {ref, lle, rw, and_, or_, cm};
}

bool irrelevant(const CondPlSpace& c, Event b, Event cond, Event a, Irrelevance kind) {
  if (!c.is_standard()) throw Error(ErrorKind::not_applicable, "irrelevance needs a standard space");
  const PlSpace s = c.unconditional();
  const bool before = satisfies_default(s, cond, a);
  const bool after = satisfies_default(s, cond & b, a);
  switch (kind) {
    case Irrelevance::biconditional:
      return before == after;
    case Irrelevance::both_accepted:
      return before && after;
    case Irrelevance::two_sided: {
      if (s.is_bottom(cond & b)) return true;
      const Event na = c.worlds().complement(a);
      return before == after &&
             satisfies_default(s, cond, na) == satisfies_default(s, cond & b, na);
    }
  }
  return false;
}

KnowledgeBase KnowledgeBase::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<Vocabulary> vocab;
  std::vector<Default> defaults;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (!vocab) {
      std::istringstream words(line);
      std::string head;
      words >> head;
      if (head != "vocab") throw malformed("knowledge base must start with a 'vocab' line");
      std::vector<std::string> atoms;
      for (std::string w; words >> w;) atoms.push_back(w);
      vocab.emplace(std::move(atoms));
      continue;
    }
    defaults.push_back(Default::parse(line, *vocab));
  }
  if (!vocab) throw malformed("knowledge base has no 'vocab' line");
  return KnowledgeBase{std::move(*vocab), std::move(defaults)};
}

}  // namespace plaus
