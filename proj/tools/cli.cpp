#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>

#include "plaus/algebra.hpp"
#include "plaus/axioms.hpp"
#include "plaus/conditional.hpp"
#include "plaus/defaults.hpp"
#include "plaus/error.hpp"
#include "plaus/independence.hpp"
#include "plaus/measure_file.hpp"

namespace plausctl {

using namespace plaus;

namespace {

enum class Format { text, records };

struct Options {
  std::string file;
  std::vector<std::string> axioms;
  std::string conditioning;
  Format format = Format::text;
  std::string query;
  std::string mode;
  std::string search_kind;
  std::string kb;
  std::size_t max_worlds = 5;
  std::uint64_t budget = 10000;
  std::uint64_t seed = 1;
};

/// Input problems that should end with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Printer {
 public:
  Printer(std::ostream& os, Format f) : os_(os), format_(f) {}

  void report(const CheckReport& r, bool commented = false) {
    std::ostringstream buf;
    if (format_ == Format::records) {
      write_record(buf, r);
    } else {
      write_text(buf, r);
    }
    emit(buf.str(), commented);
  }
  void line(const std::string& text, bool commented = false) { emit(text + "\n", commented); }
  Format format() const { return format_; }
  std::ostream& stream() { return os_; }

 private:
  void emit(const std::string& text, bool commented) {
    if (!commented) {
      os_ << text;
      return;
    }
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) os_ << "# " << l << '\n';
  }

  std::ostream& os_;
  Format format_;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::string unquote(std::string s) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

/// Splits on `sep` outside braces and parentheses.
std::vector<std::string> split_top(std::string_view s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '{' || ch == '(') ++depth;
    if (ch == '}' || ch == ')') --depth;
    if (ch == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(trim(cur));
  return out;
}

class Session {
 public:
  Session(const Options& opt, Printer& out) : opt_(opt), out_(out), file_(read_measure_file(opt.file)) {}

  const MeasureFile& file() const { return file_; }

  const PlSpace& space() const {
    if (!file_.space) throw UsageError("a pointwise file only supports 'extend --mode decomposable'");
    return *file_.space;
  }

  std::string conditioning_name() const {
    if (!opt_.conditioning.empty()) return opt_.conditioning;
    return file_.conditioning.value_or("");
  }

  const CondPlSpace& conditional() {
    if (cond_) return *cond_;
    const auto name = conditioning_name();
    if (name.empty() || (name == "explicit" && file_.conditional)) {
      if (!file_.conditional) {
        throw UsageError("conditional query or axiom needs --conditioning or a conditional file");
      }
      cond_ = *file_.conditional;
    } else if (name == "prob" || name == "kappa" || name == "min" || name == "div") {
      static const std::map<std::string, ConditioningKind> kinds{
          {"prob", ConditioningKind::probability},
          {"kappa", ConditioningKind::kappa},
          {"min", ConditioningKind::possibility_min},
          {"div", ConditioningKind::possibility_div}};
      cond_ = condition_standard(space(), kinds.at(name));
    } else if (name == "minimal") {
      cond_ = minimal_c1_extension(space());
    } else if (name == "algebraic") {
      cond_ = algebraic_extension(space()).space;
    } else {
      throw UsageError("unknown conditioning '" + name + "'");
    }
    return *cond_;
  }

  Event event(const std::string& text) const {
    const auto t = trim(text);
    if (!t.empty() && t.front() == '{') return file_.worlds.parse(t);
    if (!file_.vocab) throw UsageError("formula '" + t + "' needs a vocab file; write events as {..}");
    return extension(Formula::parse(t, *file_.vocab), *file_.vocab);
  }

  EventFamily family(const std::string& text) const {
    std::vector<Event> events;
    for (const auto& part : split_top(text, ',')) events.push_back(event(part));
    return EventFamily(std::move(events));
  }

  std::pair<Event, Event> default_events(const std::string& text) const {
    const auto s = unquote(text);
    const auto arrow = s.find("->");
    if (arrow == std::string::npos) throw UsageError("default '" + s + "' needs '->'");
    return {event(s.substr(0, arrow)), event(s.substr(arrow + 2))};
  }

 private:
  const Options& opt_;
  Printer& out_;
  MeasureFile file_;
  std::optional<CondPlSpace> cond_;
};

const std::vector<std::string> kUnconditional{"A1", "A2", "A3", "DECOMP", "DECOMP="};
const std::vector<std::string> kConditional{"C1",  "C2",      "C2=",      "C3",   "C3=",
                                            "C4=", "DECOMPC", "DECOMPC=", "LOCAL"};

int cmd_check(const Options& opt, Printer& out) {
  Session s(opt, out);
  std::vector<std::string> axioms = opt.axioms;
  if (axioms.empty()) {
    axioms = {"A1", "DECOMP", "A2", "A3"};
    if (s.file().conditional || !s.conditioning_name().empty())
      axioms.insert(axioms.end(), kConditional.begin(), kConditional.end());
  }
  for (const auto& a : axioms) {
    const bool known = std::count(kUnconditional.begin(), kUnconditional.end(), a) +
                       std::count(kConditional.begin(), kConditional.end(), a);
    if (!known) throw UsageError("unknown axiom '" + a + "'");
  }
  bool all = true;
  for (const auto& a : axioms) {
    CheckReport r;
    if (a == "A1") r = check_A1(s.space());
    else if (a == "A2") r = check_A2(s.space());
    else if (a == "A3") r = check_A3(s.space());
    else if (a == "DECOMP") r = check_decomp(s.space(), true);
    else if (a == "DECOMP=") r = check_decomp(s.space(), false);
    else {
      const auto& c = s.conditional();
      if (a == "C1") r = check_C1(c);
      else if (a == "C2") r = check_C2(c, true);
      else if (a == "C2=") r = check_C2(c, false);
      else if (a == "C3") r = check_C3(c, true);
      else if (a == "C3=") r = check_C3(c, false);
      else if (a == "C4=") r = check_C4eq(c);
      else if (a == "DECOMPC") r = check_decomp_c(c, DecompScope::global, true);
      else if (a == "DECOMPC=") r = check_decomp_c(c, DecompScope::global, false);
      else r = check_decomp_c(c, DecompScope::local, true);
    }
    out.report(r);
    all = all && r.passed();
  }
  return all ? 0 : 1;
}

struct QueryResult {
  std::string result;
  std::vector<std::pair<std::string, std::string>> terms;
};

void print_query(Printer& out, const std::string& query, const QueryResult& r) {
  if (out.format() == Format::records) {
    nlohmann::ordered_json j;
    j["query"] = query;
    j["result"] = r.result;
    auto terms = nlohmann::ordered_json::array();
    for (const auto& [k, v] : r.terms) terms.push_back({{"term", k}, {"value", v}});
    j["terms"] = terms;
    out.line(j.dump());
    return;
  }
  std::string line = query + ": " + r.result;
  if (!r.terms.empty()) {
    line += "  [";
    for (std::size_t i = 0; i < r.terms.size(); ++i)
      line += (i ? ", " : "") + r.terms[i].first + " = " + r.terms[i].second;
    line += "]";
  }
  out.line(line);
}

const char* truth(bool b) { return b ? "true" : "false"; }

int cmd_query(const Options& opt, Printer& out) {
  Session s(opt, out);
  const std::string q = trim(opt.query);
  QueryResult r;
  auto starts = [&](std::string_view p) { return q.rfind(p, 0) == 0; };
  auto world_render = [&](Event e) { return s.file().worlds.render(e); };

  // With a conditional term present, P(B) is read as P(B|W) so both sides
  // share the conditional domain.
  const bool conditional_terms = q.find('|') != std::string::npos;

  // Value of one P(..) term; returns label and the domain it lives in.
  auto term = [&](const std::string& text) -> std::pair<Elem, const Poset*> {
    const auto t = trim(text);
    if (t.size() < 4 || t.substr(0, 2) != "P(" || t.back() != ')')
      throw UsageError("expected P(B) or P(B|A), got '" + t + "'");
    const auto inner = t.substr(2, t.size() - 3);
    const auto parts = split_top(inner, '|');
    if (parts.size() == 1 && conditional_terms) {
      const Event b = s.event(parts[0]);
      const auto& c = s.conditional();
      const Event w = s.file().worlds.full();
      r.terms.emplace_back("Pl(" + world_render(b) + ")", c.label(b, w));
      return {c.value(b, w), &c.domain(w)};
    }
    if (parts.size() == 1) {
      const Event b = s.event(parts[0]);
      r.terms.emplace_back("Pl(" + world_render(b) + ")", s.space().label(b));
      return {s.space()(b), &s.space().domain()};
    }
    if (parts.size() != 2) throw UsageError("bad term '" + t + "'");
    const Event b = s.event(parts[0]);
    const Event a = s.event(parts[1]);
    const auto& c = s.conditional();
    r.terms.emplace_back("Pl(" + world_render(b) + "|" + world_render(a) + ")", c.label(b, a));
    return {c.value(b, a), &c.domain(a)};
  };

  if (starts("P(")) {
    static const std::vector<std::string> ops{"<=", ">=", "<", ">", "="};
    std::size_t pos = std::string::npos;
    std::string op;
    int depth = 0;
    for (std::size_t i = 0; i < q.size() && pos == std::string::npos; ++i) {
      if (q[i] == '(' || q[i] == '{') ++depth;
      if (q[i] == ')' || q[i] == '}') --depth;
      if (depth != 0) continue;
      for (const auto& o : ops)
        if (q.compare(i, o.size(), o) == 0) {
          pos = i;
          op = o;
          break;
        }
    }
    if (pos == std::string::npos) {
      auto [v, d] = term(q);
      r.result = d->label(v);
    } else {
      auto [x, dx] = term(q.substr(0, pos));
      auto [y, dy] = term(q.substr(pos + op.size()));
      if (dx != dy && dx->labels() != dy->labels())
        throw UsageError("the two terms live in different domains");
      const Poset& d = *dx;
      bool v = false;
      if (op == "<=") v = d.leq(x, y);
      else if (op == ">=") v = d.leq(y, x);
      else if (op == "<") v = d.lt(x, y);
      else if (op == ">") v = d.lt(y, x);
      else v = x == y;
      r.result = truth(v);
    }
  } else if (starts("default")) {
    auto [a, b] = s.default_events(q.substr(7));
    const auto& sp = s.space();
    r.terms.emplace_back("Pl(" + world_render(a) + ")", sp.label(a));
    r.terms.emplace_back("Pl(" + world_render(a & b) + ")", sp.label(a & b));
    r.terms.emplace_back("Pl(" + world_render(a.minus(b)) + ")", sp.label(a.minus(b)));
    r.result = truth(satisfies_default(sp, a, b));
  } else if (starts("ind_s") || starts("ind_w")) {
    const bool strong = starts("ind_s");
    const auto parts = split_top(q.substr(5), ';');
    if (parts.size() != 3) throw UsageError("independence queries take 'A ; B ; C'");
    const auto A = s.family(parts[0]);
    const auto B = s.family(parts[1]);
    const auto C = s.family(parts[2]);
    const auto& c = s.conditional();
    const bool single = A.size() == 1 && B.size() == 1 && C.size() == 1;
    bool v;
    if (strong) {
      v = single ? ind_s(c, A.events()[0], B.events()[0], C.events()[0]) : IND_s(c, A, B, C);
      if (single) {
        const Event a = A.events()[0], b = B.events()[0], g = C.events()[0];
        r.terms.emplace_back("Pl(" + world_render(a) + "|" + world_render(g) + ")", c.label(a, g));
        r.terms.emplace_back("Pl(" + world_render(a) + "|" + world_render(b & g) + ")",
                             c.label(a, b & g));
      }
    } else {
      v = B.size() == 1 && C.size() == 1 ? ind_w(c, A, B.events()[0], C.events()[0])
                                         : IND_w(c, A, B, C);
    }
    r.result = truth(v);
  } else if (starts("irrelevant")) {
    const auto parts = split_top(q.substr(10), ';');
    if (parts.size() != 2) throw UsageError("irrelevance queries take 'B ; \"phi -> psi\"'");
    const Event b = s.event(parts[0]);
    auto [cond, a] = s.default_events(parts[1]);
    const auto& c = s.conditional();
    const auto u = c.unconditional();
    r.terms.emplace_back("default before", truth(satisfies_default(u, cond, a)));
    r.terms.emplace_back("default after", truth(satisfies_default(u, cond & b, a)));
    r.result = truth(irrelevant(c, b, cond, a));
  } else {
    throw UsageError("unknown query '" + q + "'");
  }
  print_query(out, q, r);
  return 0;
}

int cmd_defaults(const Options& opt, Printer& out) {
  Session s(opt, out);
  std::ifstream in(opt.kb);
  if (!in) throw UsageError("cannot read " + opt.kb);
  std::stringstream buf;
  buf << in.rdbuf();
  const auto kb = KnowledgeBase::parse(buf.str());
  if (!s.file().vocab || s.file().vocab->atoms() != kb.vocab.atoms())
    throw UsageError("measure file and knowledge base must declare the same vocab");
  for (const auto& d : kb.defaults) {
    const auto text = d.render(kb.vocab);
    const Event a = extension(d.antecedent, kb.vocab);
    const Event b = extension(d.consequent, kb.vocab);
    const auto& sp = s.space();
    const auto& ws = s.file().worlds;
    QueryResult r;
    r.terms.emplace_back("Pl(" + ws.render(a & b) + ")", sp.label(a & b));
    r.terms.emplace_back("Pl(" + ws.render(a.minus(b)) + ")", sp.label(a.minus(b)));
    r.result = truth(satisfies_default(sp, d, kb.vocab));
    print_query(out, text, r);
  }
  return 0;
}

int cmd_extend(const Options& opt, Printer& out) {
  Session s(opt, out);
  std::vector<CheckReport> checks;
  std::ostringstream body;
  if (opt.mode == "decomposable") {
    if (!s.file().pointwise) throw UsageError("decomposable mode takes a pointwise file");
    const auto& pw = *s.file().pointwise;
    const auto ext = minimal_decomposable_extension(s.file().worlds, pw.base, pw.pl);
    write_space(body, ext.space);
    checks.push_back(check_A1(ext.space));
    checks.push_back(check_decomp(ext.space, true));
    // Multiplicative and invertible are product laws; a sum need not have them.
    const auto laws = op_properties(ext.oplus);
    for (const auto* r : {&laws.commutative, &laws.associative, &laws.monotonic, &laws.additive}) {
      CheckReport copy = *r;
      copy.name = "oplus-" + copy.name;
      checks.push_back(std::move(copy));
    }
  } else if (opt.mode == "conditional-minimal") {
    const auto c = minimal_c1_extension(s.space());
    write_conditional(body, c);
    checks.push_back(check_C1(c));
    if (check_decomp(s.space(), true).passed()) checks.push_back(check_decomp_c(c, DecompScope::local));
  } else if (opt.mode == "conditional-algebraic") {
    const auto ext = algebraic_extension(s.space());
    const auto& c = ext.space;
    write_conditional(body, c);
    checks.push_back(check_C1(c));
    checks.push_back(check_C2(c, true));
    checks.push_back(check_C3(c, true));
    checks.push_back(check_C4eq(c));
    if (check_decomp(s.space(), true).passed()) {
      checks.push_back(check_decomp_c(c, DecompScope::global, true));
      checks.push_back(check_distributivity(extract_otimes(c), extract_conditional_oplus(c)));
    }
  } else {
    throw UsageError("unknown extension mode '" + opt.mode + "'");
  }
  bool all = true;
  for (const auto& r : checks) all = all && r.passed();
  if (out.format() == Format::records) {
    for (const auto& r : checks) out.report(r);
  } else {
    out.stream() << body.str();
    for (const auto& r : checks) out.report(r, true);
  }
  return all ? 0 : 1;
}

int cmd_search(const Options& opt, Printer& out) {
  if (opt.search_kind != "nonassoc-oplus") throw UsageError("unknown search '" + opt.search_kind + "'");
  if (opt.max_worlds > 6 || opt.max_worlds < 2) throw UsageError("--max-worlds must lie in 2..6");
  const auto w = search_nonassociative_oplus(opt.max_worlds, opt.budget, opt.seed);
  CheckReport r{"nonassoc-oplus", Verdict::pass, {}, opt.budget, {}};
  if (!w) {
    r.detail = "no witness, budget exhausted";
    out.report(r, out.format() == Format::text);
    return 0;
  }
  r.verdict = Verdict::fail;
  r.search_space = w->sample + 1;
  r.detail = verify_nonassoc(*w) ? "witness found and re-verified" : "witness failed re-verification";
  r.witnesses.push_back(w->witness);
  if (out.format() == Format::records) {
    out.report(r);
  } else {
    out.report(r, true);
    write_space(out.stream(), w->space);
  }
  return verify_nonassoc(*w) ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Plausibility measure workbench", "plausctl"};
  app.require_subcommand(1);
  Options opt;
  std::string format = "text";
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "records"}));
    sub->add_option("--conditioning", opt.conditioning,
                    "prob, kappa, min, div, minimal or algebraic");
  };
  auto* check = app.add_subcommand("check", "Check axioms on a measure file");
  check->add_option("file", opt.file)->required();
  check->add_option("--axioms", opt.axioms, "Axiom names")->expected(1, -1);
  common(check);
  auto* query = app.add_subcommand("query", "Evaluate a query");
  query->add_option("file", opt.file)->required();
  query->add_option("query", opt.query)->required();
  common(query);
  auto* defaults = app.add_subcommand("defaults", "Evaluate every default of a knowledge base");
  defaults->add_option("file", opt.file)->required();
  defaults->add_option("kb", opt.kb)->required();
  common(defaults);
  auto* extend = app.add_subcommand("extend", "Build an extension and self-check it");
  extend->add_option("file", opt.file)->required();
  extend->add_option("--mode", opt.mode)
      ->required()
      ->check(CLI::IsMember({"decomposable", "conditional-minimal", "conditional-algebraic"}));
  common(extend);
  auto* search = app.add_subcommand("search", "Search for counterexamples");
  search->add_option("kind", opt.search_kind)->required();
  search->add_option("--max-worlds", opt.max_worlds);
  search->add_option("--budget", opt.budget);
  search->add_option("--seed", opt.seed);
  search->add_option("--format", format)->check(CLI::IsMember({"text", "records"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "plausctl: " << e.what() << '\n';
    return 2;
  }
  opt.format = format == "records" ? Format::records : Format::text;
  Printer printer(out, opt.format);
  try {
    if (check->parsed()) return cmd_check(opt, printer);
    if (query->parsed()) return cmd_query(opt, printer);
    if (defaults->parsed()) return cmd_defaults(opt, printer);
    if (extend->parsed()) return cmd_extend(opt, printer);
    return cmd_search(opt, printer);
  } catch (const UsageError& e) {
    err << "plausctl: " << e.what() << '\n';
    return 2;
  } catch (const CheckFailure& e) {
    err << "plausctl: " << e.what() << '\n';
    write_text(err, e.report());
    return 1;
  } catch (const Error& e) {
    err << "plausctl: " << e.what() << '\n';
    return e.kind() == ErrorKind::construction_failure ? 1 : 2;
  }
}

}  // namespace plausctl
