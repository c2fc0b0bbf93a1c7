#include "plaus/measure_file.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "plaus/error.hpp"

namespace plaus {

std::string_view to_string(MeasureFile::Kind k) {
  using K = MeasureFile::Kind;
  switch (k) {
    case K::probability: return "probability";
    case K::possibility: return "possibility";
    case K::kappa: return "kappa";
    case K::belief: return "belief";
    case K::preference: return "preference";
    case K::qualitative: return "qualitative";
    case K::explicit_table: return "explicit";
    case K::pointwise: return "pointwise";
    case K::conditional: return "conditional";
  }
  return "?";
}

namespace {

using Kind = MeasureFile::Kind;

Kind parse_kind(const std::string& word) {
  for (auto k : {Kind::probability, Kind::possibility, Kind::kappa, Kind::belief, Kind::preference,
                 Kind::qualitative, Kind::explicit_table, Kind::pointwise, Kind::conditional})
    if (to_string(k) == word) return k;
  throw malformed("unknown measure kind '" + word + "'");
}

struct DomainBuilder {
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> leq;
  std::optional<std::string> bottom, top;

  bool empty() const { return labels.empty(); }

  PosetPtr build(const std::string& where) const {
    if (labels.empty()) throw malformed(where + ": no values declared");
    if (!bottom || !top) throw malformed(where + ": bottom and top must be declared");
    Poset names(labels, {}, 0, 0);
    std::vector<std::pair<Elem, Elem>> pairs;
    for (const auto& [a, b] : leq) pairs.emplace_back(names.at(a), names.at(b));
    auto p = std::make_shared<const Poset>(
        Poset::closure_of(labels, pairs, names.at(*bottom), names.at(*top)));
    if (auto r = verify_poset(*p); !r.passed()) {
      const auto& w = r.witnesses.front();
      throw malformed(where + ": order is not a pointed partial order (" + w.note + ")");
    }
    return p;
  }
};

struct Line {
  std::size_t number;
  std::vector<std::string> words;
};

[[noreturn]] void bad(const Line& l, const std::string& what) {
  throw malformed("line " + std::to_string(l.number) + ": " + what);
}

void arity(const Line& l, std::size_t n) {
  if (l.words.size() != n) {
    bad(l, "'" + l.words[0] + "' takes " + std::to_string(n - 1) + " argument(s)");
  }
}

Rational rational_arg(const Line& l, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const Error& e) {
    bad(l, e.what());
  }
}

}  // namespace

MeasureFile parse_measure(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<Line> lines;
  std::string raw;
  for (std::size_t number = 1; std::getline(in, raw); ++number) {
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream words(raw);
    Line l{number, {}};
    for (std::string w; words >> w;) l.words.push_back(w);
    if (!l.words.empty()) lines.push_back(std::move(l));
  }

  MeasureFile out;
  std::optional<Kind> kind;
  bool have_worlds = false;
  std::vector<Line> body;
  for (const auto& l : lines) {
    const auto& head = l.words[0];
    if (head == "worlds" || head == "vocab") {
      if (have_worlds) bad(l, "worlds declared twice");
      std::vector<std::string> names(l.words.begin() + 1, l.words.end());
      if (head == "vocab") {
        out.vocab.emplace(std::move(names));
        out.worlds = worlds_of(*out.vocab);
      } else {
        out.worlds = WorldSet(std::move(names));
      }
      have_worlds = true;
    } else if (head == "kind") {
      arity(l, 2);
      if (kind) bad(l, "kind declared twice");
      kind = parse_kind(l.words[1]);
    } else if (head == "conditioning") {
      arity(l, 2);
      out.conditioning = l.words[1];
    } else {
      if (!have_worlds) bad(l, "'" + head + "' before the worlds line");
      body.push_back(l);
    }
  }
  if (!have_worlds) throw malformed("missing 'worlds' or 'vocab' line");
  if (!kind) throw malformed("missing 'kind' line");
  out.kind = *kind;
  const auto& ws = out.worlds;
  const auto n = ws.size();
  const auto m = ws.event_count();

  auto world = [&](const Line& l, const std::string& name) {
    try {
      return ws.index_of(name);
    } catch (const Error& e) {
      bad(l, e.what());
    }
  };
  auto event = [&](const Line& l, const std::string& t) {
    try {
      return ws.parse(t);
    } catch (const Error& e) {
      bad(l, e.what());
    }
  };

  DomainBuilder shared;
  std::map<Event, DomainBuilder> blocks;
  DomainBuilder* current = &shared;
  std::map<std::size_t, std::string> world_labels;
  std::map<Event, std::string> event_labels;
  std::map<std::pair<Event, Event>, std::string> cond_labels;  // (given, event)
  std::vector<Rational> weights(n, Rational(0));
  std::vector<Rank> ranks(n, kInfinity);
  MassFunction masses;
  std::vector<std::pair<std::size_t, std::size_t>> prefers;
  std::map<Event, long> scores;

  auto expect = [&](const Line& l, std::initializer_list<Kind> kinds) {
    for (auto k : kinds)
      if (k == out.kind) return;
    bad(l, "'" + l.words[0] + "' is not allowed in a " + std::string(to_string(out.kind)) + " file");
  };
  const auto domain_kinds = {Kind::explicit_table, Kind::pointwise, Kind::conditional};

  for (const auto& l : body) {
    const auto& head = l.words[0];
    if (head == "weight") {
      expect(l, {Kind::probability, Kind::possibility});
      arity(l, 3);
      weights[world(l, l.words[1])] = rational_arg(l, l.words[2]);
    } else if (head == "rank") {
      expect(l, {Kind::kappa});
      arity(l, 3);
      try {
        ranks[world(l, l.words[1])] = parse_rank(l.words[2]);
      } catch (const Error& e) {
        bad(l, e.what());
      }
    } else if (head == "mass") {
      expect(l, {Kind::belief});
      arity(l, 3);
      masses.masses.emplace_back(event(l, l.words[1]), rational_arg(l, l.words[2]));
    } else if (head == "prefer") {
      expect(l, {Kind::preference});
      arity(l, 3);
      prefers.emplace_back(world(l, l.words[1]), world(l, l.words[2]));
    } else if (head == "score") {
      expect(l, {Kind::qualitative});
      arity(l, 3);
      try {
        scores[event(l, l.words[1])] = std::stol(l.words[2]);
      } catch (const std::exception&) {
        bad(l, "score must be an integer");
      }
    } else if (head == "given") {
      expect(l, {Kind::conditional});
      arity(l, 2);
      current = &blocks[event(l, l.words[1])];
    } else if (head == "value") {
      expect(l, domain_kinds);
      arity(l, 2);
      current->labels.push_back(l.words[1]);
    } else if (head == "leq") {
      expect(l, domain_kinds);
      arity(l, 3);
      current->leq.emplace_back(l.words[1], l.words[2]);
    } else if (head == "bottom" || head == "top") {
      expect(l, domain_kinds);
      arity(l, 2);
      (head == "bottom" ? current->bottom : current->top) = l.words[1];
    } else if (head == "event") {
      expect(l, {Kind::explicit_table});
      arity(l, 3);
      if (!event_labels.emplace(event(l, l.words[1]), l.words[2]).second) bad(l, "event listed twice");
    } else if (head == "pl") {
      expect(l, {Kind::pointwise});
      arity(l, 3);
      if (!world_labels.emplace(world(l, l.words[1]), l.words[2]).second) bad(l, "world listed twice");
    } else if (head == "cond") {
      expect(l, {Kind::conditional});
      arity(l, 4);
      const auto key = std::make_pair(event(l, l.words[2]), event(l, l.words[1]));
      if (!cond_labels.emplace(key, l.words[3]).second) bad(l, "conditional value listed twice");
    } else {
      bad(l, "unknown directive '" + head + "'");
    }
  }

  auto lookup = [](const Poset& p, const std::string& label, const std::string& where) {
    auto e = p.find(label);
    if (!e) throw malformed(where + ": unknown value '" + label + "'");
    return *e;
  };

  switch (out.kind) {
    case Kind::probability: out.space = from_probability(ws, weights); break;
    case Kind::possibility: out.space = from_possibility(ws, weights); break;
    case Kind::kappa: out.space = from_kappa(ws, ranks); break;
    case Kind::belief: out.space = from_belief(ws, masses); break;
    case Kind::preference: out.space = from_preference(ws, prefers); break;
    case Kind::qualitative: {
      std::vector<long> score(m);
      for (std::size_t b = 0; b < m; ++b) {
        auto it = scores.find(ws.event(b));
        if (it == scores.end()) throw malformed("no score for event " + ws.render(ws.event(b)));
        score[b] = it->second;
      }
      out.space = from_qualitative(ws, score);
      break;
    }
    case Kind::explicit_table: {
      auto p = shared.build("domain");
      std::vector<Elem> assign(m);
      for (std::size_t b = 0; b < m; ++b) {
        const Event e = ws.event(b);
        auto it = event_labels.find(e);
        if (it == event_labels.end()) throw malformed("no value for event " + ws.render(e));
        assign[b] = lookup(*p, it->second, "event " + ws.render(e));
      }
      out.space = PlSpace(ws, std::move(p), std::move(assign));
      break;
    }
    case Kind::pointwise: {
      auto p = shared.build("domain");
      std::vector<Elem> pl(n);
      for (std::size_t w = 0; w < n; ++w) {
        auto it = world_labels.find(w);
        if (it == world_labels.end()) throw malformed("no value for world " + ws.name(w));
        pl[w] = lookup(*p, it->second, "world " + ws.name(w));
      }
      out.pointwise = MeasureFile::Pointwise{std::move(p), std::move(pl)};
      break;
    }
    case Kind::conditional: {
      if (!blocks.empty() && !shared.empty())
        throw malformed("conditional file mixes a shared domain with 'given' blocks");
      std::vector<PosetPtr> domains(m);
      if (blocks.empty()) {
        std::fill(domains.begin(), domains.end(), shared.build("domain"));
      } else {
        for (std::size_t g = 0; g < m; ++g) {
          auto it = blocks.find(ws.event(g));
          if (it == blocks.end()) throw malformed("no domain for conditioner " + ws.render(ws.event(g)));
          domains[g] = it->second.build("domain given " + ws.render(ws.event(g)));
        }
      }
      std::vector<std::vector<Elem>> table(m, std::vector<Elem>(m));
      for (std::size_t g = 0; g < m; ++g)
        for (std::size_t b = 0; b < m; ++b) {
          const Event G = ws.event(g), B = ws.event(b);
          const std::string where = "value of " + ws.render(B) + " given " + ws.render(G);
          auto it = cond_labels.find({G, B});
          if (it == cond_labels.end()) throw malformed("missing " + where);
          table[g][b] = lookup(*domains[g], it->second, where);
        }
      const std::string conditioning = out.conditioning.value_or("explicit");
      out.conditional = blocks.empty()
                            ? CondPlSpace::standard(ws, domains.front(), std::move(table), conditioning)
                            : CondPlSpace::per_conditioner(ws, std::move(domains), std::move(table),
                                                           conditioning);
      out.space = out.conditional->unconditional();
      break;
    }
  }
  return out;
}

MeasureFile read_measure_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw malformed("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_measure(buf.str());
}

namespace {

void write_worlds(std::ostream& os, const WorldSet& ws) {
  os << "worlds";
  for (const auto& name : ws.names()) os << ' ' << name;
  os << '\n';
}

void write_domain(std::ostream& os, const Poset& p) {
  for (Elem e = 0; e < p.size(); ++e) os << "value " << p.label(e) << '\n';
  for (Elem a = 0; a < p.size(); ++a)
    for (Elem b = 0; b < p.size(); ++b)
      if (p.lt(a, b)) os << "leq " << p.label(a) << ' ' << p.label(b) << '\n';
  os << "bottom " << p.label(p.bottom()) << '\n';
  os << "top " << p.label(p.top()) << '\n';
}

}  // namespace

void write_space(std::ostream& os, const PlSpace& s) {
  const auto& ws = s.worlds();
  write_worlds(os, ws);
  os << "kind explicit\n";
  write_domain(os, s.domain());
  for (std::size_t b = 0; b < ws.event_count(); ++b)
    os << "event " << ws.render(ws.event(b)) << ' ' << s.label(ws.event(b)) << '\n';
}

void write_conditional(std::ostream& os, const CondPlSpace& c) {
  const auto& ws = c.worlds();
  const auto m = ws.event_count();
  write_worlds(os, ws);
  os << "kind conditional\n";
  if (c.is_standard()) write_domain(os, c.shared_domain());
  for (std::size_t g = 0; g < m; ++g) {
    const Event G = ws.event(g);
    if (!c.is_standard()) {
      os << "given " << ws.render(G) << '\n';
      write_domain(os, c.domain(G));
    }
    for (std::size_t b = 0; b < m; ++b) {
      const Event B = ws.event(b);
      os << "cond " << ws.render(B) << ' ' << ws.render(G) << ' ' << c.label(B, G) << '\n';
    }
  }
}

}  // namespace plaus
