#include "plaus/report.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

namespace plaus {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::not_applicable:
      return "not-applicable";
  }
  return "?";
}

Event Witness::event(std::string_view role) const {
  for (const auto& t : terms) {
    if (t.role == role && t.event) return *t.event;
  }
  throw std::out_of_range("witness has no event role " + std::string(role));
}

const std::string& Witness::value(std::string_view role) const {
  for (const auto& t : terms) {
    if (t.role == role) return t.value;
  }
  throw std::out_of_range("witness has no role " + std::string(role));
}

void write_text(std::ostream& os, const CheckReport& report) {
  os << report.name << ": " << to_string(report.verdict) << " (" << report.search_space
     << " cases)";
  if (!report.detail.empty()) os << " - " << report.detail;
  os << '\n';
  for (const auto& w : report.witnesses) {
    os << "  witness:";
    for (const auto& t : w.terms) {
      os << ' ' << t.role << '=';
      if (!t.text.empty()) os << t.text << ':';
      os << t.value;
    }
    if (!w.note.empty()) os << "  # " << w.note;
    os << '\n';
  }
}

void write_record(std::ostream& os, const CheckReport& report) {
  nlohmann::ordered_json j;
  j["axiom"] = report.name;
  j["verdict"] = to_string(report.verdict);
  j["cases"] = report.search_space;
  if (!report.detail.empty()) j["detail"] = report.detail;
  auto ws = nlohmann::ordered_json::array();
  for (const auto& w : report.witnesses) {
    nlohmann::ordered_json jw;
    auto terms = nlohmann::ordered_json::array();
    for (const auto& t : w.terms) {
      nlohmann::ordered_json jt;
      jt["role"] = t.role;
      if (!t.text.empty()) jt["event"] = t.text;
      jt["value"] = t.value;
      terms.push_back(jt);
    }
    jw["terms"] = terms;
    if (!w.note.empty()) jw["note"] = w.note;
    ws.push_back(jw);
  }
  j["witnesses"] = ws;
  os << j.dump() << '\n';
}

}  // namespace plaus
