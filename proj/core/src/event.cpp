#include "plaus/event.hpp"

#include <algorithm>
#include <set>

#include "plaus/error.hpp"

namespace plaus {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

WorldSet::WorldSet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw malformed("world set must not be empty");
  if (names_.size() > kMaxWorlds) {
    throw malformed("world set has " + std::to_string(names_.size()) +
                    " worlds; at most 16 are supported");
  }
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw malformed("empty world name");
    if (!seen.insert(n).second) throw malformed("duplicate world '" + n + "'");
  }
}

WorldSet WorldSet::numbered(std::size_t n, std::string_view prefix) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back(std::string(prefix) + std::to_string(i));
  return WorldSet(std::move(names));
}

std::size_t WorldSet::index_of(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw malformed("unknown world '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - names_.begin());
}

std::string WorldSet::render(Event e) const {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!e.contains(i)) continue;
    if (!first) out += ',';
    out += names_[i];
    first = false;
  }
  return out + "}";
}

Event WorldSet::parse(std::string_view text) const {
  text = trim(text);
  if (text.size() < 2 || text.front() != '{' || text.back() != '}') {
    throw malformed("event must be written as {w1,w2,...}: '" + std::string(text) + "'");
  }
  text = text.substr(1, text.size() - 2);
  std::uint32_t bits = 0;
  while (!trim(text).empty()) {
    auto comma = text.find(',');
    auto item = trim(text.substr(0, comma));
    bits |= std::uint32_t{1} << index_of(item);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return Event(bits);
}

}  // namespace plaus
