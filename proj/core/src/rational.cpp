#include "plaus/rational.hpp"

#include <charconv>

#include "plaus/error.hpp"

namespace plaus {

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw malformed("bad number '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text, text));
  auto num = parse_int(text.substr(0, slash), text);
  auto den = parse_int(text.substr(slash + 1), text);
  if (den == 0) throw malformed("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string format_rank(Rank r) {
  return r == kInfinity ? "inf" : std::to_string(r);
}

Rank parse_rank(std::string_view text) {
  if (text == "inf") return kInfinity;
  auto v = parse_int(text, text);
  if (v < 0 || v >= static_cast<std::int64_t>(kInfinity)) {
    throw malformed("rank out of range: '" + std::string(text) + "'");
  }
  return static_cast<Rank>(v);
}

}  // namespace plaus
