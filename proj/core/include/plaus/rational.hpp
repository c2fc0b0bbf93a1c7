#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace plaus {

using Rational = boost::rational<std::int64_t>;

/// Ranks for kappa rankings; kInfinity stands for the rank of the empty set.
using Rank = std::uint32_t;
inline constexpr Rank kInfinity = std::numeric_limits<Rank>::max();

/// "p/q", or just "p" when the denominator is 1.
std::string format_rational(const Rational& r);

/// Accepts "p", "p/q" and optional leading minus; throws malformed-input.
Rational parse_rational(std::string_view text);

std::string format_rank(Rank r);
Rank parse_rank(std::string_view text);

}  // namespace plaus
