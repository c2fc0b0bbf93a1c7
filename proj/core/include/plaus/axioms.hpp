#pragma once

#include "plaus/cond_space.hpp"
#include "plaus/report.hpp"
#include "plaus/space.hpp"

namespace plaus {

/// Largest world count accepted by the conditional checkers.
inline constexpr std::size_t kMaxConditionalWorlds = 4;

CheckReport check_A1(const PlSpace& s);
/// strict = true checks DECOMP; strict = false checks DECOMP= (all <= read as =).
CheckReport check_decomp(const PlSpace& s, bool strict = true);
CheckReport check_A2(const PlSpace& s);
CheckReport check_A3(const PlSpace& s);

CheckReport check_C1(const CondPlSpace& c);
/// C2, C3, C4= and global DECOMP_c compare values across conditioners and
/// report not-applicable on non-standard spaces.
CheckReport check_C2(const CondPlSpace& c, bool strict = true);
CheckReport check_C3(const CondPlSpace& c, bool strict = true);
CheckReport check_C4eq(const CondPlSpace& c);

enum class DecompScope { global, local };
CheckReport check_decomp_c(const CondPlSpace& c, DecompScope scope, bool strict = true);

}  // namespace plaus
