#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "plaus/cond_space.hpp"
#include "plaus/defaults.hpp"
#include "plaus/space.hpp"

namespace plaus {

/// Line-oriented measure description. The first lines name the worlds
/// (`worlds a b c` or `vocab p q`) and the kind; the remaining lines depend
/// on the kind:
///
///   probability, possibility   weight <world> <p/q>
///   kappa                      rank <world> <n|inf>
///   belief                     mass <event> <p/q>
///   preference                 prefer <u> <v>        (u strictly preferred)
///   qualitative                score <event> <integer>
///   explicit                   value/leq/bottom/top, then event <event> <label>
///   pointwise                  value/leq/bottom/top, then pl <world> <label>
///   conditional                value/leq/bottom/top, then cond <event> <given> <label>
///
/// A conditional file may instead open a `given <event>` block before each
/// private domain. `conditioning <name>` is allowed with any kind. Events
/// are written `{a,b}`, '#' starts a comment.
struct MeasureFile {
  enum class Kind {
    probability,
    possibility,
    kappa,
    belief,
    preference,
    qualitative,
    explicit_table,
    pointwise,
    conditional,
  };

  struct Pointwise {
    PosetPtr base;
    std::vector<Elem> pl;
  };

  Kind kind = Kind::explicit_table;
  WorldSet worlds;
  std::optional<Vocabulary> vocab;
  /// Set for every kind except pointwise; for conditional files it is the
  /// unconditional layer.
  std::optional<PlSpace> space;
  std::optional<Pointwise> pointwise;
  std::optional<CondPlSpace> conditional;
  std::optional<std::string> conditioning;
};

std::string_view to_string(MeasureFile::Kind k);

MeasureFile parse_measure(std::string_view text);
MeasureFile read_measure_file(const std::filesystem::path& path);

/// Explicit-table form: every element, every strict order pair, every event.
void write_space(std::ostream& os, const PlSpace& s);
void write_conditional(std::ostream& os, const CondPlSpace& c);

}  // namespace plaus
