#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "plaus/event.hpp"

namespace plaus {

enum class Verdict { pass, fail, not_applicable };

std::string_view to_string(Verdict v);

/// One named component of a counterexample: an event with its plausibility
/// label, or a bare domain value.
struct WitnessTerm {
  std::string role;
  std::optional<Event> event;
  std::string text;   // rendered event, empty for bare values
  std::string value;  // plausibility label
};

struct Witness {
  std::vector<WitnessTerm> terms;
  std::string note;

  /// Event stored under the given role. Throws std::out_of_range if absent.
  Event event(std::string_view role) const;
  const std::string& value(std::string_view role) const;
};

struct CheckReport {
  std::string name;
  Verdict verdict = Verdict::pass;
  std::vector<Witness> witnesses;
  std::uint64_t search_space = 0;
  std::string detail;

  bool passed() const { return verdict == Verdict::pass; }
  bool failed() const { return verdict == Verdict::fail; }
};

void write_text(std::ostream& os, const CheckReport& report);
/// One JSON object per line.
void write_record(std::ostream& os, const CheckReport& report);

}  // namespace plaus

#include "plaus/error.hpp"

namespace plaus {

/// Raised when an operation's axiom precondition fails; carries the report
/// with the witness.
class CheckFailure : public Error {
 public:
  explicit CheckFailure(CheckReport report)
      : Error(ErrorKind::precondition, report.name + " fails"), report_(std::move(report)) {}
  const CheckReport& report() const { return report_; }

 private:
  CheckReport report_;
};

}  // namespace plaus
