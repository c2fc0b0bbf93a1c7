#pragma once

#include <stdexcept>
#include <string>

namespace plaus {

enum class ErrorKind {
  malformed_input,
  not_applicable,
  precondition,
  construction_failure,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error malformed(const std::string& what) {
  return Error(ErrorKind::malformed_input, what);
}

}  // namespace plaus
