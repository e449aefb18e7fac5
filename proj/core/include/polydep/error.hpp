#pragma once

#include <stdexcept>
#include <string>

namespace polydep {

// Malformed or out-of-domain arguments (bad polynomial text, zero input, wrong degree).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numeric enclosure is too coarse for the requested operation, or the
// configured precision ceiling was reached.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A census checkpoint could not be used to resume a run.
class ResumeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A request exceeds a hard work limit and is refused instead of attempted.
class RefusalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace polydep
