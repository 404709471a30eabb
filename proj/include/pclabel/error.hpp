#pragma once

#include <stdexcept>

namespace pclabel {

// I/O and malformed-input failures. The CLI maps these to exit code 2.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Schema, flag, or precondition violations. The CLI maps these to exit code 3.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace pclabel
