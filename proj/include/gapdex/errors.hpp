#pragma once

#include <stdexcept>
#include <string>

namespace gapdex {

// Constant (zero-variance) input, where the standardized decomposition is
// undefined.
class degenerate_sample_error : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// File-level ingestion failure: missing or unreadable input.
class io_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Cell-level ingestion failure; the message names the offending line.
class data_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace gapdex
