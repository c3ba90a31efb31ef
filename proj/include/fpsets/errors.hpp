#pragma once

#include <stdexcept>
#include <string>

namespace fpsets {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  using Error::Error;
};

// An enumeration or search grew past its configured cap.
struct CapExceeded : Error {
  using Error::Error;
};

struct ActionNotClosed : Error {
  using Error::Error;
};

struct NotPGroup : Error {
  using Error::Error;
};

// A module could not be split further nor confirmed indecomposable
// within the configured budgets.
struct DecompositionInconclusive : Error {
  using Error::Error;
};

// A proven structural identity failed on a concrete instance.  This
// always indicates an implementation bug, never bad input.
struct TheoremViolation : Error {
  using Error::Error;
};

struct InvalidInput : Error {
  using Error::Error;
};

}  // namespace fpsets
