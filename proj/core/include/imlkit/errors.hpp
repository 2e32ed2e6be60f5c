#pragma once

#include <stdexcept>
#include <string>

namespace imlkit {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotPreorder : Error {
  using Error::Error;
};
struct NotLeClosed : Error {
  using Error::Error;
};
struct UnknownPredicate : Error {
  using Error::Error;
};
struct NotReflexive : Error {
  using Error::Error;
};
struct PreconditionFailed : Error {
  using Error::Error;
};
struct SigmaNotClosed : Error {
  using Error::Error;
};
struct WrongCarrier : Error {
  using Error::Error;
};
struct UnknownSchema : Error {
  using Error::Error;
};
// Malformed input files (JSON shape, unknown state names, bad script lines).
struct FormatError : Error {
  using Error::Error;
};

}  // namespace imlkit
