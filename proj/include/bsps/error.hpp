#pragma once

#include <stdexcept>
#include <string>

namespace bsps {

// Base of every error thrown by the library. The CLI maps IoError to exit
// code 2 and everything else to exit code 1.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// File could not be opened, read, or written.
class IoError : public Error {
public:
  using Error::Error;
};

// Input document or table does not follow its schema.
class FormatError : public Error {
public:
  using Error::Error;
};

// A caller broke a documented precondition (bad config, out-of-range value).
class ContractError : public Error {
public:
  using Error::Error;
};

} // namespace bsps
