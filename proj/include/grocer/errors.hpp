#pragma once

#include <stdexcept>
#include <string>

namespace grocer {

/// Base of all library errors. ConfigError maps to CLI exit 1,
/// DataError (and children) to exit 2, anything else to exit 3.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct DataError : Error {
  using Error::Error;
};

// ingest
struct MalformedRow : DataError {
  long line_no;
  MalformedRow(long line, const std::string& what)
      : DataError("line " + std::to_string(line) + ": " + what), line_no(line) {}
};
struct DuplicateOrderUser : DataError {
  using DataError::DataError;
};
struct EmptyWindow : DataError {
  using DataError::DataError;
};

// similarity
struct ZeroVector : DataError {
  using DataError::DataError;
};

// cousin network
struct IdMismatch : DataError {
  using DataError::DataError;
};
struct UnknownId : DataError {
  using DataError::DataError;
};
struct InsufficientEvidence : DataError {
  using DataError::DataError;
};
struct ColdStartUser : DataError {
  using DataError::DataError;
};

// metrics
struct SizeExceedsAssortment : DataError {
  using DataError::DataError;
};
struct EmptyOrder : DataError {
  using DataError::DataError;
};
struct NoOrders : DataError {
  using DataError::DataError;
};
struct UnreachableList : DataError {
  using DataError::DataError;
};

// stats
struct DomainError : DataError {
  using DataError::DataError;
};
struct DegenerateMargin : DataError {
  using DataError::DataError;
};
struct TooFewSamples : DataError {
  using DataError::DataError;
};

// experiment
struct EmptySplit : DataError {
  using DataError::DataError;
};

}  // namespace grocer
