#pragma once

#include <stdexcept>
#include <string>

namespace algoprob {

// Base class for every error the library raises. The CLI maps the
// subclasses onto distinct exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An index or parameter outside the admissible range of a machine class
// or a size guard.
class RangeError : public Error {
 public:
  using Error::Error;
};

// An operation that needs a non-empty distribution or input got none.
class EmptyInputError : public Error {
 public:
  using Error::Error;
};

// Rank correlation is undefined (a rank vector has zero variance).
class UndefinedCorrelationError : public Error {
 public:
  using Error::Error;
};

// Two distributions or a payload and a codebook that cannot be combined.
class MismatchError : public Error {
 public:
  using Error::Error;
};

// Malformed or unreadable input data (files, images, FASTA, payloads).
class DataError : public Error {
 public:
  using Error::Error;
};

// A source exceeded its size cap and was rejected rather than truncated.
class OversizeError : public DataError {
 public:
  using DataError::DataError;
};

class CorruptPayloadError : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace algoprob
