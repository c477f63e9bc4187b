#pragma once

#include <stdexcept>
#include <string>

namespace dseq {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exact-integer computation left the 64-bit range.
class ValueOverflow : public Error {
 public:
  using Error::Error;
};

class UnknownCatalogEntry : public Error {
 public:
  using Error::Error;
};

class WindowTooLarge : public Error {
 public:
  using Error::Error;
};

class InvalidExponent : public Error {
 public:
  using Error::Error;
};

class UnknownInclusion : public Error {
 public:
  using Error::Error;
};

class IndexOutOfDomain : public Error {
 public:
  using Error::Error;
};

/// Malformed arguments, parameters or input documents.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace dseq
