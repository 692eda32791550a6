#pragma once

#include <stdexcept>
#include <string>

namespace redprop {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration (solutions, subdomains, valuations) would exceed its cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class Unsupported : public Error {
 public:
  using Error::Error;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

class AtomOutOfUniverse : public Error {
 public:
  using Error::Error;
};

class RestrictiveChannel : public Error {
 public:
  using Error::Error;
};

class UnsupportedSetForm : public Error {
 public:
  using Error::Error;
};

class NoSearchVars : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace redprop
