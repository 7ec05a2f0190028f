#pragma once

#include <stdexcept>
#include <string>

namespace qprim {

// Root of the library error hierarchy. Subclasses are thin tags; the what()
// string carries the witness data (element or ideal indices) for replay.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

// Malformed declarative input (ring spec, JSON, CLI arguments).
class InputError : public Error {
public:
  using Error::Error;
};

class OrderCapExceeded : public Error {
public:
  using Error::Error;
};

class TableNotCommutative : public Error {
public:
  using Error::Error;
};

class TableNoIdentity : public Error {
public:
  using Error::Error;
};

// Ring axiom failure in an explicit table; message names the witness triple.
class TableNotRing : public Error {
public:
  using Error::Error;
};

class BadModulus : public Error {
public:
  using Error::Error;
};

class MixedRings : public Error {
public:
  using Error::Error;
};

class NotAHom : public Error {
public:
  using Error::Error;
};

class IdealCountCapExceeded : public Error {
public:
  using Error::Error;
};

class ImproperIdeal : public Error {
public:
  using Error::Error;
};

class NotIrreducible : public Error {
public:
  using Error::Error;
};

class NotPrime : public Error {
public:
  using Error::Error;
};

class NotContained : public Error {
public:
  using Error::Error;
};

class NotAProductSpec : public Error {
public:
  using Error::Error;
};

class EmptySpectrum : public Error {
public:
  using Error::Error;
};

class SearchCapExceeded : public Error {
public:
  using Error::Error;
};

}  // namespace qprim
