#pragma once

#include <stdexcept>
#include <string>

namespace nilrfrs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Malformed text input (matrices, presentations, chains, graphs, words).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Commutator data that does not define a torsion-free nilpotent group.
class InvalidPresentation : public Error {
 public:
  using Error::Error;
};

/// Operation restricted to nilpotency class <= 2 called on a larger class.
class UnsupportedClass : public Error {
 public:
  using Error::Error;
};

/// Operation that needs a subgroup whose Mal'cev coordinate set is a lattice.
class NotALattice : public Error {
 public:
  using Error::Error;
};

class MalformedChain : public Error {
 public:
  using Error::Error;
};

/// Input outside the domain of an operation (e.g. an abelian group where a
/// nonabelian one is required).
class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

class ResourceLimit : public Error {
 public:
  using Error::Error;
};

}  // namespace nilrfrs
