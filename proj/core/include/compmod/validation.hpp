#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace compmod {

enum class ViolationKind {
  MalformedInput,
  MissingIdentity,
  MissingComposite,
  DuplicateHom,
  TotalityFailure,
  TrackabilityFailure,
  AssociativityFailure,
  IdentityLawFailure,
  TypingFailure,
  FunctorialityFailure,
  PullbackPreservation,
  SquareCommute,
  FiberMembership,
  Coverage,
  CartesianFailure,
  CompositionLawFailure,
  Degenerate,
};

std::string to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string message;  // includes a witness where one exists
};

/// Outcome of a structural or axiom check. Empty means the input satisfies
/// every checked condition.
struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  void add(ViolationKind kind, std::string message) {
    violations.push_back({kind, std::move(message)});
  }
  void merge(const ValidationReport& other) {
    violations.insert(violations.end(), other.violations.begin(),
                      other.violations.end());
  }
  std::string summary() const;
};

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A function was applied across incompatible type names.
struct TypeMismatchError : Error {
  using Error::Error;
};

/// A referenced type name, element, or arrow does not exist.
struct UnknownNameError : Error {
  using Error::Error;
};

/// Structural (pre-axiom) problem with an input value.
struct MalformedInputError : Error {
  using Error::Error;
};

/// An operation precondition failed (carries the witness in the message).
struct PreconditionError : Error {
  using Error::Error;
};

/// An enumeration would exceed the configured bound.
struct BoundExceededError : Error {
  using Error::Error;
};

}  // namespace compmod
