#pragma once

#include <stdexcept>
#include <string>

namespace lps {

/// Malformed input: non-finite entries, bad JSON, dimension mismatch.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A scalar function was asked to act outside its domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An operation's mathematical precondition does not hold (A not PSD, C not a
/// contraction, f not strictly positive, ...).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Function spec string that the registry cannot parse.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace lps
