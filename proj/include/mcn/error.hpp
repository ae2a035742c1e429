#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

#include "mcn/rational.hpp"

namespace mcn {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Caller supplied something outside an operation's domain: arity mismatch,
// point outside the cube, bad permutation, m = 0, ...
class InputError : public Error {
public:
  using Error::Error;
};

// A well-formed point outside an operation's domain: wrong number of
// coordinates for the term, or a coordinate outside [0,1].
class DomainError : public InputError {
public:
  using InputError::InputError;
};

class ParseError : public InputError {
public:
  ParseError(const std::string& what, std::size_t position)
      : InputError(what + " at offset " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

// A function description that is not a McNaughton function into [0,1], or
// whose region analysis could not be verified.
class InvalidDescriptionError : public Error {
public:
  InvalidDescriptionError(const std::string& what, Point witness)
      : Error(what), witness_(std::move(witness)) {}

  const Point& witness() const noexcept { return witness_; }

private:
  Point witness_;
};

// combine_pair precondition failure: a1 and a2 are not congruent modulo the
// join of the two ideals. The witness lies in the join's zero set.
class NotCongruentError : public Error {
public:
  NotCongruentError(const std::string& what, Point witness, std::size_t index = 0)
      : Error(what), witness_(std::move(witness)), index_(index) {}

  const Point& witness() const noexcept { return witness_; }
  // Position in the chinese_glue list that failed; 0 for a bare pair.
  std::size_t index() const noexcept { return index_; }

private:
  Point witness_;
  std::size_t index_;
};

class CapExceededError : public Error {
public:
  CapExceededError(const std::string& what, std::size_t index = 0)
      : Error(what), index_(index) {}

  std::size_t index() const noexcept { return index_; }

private:
  std::size_t index_;
};

// Certification of a synthesized term failed. Reaching this is a bug.
class InternalError : public Error {
public:
  using Error::Error;
};

}  // namespace mcn
