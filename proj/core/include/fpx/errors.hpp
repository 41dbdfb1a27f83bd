#pragma once

#include <stdexcept>
#include <string>

namespace fpx {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An integer-window merge left the letter window [-B, B].
class WindowOverflow : public Error {
 public:
  using Error::Error;
};

/// A word references a factor or element that the free product does not have.
class FactorMismatch : public Error {
 public:
  using Error::Error;
};

/// Malformed word literal, non-reduced word, or a word missing from a basis.
class InvalidWord : public Error {
 public:
  using Error::Error;
};

class InvalidFactor : public Error {
 public:
  using Error::Error;
};

class InvalidPosition : public Error {
 public:
  using Error::Error;
};

class CutoffTooLarge : public Error {
 public:
  using Error::Error;
};

class CutoffTooSmall : public Error {
 public:
  using Error::Error;
};

/// The requested length pair lies outside the regime where the closed-form
/// coefficients describe the truncated operator.
class OutOfRegime : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace fpx
