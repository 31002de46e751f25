#pragma once

#include <stdexcept>
#include <string>

namespace axwind {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (m_a <= 0, NaN, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent or unknown configuration (bad kind/N_pi pair, unknown key, Nyquist violation).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Input too coarse to resolve the requested feature (passband, sidereal line).
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// Iterative search failed; the message carries the bracketing history.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace axwind
