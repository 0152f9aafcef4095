#pragma once

#include <stdexcept>
#include <string>

namespace qdeform {

//! Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

//! Argument outside the domain of a function (e.g. r inside the singularity).
class DomainError : public Error {
public:
  using Error::Error;
};

//! Hypergeometric parameter hits a pole (c a non-positive integer).
class PoleError : public Error {
public:
  using Error::Error;
};

//! A series or iteration failed to converge within its cap.
class ConvergenceError : public Error {
public:
  using Error::Error;
};

//! The effective well is not attractive (M + E - C <= 0) or the energy window
//! is empty (C >= 2M).
class NonBindingError : public Error {
public:
  using Error::Error;
};

//! Requested level does not exist; carries the number of sign changes found.
class NoRootError : public Error {
public:
  NoRootError(const std::string &what, int sign_changes)
      : Error(what), sign_changes_(sign_changes) {}
  int sign_changes() const noexcept { return sign_changes_; }

private:
  int sign_changes_;
};

//! Malformed or inconsistent run configuration.
class ConfigError : public Error {
public:
  using Error::Error;
};

} // namespace qdeform
