#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace fracdmd {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Invalid argument value or shape (order out of range, dimension mismatch, ...).
class ParameterError : public Error {
public:
  using Error::Error;
};

// Evaluation point outside the sampled interval.
class DomainError : public Error {
public:
  using Error::Error;
};

// A series failed to converge; carries the partial result.
class AccuracyError : public Error {
public:
  AccuracyError(const std::string& what, std::complex<double> partial)
      : Error(what), partial_(partial) {}
  std::complex<double> partial() const { return partial_; }

private:
  std::complex<double> partial_;
};

// Linear system too ill-conditioned to solve reliably.
class ConditioningError : public Error {
public:
  ConditioningError(const std::string& what, double rcond)
      : Error(what), rcond_(rcond) {}
  double rcond() const { return rcond_; }

private:
  double rcond_;
};

// Non-finite state encountered while integrating an initial value problem.
class DivergenceError : public Error {
public:
  DivergenceError(const std::string& what, double last_valid_time)
      : Error(what), last_valid_time_(last_valid_time) {}
  double last_valid_time() const { return last_valid_time_; }

private:
  double last_valid_time_;
};

// Malformed input file or configuration document.
class FormatError : public Error {
public:
  using Error::Error;
};

}  // namespace fracdmd
