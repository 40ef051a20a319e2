#pragma once

#include <stdexcept>
#include <string>

namespace spectra {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// An iterative method failed to converge or an internal cross-check disagreed.
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Requested problem size exceeds a hard resource cap.
class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace spectra
