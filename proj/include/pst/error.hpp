#pragma once

#include <stdexcept>
#include <string>

namespace pst {

// Malformed input documents (chain files, spectra, programs).
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

// Convergence failures, singular systems, residuals above tolerance.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pst
