#pragma once

#include <stdexcept>
#include <string>

namespace sqso {

/// The input is well-formed but the mathematics rejects it: an invalid
/// matrix pair, an uncertified Lyapunov request, a non-Volterra tensor.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// A floating-point state left the probability simplex.
class SimplexViolation : public std::runtime_error {
 public:
  explicit SimplexViolation(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sqso
