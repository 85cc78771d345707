#ifndef ADIAGAP_ERRORS_HPP
#define ADIAGAP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace adiagap {

// Malformed input: DIMACS/metadata syntax, invariant violations in user-supplied data.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// A computation could not be carried out: size caps, rejection-sampling
// exhaustion, eigensolver non-convergence, inapplicable formulas (d0 = 0).
class ComputeError : public std::runtime_error {
 public:
  explicit ComputeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace adiagap

#endif  // ADIAGAP_ERRORS_HPP
