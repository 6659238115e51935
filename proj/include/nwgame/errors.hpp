#ifndef NWGAME_ERRORS_HPP
#define NWGAME_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nwg {

/// Malformed input: bad parameters, unparsable files, unknown names.
class ConfigError : public std::invalid_argument {
  public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// A well-formed object that violates a structural invariant
/// (bad design, b inside the range of g, strict-regime mismatch).
class ValidationError : public std::runtime_error {
  public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A search that ran out of candidates or attempts.
class InfeasibleError : public std::runtime_error {
  public:
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a student without the invert capability asks for a preimage.
class CapabilityError : public std::logic_error {
  public:
    explicit CapabilityError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace nwg

#endif  // NWGAME_ERRORS_HPP
