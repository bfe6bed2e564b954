#pragma once

#include <stdexcept>
#include <string>

namespace igsmac {

/// A scenario or subproblem whose primary-user rate target cannot be met
/// even with zero secondary interference.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

/// Channel matrix is (numerically) rank deficient, so zero-forcing has no
/// well-defined per-user stream.
class DegenerateChannelError : public std::runtime_error {
 public:
  explicit DegenerateChannelError(const std::string& what) : std::runtime_error(what) {}
};

/// A closed-form threshold whose denominator vanishes; callers fall back to
/// root finding.
class DegenerateThresholdError : public std::runtime_error {
 public:
  explicit DegenerateThresholdError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace igsmac
