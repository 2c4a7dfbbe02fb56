#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace wva {

/// Rejected configuration value; message names the field and bound.
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A closed-form expression was evaluated at a point where it is undefined
/// (sin(n*phi) = 0, impedance-matched denominators, zero-shift ratios, ...).
class SingularityError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// The cavity geometric series does not converge (rL*cos(n*phi -+ n*g) >= 1).
class DivergentCavityError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Request exceeds a hard resource cap (oracle qubit count, dense GHZ dimension).
class CapacityError : public std::length_error {
  public:
    using std::length_error::length_error;
};

/// Collector for soft warnings (weak-regime degradation, skipped outcomes).
/// Operations accept an optional pointer; a null sink drops the messages.
struct Diagnostics {
    std::vector<std::string> warnings;

    void warn(std::string message) { warnings.push_back(std::move(message)); }
};

inline void warn_to(Diagnostics* diag, std::string message) {
    if (diag != nullptr) diag->warn(std::move(message));
}

}  // namespace wva
