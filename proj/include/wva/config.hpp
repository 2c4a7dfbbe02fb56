#pragma once

#include <string>

namespace wva {

/// Raw input fields of a measurement scenario, before validation.
/// Defaults describe a plain single-pass scenario with ideal readout.
struct ConfigValues {
    int n = 1;           // number of entangled ancilla qubits
    double g = 1e-4;     // weak coupling strength (radians)
    double phi = 0.1;    // postselection angle parameter (radians)
    double r = 0.0;      // mirror amplitude reflection coefficient
    double gamma = 0.0;  // single-pass power loss
    double q_keep_to_discard = 0.0;  // P(success read as failure), per qubit
    double q_discard_to_keep = 0.0;  // P(failure read as success), per qubit
};

/// Validated, immutable parameter set with the derived mirror transmission
/// p = sqrt(1 - r^2) and amplitude loss factor L = sqrt(1 - gamma).
struct ExperimentConfig {
    int n;
    double g;
    double phi;
    double r;
    double gamma;
    double q_keep_to_discard;
    double q_discard_to_keep;
    double p;  // sqrt(1 - r^2), so r^2 + p^2 = 1
    double L;  // sqrt(1 - gamma)
};

/// Validates every field and computes the derived quantities.
/// Throws ConfigError naming the offending field and its bound.
ExperimentConfig make_config(const ConfigValues& values);

ConfigValues values_of(const ExperimentConfig& cfg);

/// Copy with a different coupling strength (used by derivative sweeps).
ExperimentConfig with_g(const ExperimentConfig& cfg, double g);

/// Copy with different readout confusion rates.
ExperimentConfig with_readout(const ExperimentConfig& cfg, double q_keep_to_discard,
                              double q_discard_to_keep);

}  // namespace wva
