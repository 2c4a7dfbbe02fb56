#include "wva/transfer.hpp"

#include <cmath>

namespace wva {

// Both transfer operators are functions of sigma_y alone, so they are built
// from their values on the sigma_y = +1 / -1 eigenbranches.

PointerOperator meter_transfer_success(const ExperimentConfig& cfg) {
    const Complex i{0.0, 1.0};
    const double up = cfg.n * cfg.phi - cfg.n * cfg.g;
    const double um = cfg.n * cfg.phi + cfg.n * cfg.g;
    return sigma_y_function(i * std::sin(up), i * std::sin(um));
}

PointerOperator meter_transfer_fail(const ExperimentConfig& cfg) {
    const double up = cfg.n * cfg.phi - cfg.n * cfg.g;
    const double um = cfg.n * cfg.phi + cfg.n * cfg.g;
    return sigma_y_function(std::cos(up), std::cos(um));
}

}  // namespace wva
