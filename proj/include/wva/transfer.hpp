#pragma once

#include "wva/config.hpp"
#include "wva/pointer.hpp"

namespace wva {

/// Success-channel transfer operator M_f = i sin(n phi - n g sigma_y).
PointerOperator meter_transfer_success(const ExperimentConfig& cfg);

/// Failure-channel transfer operator M_perp = cos(n phi - n g sigma_y).
/// Hermitian; eigenvalues cos(n phi -+ n g). Together with M_f it is complete:
/// M_f^dag M_f + M_perp^dag M_perp = I.
PointerOperator meter_transfer_fail(const ExperimentConfig& cfg);

}  // namespace wva
