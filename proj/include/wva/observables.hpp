#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wva/analytic.hpp"
#include "wva/config.hpp"

namespace wva {

/// One computed quantity; `status` is empty when the value is defined and
/// carries the guard reason when it is not.
struct Quantity {
    std::optional<double> value;
    std::string status;
};

/// Every scalar observable of one scenario, in the fixed documented order.
struct Observables {
    std::vector<std::pair<std::string, Quantity>> items;
    std::vector<std::string> warnings;

    const Quantity* find(const std::string& name) const;
};

/// Names of the observable columns, in serialization order.
const std::vector<std::string>& observable_names();

/// Evaluates every observable with guarded singularities recorded as
/// statuses rather than thrown; `form` picks the QFI column convention and
/// `variant` how the detected/discarded intensities are computed.
Observables evaluate_all(const ExperimentConfig& cfg, QfiForm form = QfiForm::Derived,
                         RecycleVariant variant = RecycleVariant::Linear);

}  // namespace wva
