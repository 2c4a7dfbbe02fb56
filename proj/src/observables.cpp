#include "wva/observables.hpp"

#include <functional>

#include "wva/readout.hpp"
#include "wva/system_state.hpp"

namespace wva {

const Quantity* Observables::find(const std::string& name) const {
    for (const auto& [key, quantity] : items) {
        if (key == name) return &quantity;
    }
    return nullptr;
}

const std::vector<std::string>& observable_names() {
    static const std::vector<std::string> names = {
        "weak_value_im",
        "P",
        "P_perp",
        "P_mod",
        "loss_rate",
        "loss_rate_linear",
        "relative_error_rate",
        "I_c",
        "I_r",
        "P_c",
        "P_r",
        "Pc_mod",
        "qfi_standard",
        "qfi_standard_asprinted",
        "qfi_recycled",
        "shift_standard",
        "shift_orthogonal",
        "shift_recycled",
        "shift_discarded",
        "walk_off_ratio",
        "gamma_standard",
        "gamma_recycled",
        "fisher_factor_standard",
        "fisher_factor_recycled",
    };
    return names;
}

Observables evaluate_all(const ExperimentConfig& cfg, QfiForm form, RecycleVariant variant) {
    Observables out;
    Diagnostics diag;
    auto add = [&](const std::string& name, const std::function<double()>& eval) {
        Quantity q;
        try {
            q.value = eval();
        } catch (const std::exception& e) {
            q.status = e.what();
        }
        out.items.emplace_back(name, q);
    };

    const double fd = default_fd_step(cfg);
    add("weak_value_im", [&] { return weak_value(cfg.n, cfg.phi).imag(); });
    add("P", [&] { return postselection_probability(cfg); });
    add("P_perp", [&] { return fail_probability(cfg); });
    add("P_mod", [&] { return modified_postselection_probability(cfg); });
    add("loss_rate", [&] { return loss_rate(cfg); });
    add("loss_rate_linear", [&] { return loss_rate_linear(cfg); });
    add("relative_error_rate", [&] { return relative_error_rate(cfg); });
    add("I_c", [&] {
        if (variant == RecycleVariant::Exact) return recycled_meter(cfg, variant, &diag).norm2();
        return detected_power(cfg, &diag);
    });
    add("I_r", [&] { return discarded_meter(cfg, variant, &diag).norm2(); });
    add("P_c", [&] { return detect_probability_recycled(cfg); });
    add("P_r", [&] { return discard_probability_recycled(cfg); });
    add("Pc_mod", [&] { return modified_detection_probability_recycled(cfg); });
    add("qfi_standard", [&] { return qfi_standard(cfg, form); });
    add("qfi_standard_asprinted", [&] { return qfi_standard(cfg, QfiForm::AsPrinted); });
    add("qfi_recycled", [&] { return qfi_recycled(cfg, &diag); });
    add("shift_standard", [&] { return pointer_shift_standard(cfg); });
    add("shift_orthogonal", [&] { return pointer_shift_orthogonal(cfg); });
    add("shift_recycled", [&] { return pointer_shift_recycled(cfg, &diag); });
    add("shift_discarded", [&] { return pointer_shift_discarded(cfg, &diag); });
    add("walk_off_ratio", [&] { return walk_off_ratio(cfg, &diag); });
    add("gamma_standard", [&] { return gamma_standard(cfg); });
    add("gamma_recycled", [&] { return gamma_recycled(cfg); });
    add("fisher_factor_standard", [&] { return fisher_factor_standard(cfg); });
    add("fisher_factor_recycled", [&] { return fisher_factor_recycled(cfg, fd, &diag); });

    // De-duplicate repeated weak-regime warnings from shared helpers.
    for (const std::string& w : diag.warnings) {
        bool seen = false;
        for (const std::string& have : out.warnings) {
            if (have == w) {
                seen = true;
                break;
            }
        }
        if (!seen) out.warnings.push_back(w);
    }
    return out;
}

}  // namespace wva
