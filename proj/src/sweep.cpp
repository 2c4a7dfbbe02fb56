#include "wva/sweep.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <set>

#include "wva/config_io.hpp"
#include "wva/errors.hpp"
#include "wva/format.hpp"
#include "wva/observables.hpp"
#include "wva/parallel.hpp"

namespace wva {

namespace {

// Log grids that mathematically land on a power of ten get the exact decade
// double instead of the exp/log round-trip neighbour (diff-friendly CSVs).
double snap_to_decade(double value) {
    const double exponent = std::round(std::log10(value));
    if (std::abs(exponent) > 300) return value;
    const double decade = std::pow(10.0, exponent);
    // The exp/log round trip wobbles by O(|log value|) ulps; 1e-13 relative
    // is far above that and far below any meaningful grid spacing.
    if (std::abs(value - decade) <= 1e-13 * decade) return decade;
    return value;
}

}  // namespace

std::vector<double> axis_values(const SweepAxis& axis) {
    if (axis.count < 2) throw ConfigError("sweep axis count must be >= 2");
    std::vector<double> values(static_cast<std::size_t>(axis.count));
    values.front() = axis.start;
    values.back() = axis.stop;
    if (axis.log) {
        if (axis.start <= 0.0 || axis.stop <= 0.0)
            throw ConfigError("log axis requires positive endpoints");
        const double la = std::log(axis.start);
        const double lb = std::log(axis.stop);
        for (int i = 1; i + 1 < axis.count; ++i)
            values[i] = snap_to_decade(std::exp(la + (lb - la) * i / (axis.count - 1)));
    } else {
        for (int i = 1; i + 1 < axis.count; ++i)
            values[i] = axis.start + (axis.stop - axis.start) * i / (axis.count - 1);
    }
    return values;
}

namespace {

const std::set<std::string>& sweepable_fields() {
    static const std::set<std::string> fields = {
        "n", "g", "phi", "r", "gamma", "q_keep_to_discard", "q_discard_to_keep"};
    return fields;
}

void set_field(ConfigValues& values, const std::string& name, double value) {
    // n is integral; reuse the key=value path for uniform validation.
    if (name == "n") {
        apply_key_value(values, name, std::to_string(static_cast<long long>(std::llround(value))));
    } else {
        apply_key_value(values, name, format_double(value));
    }
}

std::vector<std::string> record_cells(const ExperimentConfig& cfg, const Observables& obs,
                                      std::vector<std::string>* statuses) {
    std::vector<std::string> cells;
    cells.push_back(std::to_string(cfg.n));
    cells.push_back(format_double(cfg.g));
    cells.push_back(format_double(cfg.phi));
    cells.push_back(format_double(cfg.r));
    cells.push_back(format_double(cfg.gamma));
    cells.push_back(format_double(cfg.q_keep_to_discard));
    cells.push_back(format_double(cfg.q_discard_to_keep));
    cells.push_back(format_double(cfg.p));
    cells.push_back(format_double(cfg.L));
    std::string status;
    for (const auto& [name, quantity] : obs.items) {
        if (quantity.value.has_value()) {
            cells.push_back(format_double(*quantity.value));
        } else {
            cells.push_back("");  // guarded singularity: empty cell, reason in status
            if (!status.empty()) status += "; ";
            status += name + ": " + quantity.status;
        }
    }
    cells.push_back(status);
    if (statuses != nullptr && !status.empty()) statuses->push_back(status);
    return cells;
}

}  // namespace

std::string sweep_csv_header() {
    std::vector<std::string> cells = {"n", "g",     "phi",   "r",    "gamma", "q_keep_to_discard",
                                      "q_discard_to_keep", "p", "L"};
    for (const std::string& name : observable_names()) cells.push_back(name);
    cells.push_back("status");
    return csv_row(cells);
}

void run_sweep(const SweepSpec& spec, std::ostream& out, std::ostream& log) {
    if (spec.axes.empty() || spec.axes.size() > 2)
        throw ConfigError("sweep requires one or two axes");
    for (const SweepAxis& axis : spec.axes) {
        if (sweepable_fields().count(axis.name) == 0)
            throw ConfigError("unknown sweep axis: '" + axis.name + "'");
    }

    const std::vector<double> outer = axis_values(spec.axes[0]);
    const std::vector<double> inner =
        spec.axes.size() == 2 ? axis_values(spec.axes[1]) : std::vector<double>{0.0};

    struct Slot {
        bool valid = false;
        std::string row;
        std::string skip_message;
    };
    std::vector<Slot> slots(outer.size() * inner.size());

    parallel_for(slots.size(), spec.jobs, [&](std::size_t idx) {
        const std::size_t i = idx / inner.size();
        const std::size_t j = idx % inner.size();
        ConfigValues values = spec.base;
        Slot& slot = slots[idx];
        try {
            set_field(values, spec.axes[0].name, outer[i]);
            if (spec.axes.size() == 2) set_field(values, spec.axes[1].name, inner[j]);
            const ExperimentConfig cfg = make_config(values);
            const Observables obs = evaluate_all(cfg, spec.form, spec.variant);
            slot.row = csv_row(record_cells(cfg, obs, nullptr));
            slot.valid = true;
        } catch (const std::exception& e) {
            slot.skip_message = "skipping " + spec.axes[0].name + "=" + format_double(outer[i]);
            if (spec.axes.size() == 2)
                slot.skip_message += ", " + spec.axes[1].name + "=" + format_double(inner[j]);
            slot.skip_message += ": " + std::string(e.what());
        }
    });

    out << sweep_csv_header();
    for (const Slot& slot : slots) {
        if (slot.valid) {
            out << slot.row;
        } else {
            log << slot.skip_message << "\n";
        }
    }
}

std::string sweep_plot_script(const SweepSpec& spec, const std::string& csv_path) {
    std::string script;
    script += "#!/usr/bin/env python3\n";
    script += "# Edit y_cols to plot other columns from the sweep.\n";
    script += "import matplotlib.pyplot as plt\n";
    script += "import pandas as pd\n\n";
    script += "df = pd.read_csv(\"" + csv_path + "\")\n";
    script += "x_col = \"" + spec.axes[0].name + "\"\n";
    script += spec.axes.size() == 2 ? ("group_col = \"" + spec.axes[1].name + "\"\n")
                                    : "group_col = None\n";
    script += "y_cols = [\"P\", \"I_c\", \"qfi_standard\", \"qfi_recycled\", \"walk_off_ratio\"]\n";
    script += "fig, axes = plt.subplots(len(y_cols), 1, figsize=(6, 2.2 * len(y_cols)), sharex=True)\n";
    script += "for ax, y in zip(axes, y_cols):\n";
    script += "    if group_col is None:\n";
    script += "        ax.plot(df[x_col], df[y])\n";
    script += "    else:\n";
    script += "        for key, part in df.groupby(group_col):\n";
    script += "            ax.plot(part[x_col], part[y], label=f\"{group_col}={key}\")\n";
    script += "    ax.set_ylabel(y)\n";
    script += "axes[-1].set_xlabel(x_col)\n";
    script += "if group_col is not None:\n";
    script += "    axes[0].legend(fontsize=7)\n";
    script += "plt.tight_layout()\n";
    script += "plt.savefig(\"" + csv_path + ".png\", dpi=160)\n";
    script += "print(\"wrote " + csv_path + ".png\")\n";
    return script;
}

}  // namespace wva
