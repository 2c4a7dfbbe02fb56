#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wva/analytic.hpp"
#include "wva/config.hpp"

namespace wva {

struct SweepAxis {
    std::string name;  // an ExperimentConfig field
    double start = 0.0;
    double stop = 0.0;
    int count = 2;
    bool log = false;
};

/// A one- or two-axis parameter sweep.  Grid points failing config
/// validation are skipped with a logged reason.
struct SweepSpec {
    ConfigValues base;
    std::vector<SweepAxis> axes;  // 1 or 2; the first axis is the slow one
    QfiForm form = QfiForm::Derived;
    RecycleVariant variant = RecycleVariant::Linear;
    int jobs = 1;
};

/// Grid coordinates of one axis (linear or log spacing, endpoints included).
std::vector<double> axis_values(const SweepAxis& axis);

/// CSV header shared by sweep outputs: config fields, derived p/L, the
/// observable columns, then a status column.
std::string sweep_csv_header();

/// Runs the sweep and writes CSV to `out`; skip messages go to `log`.
void run_sweep(const SweepSpec& spec, std::ostream& out, std::ostream& log);

/// Convenience matplotlib script for a sweep CSV (edit the y-column list in
/// the generated file to taste).
std::string sweep_plot_script(const SweepSpec& spec, const std::string& csv_path);

}  // namespace wva
