#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "wva/config.hpp"

namespace wva {

/// The reproducible figure datasets.  Each id has documented default
/// parameter families; any config field the caller explicitly set replaces
/// the corresponding default (a swept field cannot be overridden).
struct FigureRequest {
    std::string id;                   // 2 | 3a | 3b | 4 | 5 | 6 | 7 | 8
    ConfigValues base;                // merged config values
    std::set<std::string> overridden; // field names the user set explicitly
};

const std::vector<std::string>& figure_ids();

/// Writes the figure's CSV data to `out`.  Throws ConfigError on unknown ids.
void write_figure(const FigureRequest& request, std::ostream& out);

/// A small matplotlib script that plots the CSV written for `id`.
std::string figure_plot_script(const std::string& id, const std::string& csv_path);

}  // namespace wva
