#include "wva/figures.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "wva/analytic.hpp"
#include "wva/errors.hpp"
#include "wva/format.hpp"
#include "wva/readout.hpp"

namespace wva {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct FigureSchema {
    std::vector<std::string> group_cols;
    std::string x_col;
    std::vector<std::string> y_cols;
};

FigureSchema schema_of(const std::string& id) {
    if (id == "2") return {{"gamma", "n"}, "r", {"I_c"}};
    if (id == "3a") return {{"n"}, "phi", {"qfi_standard"}};
    if (id == "3b") return {{"n"}, "g", {"qfi_standard"}};
    if (id == "4") return {{"gamma", "n"}, "r", {"qfi_recycled"}};
    if (id == "5") return {{"phi", "n"}, "r", {"qfi_recycled"}};
    if (id == "6") return {{"gamma", "n"}, "r", {"walk_off_ratio"}};
    if (id == "7") return {{"phi", "q"}, "n", {"gamma_standard", "gamma_recycled"}};
    if (id == "8") return {{"phi", "q"}, "n", {"fisher_factor_standard", "fisher_factor_recycled"}};
    throw ConfigError("unknown figure id: '" + id + "' (expected 2|3a|3b|4|5|6|7|8)");
}

// r sweep on [0, 0.99] plus any special points (analytic optima, zero
// crossings) so the curve's landmarks are present exactly.
std::vector<double> r_grid(int count, double r_max, std::vector<double> extra) {
    std::vector<double> rs;
    rs.reserve(static_cast<std::size_t>(count) + extra.size());
    for (int i = 0; i < count; ++i) rs.push_back(r_max * i / (count - 1));
    for (double e : extra) {
        if (e > 0.0 && e < 1.0) rs.push_back(e);
    }
    std::sort(rs.begin(), rs.end());
    rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
    return rs;
}

std::vector<double> defaulted(const FigureRequest& req, const char* field, double chosen,
                              std::vector<double> defaults) {
    if (req.overridden.count(field) != 0) return {chosen};
    return defaults;
}

std::vector<int> defaulted_ns(const FigureRequest& req, std::vector<int> defaults) {
    if (req.overridden.count("n") != 0) return {req.base.n};
    return defaults;
}

void header(std::ostream& out, const FigureSchema& s) {
    std::vector<std::string> cells = s.group_cols;
    cells.push_back(s.x_col);
    for (const std::string& y : s.y_cols) cells.push_back(y);
    out << csv_row(cells);
}

void fig_power_like(const FigureRequest& req, std::ostream& out, bool qfi) {
    const FigureSchema s = schema_of(qfi ? "4" : "2");
    header(out, s);
    const std::vector<double> gammas =
        defaulted(req, "gamma", req.base.gamma, {0.0, 0.05, 0.1});
    const std::vector<int> ns = defaulted_ns(req, {1, 2, 4});
    ConfigValues v = req.base;
    if (req.overridden.count("phi") == 0) v.phi = 0.1;
    for (double gamma : gammas) {
        for (int n : ns) {
            v.gamma = gamma;
            v.n = n;
            v.r = 0.0;
            const ExperimentConfig probe = make_config(v);
            for (double r : r_grid(199, 0.99, {detected_power_peak_r(probe)})) {
                v.r = r;
                const ExperimentConfig cfg = make_config(v);
                const double y = qfi ? qfi_recycled(cfg) : detected_power(cfg);
                out << csv_row({format_double(gamma), std::to_string(n), format_double(r),
                                format_double(y)});
            }
        }
    }
}

void fig3(const FigureRequest& req, std::ostream& out, bool sweep_g) {
    const FigureSchema s = schema_of(sweep_g ? "3b" : "3a");
    header(out, s);
    const std::vector<int> ns = defaulted_ns(req, {1, 2, 4});
    constexpr int kPoints = 400;
    ConfigValues v = req.base;
    if (!sweep_g && req.overridden.count("g") == 0) v.g = 1e-4;
    if (sweep_g && req.overridden.count("phi") == 0) v.phi = 0.1;
    for (int n : ns) {
        v.n = n;
        const double limit = kPi / (2.0 * n);
        for (int i = 1; i <= kPoints; ++i) {
            const double x = limit * i / (kPoints + 1);
            if (sweep_g) {
                v.g = x;
            } else {
                v.phi = x;
            }
            const ExperimentConfig cfg = make_config(v);
            out << csv_row({std::to_string(n), format_double(x),
                            format_double(qfi_standard(cfg, QfiForm::Derived))});
        }
    }
}

void fig5(const FigureRequest& req, std::ostream& out) {
    const FigureSchema s = schema_of("5");
    header(out, s);
    const std::vector<double> phis = defaulted(req, "phi", req.base.phi, {0.01, 0.02});
    ConfigValues v = req.base;
    if (req.overridden.count("gamma") == 0) v.gamma = 0.0;
    std::vector<int> ns;
    if (req.overridden.count("n") != 0) {
        ns = {req.base.n};
    } else {
        for (int n = 1; n <= 8; ++n) ns.push_back(n);
    }
    for (double phi : phis) {
        for (int n : ns) {
            v.phi = phi;
            v.n = n;
            v.r = 0.0;
            const RPeak peak = qfi_recycled_peak_over_r(make_config(v));
            for (double r : r_grid(400, 0.9975, {peak.r})) {
                v.r = r;
                const ExperimentConfig cfg = make_config(v);
                out << csv_row({format_double(phi), std::to_string(n), format_double(r),
                                format_double(qfi_recycled(cfg))});
            }
        }
    }
}

void fig6(const FigureRequest& req, std::ostream& out) {
    const FigureSchema s = schema_of("6");
    header(out, s);
    const std::vector<double> gammas =
        defaulted(req, "gamma", req.base.gamma, {0.0, 0.05, 0.1});
    const std::vector<int> ns = defaulted_ns(req, {1, 2, 4});
    ConfigValues v = req.base;
    if (req.overridden.count("phi") == 0) v.phi = 0.1;
    // Small default coupling: the ratio column is first-order recycled over
    // exact standard, so a large g would push the r=0 value visibly off 1.
    if (req.overridden.count("g") == 0) v.g = 1e-6;
    for (double gamma : gammas) {
        for (int n : ns) {
            v.gamma = gamma;
            v.n = n;
            const double L = std::sqrt(1.0 - gamma);
            const double zero_cross = std::cos(n * v.phi) / L;  // rL = cos(n phi)
            for (double r : r_grid(199, 0.99, {zero_cross})) {
                v.r = r;
                const ExperimentConfig cfg = make_config(v);
                out << csv_row({format_double(gamma), std::to_string(n), format_double(r),
                                format_double(walk_off_ratio(cfg))});
            }
        }
    }
}

void fig_readout(const FigureRequest& req, std::ostream& out, bool fisher) {
    const FigureSchema s = schema_of(fisher ? "8" : "7");
    header(out, s);
    const std::vector<double> phis = defaulted(req, "phi", req.base.phi, {0.05, 0.1});
    std::vector<double> qs = {0.005, 0.02};
    const bool q_overridden = req.overridden.count("q_keep_to_discard") != 0 ||
                              req.overridden.count("q_discard_to_keep") != 0;
    ConfigValues v = req.base;
    if (req.overridden.count("r") == 0) v.r = 0.9;
    if (req.overridden.count("gamma") == 0) v.gamma = 0.01;
    if (req.overridden.count("g") == 0) v.g = 1e-4;
    for (double phi : phis) {
        for (double q : qs) {
            v.phi = phi;
            if (q_overridden) {
                // Keep the user's (possibly asymmetric) rates; emit one family.
                v.q_keep_to_discard = req.base.q_keep_to_discard;
                v.q_discard_to_keep = req.base.q_discard_to_keep;
            } else {
                v.q_keep_to_discard = q;
                v.q_discard_to_keep = q;
            }
            const int n_max = static_cast<int>(std::floor((kPi / 2.0) / phi)) - 1;
            for (int n = 1; n <= n_max; ++n) {
                v.n = n;
                const ExperimentConfig cfg = make_config(v);
                const double q_label = q_overridden ? v.q_keep_to_discard : q;
                if (fisher) {
                    const double fd = default_fd_step(cfg);
                    out << csv_row({format_double(phi), format_double(q_label), std::to_string(n),
                                    format_double(fisher_factor_standard(cfg)),
                                    format_double(fisher_factor_recycled(cfg, fd))});
                } else {
                    out << csv_row({format_double(phi), format_double(q_label), std::to_string(n),
                                    format_double(gamma_standard(cfg)),
                                    format_double(gamma_recycled(cfg))});
                }
            }
            if (q_overridden) break;  // single family
        }
    }
}

}  // namespace

const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids = {"2", "3a", "3b", "4", "5", "6", "7", "8"};
    return ids;
}

void write_figure(const FigureRequest& request, std::ostream& out) {
    const std::string& id = request.id;
    if (id == "2") {
        fig_power_like(request, out, false);
    } else if (id == "3a") {
        fig3(request, out, false);
    } else if (id == "3b") {
        fig3(request, out, true);
    } else if (id == "4") {
        fig_power_like(request, out, true);
    } else if (id == "5") {
        fig5(request, out);
    } else if (id == "6") {
        fig6(request, out);
    } else if (id == "7") {
        fig_readout(request, out, false);
    } else if (id == "8") {
        fig_readout(request, out, true);
    } else {
        throw ConfigError("unknown figure id: '" + id + "' (expected 2|3a|3b|4|5|6|7|8)");
    }
}

std::string figure_plot_script(const std::string& id, const std::string& csv_path) {
    const FigureSchema s = schema_of(id);
    std::string groups;
    for (std::size_t i = 0; i < s.group_cols.size(); ++i) {
        if (i > 0) groups += ", ";
        groups += "\"" + s.group_cols[i] + "\"";
    }
    std::string ys;
    for (std::size_t i = 0; i < s.y_cols.size(); ++i) {
        if (i > 0) ys += ", ";
        ys += "\"" + s.y_cols[i] + "\"";
    }
    std::string script;
    script += "#!/usr/bin/env python3\n";
    script += "import matplotlib.pyplot as plt\n";
    script += "import pandas as pd\n\n";
    script += "df = pd.read_csv(\"" + csv_path + "\")\n";
    script += "group_cols = [" + groups + "]\n";
    script += "x_col = \"" + s.x_col + "\"\n";
    script += "y_cols = [" + ys + "]\n";
    script += "fig, ax = plt.subplots()\n";
    script += "for key, part in df.groupby(group_cols):\n";
    script += "    label = \", \".join(f\"{c}={v}\" for c, v in zip(group_cols, key if isinstance(key, tuple) else (key,)))\n";
    script += "    for y in y_cols:\n";
    script += "        suffix = f\" [{y}]\" if len(y_cols) > 1 else \"\"\n";
    script += "        ax.plot(part[x_col], part[y], label=label + suffix)\n";
    script += "ax.set_xlabel(x_col)\n";
    script += "ax.set_ylabel(\", \".join(y_cols))\n";
    script += "ax.legend(fontsize=7)\n";
    script += "plt.tight_layout()\n";
    script += "plt.savefig(\"" + csv_path + ".png\", dpi=160)\n";
    script += "print(\"wrote " + csv_path + ".png\")\n";
    return script;
}

}  // namespace wva
