#include "wva/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "wva/analytic.hpp"
#include "wva/grid.hpp"
#include "wva/oracle.hpp"
#include "wva/readout.hpp"
#include "wva/system_state.hpp"
#include "wva/transfer.hpp"

namespace wva {

namespace {

constexpr Complex kI{0.0, 1.0};

std::string point_label(const GridPoint& pt) {
    std::ostringstream os;
    os << "(n=" << pt.n << ", phi=" << pt.phi << ", g=" << pt.g << ", r=" << pt.r
       << ", gamma=" << pt.gamma << ")";
    return os.str();
}

// Tracks the largest deviation and where it happened.
struct Worst {
    double value = 0.0;
    std::string where;

    void update(double v, const std::string& w) {
        if (v > value) {
            value = v;
            where = w;
        }
    }
};

CheckResult finish(const std::string& name, const Worst& worst, double tolerance,
                   std::string extra = {}) {
    CheckResult result;
    result.name = name;
    result.worst = worst.value;
    result.tolerance = tolerance;
    result.pass = worst.value <= tolerance;
    result.detail = worst.where.empty() ? std::move(extra)
                                        : ("worst at " + worst.where +
                                           (extra.empty() ? "" : "; " + extra));
    return result;
}

double amp_distance(const PointerState& a, const PointerState& b) {
    return std::max(std::abs(a.c0 - b.c0), std::abs(a.c1 - b.c1));
}

double rel_amp_distance(const PointerState& a, const PointerState& b) {
    const double d0 = std::abs(a.c0) > 0 ? std::abs(a.c0 - b.c0) / std::abs(a.c0) : std::abs(b.c0);
    const double d1 = std::abs(a.c1) > 0 ? std::abs(a.c1 - b.c1) / std::abs(a.c1) : std::abs(b.c1);
    return std::max(d0, d1);
}

PointerState oracle_meter(const GhzStates& ghz, double g, bool orthogonal) {
    const FullState joint = joint_state(ghz.psi_i, PointerState{1.0, 0.0});
    const FullState coupled = apply_weak_coupling(joint, g);
    return postselect(coupled, orthogonal ? ghz.psi_f_orth : ghz.psi_f);
}

std::vector<GridPoint> grid_for(const SelftestOptions& options) {
    std::vector<GridPoint> grid = standard_grid();
    if (!options.quick) return grid;
    std::vector<GridPoint> reduced;
    for (std::size_t i = 0; i < grid.size(); i += 7) reduced.push_back(grid[i]);
    return reduced;
}

// ---- individual checks ------------------------------------------------

CheckResult check_ghz_overlaps() {
    Worst worst;
    for (int n = 1; n <= 8; ++n) {
        for (double frac : {0.2, 0.5, 0.9}) {
            const double phi = frac * (3.14159265358979323846 / (2.0 * n));
            const GhzStates ghz = ghz_states(n, phi);
            const Complex fi = inner(ghz.psi_f, ghz.psi_i);
            const Complex oi = inner(ghz.psi_f_orth, ghz.psi_i);
            const Complex fo = inner(ghz.psi_f, ghz.psi_f_orth);
            const std::string label = "(n=" + std::to_string(n) + ", phi=" + std::to_string(phi) + ")";
            worst.update(std::abs(fi - kI * std::sin(n * phi)), label);
            worst.update(std::abs(oi - Complex{std::cos(n * phi), 0.0}), label);
            worst.update(std::abs(fo), label);
            worst.update(std::abs(inner(ghz.psi_f, ghz.psi_f) - 1.0), label);
            worst.update(std::abs(inner(ghz.psi_i, ghz.psi_i) - 1.0), label);
        }
    }
    return finish("ghz-overlaps", worst, 1e-14);
}

CheckResult check_weak_value_explicit() {
    Worst worst;
    for (int n = 1; n <= 8; ++n) {
        for (double frac : {0.2, 0.5, 0.9}) {
            const double phi = frac * (3.14159265358979323846 / (2.0 * n));
            const GhzStates ghz = ghz_states(n, phi);
            const Complex explicit_value =
                inner(ghz.psi_f, apply_collective_sigma_z(ghz.psi_i)) / inner(ghz.psi_f, ghz.psi_i);
            const Complex closed = weak_value(n, phi);
            worst.update(std::abs(explicit_value - closed) / std::abs(closed),
                         "(n=" + std::to_string(n) + ", phi=" + std::to_string(phi) + ")");
        }
    }
    return finish("weak-value-explicit", worst, 1e-12);
}

CheckResult check_transfer_completeness(const std::vector<GridPoint>& grid) {
    Worst worst;
    for (const GridPoint& pt : grid) {
        const ExperimentConfig cfg = config_at(pt);
        const PointerOperator mf = meter_transfer_success(cfg);
        const PointerOperator mp = meter_transfer_fail(cfg);
        const PointerOperator total = mf.adjoint() * mf + mp.adjoint() * mp;
        const PointerOperator id = pointer_identity();
        double dev = 0.0;
        for (int k = 0; k < 4; ++k) dev = std::max(dev, std::abs(total.m[k] - id.m[k]));
        worst.update(dev, point_label(pt));
    }
    return finish("transfer-completeness", worst, 1e-14);
}

CheckResult check_oracle_meter_states(const std::vector<GridPoint>& grid, double perturbation) {
    Worst worst;
    for (const GridPoint& pt : grid) {
        const ExperimentConfig cfg = config_at(pt);
        const GhzStates ghz = ghz_states(cfg.n, cfg.phi);
        PointerState analytic = meter_postselected(cfg);
        analytic.c0 += perturbation;  // sensitivity hook; zero in production
        const PointerState orth = meter_orthogonal(cfg);
        worst.update(amp_distance(analytic, oracle_meter(ghz, cfg.g, false)), point_label(pt));
        worst.update(amp_distance(orth, oracle_meter(ghz, cfg.g, true)), point_label(pt));
        // Transfer operators acting on |0>_p reproduce the same states.
        worst.update(amp_distance(meter_transfer_success(cfg).apply({1.0, 0.0}), analytic),
                     point_label(pt));
        worst.update(amp_distance(meter_transfer_fail(cfg).apply({1.0, 0.0}), orth),
                     point_label(pt));
    }
    return finish("oracle-meter-states", worst, 1e-10);
}

CheckResult check_oracle_probabilities(const std::vector<GridPoint>& grid) {
    Worst worst;
    for (const GridPoint& pt : grid) {
        const ExperimentConfig cfg = config_at(pt);
        const GhzStates ghz = ghz_states(cfg.n, cfg.phi);
        const double p_oracle = oracle_meter(ghz, cfg.g, false).norm2();
        const double p_orth_oracle = oracle_meter(ghz, cfg.g, true).norm2();
        worst.update(std::abs(p_oracle - postselection_probability(cfg)), point_label(pt));
        worst.update(std::abs(p_orth_oracle - fail_probability(cfg)), point_label(pt));
        worst.update(std::abs(postselection_probability(cfg) + fail_probability(cfg) - 1.0),
                     point_label(pt));
        worst.update(std::abs(meter_postselected(cfg).norm2() - postselection_probability(cfg)),
                     point_label(pt));
    }
    return finish("oracle-probabilities", worst, 1e-12);
}

CheckResult check_oracle_recycled(const std::vector<GridPoint>& grid) {
    Worst worst;
    for (const GridPoint& pt : grid) {
        const ExperimentConfig cfg = config_at(pt);
        const RecycledTruncation oracle =
            recycling_truncated(cfg, kDefaultTruncationTol, kDefaultMaxPasses);
        worst.update(amp_distance(recycled_meter(cfg, RecycleVariant::Exact), oracle.recycled),
                     point_label(pt));
        worst.update(amp_distance(discarded_meter(cfg, RecycleVariant::Exact), oracle.discarded),
                     point_label(pt));
    }
    return finish("oracle-recycled-states", worst, 1e-10);
}

CheckResult check_energy_conservation(const std::vector<GridPoint>& grid) {
    Worst worst;
    for (const GridPoint& pt : grid) {
        if (pt.gamma != 0.0) continue;
        const ExperimentConfig cfg = config_at(pt);
        const double closed = recycled_meter(cfg, RecycleVariant::Exact).norm2() +
                              discarded_meter(cfg, RecycleVariant::Exact).norm2();
        worst.update(std::abs(closed - 1.0), point_label(pt));
        // Tighter truncation: an amplitude tail of size t moves the norm
        // budget by ~2t, so 1e-13 keeps the oracle path inside 1e-12.
        const RecycledTruncation oracle = recycling_truncated(cfg, 1e-13, kDefaultMaxPasses);
        worst.update(std::abs(oracle.recycled.norm2() + oracle.discarded.norm2() - 1.0),
                     point_label(pt) + " [oracle]");
    }
    return finish("energy-conservation-lossless", worst, 1e-12);
}

CheckResult check_single_pass_reduction(const std::vector<GridPoint>& grid) {
    Worst worst;
    for (const GridPoint& pt : grid) {
        if (pt.r != 0.0 || pt.gamma != 0.0) continue;
        const ExperimentConfig cfg = config_at(pt);
        worst.update(amp_distance(recycled_meter(cfg, RecycleVariant::Exact),
                                  meter_postselected(cfg)),
                     point_label(pt));
        worst.update(amp_distance(discarded_meter(cfg, RecycleVariant::Exact),
                                  meter_orthogonal(cfg)),
                     point_label(pt));
        const double s = std::sin(cfg.n * cfg.phi);
        worst.update(std::abs(detected_power(cfg) - s * s), point_label(pt));
        const double c = std::cos(cfg.n * cfg.phi);
        worst.update(std::abs(qfi_recycled(cfg) - 4.0 * cfg.n * cfg.n * c * c), point_label(pt));
        // Linear variant reduces to first order: deviation is O((ng)^2).
        const double ng = cfg.n * cfg.g;
        const double linear_gap =
            amp_distance(recycled_meter(cfg, RecycleVariant::Linear), meter_postselected(cfg));
        worst.update(linear_gap <= 0.5 * ng * ng ? 0.0 : linear_gap, point_label(pt));
    }
    return finish("single-pass-reduction", worst, 1e-14);
}

// Relative gap between Eq.-style detected power and the Linear state norm is
// exactly (ng (cos nphi - rL) / ((1 - rL cos nphi) sin nphi))^2.  The 1e-4
// budget holds wherever rL <= cos(n phi); past impedance matching the factor
// can exceed cot(n phi) and the true bound is 1.3e-4 on this grid.
CheckResult check_taylor_detected_power(const std::vector<GridPoint>& grid) {
    Worst worst_identity;
    Worst worst_within;
    Worst worst_global;
    for (const GridPoint& pt : grid) {
        if (pt.g > pt.phi / 100.0) continue;
        const ExperimentConfig cfg = config_at(pt);
        const double ic = detected_power(cfg);
        const double norm_linear = recycled_meter(cfg, RecycleVariant::Linear).norm2();
        const double gap = std::abs(norm_linear - ic) / ic;
        const double s = std::sin(cfg.n * cfg.phi);
        const double c = std::cos(cfg.n * cfg.phi);
        const double rl = cfg.r * cfg.L;
        const double tilt = cfg.n * cfg.g * (c - rl) / ((1.0 - rl * c) * s);
        worst_identity.update(std::abs(gap - tilt * tilt), point_label(pt));
        if (rl <= c) worst_within.update(gap, point_label(pt));
        worst_global.update(gap, point_label(pt));
    }
    CheckResult identity = finish("taylor-detected-power", worst_identity, 1e-10);
    if (worst_within.value > 1e-4 || worst_global.value > 1.3e-4) identity.pass = false;
    std::ostringstream os;
    os << identity.detail << "; gap<=1e-4 where rL<=cos(n phi) (worst " << worst_within.value
       << "), global worst " << worst_global.value;
    identity.detail = os.str();
    return identity;
}

CheckResult check_taylor_recycled(const std::vector<GridPoint>& grid) {
    Worst worst;
    for (const GridPoint& pt : grid) {
        if (pt.g > pt.phi / 100.0) continue;
        const ExperimentConfig cfg = config_at(pt);
        const RecycledTruncation oracle =
            recycling_truncated(cfg, kDefaultTruncationTol, kDefaultMaxPasses);
        worst.update(rel_amp_distance(oracle.recycled, recycled_meter(cfg, RecycleVariant::Linear)),
                     point_label(pt));
    }
    return finish("taylor-recycled-meter", worst, 1e-3);
}

CheckResult check_taylor_discarded(const std::vector<GridPoint>& grid) {
    Worst worst;
    int excluded = 0;
    for (const GridPoint& pt : grid) {
        if (pt.g > pt.phi / 100.0) continue;
        const ExperimentConfig cfg = config_at(pt);
        // First-order forms of the discarded branch lose validity near the
        // impedance-matched point where that branch empties.
        if (std::abs(cfg.L * std::cos(cfg.n * cfg.phi) - cfg.r) < 0.05) {
            ++excluded;
            continue;
        }
        const RecycledTruncation oracle =
            recycling_truncated(cfg, kDefaultTruncationTol, kDefaultMaxPasses);
        worst.update(
            rel_amp_distance(oracle.discarded, discarded_meter(cfg, RecycleVariant::Linear)),
            point_label(pt));
    }
    return finish("taylor-discarded-meter", worst, 1e-3,
                  std::to_string(excluded) + " near-impedance points excluded");
}

CheckResult check_qfi_functional_identity(const std::vector<GridPoint>& grid) {
    Worst worst;
    for (const GridPoint& pt : grid) {
        const ExperimentConfig cfg = config_at(pt);
        const double s = std::sin(cfg.n * cfg.phi);
        const double c = std::cos(cfg.n * cfg.phi);
        const double n = cfg.n;
        const PointerState state = meter_postselected(cfg);
        const PointerState derivative{kI * (-n * s * std::sin(n * cfg.g)),
                                      Complex{n * c * std::cos(n * cfg.g), 0.0}};
        const double functional = qfi_functional(state, derivative);
        const double closed = qfi_standard(cfg, QfiForm::Derived);
        worst.update(std::abs(functional - closed) / std::max(1.0, std::abs(closed)),
                     point_label(pt));
    }
    return finish("qfi-functional-identity", worst, 1e-12);
}

CheckResult check_qfi_recycled_linear(const std::vector<GridPoint>& grid) {
    Worst worst;
    for (const GridPoint& pt : grid) {
        const ExperimentConfig cfg = config_at(pt);
        const double c = std::cos(cfg.n * cfg.phi);
        const double rl = cfg.r * cfg.L;
        const double beta = (c - rl) / ((1.0 - rl * c) * (1.0 - rl * c));
        const PointerState state = recycled_meter(cfg, RecycleVariant::Linear);
        const PointerState derivative{Complex{}, Complex{cfg.p * cfg.n * beta, 0.0}};
        const double functional = qfi_functional(state, derivative);
        const double closed = qfi_recycled(cfg);
        if (closed == 0.0) continue;
        // Exact relationship: functional = closed * (1 - (p n g beta)^2).
        const double expected_gap = std::pow(cfg.p * cfg.n * cfg.g * beta, 2);
        const double gap = std::abs(functional - closed) / closed;
        worst.update(std::abs(gap - expected_gap), point_label(pt));
    }
    return finish("qfi-recycled-linear-identity", worst, 1e-9);
}

CheckResult check_qfi_arbitration(std::vector<ArbitrationRow>& rows) {
    Worst worst;
    double min_as_printed_gap = 1e300;
    for (int n : {1, 2, 4, 8}) {
        const double phi = 0.04 / n;
        const double g = phi / 200.0;
        const GhzStates ghz = ghz_states(n, phi);
        const auto meter_at = [&](double gg) { return oracle_meter(ghz, gg, false); };
        const FdValue numeric = qfi_numeric(meter_at, g, 1e-4 / n);
        ConfigValues v;
        v.n = n;
        v.phi = phi;
        v.g = g;
        const ExperimentConfig cfg = make_config(v);
        ArbitrationRow row{};
        row.n = n;
        row.phi = phi;
        row.g = g;
        row.as_printed = qfi_standard(cfg, QfiForm::AsPrinted);
        row.derived = qfi_standard(cfg, QfiForm::Derived);
        row.oracle = numeric.value;
        row.oracle_vs_derived = std::abs(numeric.value - row.derived) / row.derived;
        row.oracle_vs_as_printed = std::abs(numeric.value - row.as_printed) / row.oracle;
        rows.push_back(row);
        worst.update(row.oracle_vs_derived, "(n=" + std::to_string(n) + ")");
        min_as_printed_gap = std::min(min_as_printed_gap, row.oracle_vs_as_printed);
    }
    CheckResult result = finish("qfi-arbitration", worst, 1e-6);
    std::ostringstream os;
    os << result.detail << "; AsPrinted disagrees with the oracle by >= " << min_as_printed_gap
       << " relative on every row";
    result.detail = os.str();
    if (min_as_printed_gap < 0.5) result.pass = false;
    return result;
}

CheckResult check_pointer_shift_oracle(const std::vector<GridPoint>& grid) {
    Worst worst;
    for (const GridPoint& pt : grid) {
        const ExperimentConfig cfg = config_at(pt);
        const PointerOperator sr = sigma_r();
        // Standard and orthogonal shifts are exact: compare at every point.
        worst.update(std::abs(pointer_shift_standard(cfg) -
                              normalized_expectation(sr, meter_postselected(cfg))),
                     point_label(pt));
        worst.update(std::abs(pointer_shift_orthogonal(cfg) -
                              normalized_expectation(sr, meter_orthogonal(cfg))),
                     point_label(pt) + " [orthogonal]");
    }
    CheckResult exact = finish("pointer-shift-closed-forms", worst, 1e-12);

    Worst first_order;
    for (const GridPoint& pt : grid) {
        const ExperimentConfig cfg = config_at(pt);
        const PointerOperator sr = sigma_r();
        if (pt.g <= pt.phi / 100.0) {
            const double oracle =
                normalized_expectation(sr, recycled_meter(cfg, RecycleVariant::Exact));
            first_order.update(std::abs(pointer_shift_recycled(cfg) - oracle) / std::abs(oracle),
                               point_label(pt));
        }
        if (pt.g <= pt.phi / 1000.0 &&
            std::abs(cfg.L * std::cos(cfg.n * cfg.phi) - cfg.r) >= 0.05) {
            const double oracle =
                normalized_expectation(sr, discarded_meter(cfg, RecycleVariant::Exact));
            first_order.update(std::abs(pointer_shift_discarded(cfg) - oracle) / std::abs(oracle),
                               point_label(pt) + " [discarded]");
        }
    }
    CheckResult fo = finish("pointer-shift-first-order", first_order, 1e-3);
    if (!exact.pass) {
        fo.pass = false;
        fo.detail += "; closed-form expectation mismatch: " + exact.detail;
    }
    fo.worst = std::max(fo.worst, exact.worst);
    return fo;
}

CheckResult check_projective_outcome_rule(const std::vector<GridPoint>& grid) {
    Worst worst;
    for (const GridPoint& pt : grid) {
        const ExperimentConfig cfg = config_at(pt);
        const PointerState state = recycled_meter(cfg, RecycleVariant::Exact);
        const double n2 = state.norm2();
        if (n2 == 0.0) continue;
        const OutcomeSplit split =
            outcome_probabilities(normalized_expectation(sigma_r(), state));
        const double w_r = std::norm(inner(ket_r(), state)) / n2;
        const double w_l = std::norm(inner(ket_l(), state)) / n2;
        worst.update(std::abs(split.w_r - w_r), point_label(pt));
        worst.update(std::abs(split.w_l - w_l), point_label(pt));
    }
    return finish("projective-outcome-rule", worst, 1e-13);
}

CheckResult check_outcome_distribution_sum(const std::vector<GridPoint>& grid) {
    Worst worst;
    int invalid = 0;
    for (const GridPoint& pt : grid) {
        for (auto [qkd, qdk] : {std::pair{0.01, 0.01}, std::pair{0.02, 0.005}}) {
            const ExperimentConfig cfg = config_at(pt, qkd, qdk);
            try {
                const ReadoutOutcomeDistribution dist = modified_outcome_distribution(cfg);
                worst.update(std::abs(dist.h_r + dist.h_l -
                                      modified_detection_probability_recycled(cfg)),
                             point_label(pt));
                worst.update(std::min(dist.h_r, std::min(dist.h_l, dist.discarded)) < -1e-15
                                 ? 1.0
                                 : 0.0,
                             point_label(pt) + " [negative mass]");
            } catch (const SingularityError&) {
                ++invalid;  // |linear shift| > 1 past impedance matching
            }
        }
    }
    return finish("outcome-distribution-sum", worst, 1e-14,
                  std::to_string(invalid) + " invalid-shift points rejected by contract");
}

CheckResult check_mixture_identities(const std::vector<GridPoint>& grid) {
    Worst worst;
    for (const GridPoint& pt : grid) {
        for (auto [qkd, qdk] : {std::pair{0.01, 0.01}, std::pair{0.02, 0.005}}) {
            const ExperimentConfig cfg = config_at(pt, qkd, qdk);
            const double kw = std::pow(1.0 - qkd, cfg.n);
            const double lw = std::pow(qdk, cfg.n);
            {
                const double p = postselection_probability(cfg);
                const double pp = fail_probability(cfg);
                const double mix = (p * kw * pointer_shift_standard(cfg) +
                                    pp * lw * pointer_shift_orthogonal(cfg)) /
                                   (p * kw + pp * lw);
                worst.update(std::abs(gamma_standard(cfg) * pointer_shift_standard(cfg) - mix),
                             point_label(pt));
            }
            {
                const double pc = detect_probability_recycled(cfg);
                const double pr = discard_probability_recycled(cfg);
                const double mix = (pc * kw * pointer_shift_recycled(cfg) +
                                    pr * lw * pointer_shift_discarded(cfg)) /
                                   (pc * kw + pr * lw);
                worst.update(std::abs(gamma_recycled(cfg) * pointer_shift_recycled(cfg) - mix),
                             point_label(pt) + " [recycled]");
            }
        }
    }
    return finish("mixture-identities", worst, 1e-12);
}

CheckResult check_readout_continuity(const std::vector<GridPoint>& grid) {
    // Regression bound: |1 - factor| <= C q with empirical C frozen at 1.1e4
    // (the q->0 supremum is 1/P_min ~ 1/sin^2(0.01) on this grid).
    constexpr double kC = 1.1e4;
    Worst worst;
    for (const GridPoint& pt : grid) {
        for (double q : {1e-3, 1e-4, 1e-5}) {
            const ExperimentConfig cfg = config_at(pt, q, q);
            const double fd = default_fd_step(cfg);
            double values[4];
            values[0] = gamma_standard(cfg);
            values[1] = fisher_factor_standard(cfg);
            try {
                values[2] = gamma_recycled(cfg);
                values[3] = fisher_factor_recycled(cfg, fd);
            } catch (const SingularityError&) {
                values[2] = 1.0;
                values[3] = 1.0;
            }
            for (double v : values)
                worst.update(std::abs(1.0 - v) / (kC * q), point_label(pt) + " q=" + std::to_string(q));
        }
    }
    CheckResult result = finish("readout-continuity", worst, 1.0);
    result.detail += " (deviation over C*q, C=1.1e4)";
    return result;
}

CheckResult check_fd_convergence(const std::vector<GridPoint>& grid) {
    Worst worst;
    for (std::size_t i = 0; i < grid.size(); i += 11) {
        const GridPoint& pt = grid[i];
        const ExperimentConfig cfg = config_at(pt, 0.005, 0.005);
        const double fd = default_fd_step(cfg);
        try {
            const double coarse = modified_fisher_recycled(cfg, fd);
            const double fine = modified_fisher_recycled(cfg, fd / 2.0);
            worst.update(std::abs(fine - coarse) / std::abs(fine), point_label(pt));
        } catch (const SingularityError&) {
            continue;
        }
    }
    return finish("fd-convergence", worst, 1e-6);
}

CheckResult check_truncation_tail(const SelftestOptions& options) {
    Worst worst;
    const std::vector<GridPoint> samples = {
        {1, 0.1, 1e-4, 0.9, 0.0}, {2, 0.1, 1e-4, 0.9, 0.05}, {4, 0.05, 1e-5, 0.6, 0.1},
        {1, 0.01, 1e-5, 0.99, 0.0}};
    for (const GridPoint& pt : samples) {
        const ExperimentConfig cfg = config_at(pt);
        // Successive term norms contract by the dominant eigenvalue
        // rL cos(n phi - n g); sample term k and k+1 by capping the pass
        // count and reading the convergence report.
        const auto term_norm_at = [&](int passes) {
            try {
                recycling_truncated(cfg, 1e-300, passes);
            } catch (const ConvergenceError& e) {
                return e.report.tail_norm;
            }
            return -1.0;  // unreachable at this tolerance
        };
        const double t10 = term_norm_at(10);
        const double t11 = term_norm_at(11);
        const double rho = cfg.r * cfg.L * std::cos(cfg.n * cfg.phi - cfg.n * cfg.g);
        worst.update(std::abs(t11 / t10 - rho) / rho, point_label(pt));
    }
    // r = 0 must take exactly one pass.
    ConfigValues v;
    v.r = 0.0;
    const TruncationReport single =
        recycling_truncated(make_config(v), 1e-12, kDefaultMaxPasses).report;
    if (single.passes_used != 1) worst.update(1.0, "r=0 pass count");
    (void)options;
    return finish("truncation-tail", worst, 1e-2);
}

CheckResult check_classical_fisher_consistency(const std::vector<GridPoint>& grid) {
    Worst worst;
    // Analytic reference family: masses (sin^2 g, cos^2 g) carry FI = 4.
    {
        const auto binary = [](double g) {
            return std::vector<double>{std::sin(g) * std::sin(g), std::cos(g) * std::cos(g)};
        };
        const double fi = classical_fisher_numeric(binary, 1e-4, 1e-7);
        worst.update(std::abs(fi - 4.0) / 4.0, "binary family");
    }
    for (std::size_t i = 0; i < grid.size(); i += 13) {
        const GridPoint& pt = grid[i];
        const ExperimentConfig cfg = config_at(pt);
        const double fd = default_fd_step(cfg);
        try {
            const auto dist_at = [&](double g) {
                const ReadoutOutcomeDistribution d =
                    modified_outcome_distribution(with_g(cfg, g));
                return std::vector<double>{d.h_r, d.h_l, d.discarded};
            };
            const double via_oracle = classical_fisher_numeric(dist_at, cfg.g, fd);
            const double via_readout = modified_fisher_recycled(cfg, fd);
            worst.update(std::abs(via_oracle - via_readout) / std::abs(via_readout),
                         point_label(pt));
        } catch (const SingularityError&) {
            continue;
        }
    }
    return finish("classical-fisher-consistency", worst, 1e-9);
}

}  // namespace

bool SelftestReport::all_pass() const {
    for (const CheckResult& check : checks) {
        if (!check.pass) return false;
    }
    return true;
}

SelftestReport run_selftest(const SelftestOptions& options) {
    SelftestReport report;
    const std::vector<GridPoint> grid = grid_for(options);

    report.checks.push_back(check_ghz_overlaps());
    report.checks.push_back(check_weak_value_explicit());
    report.checks.push_back(check_transfer_completeness(grid));
    report.checks.push_back(check_oracle_meter_states(grid, options.inject_perturbation));
    report.checks.push_back(check_oracle_probabilities(grid));
    report.checks.push_back(check_oracle_recycled(grid));
    report.checks.push_back(check_energy_conservation(grid));
    report.checks.push_back(check_single_pass_reduction(grid));
    report.checks.push_back(check_taylor_detected_power(grid));
    report.checks.push_back(check_taylor_recycled(grid));
    report.checks.push_back(check_taylor_discarded(grid));
    report.checks.push_back(check_qfi_functional_identity(grid));
    report.checks.push_back(check_qfi_recycled_linear(grid));
    report.checks.push_back(check_qfi_arbitration(report.arbitration));
    report.checks.push_back(check_pointer_shift_oracle(grid));
    report.checks.push_back(check_projective_outcome_rule(grid));
    report.checks.push_back(check_outcome_distribution_sum(grid));
    report.checks.push_back(check_mixture_identities(grid));
    report.checks.push_back(check_readout_continuity(grid));
    report.checks.push_back(check_fd_convergence(grid));
    report.checks.push_back(check_truncation_tail(options));
    report.checks.push_back(check_classical_fisher_consistency(grid));
    return report;
}

void print_report(const SelftestReport& report, std::ostream& out) {
    for (const CheckResult& check : report.checks) {
        out << (check.pass ? "[PASS] " : "[FAIL] ") << std::left << std::setw(32) << check.name
            << " worst " << std::scientific << std::setprecision(3) << check.worst
            << " (tol " << check.tolerance << ")";
        if (!check.detail.empty()) out << "  " << check.detail;
        out << "\n" << std::defaultfloat;
    }
    out << "\nstandard-QFI arbitration (printed expression vs functional form vs oracle):\n";
    out << "   n        phi          g      AsPrinted        Derived         oracle  "
           "|o-D|/D     |o-A|/o\n";
    for (const ArbitrationRow& row : report.arbitration) {
        out << std::setw(4) << row.n << " " << std::setw(10) << row.phi << " " << std::setw(10)
            << row.g << " " << std::scientific << std::setprecision(6) << std::setw(14)
            << row.as_printed << " " << std::setw(14) << row.derived << " " << std::setw(14)
            << row.oracle << " " << std::setprecision(2) << std::setw(9) << row.oracle_vs_derived
            << " " << std::setw(9) << row.oracle_vs_as_printed << "\n"
            << std::defaultfloat;
    }
    out << "\nselftest: " << (report.all_pass() ? "all checks passed" : "FAILURES PRESENT")
        << "\n";
}

nlohmann::ordered_json report_to_json(const SelftestReport& report) {
    nlohmann::ordered_json doc;
    doc["all_pass"] = report.all_pass();
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const CheckResult& check : report.checks) {
        checks.push_back({{"name", check.name},
                          {"pass", check.pass},
                          {"worst", check.worst},
                          {"tolerance", check.tolerance},
                          {"detail", check.detail}});
    }
    doc["checks"] = checks;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const ArbitrationRow& row : report.arbitration) {
        rows.push_back({{"n", row.n},
                        {"phi", row.phi},
                        {"g", row.g},
                        {"as_printed", row.as_printed},
                        {"derived", row.derived},
                        {"oracle", row.oracle},
                        {"oracle_vs_derived", row.oracle_vs_derived},
                        {"oracle_vs_as_printed", row.oracle_vs_as_printed}});
    }
    doc["qfi_arbitration"] = rows;
    return doc;
}

}  // namespace wva
