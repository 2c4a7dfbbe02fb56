#include "wva/analytic.hpp"

#include <algorithm>
#include <cmath>

namespace wva {

namespace {

constexpr Complex kI{0.0, 1.0};

struct Trig {
    double s;   // sin(n phi)
    double c;   // cos(n phi)
    double sg;  // sin(n g)
    double cg;  // cos(n g)
    double rl;  // r * L
};

Trig trig_of(const ExperimentConfig& cfg) {
    return {std::sin(cfg.n * cfg.phi), std::cos(cfg.n * cfg.phi), std::sin(cfg.n * cfg.g),
            std::cos(cfg.n * cfg.g), cfg.r * cfg.L};
}

// Eigenbranch arguments n phi -+ n g (sigma_y = +1 maps to the minus sign).
double branch_plus(const ExperimentConfig& cfg) { return cfg.n * cfg.phi - cfg.n * cfg.g; }
double branch_minus(const ExperimentConfig& cfg) { return cfg.n * cfg.phi + cfg.n * cfg.g; }

void check_cavity_convergent(const ExperimentConfig& cfg) {
    const double rl = cfg.r * cfg.L;
    const double worst = rl * std::max(std::abs(std::cos(branch_plus(cfg))),
                                       std::abs(std::cos(branch_minus(cfg))));
    if (worst >= 1.0)
        throw DivergentCavityError("cavity series divergent: rL*cos(n*phi -+ n*g) >= 1");
}

void require_sin_nphi(const ExperimentConfig& cfg, const char* what) {
    if (std::abs(std::sin(cfg.n * cfg.phi)) < 1e-12)
        throw SingularityError(std::string(what) + " singular at sin(n*phi) = 0");
}

void warn_weak_regime(const ExperimentConfig& cfg, Diagnostics* diag, const char* what) {
    if (std::abs(cfg.g) > std::abs(cfg.phi) / 10.0)
        warn_to(diag, std::string(what) +
                          ": first-order form degrades for n*g > n*phi/10 (g=" +
                          std::to_string(cfg.g) + ", phi=" + std::to_string(cfg.phi) + ")");
}

}  // namespace

PointerState meter_postselected(const ExperimentConfig& cfg) {
    const Trig t = trig_of(cfg);
    return {kI * (t.s * t.cg), Complex{t.c * t.sg, 0.0}};
}

PointerState meter_orthogonal(const ExperimentConfig& cfg) {
    const Trig t = trig_of(cfg);
    return {Complex{t.c * t.cg, 0.0}, kI * (t.s * t.sg)};
}

double postselection_probability(const ExperimentConfig& cfg) {
    const Trig t = trig_of(cfg);
    return t.s * t.s * t.cg * t.cg + t.c * t.c * t.sg * t.sg;
}

double fail_probability(const ExperimentConfig& cfg) {
    const Trig t = trig_of(cfg);
    return t.c * t.c * t.cg * t.cg + t.s * t.s * t.sg * t.sg;
}

PointerState recycled_meter(const ExperimentConfig& cfg, RecycleVariant variant,
                            Diagnostics* diag) {
    check_cavity_convergent(cfg);
    if (variant == RecycleVariant::Exact) {
        const double up = branch_plus(cfg);
        const double um = branch_minus(cfg);
        const double rl = cfg.r * cfg.L;
        const Complex f_plus = kI * (cfg.p * std::sin(up) / (1.0 - rl * std::cos(up)));
        const Complex f_minus = kI * (cfg.p * std::sin(um) / (1.0 - rl * std::cos(um)));
        return branches_applied_to_zero(f_plus, f_minus);
    }
    require_sin_nphi(cfg, "recycled_meter(Linear)");
    warn_weak_regime(cfg, diag, "recycled_meter(Linear)");
    const Trig t = trig_of(cfg);
    const double denom = 1.0 - t.rl * t.c;
    const Complex prefactor = kI * (cfg.p * t.s / denom);
    const double tilt = cfg.n * cfg.g * (t.c - t.rl) / (t.s * denom);
    return {prefactor, prefactor * (-kI * tilt)};
}

double detected_power(const ExperimentConfig& cfg, Diagnostics* diag) {
    check_cavity_convergent(cfg);
    warn_weak_regime(cfg, diag, "detected_power");
    const Trig t = trig_of(cfg);
    const double denom = 1.0 - t.rl * t.c;
    return cfg.p * cfg.p * t.s * t.s / (denom * denom);
}

double detected_power_peak_r(const ExperimentConfig& cfg) {
    return cfg.L * std::cos(cfg.n * cfg.phi);
}

PointerState discarded_meter(const ExperimentConfig& cfg, RecycleVariant variant,
                             Diagnostics* diag) {
    check_cavity_convergent(cfg);
    if (variant == RecycleVariant::Exact) {
        // -r + p^2 L cos(u)/(1 - rL cos(u)) simplifies to (L cos(u) - r)/(1 - rL cos(u)).
        const double up = branch_plus(cfg);
        const double um = branch_minus(cfg);
        const double rl = cfg.r * cfg.L;
        const Complex f_plus = (cfg.L * std::cos(up) - cfg.r) / (1.0 - rl * std::cos(up));
        const Complex f_minus = (cfg.L * std::cos(um) - cfg.r) / (1.0 - rl * std::cos(um));
        return branches_applied_to_zero(f_plus, f_minus);
    }
    warn_weak_regime(cfg, diag, "discarded_meter(Linear)");
    const Trig t = trig_of(cfg);
    const double denom = 1.0 - t.rl * t.c;
    return {Complex{(cfg.L * t.c - cfg.r) / denom, 0.0},
            kI * (cfg.n * cfg.g * cfg.p * cfg.p * cfg.L * t.s / (denom * denom))};
}

double qfi_functional(const PointerState& state, const PointerState& derivative) {
    const double dd = inner(derivative, derivative).real();
    const Complex sd = inner(state, derivative);
    return 4.0 * (dd - std::norm(sd));
}

double qfi_standard(const ExperimentConfig& cfg, QfiForm form) {
    const Trig t = trig_of(cfg);
    const double n2 = static_cast<double>(cfg.n) * cfg.n;
    const double s2g = std::sin(2.0 * cfg.n * cfg.g);
    const double c2p = std::cos(2.0 * cfg.n * cfg.phi);
    if (form == QfiForm::Derived) {
        return 4.0 * n2 * (t.s * t.s * t.sg * t.sg + t.c * t.c * t.cg * t.cg) -
               n2 * s2g * s2g * c2p * c2p;
    }
    // Verbatim typeset expression, including the swapped pairing in the first
    // term and the outer square on the second.
    const double second = s2g * s2g * c2p * c2p;
    return 4.0 * n2 * (t.sg * t.sg * t.c * t.c + t.cg * t.cg * t.s * t.s) - n2 * second * second;
}

double qfi_recycled(const ExperimentConfig& cfg, Diagnostics* diag) {
    check_cavity_convergent(cfg);
    warn_weak_regime(cfg, diag, "qfi_recycled");
    const Trig t = trig_of(cfg);
    const double n2 = static_cast<double>(cfg.n) * cfg.n;
    const double denom = 1.0 - t.rl * t.c;
    const double num = t.c - t.rl;
    return 4.0 * n2 * cfg.p * cfg.p * num * num / (denom * denom * denom * denom);
}

RPeak qfi_recycled_peak_over_r(const ExperimentConfig& cfg) {
    ConfigValues v = values_of(cfg);
    auto value_at = [&](double r) {
        v.r = r;
        return qfi_recycled(make_config(v));
    };
    // Coarse scan brackets the maximum, golden-section refines it.
    constexpr int kScan = 2048;
    constexpr double kRMax = 1.0 - 1e-9;
    double best_r = 0.0;
    double best = value_at(0.0);
    for (int i = 1; i <= kScan; ++i) {
        const double r = kRMax * i / kScan;
        const double q = value_at(r);
        if (q > best) {
            best = q;
            best_r = r;
        }
    }
    double lo = std::max(0.0, best_r - kRMax / kScan);
    double hi = std::min(kRMax, best_r + kRMax / kScan);
    const double inv_phi_gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi_gr * (hi - lo);
    double x2 = lo + inv_phi_gr * (hi - lo);
    double f1 = value_at(x1);
    double f2 = value_at(x2);
    while (hi - lo > 1e-13) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi_gr * (hi - lo);
            f2 = value_at(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi_gr * (hi - lo);
            f1 = value_at(x1);
        }
    }
    const double r_star = 0.5 * (lo + hi);
    return {r_star, value_at(r_star)};
}

double pointer_shift_standard(const ExperimentConfig& cfg) {
    const Trig t = trig_of(cfg);
    const double denom = t.s * t.s * t.cg * t.cg + t.c * t.c * t.sg * t.sg;
    if (denom == 0.0) throw SingularityError("pointer shift undefined at g = phi = 0");
    return -2.0 * t.s * t.c * t.sg * t.cg / denom;
}

double pointer_shift_orthogonal(const ExperimentConfig& cfg) {
    const Trig t = trig_of(cfg);
    const double denom = t.c * t.c * t.cg * t.cg + t.s * t.s * t.sg * t.sg;
    if (denom == 0.0) throw SingularityError("orthogonal pointer shift undefined");
    return 2.0 * t.s * t.c * t.sg * t.cg / denom;
}

double pointer_shift_recycled(const ExperimentConfig& cfg, Diagnostics* diag) {
    check_cavity_convergent(cfg);
    require_sin_nphi(cfg, "pointer_shift_recycled");
    warn_weak_regime(cfg, diag, "pointer_shift_recycled");
    const Trig t = trig_of(cfg);
    return -2.0 * cfg.n * cfg.g * (t.c - t.rl) / ((1.0 - t.rl * t.c) * t.s);
}

double pointer_shift_discarded(const ExperimentConfig& cfg, Diagnostics* diag) {
    check_cavity_convergent(cfg);
    warn_weak_regime(cfg, diag, "pointer_shift_discarded");
    const Trig t = trig_of(cfg);
    const double empty = cfg.L * t.c - cfg.r;
    if (std::abs(empty) < 1e-12)
        throw SingularityError(
            "impedance matched: discarded branch empty at leading order (L*cos(n*phi) = r)");
    return 2.0 * cfg.n * cfg.g * cfg.p * cfg.p * cfg.L * t.s / ((1.0 - t.rl * t.c) * empty);
}

double walk_off_ratio(const ExperimentConfig& cfg, Diagnostics* diag) {
    const double standard = pointer_shift_standard(cfg);
    if (standard == 0.0) throw SingularityError("walk-off ratio undefined at zero standard shift");
    return pointer_shift_recycled(cfg, diag) / standard;
}

double detect_probability_recycled(const ExperimentConfig& cfg) {
    const Trig t = trig_of(cfg);
    const double kept = cfg.p * cfg.p * t.s * t.s;
    const double lost = (cfg.L * t.c - cfg.r) * (cfg.L * t.c - cfg.r);
    if (kept + lost == 0.0)
        throw SingularityError("detection probability undefined: both channels empty");
    return kept / (kept + lost);
}

double discard_probability_recycled(const ExperimentConfig& cfg) {
    return 1.0 - detect_probability_recycled(cfg);
}

}  // namespace wva
