#include "wva/oracle.hpp"

#include <bit>
#include <cmath>

#include "wva/analytic.hpp"

namespace wva {

namespace {
constexpr Complex kI{0.0, 1.0};
}

FullState joint_state(const SystemState& system, const PointerState& pointer) {
    if (system.n > kOracleQubitCap)
        throw CapacityError("oracle capped at n <= 12 system qubits");
    FullState full;
    full.n = system.n;
    full.amps.resize(system.dim() * 2);
    for (std::size_t s = 0; s < system.dim(); ++s) {
        full.amps[2 * s] = system.amps[s] * pointer.c0;
        full.amps[2 * s + 1] = system.amps[s] * pointer.c1;
    }
    return full;
}

FullState apply_weak_coupling(const FullState& state, double g) {
    if (state.n > kOracleQubitCap)
        throw CapacityError("oracle capped at n <= 12 system qubits");
    const std::size_t dim = std::size_t{1} << state.n;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    FullState out = state;
    for (std::size_t s = 0; s < dim; ++s) {
        const int a = state.n - 2 * std::popcount(s);
        const Complex c0 = state.amps[2 * s];
        const Complex c1 = state.amps[2 * s + 1];
        // Pointer in the sigma_y eigenbasis, phases e^{-+i g a}, and back.
        const Complex a_r = (c0 - kI * c1) * inv_sqrt2;
        const Complex a_l = (c0 + kI * c1) * inv_sqrt2;
        const Complex a_r2 = a_r * std::exp(-kI * (g * a));
        const Complex a_l2 = a_l * std::exp(kI * (g * a));
        out.amps[2 * s] = (a_r2 + a_l2) * inv_sqrt2;
        out.amps[2 * s + 1] = kI * (a_r2 - a_l2) * inv_sqrt2;
    }
    return out;
}

PointerState postselect(const FullState& state, const SystemState& bra) {
    const std::size_t dim = std::size_t{1} << state.n;
    if (bra.dim() != dim) throw std::invalid_argument("postselect: dimension mismatch");
    PointerState out;
    for (std::size_t s = 0; s < dim; ++s) {
        const Complex w = std::conj(bra.amps[s]);
        out.c0 += w * state.amps[2 * s];
        out.c1 += w * state.amps[2 * s + 1];
    }
    return out;
}

RecycledTruncation recycling_truncated(const ExperimentConfig& cfg, double tol, int max_passes) {
    if (tol <= 0.0) throw std::invalid_argument("truncation tolerance must be positive");
    if (cfg.n > kOracleQubitCap) throw CapacityError("oracle capped at n <= 12 system qubits");
    const GhzStates ghz = ghz_states(cfg.n, cfg.phi);
    const double rl = cfg.r * cfg.L;

    // Geometric bound on everything the remaining passes can still add: per
    // circulation the state contracts by at most rho = rL max|cos(n phi -+ n g)|,
    // contributing at most p (detected) resp. p^2 L (discarded) of its norm.
    const double cos_max = std::max(std::abs(std::cos(cfg.n * cfg.phi - cfg.n * cfg.g)),
                                    std::abs(std::cos(cfg.n * cfg.phi + cfg.n * cfg.g)));
    const double sin_max = std::max(std::abs(std::sin(cfg.n * cfg.phi - cfg.n * cfg.g)),
                                    std::abs(std::sin(cfg.n * cfg.phi + cfg.n * cfg.g)));
    const double rho = rl * cos_max;
    if (rho >= 1.0) throw DivergentCavityError("cavity series divergent: rL*cos >= 1");
    const double tail_factor =
        (cfg.p * sin_max + cfg.p * cfg.p * cfg.L * cos_max) / (1.0 - rho);

    PointerState circulating{1.0, 0.0};  // |0>_p
    RecycledTruncation result;
    result.discarded = {-cfg.r, 0.0};  // direct reflection of the incident light
    int passes = 0;
    for (;;) {
        FullState coupled = apply_weak_coupling(joint_state(ghz.psi_plus, circulating), cfg.g);
        const PointerState detected = cfg.p * postselect(coupled, ghz.psi_f);
        const double term_norm = std::sqrt(detected.norm2());
        const double remaining = std::sqrt(circulating.norm2()) * tail_factor;
        if (remaining < tol) {
            result.report = {passes, term_norm};
            return result;
        }
        if (passes >= max_passes) {
            throw ConvergenceError("recycling series not converged within max_passes",
                                   TruncationReport{passes, term_norm});
        }
        result.recycled = result.recycled + detected;
        const PointerState failed = postselect(coupled, ghz.psi_f_orth);
        result.discarded = result.discarded + (cfg.p * cfg.p * cfg.L) * failed;
        circulating = rl * failed;
        ++passes;
    }
}

std::pair<PointerState, TruncationReport> recycled_meter_truncated(const ExperimentConfig& cfg,
                                                                   double tol, int max_passes) {
    RecycledTruncation full = recycling_truncated(cfg, tol, max_passes);
    return {full.recycled, full.report};
}

namespace {

double qfi_fd_once(const std::function<PointerState(double)>& meter_at, double g, double h) {
    const PointerState mid = meter_at(g);
    const PointerState hi = meter_at(g + h);
    const PointerState lo = meter_at(g - h);
    const PointerState deriv = (1.0 / (2.0 * h)) * (hi - lo);
    if (!std::isfinite(mid.norm2()) || !std::isfinite(deriv.norm2()))
        throw std::domain_error("qfi_numeric: non-finite amplitudes");
    return qfi_functional(mid, deriv);
}

}  // namespace

FdValue qfi_numeric(const std::function<PointerState(double)>& meter_at, double g,
                    double fd_step) {
    if (fd_step <= 0.0) throw std::invalid_argument("fd_step must be positive");
    const double coarse = qfi_fd_once(meter_at, g, fd_step);
    const double fine = qfi_fd_once(meter_at, g, fd_step / 2.0);
    return {fine, std::abs(fine - coarse)};
}

double classical_fisher_numeric(const std::function<std::vector<double>(double)>& dist_at,
                                double g, double fd_step, Diagnostics* diag) {
    if (fd_step <= 0.0) throw std::invalid_argument("fd_step must be positive");
    const std::vector<double> mid = dist_at(g);
    const std::vector<double> hi = dist_at(g + fd_step);
    const std::vector<double> lo = dist_at(g - fd_step);
    if (hi.size() != mid.size() || lo.size() != mid.size())
        throw std::invalid_argument("outcome count changed across the fd stencil");
    double fisher = 0.0;
    bool any = false;
    for (std::size_t j = 0; j < mid.size(); ++j) {
        if (mid[j] <= 0.0) {
            warn_to(diag, "classical_fisher_numeric: outcome " + std::to_string(j) +
                              " has zero mass, term skipped");
            continue;
        }
        const double d = (hi[j] - lo[j]) / (2.0 * fd_step);
        fisher += d * d / mid[j];
        any = true;
    }
    if (!any) throw SingularityError("classical Fisher information undefined: all masses zero");
    return fisher;
}

}  // namespace wva
