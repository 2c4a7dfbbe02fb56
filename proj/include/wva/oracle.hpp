#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "wva/config.hpp"
#include "wva/errors.hpp"
#include "wva/pointer.hpp"
#include "wva/system_state.hpp"

namespace wva {

/// Full joint amplitude vector of n system qubits and one pointer qubit,
/// system-major: amps[2*s + p] is the amplitude of |s> |p>_p.
struct FullState {
    int n = 0;
    std::vector<Complex> amps;  // size 2^(n+1)
};

inline constexpr int kOracleQubitCap = 12;  // full-state dimension cap 8192

/// |system> tensor |pointer>.
FullState joint_state(const SystemState& system, const PointerState& pointer);

/// Exact action of exp(-i g A tensor sigma_y), computed by spectral
/// decomposition: per system basis state s the generator restricts to
/// a(s)*sigma_y with a(s) = n - 2*popcount(s), so the pointer pair picks up
/// phases e^{-+ i g a(s)} in the sigma_y eigenbasis.  Norm-preserving.
FullState apply_weak_coupling(const FullState& state, double g);

/// Partial inner product over the system indices: <bra| state, returning the
/// (sub-normalized) pointer amplitudes.
PointerState postselect(const FullState& state, const SystemState& bra);

struct TruncationReport {
    int passes_used = 0;
    double tail_norm = 0.0;  // norm of the first discarded term
};

class ConvergenceError : public std::runtime_error {
  public:
    ConvergenceError(const std::string& message, TruncationReport report)
        : std::runtime_error(message), report(report) {}
    TruncationReport report;
};

struct RecycledTruncation {
    PointerState recycled;
    PointerState discarded;
    TruncationReport report;
};

/// Explicit pass-by-pass partial sum of the recycling series.  Every pass
/// re-prepares the entangled system, applies the full-state coupling unitary
/// and projects with postselect() - no 2x2 closed forms anywhere - so the
/// result is an independent check of the analytic Exact variant.  Also
/// accumulates the discarded branch (-r on the zeroth reflection, then
/// p^2 L per circulation).
RecycledTruncation recycling_truncated(const ExperimentConfig& cfg, double tol, int max_passes);

/// Spec-shaped wrapper around recycling_truncated.
std::pair<PointerState, TruncationReport> recycled_meter_truncated(const ExperimentConfig& cfg,
                                                                   double tol, int max_passes);

inline constexpr double kDefaultTruncationTol = 1e-12;
inline constexpr int kDefaultMaxPasses = 100000;

/// A finite-difference value with a step-halving error estimate.
struct FdValue {
    double value = 0.0;           // evaluated at fd_step/2
    double error_estimate = 0.0;  // |value(h) - value(h/2)|
};

/// QFI of a meter-state family by central differences of the amplitudes.
/// Deliberately derivative-form-free so it stays independent of the
/// analytic expressions it arbitrates.
FdValue qfi_numeric(const std::function<PointerState(double)>& meter_at, double g, double fd_step);

/// Classical Fisher information sum_j (d h_j/dg)^2 / h_j over the supplied
/// outcome masses.  Zero-mass outcomes are skipped with a warning; throws
/// SingularityError if every outcome is massless.
double classical_fisher_numeric(const std::function<std::vector<double>(double)>& dist_at,
                                double g, double fd_step, Diagnostics* diag = nullptr);

}  // namespace wva
