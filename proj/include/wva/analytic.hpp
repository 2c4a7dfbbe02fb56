#pragma once

#include "wva/config.hpp"
#include "wva/errors.hpp"
#include "wva/pointer.hpp"

namespace wva {

/// How cavity quantities are evaluated:
///  - Exact: the operator geometric series, summed in closed form per
///    sigma_y eigenbranch (no truncation, no matrix inversion).
///  - Linear: first order in n*g, reproducing the printed expressions.
enum class RecycleVariant { Exact, Linear };

/// The two published forms of the standard-protocol QFI.  Derived is the
/// canonical one (it is what the QFI functional applied to the postselected
/// meter state actually gives, and what the oracle reproduces); AsPrinted
/// evaluates the typeset expression verbatim for comparison.
enum class QfiForm { AsPrinted, Derived };

/// Meter state after successful postselection:
/// (i sin(n phi) cos(n g), cos(n phi) sin(n g)).
PointerState meter_postselected(const ExperimentConfig& cfg);

/// Meter state of the failed branch:
/// (cos(n phi) cos(n g), i sin(n phi) sin(n g)).
PointerState meter_orthogonal(const ExperimentConfig& cfg);

/// P = sin^2(n phi) cos^2(n g) + cos^2(n phi) sin^2(n g).  Total (the
/// weak-value form is singular at sin(n phi)=0; this trigonometric form
/// is used everywhere).
double postselection_probability(const ExperimentConfig& cfg);

/// P_perp = 1 - P.
double fail_probability(const ExperimentConfig& cfg);

/// Cavity-recycled detected meter state (per-branch geometric series for
/// Exact; the first-order two-amplitude form for Linear).
PointerState recycled_meter(const ExperimentConfig& cfg, RecycleVariant variant,
                            Diagnostics* diag = nullptr);

/// Detected power I_c = p^2 sin^2(n phi) / (1 - rL cos(n phi))^2.
double detected_power(const ExperimentConfig& cfg, Diagnostics* diag = nullptr);

/// r value maximizing detected power at fixed (n, phi, gamma): r* = L cos(n phi).
double detected_power_peak_r(const ExperimentConfig& cfg);

/// Meter state reflected back toward the source (the truly discarded part).
PointerState discarded_meter(const ExperimentConfig& cfg, RecycleVariant variant,
                             Diagnostics* diag = nullptr);

/// QFI(g) = 4 [ <dPhi|dPhi> - |<Phi|dPhi>|^2 ], applied to a (generally
/// sub-normalized) meter state and its g-derivative.
double qfi_functional(const PointerState& state, const PointerState& derivative);

/// Standard-protocol QFI in the requested form; Derived is canonical.
double qfi_standard(const ExperimentConfig& cfg, QfiForm form);

/// Recycled-protocol QFI, leading order in n*g:
/// 4 n^2 p^2 (cos(n phi) - rL)^2 / (1 - rL cos(n phi))^4.
double qfi_recycled(const ExperimentConfig& cfg, Diagnostics* diag = nullptr);

struct RPeak {
    double r;
    double value;
};

/// Numeric maximum of qfi_recycled over r in [0, 1): coarse scan plus
/// golden-section refinement.
RPeak qfi_recycled_peak_over_r(const ExperimentConfig& cfg);

/// <sigma_R> of the standard postselected meter state (exact form).
double pointer_shift_standard(const ExperimentConfig& cfg);

/// <sigma_R> of the failed-postselection meter state (exact form).
double pointer_shift_orthogonal(const ExperimentConfig& cfg);

/// <sigma_R> of the recycled meter state, leading order in n*g.
double pointer_shift_recycled(const ExperimentConfig& cfg, Diagnostics* diag = nullptr);

/// <sigma_R> of the discarded meter state, leading order in n*g.
/// Singular at the impedance-matched point L cos(n phi) = r.
double pointer_shift_discarded(const ExperimentConfig& cfg, Diagnostics* diag = nullptr);

/// Walk-off ratio pointer_shift_recycled / pointer_shift_standard.
double walk_off_ratio(const ExperimentConfig& cfg, Diagnostics* diag = nullptr);

/// P_c = p^2 sin^2(n phi) / [p^2 sin^2(n phi) + (L cos(n phi) - r)^2].
double detect_probability_recycled(const ExperimentConfig& cfg);

/// P_r = 1 - P_c.
double discard_probability_recycled(const ExperimentConfig& cfg);

}  // namespace wva
