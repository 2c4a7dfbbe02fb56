#pragma once

#include "wva/config.hpp"
#include "wva/errors.hpp"

namespace wva {

/// Sub-normalized masses of the two kept readout outcomes plus the
/// discarded complement; h_r + h_l equals the modified detection probability.
struct ReadoutOutcomeDistribution {
    double h_r = 0.0;
    double h_l = 0.0;
    double discarded = 0.0;
};

/// Projective outcome weights of a +-1 observable with mean `shift`.
struct OutcomeSplit {
    double w_r = 0.0;  // (1 + shift)/2
    double w_l = 0.0;  // (1 - shift)/2
};

/// P_mod = P (1-q_kd)^n + P_perp q_dk^n.
double modified_postselection_probability(const ExperimentConfig& cfg);

/// R_loss = 1 - (1 - q_kd)^n.
double loss_rate(const ExperimentConfig& cfg);

/// Small-q approximation n*q_kd, reported alongside the exact loss rate.
double loss_rate_linear(const ExperimentConfig& cfg);

/// P_error = P_perp q_dk^n / P_mod.
double relative_error_rate(const ExperimentConfig& cfg);

/// Measurement-result decrease factor of the standard protocol:
/// Gamma(n) = P[(1-q_kd)^n - q_dk^n] / P_mod.
double gamma_standard(const ExperimentConfig& cfg);

/// Fisher-information decrease factor of the standard protocol:
/// f(n) = n^2[(1-q_kd)^n - q_dk^n]^2 / [n^2 (1-q_kd)^n + |A_w|^2 q_dk^n].
double fisher_factor_standard(const ExperimentConfig& cfg);

/// (P_c)_mod = P_c (1-q_cr)^n + P_r q_rc^n.  The recycled-protocol confusion
/// rates reuse the config's two readout-error fields.
double modified_detection_probability_recycled(const ExperimentConfig& cfg);

/// Measurement-result decrease factor of the recycled protocol (Gamma_c).
double gamma_recycled(const ExperimentConfig& cfg);

/// w_R = (1 + shift)/2, w_L = (1 - shift)/2; rejects |shift| > 1.
OutcomeSplit outcome_probabilities(double shift);

/// h_j = P_c (1-q_cr)^n w_{c,j} + P_r q_rc^n w_{r,j} for j in {R, L},
/// with the w's built from the recycled / discarded pointer shifts.
ReadoutOutcomeDistribution modified_outcome_distribution(const ExperimentConfig& cfg,
                                                         Diagnostics* diag = nullptr);

/// Default finite-difference step max(1e-7, g*1e-3).
double default_fd_step(const ExperimentConfig& cfg);

/// Classical Fisher information of the h_j distribution, with d h_j / dg by
/// central finite differences (derivatives of both the probabilities and the
/// outcome weights enter through h_j itself).
double modified_fisher_recycled(const ExperimentConfig& cfg, double fd_step,
                                Diagnostics* diag = nullptr);

/// Same Fisher information at q_cr = q_rc = 0.
double fisher_recycled_noiseless(const ExperimentConfig& cfg, double fd_step,
                                 Diagnostics* diag = nullptr);

/// f_c(n) = modified_fisher_recycled / fisher_recycled_noiseless.
double fisher_factor_recycled(const ExperimentConfig& cfg, double fd_step,
                              Diagnostics* diag = nullptr);

}  // namespace wva
