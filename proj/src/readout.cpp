#include "wva/readout.hpp"

#include <cmath>

#include "wva/analytic.hpp"
#include "wva/system_state.hpp"

namespace wva {

namespace {

double pow_n(double q, int n) { return std::pow(q, static_cast<double>(n)); }

double keep_weight(const ExperimentConfig& cfg) {
    return pow_n(1.0 - cfg.q_keep_to_discard, cfg.n);
}

double leak_weight(const ExperimentConfig& cfg) { return pow_n(cfg.q_discard_to_keep, cfg.n); }

}  // namespace

double modified_postselection_probability(const ExperimentConfig& cfg) {
    return postselection_probability(cfg) * keep_weight(cfg) +
           fail_probability(cfg) * leak_weight(cfg);
}

double loss_rate(const ExperimentConfig& cfg) { return 1.0 - keep_weight(cfg); }

double loss_rate_linear(const ExperimentConfig& cfg) { return cfg.n * cfg.q_keep_to_discard; }

double relative_error_rate(const ExperimentConfig& cfg) {
    const double pmod = modified_postselection_probability(cfg);
    if (pmod == 0.0) throw SingularityError("relative error rate undefined: P_mod = 0");
    return fail_probability(cfg) * leak_weight(cfg) / pmod;
}

double gamma_standard(const ExperimentConfig& cfg) {
    const double pmod = modified_postselection_probability(cfg);
    if (pmod == 0.0) throw SingularityError("Gamma(n) undefined: P_mod = 0");
    return postselection_probability(cfg) * (keep_weight(cfg) - leak_weight(cfg)) / pmod;
}

double fisher_factor_standard(const ExperimentConfig& cfg) {
    const double n2 = static_cast<double>(cfg.n) * cfg.n;
    const double aw2 = std::norm(weak_value(cfg.n, cfg.phi));
    const double diff = keep_weight(cfg) - leak_weight(cfg);
    const double denom = n2 * keep_weight(cfg) + aw2 * leak_weight(cfg);
    if (denom == 0.0) throw SingularityError("f(n) undefined: zero denominator");
    return n2 * diff * diff / denom;
}

double modified_detection_probability_recycled(const ExperimentConfig& cfg) {
    return detect_probability_recycled(cfg) * keep_weight(cfg) +
           discard_probability_recycled(cfg) * leak_weight(cfg);
}

double gamma_recycled(const ExperimentConfig& cfg) {
    const double c = std::cos(cfg.n * cfg.phi);
    const double rl = cfg.r * cfg.L;
    if (std::abs(c - rl) < 1e-12)
        throw SingularityError("Gamma_c(n) singular at cos(n*phi) = rL");
    const double pc = detect_probability_recycled(cfg);
    const double pr = 1.0 - pc;
    const double pcmod = pc * keep_weight(cfg) + pr * leak_weight(cfg);
    if (pcmod == 0.0) throw SingularityError("Gamma_c(n) undefined: (P_c)_mod = 0");
    const double cross = cfg.L * (cfg.L * c - cfg.r) / (c - rl);
    return pc * (keep_weight(cfg) - leak_weight(cfg) * cross) / pcmod;
}

OutcomeSplit outcome_probabilities(double shift) {
    if (std::abs(shift) > 1.0)
        throw SingularityError("invalid shift: |<sigma_R>| > 1 is not a valid expectation");
    return {0.5 * (1.0 + shift), 0.5 * (1.0 - shift)};
}

ReadoutOutcomeDistribution modified_outcome_distribution(const ExperimentConfig& cfg,
                                                         Diagnostics* diag) {
    const double pc = detect_probability_recycled(cfg);
    const double pr = 1.0 - pc;
    const OutcomeSplit wc = outcome_probabilities(pointer_shift_recycled(cfg, diag));
    const OutcomeSplit wr = outcome_probabilities(pointer_shift_discarded(cfg, diag));
    const double kw = keep_weight(cfg);
    const double lw = leak_weight(cfg);
    ReadoutOutcomeDistribution dist;
    dist.h_r = pc * kw * wc.w_r + pr * lw * wr.w_r;
    dist.h_l = pc * kw * wc.w_l + pr * lw * wr.w_l;
    dist.discarded = 1.0 - dist.h_r - dist.h_l;
    return dist;
}

double default_fd_step(const ExperimentConfig& cfg) {
    return std::max(1e-7, std::abs(cfg.g) * 1e-3);
}

namespace {

// sum over kept outcomes of (dh/dg)^2 / h, central differences.
double fisher_of_distribution(const ExperimentConfig& cfg, double fd_step, Diagnostics* diag) {
    if (fd_step <= 0.0) throw std::invalid_argument("fd_step must be positive");
    const ReadoutOutcomeDistribution mid = modified_outcome_distribution(cfg, diag);
    const ReadoutOutcomeDistribution hi =
        modified_outcome_distribution(with_g(cfg, cfg.g + fd_step), nullptr);
    const ReadoutOutcomeDistribution lo =
        modified_outcome_distribution(with_g(cfg, cfg.g - fd_step), nullptr);
    const double masses[2] = {mid.h_r, mid.h_l};
    const double derivs[2] = {(hi.h_r - lo.h_r) / (2.0 * fd_step),
                              (hi.h_l - lo.h_l) / (2.0 * fd_step)};
    double fisher = 0.0;
    bool any = false;
    for (int j = 0; j < 2; ++j) {
        if (masses[j] <= 0.0) {
            warn_to(diag, std::string("fisher: outcome ") + (j == 0 ? "R" : "L") +
                              " has zero mass, term excluded");
            continue;
        }
        fisher += derivs[j] * derivs[j] / masses[j];
        any = true;
    }
    if (!any) throw SingularityError("fisher undefined: all outcome masses are zero");
    return fisher;
}

}  // namespace

double modified_fisher_recycled(const ExperimentConfig& cfg, double fd_step, Diagnostics* diag) {
    return fisher_of_distribution(cfg, fd_step, diag);
}

double fisher_recycled_noiseless(const ExperimentConfig& cfg, double fd_step, Diagnostics* diag) {
    return fisher_of_distribution(with_readout(cfg, 0.0, 0.0), fd_step, diag);
}

double fisher_factor_recycled(const ExperimentConfig& cfg, double fd_step, Diagnostics* diag) {
    const double noiseless = fisher_recycled_noiseless(cfg, fd_step, diag);
    if (noiseless == 0.0)
        throw SingularityError("f_c(n) undefined: noiseless Fisher information is zero");
    return modified_fisher_recycled(cfg, fd_step, diag) / noiseless;
}

}  // namespace wva
