#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wva/config.hpp"
#include "wva/readout.hpp"

namespace wva {

/// SplittableRandom's stream-derivation function; maps (seed, index) to an
/// independent 64-bit stream seed.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

struct McCounts {
    long long detected_r = 0;
    long long detected_l = 0;
    long long discarded = 0;

    long long total() const { return detected_r + detected_l + discarded; }
};

/// One Monte Carlo replica: counts, the MLE and its standard error, and the
/// stream seed that produced it.
struct McResult {
    long long shots = 0;
    McCounts counts;
    double g_hat = 0.0;
    double se_hat = 0.0;
    std::uint64_t seed = 0;
    bool mle_ok = false;
    std::string mle_message;
};

/// Samples `shots` outcomes {R, L, discard} from the recycled-protocol
/// distribution at cfg (readout confusion included when the q's are
/// nonzero).  Deterministic for a given seed; g_hat is left unset.
McResult mc_sample(const ExperimentConfig& cfg, long long shots, std::uint64_t seed);

struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
};

/// Maximizes the multinomial log-likelihood of the model distribution over g
/// by bisection on the score (the log-likelihood is strictly concave here).
/// cfg's own g is ignored; the bracket must contain the maximum.  Tolerance
/// 1e-12 in g.  Throws SingularityError when the score does not change sign
/// inside the bracket.
double mle_estimate(const McCounts& counts, const ExperimentConfig& cfg, Bracket bracket);

/// Default bracket for a scenario with true coupling near cfg.g.
Bracket default_bracket(const ExperimentConfig& cfg);

struct McSummary {
    long long shots = 0;
    int replicas = 0;
    std::uint64_t seed = 0;
    double g_true = 0.0;
    double mean_g_hat = 0.0;
    double var_g_hat = 0.0;  // unbiased sample variance
    double fisher_information = 0.0;
    double crb = 0.0;  // 1 / (shots * fisher_information)
    double efficiency_ratio = 0.0;
    int failed_replicas = 0;
};

/// Runs `replicas` independent streams (stream_seed(seed, i)), estimates g in
/// each, and summarizes against the Cramer-Rao bound.
std::vector<McResult> mc_replicas(const ExperimentConfig& cfg, long long shots, int replicas,
                                  std::uint64_t seed, Bracket bracket, int jobs = 1);

McSummary summarize(const ExperimentConfig& cfg, const std::vector<McResult>& results,
                    std::uint64_t seed);

}  // namespace wva
