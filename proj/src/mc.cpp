#include "wva/mc.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "wva/analytic.hpp"
#include "wva/parallel.hpp"

namespace wva {

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 of seed advanced by index gamma steps.
    std::uint64_t z = seed + index * 0x9E3779B97F4A7C15ULL + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

// 53-bit uniform in [0,1); bypasses distribution internals so the sampled
// stream only depends on the engine's documented output sequence.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

McResult mc_sample(const ExperimentConfig& cfg, long long shots, std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");
    const ReadoutOutcomeDistribution dist = modified_outcome_distribution(cfg);
    const double cut_r = dist.h_r;
    const double cut_l = dist.h_r + dist.h_l;

    std::mt19937_64 rng(seed);
    McResult result;
    result.shots = shots;
    result.seed = seed;
    result.g_hat = std::numeric_limits<double>::quiet_NaN();
    result.se_hat = std::numeric_limits<double>::quiet_NaN();
    for (long long i = 0; i < shots; ++i) {
        const double u = uniform01(rng);
        if (u < cut_r) {
            ++result.counts.detected_r;
        } else if (u < cut_l) {
            ++result.counts.detected_l;
        } else {
            ++result.counts.discarded;
        }
    }
    return result;
}

namespace {

struct ModelAt {
    double h_r, h_l, h_d;
};

ModelAt model_at(const ExperimentConfig& cfg, double g) {
    const ReadoutOutcomeDistribution d = modified_outcome_distribution(with_g(cfg, g));
    return {d.h_r, d.h_l, d.discarded};
}

// d log L / dg of the three-outcome multinomial, derivatives by central
// differences (the model masses are affine in g, so the stencil is exact).
double score(const ExperimentConfig& cfg, const McCounts& counts, double g, double h) {
    const ModelAt mid = model_at(cfg, g);
    const ModelAt hi = model_at(cfg, g + h);
    const ModelAt lo = model_at(cfg, g - h);
    double value = 0.0;
    const double masses[3] = {mid.h_r, mid.h_l, mid.h_d};
    const double derivs[3] = {(hi.h_r - lo.h_r) / (2 * h), (hi.h_l - lo.h_l) / (2 * h),
                              (hi.h_d - lo.h_d) / (2 * h)};
    const long long ns[3] = {counts.detected_r, counts.detected_l, counts.discarded};
    for (int j = 0; j < 3; ++j) {
        if (ns[j] == 0) continue;
        if (masses[j] <= 0.0)
            throw SingularityError("mle: observed outcome has zero model probability");
        value += static_cast<double>(ns[j]) * derivs[j] / masses[j];
    }
    return value;
}

}  // namespace

double mle_estimate(const McCounts& counts, const ExperimentConfig& cfg, Bracket bracket) {
    if (counts.total() < 1) throw std::invalid_argument("mle: empty counts");
    if (!(bracket.lo < bracket.hi)) throw std::invalid_argument("mle: invalid bracket");
    const double h = default_fd_step(cfg);
    double lo = bracket.lo;
    double hi = bracket.hi;
    double score_lo = score(cfg, counts, lo, h);
    double score_hi = score(cfg, counts, hi, h);
    // The log-likelihood is strictly concave in g, so the score is strictly
    // decreasing; an interior maximum needs a sign change.
    if (score_lo < 0.0 || score_hi > 0.0)
        throw SingularityError("mle: no interior maximum in bracket");
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (score(cfg, counts, mid, h) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

Bracket default_bracket(const ExperimentConfig& cfg) {
    // Stay where both channel shifts are valid expectations (|shift| <= 1):
    // the shifts are linear in g, so scale the slopes out.
    const double slope_c = std::abs(pointer_shift_recycled(with_g(cfg, 1.0)));
    const double slope_r = std::abs(pointer_shift_discarded(with_g(cfg, 1.0)));
    const double slope = std::max(slope_c, slope_r);
    const double g_limit = slope > 0.0 ? 0.95 / slope : 1.0;
    const double span = std::max(9.0 * std::abs(cfg.g), 1e-3);
    const double lo = std::max(cfg.g - span, -g_limit);
    const double hi = std::min(cfg.g + span, g_limit);
    return {lo, hi};
}

std::vector<McResult> mc_replicas(const ExperimentConfig& cfg, long long shots, int replicas,
                                  std::uint64_t seed, Bracket bracket, int jobs) {
    if (replicas < 1) throw std::invalid_argument("replicas must be >= 1");
    std::vector<McResult> results(static_cast<std::size_t>(replicas));
    parallel_for(static_cast<std::size_t>(replicas), jobs, [&](std::size_t i) {
        McResult res = mc_sample(cfg, shots, stream_seed(seed, i));
        try {
            res.g_hat = mle_estimate(res.counts, cfg, bracket);
            const double info = modified_fisher_recycled(with_g(cfg, res.g_hat), default_fd_step(cfg));
            res.se_hat = 1.0 / std::sqrt(static_cast<double>(shots) * info);
            res.mle_ok = true;
        } catch (const std::exception& e) {
            res.mle_ok = false;
            res.mle_message = e.what();
        }
        results[i] = res;
    });
    return results;
}

McSummary summarize(const ExperimentConfig& cfg, const std::vector<McResult>& results,
                    std::uint64_t seed) {
    McSummary summary;
    summary.seed = seed;
    summary.g_true = cfg.g;
    summary.replicas = static_cast<int>(results.size());
    if (!results.empty()) summary.shots = results.front().shots;

    double sum = 0.0;
    long long ok = 0;
    for (const McResult& r : results) {
        if (!r.mle_ok) {
            ++summary.failed_replicas;
            continue;
        }
        sum += r.g_hat;
        ++ok;
    }
    if (ok >= 2) {
        summary.mean_g_hat = sum / static_cast<double>(ok);
        double ss = 0.0;
        for (const McResult& r : results) {
            if (!r.mle_ok) continue;
            const double d = r.g_hat - summary.mean_g_hat;
            ss += d * d;
        }
        summary.var_g_hat = ss / static_cast<double>(ok - 1);
    }
    summary.fisher_information = modified_fisher_recycled(cfg, default_fd_step(cfg));
    summary.crb = 1.0 / (static_cast<double>(summary.shots) * summary.fisher_information);
    summary.efficiency_ratio = summary.crb > 0.0 ? summary.var_g_hat / summary.crb : 0.0;
    return summary;
}

}  // namespace wva
