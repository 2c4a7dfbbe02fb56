#include "doctest.h"

#include <cmath>

#include "wva/analytic.hpp"
#include "wva/mc.hpp"
#include "wva/readout.hpp"

using namespace wva;

namespace {

ExperimentConfig crb_config() {
    ConfigValues v;
    v.n = 2;
    v.phi = 0.1;
    v.g = 1e-3;
    v.r = 0.9;
    v.gamma = 0.0;
    return make_config(v);
}

}  // namespace

TEST_SUITE("rng streams") {
    TEST_CASE("stream seeds are deterministic and distinct") {
        CHECK(stream_seed(42, 0) == stream_seed(42, 0));
        CHECK(stream_seed(42, 0) != stream_seed(42, 1));
        CHECK(stream_seed(42, 0) != stream_seed(43, 0));
    }
}

TEST_SUITE("mc sampling") {
    TEST_CASE("fixed seed reproduces counts exactly") {
        const ExperimentConfig cfg = crb_config();
        const McResult a = mc_sample(cfg, 10000, 99);
        const McResult b = mc_sample(cfg, 10000, 99);
        CHECK(a.counts.detected_r == b.counts.detected_r);
        CHECK(a.counts.detected_l == b.counts.detected_l);
        CHECK(a.counts.discarded == b.counts.discarded);
        CHECK(a.counts.total() == 10000);
    }

    TEST_CASE("empirical frequencies approach the model within 5 sigma at 1e6 shots") {
        const ExperimentConfig cfg = crb_config();
        const ReadoutOutcomeDistribution dist = modified_outcome_distribution(cfg);
        const McResult res = mc_sample(cfg, 1000000, 1234);
        const double shots = 1e6;
        const double masses[3] = {dist.h_r, dist.h_l, dist.discarded};
        const long long counts[3] = {res.counts.detected_r, res.counts.detected_l,
                                     res.counts.discarded};
        for (int j = 0; j < 3; ++j) {
            const double sigma = std::sqrt(masses[j] * (1.0 - masses[j]) * shots);
            CHECK(std::abs(counts[j] - masses[j] * shots) < 5.0 * sigma);
        }
    }

    TEST_CASE("q=0, r=0 detection frequency approaches P within binomial 5 sigma") {
        ConfigValues v;
        v.n = 1;
        v.phi = 0.1;
        v.g = 1e-4;
        const ExperimentConfig cfg = make_config(v);
        const McResult res = mc_sample(cfg, 1000000, 7);
        const double p = postselection_probability(cfg);
        const double detected = static_cast<double>(res.counts.detected_r + res.counts.detected_l);
        const double sigma = std::sqrt(p * (1.0 - p) * 1e6);
        CHECK(std::abs(detected - p * 1e6) < 5.0 * sigma);
    }
}

TEST_SUITE("mle") {
    TEST_CASE("exact model counts recover g_true to tolerance") {
        const ExperimentConfig cfg = crb_config();
        const ReadoutOutcomeDistribution dist = modified_outcome_distribution(cfg);
        // Feed expected counts at a large notional shot count.
        McCounts counts;
        counts.detected_r = static_cast<long long>(std::llround(dist.h_r * 1e12));
        counts.detected_l = static_cast<long long>(std::llround(dist.h_l * 1e12));
        counts.discarded = static_cast<long long>(std::llround(dist.discarded * 1e12));
        const double g_hat = mle_estimate(counts, cfg, default_bracket(cfg));
        CHECK(std::abs(g_hat - cfg.g) < 1e-9);
    }

    TEST_CASE("bracket without an interior maximum is an error") {
        const ExperimentConfig cfg = crb_config();
        const McResult res = mc_sample(cfg, 10000, 5);
        CHECK_THROWS_AS(mle_estimate(res.counts, cfg, Bracket{0.05, 0.06}), SingularityError);
    }

    TEST_CASE("replica estimates are reproducible and near the truth") {
        const ExperimentConfig cfg = crb_config();
        const std::vector<McResult> a = mc_replicas(cfg, 200000, 4, 11, default_bracket(cfg), 2);
        const std::vector<McResult> b = mc_replicas(cfg, 200000, 4, 11, default_bracket(cfg), 1);
        REQUIRE(a.size() == 4);
        for (std::size_t i = 0; i < 4; ++i) {
            REQUIRE(a[i].mle_ok);
            CHECK(a[i].g_hat == b[i].g_hat);  // jobs must not change results
            CHECK(std::abs(a[i].g_hat - cfg.g) < 5.0 * a[i].se_hat + 1e-6);
        }
    }
}

TEST_SUITE("cramer-rao") {
    TEST_CASE("small-scale efficiency lands near the bound") {
        const ExperimentConfig cfg = crb_config();
        const int replicas = 60;
        const std::vector<McResult> results =
            mc_replicas(cfg, 200000, replicas, 2024, default_bracket(cfg), 2);
        const McSummary summary = summarize(cfg, results, 2024);
        CHECK(summary.failed_replicas == 0);
        // Variance respects the bound within the statistical tolerance of a
        // variance estimate, and the MLE is close to efficient.
        const double stat = 3.0 * std::sqrt(2.0 / (replicas - 1));
        CHECK(summary.efficiency_ratio >= 1.0 - stat);
        CHECK(summary.efficiency_ratio <= 1.3);
        CHECK(std::abs(summary.mean_g_hat - cfg.g) <
              3.0 * std::sqrt(summary.var_g_hat / replicas));
    }
}
