#include "doctest.h"

#include <cmath>

#include "wva/analytic.hpp"
#include "wva/errors.hpp"
#include "wva/grid.hpp"
#include "wva/oracle.hpp"
#include "wva/readout.hpp"

using namespace wva;

namespace {

ExperimentConfig cfg_of(int n, double g, double phi, double r, double gamma, double qkd,
                        double qdk) {
    ConfigValues v;
    v.n = n;
    v.g = g;
    v.phi = phi;
    v.r = r;
    v.gamma = gamma;
    v.q_keep_to_discard = qkd;
    v.q_discard_to_keep = qdk;
    return make_config(v);
}

}  // namespace

TEST_SUITE("modified probabilities") {
    TEST_CASE("q = 0 leaves P unchanged") {
        const ExperimentConfig cfg = cfg_of(2, 1e-3, 0.1, 0.0, 0.0, 0.0, 0.0);
        CHECK(modified_postselection_probability(cfg) ==
              doctest::Approx(postselection_probability(cfg)).epsilon(1e-15));
    }

    TEST_CASE("all successes misread gives zero") {
        const ExperimentConfig cfg = cfg_of(2, 1e-3, 0.1, 0.0, 0.0, 1.0, 0.0);
        CHECK(modified_postselection_probability(cfg) == doctest::Approx(0.0));
    }

    TEST_CASE("frozen mixture at n=2, q=0.01") {
        const ExperimentConfig cfg = cfg_of(2, 1e-3, 0.1, 0.0, 0.0, 0.01, 0.01);
        CHECK(modified_postselection_probability(cfg) ==
              doctest::Approx(0.03878372349286872).epsilon(1e-14));
        // Same number from per-qubit channel enumeration: keep requires all n
        // correct reads, leak requires all n wrong reads.
        const double by_enumeration =
            postselection_probability(cfg) * std::pow(0.99, 2) +
            fail_probability(cfg) * std::pow(0.01, 2);
        CHECK(modified_postselection_probability(cfg) ==
              doctest::Approx(by_enumeration).epsilon(1e-15));
    }
}

TEST_SUITE("loss and error rates") {
    TEST_CASE("loss rate at q=0 is 0") {
        CHECK(loss_rate(cfg_of(4, 1e-3, 0.1, 0, 0, 0.0, 0)) == doctest::Approx(0.0));
    }

    TEST_CASE("frozen n=4 q=0.01 and the linear report") {
        const ExperimentConfig cfg = cfg_of(4, 1e-3, 0.1, 0, 0, 0.01, 0);
        CHECK(loss_rate(cfg) == doctest::Approx(0.039403990000000055).epsilon(1e-14));
        CHECK(loss_rate_linear(cfg) == doctest::Approx(0.04).epsilon(1e-15));
    }

    TEST_CASE("loss rate is monotone increasing in n") {
        double previous = -1.0;
        for (int n = 1; n <= 10; ++n) {
            const double rate = loss_rate(cfg_of(n, 1e-3, 0.01, 0, 0, 0.01, 0));
            CHECK(rate > previous);
            previous = rate;
        }
    }

    TEST_CASE("relative error rate examples") {
        CHECK(relative_error_rate(cfg_of(2, 1e-3, 0.1, 0, 0, 0.3, 0.0)) == doctest::Approx(0.0));
        const ExperimentConfig cfg = cfg_of(1, 1e-3, 0.1, 0, 0, 0.0, 0.01);
        const double p = postselection_probability(cfg);
        const double pp = fail_probability(cfg);
        CHECK(relative_error_rate(cfg) ==
              doctest::Approx(pp * 0.01 / (p + pp * 0.01)).epsilon(1e-14));
    }

    TEST_CASE("relative error rate decreases with n at small q") {
        double previous = 2.0;
        for (int n : {1, 2, 3, 4}) {
            const double rate = relative_error_rate(cfg_of(n, 1e-4, 0.1, 0, 0, 0.01, 0.01));
            CHECK(rate < previous);
            previous = rate;
        }
    }
}

TEST_SUITE("gamma factors") {
    TEST_CASE("both factors are exactly 1 at q=0") {
        const ExperimentConfig cfg = cfg_of(2, 1e-4, 0.1, 0.9, 0.01, 0.0, 0.0);
        CHECK(gamma_standard(cfg) == 1.0);
        CHECK(gamma_recycled(cfg) == 1.0);
        CHECK(fisher_factor_standard(cfg) == 1.0);
        CHECK(fisher_factor_recycled(cfg, default_fd_step(cfg)) == 1.0);
    }

    TEST_CASE("frozen gamma_standard at n=1 phi=0.1 g->0 q=0.01") {
        CHECK(gamma_standard(cfg_of(1, 1e-9, 0.1, 0, 0, 0.01, 0.01)) ==
              doctest::Approx(0.4941159835247258).epsilon(1e-12));
    }

    TEST_CASE("frozen gamma_recycled at n=1 phi=0.1 r=0.9 gamma=0.01 q=0.01") {
        CHECK(gamma_recycled(cfg_of(1, 1e-4, 0.1, 0.9, 0.01, 0.01, 0.01)) ==
              doctest::Approx(0.9498543236695968).epsilon(1e-12));
    }

    TEST_CASE("mixture identity reproduces Gamma on the grid") {
        for (const GridPoint& pt : standard_grid()) {
            const ExperimentConfig cfg = config_at(pt, 0.01, 0.01);
            const double kw = std::pow(0.99, cfg.n);
            const double lw = std::pow(0.01, cfg.n);
            const double p = postselection_probability(cfg);
            const double pp = fail_probability(cfg);
            const double mix = (p * kw * pointer_shift_standard(cfg) +
                                pp * lw * pointer_shift_orthogonal(cfg)) /
                               (p * kw + pp * lw);
            REQUIRE(gamma_standard(cfg) * pointer_shift_standard(cfg) ==
                    doctest::Approx(mix).epsilon(1e-12));
        }
    }

    TEST_CASE("gamma_recycled is singular at cos(n phi) = rL") {
        ConfigValues v;
        v.n = 1;
        v.phi = 0.1;
        v.r = std::cos(0.1);
        v.q_discard_to_keep = 0.01;
        CHECK_THROWS_AS(gamma_recycled(make_config(v)), SingularityError);
    }
}

TEST_SUITE("fisher factors") {
    TEST_CASE("frozen f(2) at phi=0.05, q=0.01, and oracle FI-ratio agreement") {
        const ExperimentConfig cfg = cfg_of(2, 1e-6, 0.05, 0, 0, 0.01, 0.01);
        CHECK(fisher_factor_standard(cfg) ==
              doctest::Approx(0.9700682824409796).epsilon(1e-12));
        // Oracle: classical FI ratio of the standard-protocol mixture
        // distribution, with and without readout errors, at small g.
        const auto dist_at = [&](double qkd, double qdk) {
            return [&, qkd, qdk](double g) {
                const ExperimentConfig at = with_readout(with_g(cfg, g), qkd, qdk);
                const double p = postselection_probability(at);
                const double pp = fail_probability(at);
                const double kw = std::pow(1.0 - qkd, at.n);
                const double lw = std::pow(qdk, at.n);
                const OutcomeSplit wf = outcome_probabilities(pointer_shift_standard(at));
                const OutcomeSplit wo = outcome_probabilities(pointer_shift_orthogonal(at));
                return std::vector<double>{p * kw * wf.w_r + pp * lw * wo.w_r,
                                           p * kw * wf.w_l + pp * lw * wo.w_l};
            };
        };
        const double noisy = classical_fisher_numeric(dist_at(0.01, 0.01), cfg.g, 1e-8);
        const double clean = classical_fisher_numeric(dist_at(0.0, 0.0), cfg.g, 1e-8);
        CHECK(fisher_factor_standard(cfg) == doctest::Approx(noisy / clean).epsilon(1e-6));
    }

    TEST_CASE("modified fisher frozen value and fd robustness") {
        const ExperimentConfig cfg = cfg_of(2, 1e-4, 0.1, 0.9, 0.01, 0.005, 0.005);
        const double fd = default_fd_step(cfg);
        CHECK(fd == doctest::Approx(1e-7).epsilon(1e-15));
        const double fisher = modified_fisher_recycled(cfg, fd);
        CHECK(fisher == doctest::Approx(109.36542854192847).epsilon(1e-10));
        const double halved = modified_fisher_recycled(cfg, fd / 2.0);
        CHECK(std::abs(halved - fisher) / fisher < 1e-6);
    }

    TEST_CASE("fisher_factor_recycled reduces to the noiseless ratio 1 at q=0") {
        const ExperimentConfig cfg = cfg_of(1, 1e-4, 0.05, 0.6, 0.05, 0.0, 0.0);
        CHECK(fisher_factor_recycled(cfg, default_fd_step(cfg)) == 1.0);
    }
}

TEST_SUITE("outcome probabilities") {
    TEST_CASE("basic splits") {
        CHECK(outcome_probabilities(0.0).w_r == doctest::Approx(0.5));
        CHECK(outcome_probabilities(0.0).w_l == doctest::Approx(0.5));
        CHECK(outcome_probabilities(-1.0).w_r == doctest::Approx(0.0));
        CHECK(outcome_probabilities(-1.0).w_l == doctest::Approx(1.0));
    }

    TEST_CASE("rejects out-of-range shifts") {
        CHECK_THROWS_AS(outcome_probabilities(1.5), SingularityError);
        CHECK_THROWS_AS(outcome_probabilities(-1.0000001), SingularityError);
    }

    TEST_CASE("matches projective probabilities of the recycled state") {
        const ExperimentConfig cfg = cfg_of(2, 1e-4, 0.1, 0.6, 0.05, 0, 0);
        const PointerState state = recycled_meter(cfg, RecycleVariant::Exact);
        const OutcomeSplit split =
            outcome_probabilities(normalized_expectation(sigma_r(), state));
        CHECK(split.w_r ==
              doctest::Approx(std::norm(inner(ket_r(), state)) / state.norm2()).epsilon(1e-14));
        CHECK(split.w_l ==
              doctest::Approx(std::norm(inner(ket_l(), state)) / state.norm2()).epsilon(1e-14));
    }
}

TEST_SUITE("outcome distribution") {
    TEST_CASE("q=0 distribution is P_c-weighted") {
        const ExperimentConfig cfg = cfg_of(2, 1e-4, 0.1, 0.5, 0.0, 0.0, 0.0);
        const ReadoutOutcomeDistribution dist = modified_outcome_distribution(cfg);
        const OutcomeSplit wc = outcome_probabilities(pointer_shift_recycled(cfg));
        CHECK(dist.h_r ==
              doctest::Approx(detect_probability_recycled(cfg) * wc.w_r).epsilon(1e-15));
        CHECK(dist.h_l ==
              doctest::Approx(detect_probability_recycled(cfg) * wc.w_l).epsilon(1e-15));
    }

    TEST_CASE("kept mass equals the modified detection probability") {
        for (const GridPoint& pt : standard_grid()) {
            const ExperimentConfig cfg = config_at(pt, 0.02, 0.005);
            try {
                const ReadoutOutcomeDistribution dist = modified_outcome_distribution(cfg);
                REQUIRE(dist.h_r + dist.h_l ==
                        doctest::Approx(modified_detection_probability_recycled(cfg))
                            .epsilon(1e-13));
                REQUIRE(dist.h_r >= 0.0);
                REQUIRE(dist.h_l >= 0.0);
            } catch (const SingularityError&) {
                // Past impedance matching the linear discarded shift can leave
                // [-1, 1]; the invalid-shift contract rejects those points.
                continue;
            }
        }
    }
}

TEST_SUITE("figure families") {
    TEST_CASE("recycling strengthens the measured shift most at small n") {
        for (double phi : {0.05, 0.1}) {
            for (double q : {0.005, 0.02}) {
                double previous_gap = -1.0;
                bool first = true;
                const int n_max = static_cast<int>(std::floor(1.5707963267948966 / phi)) - 1;
                double previous_gamma = -1.0;
                for (int n = 1; n <= n_max; ++n) {
                    const ExperimentConfig std_cfg = cfg_of(n, 1e-4, phi, 0, 0, q, q);
                    const ExperimentConfig rec_cfg = cfg_of(n, 1e-4, phi, 0.9, 0.01, q, q);
                    const double gs = gamma_standard(std_cfg);
                    const double gc = gamma_recycled(rec_cfg);
                    REQUIRE(gc >= gs - 1e-12);
                    if (first) {
                        previous_gap = gc - gs;
                        first = false;
                    } else {
                        REQUIRE(gc - gs <= previous_gap + 1e-12);
                    }
                    // Entanglement strengthens the standard protocol: Gamma
                    // rises with n until it saturates at 1 in double precision.
                    if (previous_gamma >= 0.0) {
                        if (previous_gamma < 1.0 - 1e-9) {
                            REQUIRE(gs > previous_gamma);
                        } else {
                            REQUIRE(gs >= previous_gamma - 1e-12);
                        }
                    }
                    previous_gamma = gs;
                }
            }
        }
    }

    TEST_CASE("recycling recovers Fisher information at small n") {
        for (double phi : {0.05, 0.1}) {
            for (double q : {0.005, 0.02}) {
                double peak_f = 0.0;
                double peak_fc = 0.0;
                const int n_max = static_cast<int>(std::floor(1.5707963267948966 / phi)) - 1;
                for (int n = 1; n <= n_max; ++n) {
                    const ExperimentConfig std_cfg = cfg_of(n, 1e-4, phi, 0, 0, q, q);
                    const ExperimentConfig rec_cfg = cfg_of(n, 1e-4, phi, 0.9, 0.01, q, q);
                    const double f = fisher_factor_standard(std_cfg);
                    const double fc = fisher_factor_recycled(rec_cfg, default_fd_step(rec_cfg));
                    if (n <= 3) REQUIRE(fc > f);
                    peak_f = std::max(peak_f, f);
                    peak_fc = std::max(peak_fc, fc);
                }
                CHECK(peak_fc > peak_f);
            }
        }
    }

    TEST_CASE("standard fisher factor rises then falls across n") {
        const double phi = 0.05;
        const double q = 0.02;
        std::vector<double> values;
        for (int n = 1; n <= 30; ++n)
            values.push_back(fisher_factor_standard(cfg_of(n, 1e-4, phi, 0, 0, q, q)));
        const std::size_t peak =
            std::max_element(values.begin(), values.end()) - values.begin();
        CHECK(peak > 0);
        CHECK(peak + 1 < values.size());
        CHECK(values.front() < values[peak]);
        CHECK(values.back() < values[peak]);
    }
}
