#include "doctest.h"

#include <cmath>

#include "wva/config.hpp"
#include "wva/errors.hpp"
#include "wva/pointer.hpp"
#include "wva/system_state.hpp"
#include "wva/transfer.hpp"

using namespace wva;

namespace {

ExperimentConfig cfg_of(int n, double g, double phi, double r = 0.0, double gamma = 0.0) {
    ConfigValues v;
    v.n = n;
    v.g = g;
    v.phi = phi;
    v.r = r;
    v.gamma = gamma;
    return make_config(v);
}

}  // namespace

TEST_SUITE("config") {
    TEST_CASE("valid config computes derived quantities exactly") {
        ConfigValues v;
        v.n = 2;
        v.g = 1e-3;
        v.phi = 0.1;
        v.r = 0.9;
        v.gamma = 0.05;
        const ExperimentConfig cfg = make_config(v);
        CHECK(cfg.p == doctest::Approx(std::sqrt(0.19)).epsilon(1e-15));
        CHECK(cfg.L == doctest::Approx(std::sqrt(0.95)).epsilon(1e-15));
        CHECK(cfg.r * cfg.r + cfg.p * cfg.p == doctest::Approx(1.0).epsilon(1e-15));
    }

    TEST_CASE("field bounds are enforced with named messages") {
        ConfigValues v;
        v.r = 1.0;
        CHECK_THROWS_WITH_AS(make_config(v), "r must be < 1", ConfigError);
        v.r = 0.0;
        v.gamma = -0.1;
        CHECK_THROWS_WITH_AS(make_config(v), "gamma out of [0,1]", ConfigError);
        v.gamma = 0.0;
        v.n = 0;
        CHECK_THROWS_AS(make_config(v), ConfigError);
        v.n = 1;
        v.q_discard_to_keep = 1.5;
        CHECK_THROWS_AS(make_config(v), ConfigError);
    }
}

TEST_SUITE("weak value") {
    TEST_CASE("n=1, phi=pi/4 gives -i") {
        const Complex w = weak_value(1, 3.14159265358979323846 / 4.0);
        CHECK(w.real() == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(w.imag() == doctest::Approx(-1.0).epsilon(1e-12));
    }

    TEST_CASE("n=2, phi=0.05 matches explicit-vector evaluation") {
        const Complex w = weak_value(2, 0.05);
        CHECK(w.imag() == doctest::Approx(-19.933288846518476).epsilon(1e-14));
        const GhzStates ghz = ghz_states(2, 0.05);
        const Complex explicit_value =
            inner(ghz.psi_f, apply_collective_sigma_z(ghz.psi_i)) / inner(ghz.psi_f, ghz.psi_i);
        CHECK(std::abs(w - explicit_value) < 1e-13);
    }

    TEST_CASE("singular at n*phi multiple of pi") {
        CHECK_THROWS_AS(weak_value(1, 3.14159265358979323846), SingularityError);
        CHECK_THROWS_AS(weak_value(3, 2.0 * 3.14159265358979323846 / 3.0), SingularityError);
    }
}

TEST_SUITE("ghz states") {
    TEST_CASE("phi=0 reduces psi_f to psi_minus") {
        const GhzStates ghz = ghz_states(1, 0.0);
        CHECK(std::abs(ghz.psi_f.amps[0] - 1.0 / std::sqrt(2.0)) < 1e-15);
        CHECK(std::abs(ghz.psi_f.amps[1] + 1.0 / std::sqrt(2.0)) < 1e-15);
        CHECK(std::abs(inner(ghz.psi_f, ghz.psi_minus) - 1.0) < 1e-15);
    }

    TEST_CASE("overlaps follow the closed forms") {
        for (int n : {1, 2, 3, 5, 8}) {
            const double phi = 0.3 / n;
            const GhzStates ghz = ghz_states(n, phi);
            const Complex fi = inner(ghz.psi_f, ghz.psi_i);
            CHECK(std::abs(fi - Complex{0.0, std::sin(n * phi)}) < 1e-15);
            CHECK(std::abs(inner(ghz.psi_f_orth, ghz.psi_i) - std::cos(n * phi)) < 1e-15);
            CHECK(std::abs(inner(ghz.psi_f, ghz.psi_f_orth)) < 1e-15);
        }
    }

    TEST_CASE("n=2, phi=0.1 inner product is i sin(0.2)") {
        const GhzStates ghz = ghz_states(2, 0.1);
        const Complex fi = inner(ghz.psi_f, ghz.psi_i);
        CHECK(fi.real() == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(fi.imag() == doctest::Approx(0.19866933079506122).epsilon(1e-15));
    }

    TEST_CASE("support is only on the extremal basis states") {
        const GhzStates ghz = ghz_states(3, 0.2);
        for (std::size_t i = 1; i + 1 < ghz.psi_i.dim(); ++i) {
            CHECK(std::abs(ghz.psi_i.amps[i]) == 0.0);
            CHECK(std::abs(ghz.psi_f.amps[i]) == 0.0);
        }
    }
}

TEST_SUITE("transfer operators") {
    TEST_CASE("g=0 reduces to scaled identities") {
        const ExperimentConfig cfg = cfg_of(2, 0.0, 0.3);
        const PointerOperator mf = meter_transfer_success(cfg);
        const Complex expected = Complex{0.0, 1.0} * std::sin(0.6);
        CHECK(std::abs(mf.m[0] - expected) < 1e-15);
        CHECK(std::abs(mf.m[1]) < 1e-15);
        const PointerOperator mp = meter_transfer_fail(cfg);
        CHECK(std::abs(mp.m[0] - std::cos(0.6)) < 1e-15);
        CHECK(std::abs(mp.m[2]) < 1e-15);
    }

    TEST_CASE("phi=0, g=0 gives the zero success operator") {
        const ExperimentConfig cfg = cfg_of(1, 0.0, 0.0);
        const PointerOperator mf = meter_transfer_success(cfg);
        for (const Complex& entry : mf.m) CHECK(std::abs(entry) == 0.0);
    }

    TEST_CASE("success operator on |0>_p reproduces the postselected meter") {
        const ExperimentConfig cfg = cfg_of(1, 0.001, 0.1);
        const PointerState out = meter_transfer_success(cfg).apply({1.0, 0.0});
        CHECK(out.c0.imag() == doctest::Approx(std::sin(0.1) * std::cos(0.001)).epsilon(1e-15));
        CHECK(out.c1.real() == doctest::Approx(std::cos(0.1) * std::sin(0.001)).epsilon(1e-15));
    }

    TEST_CASE("fail operator eigenvalues are cos(n phi -+ n g)") {
        const ExperimentConfig cfg = cfg_of(1, 0.001, 0.1);
        const PointerOperator mp = meter_transfer_fail(cfg);
        // M_perp is a function of sigma_y: eigenvectors |R>, |L>.
        const PointerState r_out = mp.apply(ket_r());
        const PointerState l_out = mp.apply(ket_l());
        CHECK(std::abs(r_out.c0 / ket_r().c0 - std::cos(0.099)) < 1e-15);
        CHECK(std::abs(l_out.c0 / ket_l().c0 - std::cos(0.101)) < 1e-15);
    }

    TEST_CASE("completeness on random-ish parameter picks") {
        for (double phi : {0.02, 0.37, 1.1}) {
            for (double g : {0.0, 1e-4, 0.2}) {
                const ExperimentConfig cfg = cfg_of(3, g, phi);
                const PointerOperator mf = meter_transfer_success(cfg);
                const PointerOperator mp = meter_transfer_fail(cfg);
                const PointerOperator sum = mf.adjoint() * mf + mp.adjoint() * mp;
                const PointerOperator id = pointer_identity();
                for (int k = 0; k < 4; ++k) CHECK(std::abs(sum.m[k] - id.m[k]) < 1e-15);
            }
        }
    }

    TEST_CASE("M_f and M_perp commute") {
        const ExperimentConfig cfg = cfg_of(2, 0.01, 0.2);
        const PointerOperator mf = meter_transfer_success(cfg);
        const PointerOperator mp = meter_transfer_fail(cfg);
        const PointerOperator ab = mf * mp;
        const PointerOperator ba = mp * mf;
        for (int k = 0; k < 4; ++k) CHECK(std::abs(ab.m[k] - ba.m[k]) < 1e-15);
    }
}

TEST_SUITE("pointer algebra") {
    TEST_CASE("sigma constants are Hermitian involutions") {
        for (const PointerOperator& op : {sigma_y(), sigma_r()}) {
            const PointerOperator sq = op * op;
            const PointerOperator id = pointer_identity();
            for (int k = 0; k < 4; ++k) {
                CHECK(std::abs(sq.m[k] - id.m[k]) < 1e-15);
                CHECK(std::abs(op.m[k] - op.adjoint().m[k]) < 1e-15);
            }
        }
    }

    TEST_CASE("R/L kets are sigma_R eigenvectors with eigenvalues +-1") {
        const PointerState r_out = sigma_r().apply(ket_r());
        CHECK(std::abs(r_out.c0 - ket_r().c0) < 1e-15);
        CHECK(std::abs(r_out.c1 - ket_r().c1) < 1e-15);
        const PointerState l_out = sigma_r().apply(ket_l());
        CHECK(std::abs(l_out.c0 + ket_l().c0) < 1e-15);
        CHECK(std::abs(l_out.c1 + ket_l().c1) < 1e-15);
    }

    TEST_CASE("normalized expectation rejects the zero state") {
        CHECK_THROWS_AS(normalized_expectation(sigma_r(), PointerState{}), SingularityError);
    }
}
