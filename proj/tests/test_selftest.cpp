#include "doctest.h"

#include <sstream>

#include "wva/selftest.hpp"

using namespace wva;

TEST_SUITE("selftest") {
    TEST_CASE("quick profile passes on a fresh build") {
        SelftestOptions options;
        options.quick = true;
        const SelftestReport report = run_selftest(options);
        for (const CheckResult& check : report.checks) {
            INFO(check.name, ": worst ", check.worst, " tol ", check.tolerance, " ",
                 check.detail);
            CHECK(check.pass);
        }
        CHECK(report.all_pass());
        CHECK(report.arbitration.size() == 4);
    }

    TEST_CASE("an injected 1e-6 analytic perturbation is caught") {
        SelftestOptions options;
        options.quick = true;
        options.inject_perturbation = 1e-6;
        const SelftestReport report = run_selftest(options);
        CHECK(!report.all_pass());
        bool meter_check_failed = false;
        for (const CheckResult& check : report.checks) {
            if (check.name == "oracle-meter-states") meter_check_failed = !check.pass;
        }
        CHECK(meter_check_failed);
    }

    TEST_CASE("report renders and serializes deterministically") {
        SelftestOptions options;
        options.quick = true;
        const SelftestReport report = run_selftest(options);
        std::ostringstream a;
        std::ostringstream b;
        print_report(report, a);
        print_report(report, b);
        CHECK(a.str() == b.str());
        CHECK(report_to_json(report).dump() == report_to_json(report).dump());
        CHECK(a.str().find("arbitration") != std::string::npos);
    }
}
