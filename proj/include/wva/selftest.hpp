#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace wva {

struct SelftestOptions {
    bool quick = false;  // reduced grid, for smoke/determinism runs
    // Test-harness hook: offset added to the analytic postselected meter
    // amplitude inside the oracle-equivalence check.  A nonzero value must
    // make the selftest fail; it exists to prove the suite's sensitivity.
    double inject_perturbation = 0.0;
    int jobs = 1;
};

struct CheckResult {
    std::string name;
    bool pass = false;
    double worst = 0.0;       // largest observed deviation (check-specific metric)
    double tolerance = 0.0;   // bound the deviation was held to
    std::string detail;       // worst point, counts, notes
};

/// One row of the standard-QFI arbitration table: the printed expression vs
/// the functional-derived one vs the numeric oracle.
struct ArbitrationRow {
    int n;
    double phi;
    double g;
    double as_printed;
    double derived;
    double oracle;
    double oracle_vs_derived;    // relative
    double oracle_vs_as_printed; // relative
};

struct SelftestReport {
    std::vector<CheckResult> checks;
    std::vector<ArbitrationRow> arbitration;

    bool all_pass() const;
};

SelftestReport run_selftest(const SelftestOptions& options);

/// Human-readable report (one line per check plus the arbitration table).
void print_report(const SelftestReport& report, std::ostream& out);

nlohmann::ordered_json report_to_json(const SelftestReport& report);

}  // namespace wva
