#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cli/config.hpp"

// The built-in verification battery: conservation laws, projection
// consistency of the reduced system, arclength/time equivalence, structure
// relations of the moving frame, curvature-form identities, and analytic
// anchors. Each check reports pass/fail/skip with the measured value.

namespace poisson::cli {

struct VerifyOptions {
    std::optional<RunConfig> config; // system parameters; built-in defaults when absent
    unsigned seed = 0;               // sampling seed
    double kappa_scale = 1.0;        // fault-injection hook for the gyroscopic form
};

struct CheckResult {
    std::string id;
    std::string status; // "pass" | "fail" | "skip"
    double measured = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckResult> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (c.status == "fail") return false;
        return true;
    }
    std::vector<std::string> failing_ids() const {
        std::vector<std::string> out;
        for (const auto& c : checks)
            if (c.status == "fail") out.push_back(c.id);
        return out;
    }
};

VerifyReport run_verification(const VerifyOptions& options);

std::string verify_report_json(const VerifyReport& report);

} // namespace poisson::cli
