#pragma once

#include <string>
#include <vector>

#include "cli/config.hpp"
#include "cli/verify.hpp"

// Command entry points. Exit codes: 0 success, 1 config/schema/io errors,
// 2 runtime failures, 3 turning-region abort, 4 verification failures.

namespace poisson::cli {

struct GlobalOptions {
    int jobs = 1;
    unsigned seed = 0;
    bool quiet = false;
};

int cmd_simulate_full(const std::vector<std::string>& config_paths, const GlobalOptions& opt);

/// with_kg: compute the signed geodesic curvature column (orientation
/// outward; positive = turning right for positive momentum).
int cmd_simulate_reduced(const std::vector<std::string>& config_paths, const GlobalOptions& opt,
                         bool with_kg);

int cmd_verify(const std::string& config_path, const GlobalOptions& opt, double kappa_scale);

int cmd_plot(const std::string& csv_path, const std::string& svg_path, const GlobalOptions& opt);

} // namespace poisson::cli
