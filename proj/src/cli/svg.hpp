#pragma once

#include <string>

#include "cli/csv.hpp"

namespace poisson::cli {

/// Renders a trajectory CSV as a static SVG: orthographic projection of the
/// Poisson path onto the (a1, a2) plane plus drift sparklines for the
/// energy-like columns. Output bytes are deterministic.
std::string render_trajectory_svg(const CsvTable& table);

} // namespace poisson::cli
