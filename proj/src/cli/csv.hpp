#pragma once

#include <optional>
#include <string>
#include <vector>

#include "poisson/body.hpp"
#include "poisson/gyro2d.hpp"

// Trajectory CSV emitters/readers and atomic file output. Numbers are
// written in shortest round-trip form, locale-independent.

namespace poisson::cli {

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double x);

/// Writes content to path via a temporary file + rename, so failures never
/// leave partial output. Throws IoError.
void atomic_write_file(const std::string& path, const std::string& content);

/// Columns: t,a1,a2,a3,w1,w2,w3,E,J,unit_res,ortho_res
std::string full_trajectory_csv(const body::Trajectory& traj);

/// Columns: t,a1,a2,a3,Ered,chart_id,kg. kg entries may be empty (not
/// requested) and are supplied separately, aligned with samples.
std::string reduced_trajectory_csv(const gyro2d::ReducedTrajectory& traj,
                                   const std::vector<std::optional<double>>& kg);

/// Parsed trajectory CSV, schema detected from the header.
struct CsvTable {
    enum class Schema { full, reduced };
    Schema schema = Schema::full;
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows; // kg blanks become NaN
};

/// Throws SchemaError on unknown header or empty/ragged data, IoError when
/// the file cannot be read.
CsvTable read_trajectory_csv(const std::string& path);

} // namespace poisson::cli
