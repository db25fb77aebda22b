#pragma once

#include <optional>
#include <string>

#include "poisson/body.hpp"
#include "poisson/linalg.hpp"
#include "poisson/ode.hpp"

// JSON run configuration (schema version 1). Unknown fields are rejected so
// that typos in physics parameters fail loudly.

namespace poisson::cli {

struct PotentialConfig {
    enum class Kind { zero, linear, quadratic };
    Kind kind = Kind::zero;
    Vec3 c;
    Mat3 b;

    body::PotentialSpec build() const;
};

struct FullInitial {
    Mat3 q;
    Vec3 omega;
};

struct ReducedInitial {
    Vec3 nu;
    Vec3 nudot;
    double k = 0.0;
};

struct OutputPaths {
    std::optional<std::string> trajectory_csv;
    std::optional<std::string> report_json;
    std::optional<std::string> plot_svg;
};

struct RunConfig {
    std::array<double, 3> inertia{1.0, 1.0, 1.0};
    PotentialConfig potential;
    std::optional<FullInitial> full;
    std::optional<ReducedInitial> reduced;
    ode::IntegratorSettings integrator;
    OutputPaths outputs;

    body::InertiaTensor inertia_tensor() const {
        return {inertia[0], inertia[1], inertia[2]};
    }
};

/// Parses and validates; throws ConfigError with a field diagnostic.
RunConfig parse_config(const std::string& json_text);

/// Reads the file and parses it. Parse errors carry the byte offset.
RunConfig load_config(const std::string& path);

/// Canonical serialization (round-trips through parse_config).
std::string serialize_config(const RunConfig& config);

} // namespace poisson::cli
