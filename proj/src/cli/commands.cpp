#include "cli/commands.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <iostream>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "cli/csv.hpp"
#include "cli/log.hpp"
#include "cli/svg.hpp"
#include "poisson/errors.hpp"
#include "poisson/gyro2d.hpp"

namespace poisson::cli {

namespace {

struct DriftReport {
    double max_rel_energy_drift = 0.0;
    double mean_rel_energy_drift = 0.0;
    double max_momentum_drift = 0.0;
    double max_unit_residual = 0.0;
    double max_ortho_residual = 0.0;
    int chart_switches = 0;
    double wall_time_s = 0.0;
};

std::string drift_report_json(const DriftReport& r) {
    nlohmann::json j;
    j["max_rel_energy_drift"] = r.max_rel_energy_drift;
    j["mean_rel_energy_drift"] = r.mean_rel_energy_drift;
    j["max_momentum_drift"] = r.max_momentum_drift;
    j["max_unit_residual"] = r.max_unit_residual;
    j["max_ortho_residual"] = r.max_ortho_residual;
    j["chart_switches"] = r.chart_switches;
    j["wall_time_s"] = r.wall_time_s;
    return j.dump(2) + "\n";
}

int classify_exception() {
    try {
        throw;
    } catch (const ConfigError&) {
        return 1;
    } catch (const SchemaError&) {
        return 1;
    } catch (const IoError&) {
        return 1;
    } catch (const TurningRegion&) {
        return 3;
    } catch (const Error&) {
        return 2;
    } catch (const std::exception&) {
        return 2;
    }
}

void maybe_plot(const RunConfig& cfg) {
    if (!cfg.outputs.plot_svg || !cfg.outputs.trajectory_csv) return;
    const CsvTable table = read_trajectory_csv(*cfg.outputs.trajectory_csv);
    atomic_write_file(*cfg.outputs.plot_svg, render_trajectory_svg(table));
}

int run_one_full(const std::string& path) {
    const RunConfig cfg = load_config(path);
    if (!cfg.full)
        throw ConfigError("config '" + path + "': simulate-full needs an initial of type 'full'");

    const auto t0 = std::chrono::steady_clock::now();
    const body::InertiaTensor inertia = cfg.inertia_tensor();
    const body::PotentialSpec potential = cfg.potential.build();
    const body::FullState initial{so3::Rotation(cfg.full->q), cfg.full->omega};
    const body::Trajectory traj = body::simulate_body(initial, inertia, potential, cfg.integrator);

    DriftReport report;
    const double e0 = traj.samples.front().energy;
    const double j0 = traj.samples.front().momentum;
    double esum = 0.0;
    for (const auto& s : traj.samples) {
        const double rel = std::fabs(s.energy - e0) / std::fabs(e0);
        report.max_rel_energy_drift = std::max(report.max_rel_energy_drift, rel);
        esum += rel;
        report.max_momentum_drift = std::max(report.max_momentum_drift, std::fabs(s.momentum - j0));
        report.max_unit_residual = std::max(report.max_unit_residual, s.unit_residual);
        report.max_ortho_residual = std::max(report.max_ortho_residual, s.ortho_residual);
    }
    report.mean_rel_energy_drift = esum / static_cast<double>(traj.samples.size());
    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (cfg.outputs.trajectory_csv)
        atomic_write_file(*cfg.outputs.trajectory_csv, full_trajectory_csv(traj));
    if (cfg.outputs.report_json)
        atomic_write_file(*cfg.outputs.report_json, drift_report_json(report));
    maybe_plot(cfg);
    log(LogLevel::info, "simulate-full '" + path + "': " +
                            std::to_string(traj.samples.size()) + " samples, max rel E drift " +
                            format_double(report.max_rel_energy_drift));
    return 0;
}

// Signed geodesic curvature of a sample in the Maupertuis metric of the
// run's energy level; empty near the turning region where it is undefined.
std::optional<double> sample_kg(const reduction::ReducedSystemSpec& spec,
                                const gyro2d::ReducedSample& s, double h) {
    using namespace gyro2d;
    const Chart chart(s.chart);
    const GyroSystem2D sys = reduced_system_in_chart(spec, chart);
    try {
        const GyroSystem2D mh = maupertuis_system(sys, EnergyLevel{h});
        const Mat2 g = mh.metric(s.q);
        const auto [qd, qdd] = gyro_rhs(sys, {s.q, s.qdot});
        (void)qd;
        const Christoffel ch = christoffel(mh, s.q);
        Vec2 acc = qdd;
        for (int i = 0; i < 2; ++i) {
            double sum = 0.0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) sum += ch.g[i][a][b] * s.qdot[a] * s.qdot[b];
            acc[i] += sum;
        }
        const double speed = std::sqrt(quad(g, s.qdot, s.qdot));
        if (speed < 1e-12) return std::nullopt;
        // outward-orientation sign: positive when {acc, tangent} is
        // positively oriented in the chart
        return std::sqrt(g.det()) * det2(acc, s.qdot) / (speed * speed * speed);
    } catch (const TurningRegion&) {
        return std::nullopt;
    }
}

int run_one_reduced(const std::string& path, bool with_kg) {
    const RunConfig cfg = load_config(path);
    if (!cfg.reduced)
        throw ConfigError("config '" + path +
                          "': simulate-reduced needs an initial of type 'reduced'");

    const auto t0 = std::chrono::steady_clock::now();
    const reduction::ReducedSystemSpec spec{cfg.inertia_tensor(), cfg.potential.build(),
                                            cfg.reduced->k, 1.0};
    const reduction::ReducedState initial{cfg.reduced->nu, cfg.reduced->nudot};
    const gyro2d::ReducedTrajectory traj = gyro2d::simulate_reduced(spec, initial, cfg.integrator);

    std::vector<std::optional<double>> kg(traj.samples.size());
    if (with_kg) {
        const double h = traj.samples.front().energy;
        for (std::size_t i = 0; i < traj.samples.size(); ++i)
            kg[i] = sample_kg(spec, traj.samples[i], h);
    }

    DriftReport report;
    report.chart_switches = traj.chart_switches;
    const double e0 = traj.samples.front().energy;
    double esum = 0.0;
    for (const auto& s : traj.samples) {
        const double rel = std::fabs(s.energy - e0) / std::fabs(e0);
        report.max_rel_energy_drift = std::max(report.max_rel_energy_drift, rel);
        esum += rel;
        report.max_unit_residual =
            std::max(report.max_unit_residual, std::fabs(norm(s.nu) - 1.0));
    }
    report.mean_rel_energy_drift = esum / static_cast<double>(traj.samples.size());
    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (cfg.outputs.trajectory_csv)
        atomic_write_file(*cfg.outputs.trajectory_csv, reduced_trajectory_csv(traj, kg));
    if (cfg.outputs.report_json)
        atomic_write_file(*cfg.outputs.report_json, drift_report_json(report));
    maybe_plot(cfg);
    log(LogLevel::info, "simulate-reduced '" + path + "': " +
                            std::to_string(traj.samples.size()) + " samples, " +
                            std::to_string(traj.chart_switches) + " chart switches");
    return 0;
}

template <typename Fn>
int fan_out(const std::vector<std::string>& paths, int jobs, Fn&& run) {
    if (paths.empty()) {
        log(LogLevel::error, "no config files given");
        return 1;
    }
    if (jobs <= 1 || paths.size() == 1) {
        int worst = 0;
        for (const auto& p : paths) {
            try {
                worst = std::max(worst, run(p));
            } catch (const std::exception& e) {
                log(LogLevel::error, std::string(e.what()));
                worst = std::max(worst, classify_exception());
            }
        }
        return worst;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<int> worst{0};
    std::mutex log_mutex;
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= paths.size()) return;
            int code = 0;
            std::string message;
            try {
                code = run(paths[i]);
            } catch (const std::exception& e) {
                message = e.what();
                code = classify_exception();
            }
            if (!message.empty()) {
                std::lock_guard<std::mutex> lock(log_mutex);
                log(LogLevel::error, message);
            }
            int cur = worst.load();
            while (code > cur && !worst.compare_exchange_weak(cur, code)) {
            }
        }
    };
    std::vector<std::thread> pool;
    const int n = std::min<int>(jobs, static_cast<int>(paths.size()));
    pool.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return worst.load();
}

} // namespace

int cmd_simulate_full(const std::vector<std::string>& config_paths, const GlobalOptions& opt) {
    if (opt.quiet) log_level() = LogLevel::error;
    return fan_out(config_paths, opt.jobs, [](const std::string& p) { return run_one_full(p); });
}

int cmd_simulate_reduced(const std::vector<std::string>& config_paths, const GlobalOptions& opt,
                         bool with_kg) {
    if (opt.quiet) log_level() = LogLevel::error;
    return fan_out(config_paths, opt.jobs,
                   [with_kg](const std::string& p) { return run_one_reduced(p, with_kg); });
}

int cmd_verify(const std::string& config_path, const GlobalOptions& opt, double kappa_scale) {
    if (opt.quiet) log_level() = LogLevel::error;
    VerifyOptions vopt;
    vopt.seed = opt.seed;
    vopt.kappa_scale = kappa_scale;
    try {
        if (!config_path.empty()) vopt.config = load_config(config_path);
    } catch (const std::exception& e) {
        log(LogLevel::error, e.what());
        return 1;
    }

    const VerifyReport report = run_verification(vopt);
    std::cout << verify_report_json(report);
    if (!report.all_pass()) {
        std::string ids;
        for (const auto& id : report.failing_ids()) ids += (ids.empty() ? "" : ", ") + id;
        log(LogLevel::error, "verification failed: " + ids);
        return 4;
    }
    return 0;
}

int cmd_plot(const std::string& csv_path, const std::string& svg_path, const GlobalOptions& opt) {
    if (opt.quiet) log_level() = LogLevel::error;
    try {
        const CsvTable table = read_trajectory_csv(csv_path);
        atomic_write_file(svg_path, render_trajectory_svg(table));
        return 0;
    } catch (const std::exception& e) {
        log(LogLevel::error, e.what());
        return classify_exception();
    }
}

} // namespace poisson::cli
