#include "cli/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "poisson/errors.hpp"

namespace poisson::cli {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const char* where,
                    std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* a : allowed)
            if (it.key() == a) {
                known = true;
                break;
            }
        if (!known)
            throw ConfigError(std::string("config: unknown field '") + it.key() + "' in " + where);
    }
}

double get_number(const json& obj, const char* where, const char* key) {
    if (!obj.contains(key))
        throw ConfigError(std::string("config: missing field '") + key + "' in " + where);
    const json& v = obj.at(key);
    if (!v.is_number())
        throw ConfigError(std::string("config: field '") + key + "' in " + where +
                          " must be a number");
    return v.get<double>();
}

Vec3 get_vec3(const json& obj, const char* where, const char* key) {
    if (!obj.contains(key))
        throw ConfigError(std::string("config: missing field '") + key + "' in " + where);
    const json& v = obj.at(key);
    if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() ||
        !v[2].is_number())
        throw ConfigError(std::string("config: field '") + key + "' in " + where +
                          " must be an array of 3 numbers");
    return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

Mat3 get_mat3(const json& obj, const char* where, const char* key) {
    if (!obj.contains(key))
        throw ConfigError(std::string("config: missing field '") + key + "' in " + where);
    const json& v = obj.at(key);
    if (!v.is_array() || v.size() != 3)
        throw ConfigError(std::string("config: field '") + key + "' in " + where +
                          " must be a 3x3 array");
    Mat3 m;
    for (int r = 0; r < 3; ++r) {
        const json& row = v[static_cast<std::size_t>(r)];
        if (!row.is_array() || row.size() != 3)
            throw ConfigError(std::string("config: field '") + key + "' in " + where +
                              " must be a 3x3 array");
        for (int c = 0; c < 3; ++c) {
            const json& e = row[static_cast<std::size_t>(c)];
            if (!e.is_number())
                throw ConfigError(std::string("config: field '") + key + "' in " + where +
                                  " must contain numbers");
            m(r, c) = e.get<double>();
        }
    }
    return m;
}

json vec3_to_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

json mat3_to_json(const Mat3& m) {
    json rows = json::array();
    for (int r = 0; r < 3; ++r)
        rows.push_back(json::array({m(r, 0), m(r, 1), m(r, 2)}));
    return rows;
}

} // namespace

body::PotentialSpec PotentialConfig::build() const {
    switch (kind) {
        case Kind::zero:
            return body::PotentialSpec::zero();
        case Kind::linear:
            return body::PotentialSpec::linear(c);
        case Kind::quadratic:
            return body::PotentialSpec::quadratic(b);
    }
    throw ConfigError("config: invalid potential kind");
}

RunConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config: root must be an object");
    reject_unknown(root, "root", {"version", "inertia", "potential", "initial", "integrator", "outputs"});

    if (!root.contains("version") || !root["version"].is_number_integer() ||
        root["version"].get<int>() != 1)
        throw ConfigError("config: missing or unsupported 'version' (expected 1)");

    RunConfig cfg;

    const Vec3 inertia = get_vec3(root, "root", "inertia");
    cfg.inertia = {inertia[0], inertia[1], inertia[2]};
    if (!(inertia[0] > 0 && inertia[1] > 0 && inertia[2] > 0))
        throw ConfigError("config: 'inertia' moments must be strictly positive");

    if (!root.contains("potential")) throw ConfigError("config: missing field 'potential'");
    {
        const json& p = root["potential"];
        if (!p.is_object() || !p.contains("type") || !p["type"].is_string())
            throw ConfigError("config: 'potential' must be an object with a 'type'");
        const std::string type = p["type"].get<std::string>();
        if (type == "zero") {
            reject_unknown(p, "potential", {"type"});
            cfg.potential.kind = PotentialConfig::Kind::zero;
        } else if (type == "linear") {
            reject_unknown(p, "potential", {"type", "c"});
            cfg.potential.kind = PotentialConfig::Kind::linear;
            cfg.potential.c = get_vec3(p, "potential", "c");
        } else if (type == "quadratic") {
            reject_unknown(p, "potential", {"type", "B"});
            cfg.potential.kind = PotentialConfig::Kind::quadratic;
            cfg.potential.b = get_mat3(p, "potential", "B");
        } else {
            throw ConfigError("config: potential type must be zero|linear|quadratic");
        }
    }

    if (!root.contains("initial")) throw ConfigError("config: missing field 'initial'");
    {
        const json& ini = root["initial"];
        if (!ini.is_object() || !ini.contains("type") || !ini["type"].is_string())
            throw ConfigError("config: 'initial' must be an object with a 'type'");
        const std::string type = ini["type"].get<std::string>();
        if (type == "full") {
            reject_unknown(ini, "initial", {"type", "q", "omega"});
            FullInitial f;
            f.q = get_mat3(ini, "initial", "q");
            f.omega = get_vec3(ini, "initial", "omega");
            cfg.full = f;
        } else if (type == "reduced") {
            reject_unknown(ini, "initial", {"type", "nu", "nudot", "k"});
            ReducedInitial r;
            r.nu = get_vec3(ini, "initial", "nu");
            r.nudot = get_vec3(ini, "initial", "nudot");
            r.k = get_number(ini, "initial", "k");
            cfg.reduced = r;
        } else {
            throw ConfigError("config: initial type must be full|reduced");
        }
    }

    if (!root.contains("integrator")) throw ConfigError("config: missing field 'integrator'");
    {
        const json& g = root["integrator"];
        if (!g.is_object()) throw ConfigError("config: 'integrator' must be an object");
        reject_unknown(g, "integrator",
                       {"method", "step", "abs_tol", "rel_tol", "max_step", "renorm_every", "t_end"});
        if (!g.contains("method") || !g["method"].is_string())
            throw ConfigError("config: integrator needs a 'method'");
        const std::string method = g["method"].get<std::string>();
        if (method == "rk4")
            cfg.integrator.method = ode::Method::rk4;
        else if (method == "rkf45")
            cfg.integrator.method = ode::Method::rkf45;
        else
            throw ConfigError("config: integrator method must be rk4|rkf45");
        cfg.integrator.t_end = get_number(g, "integrator", "t_end");
        if (g.contains("step")) cfg.integrator.step = get_number(g, "integrator", "step");
        if (g.contains("abs_tol")) cfg.integrator.abs_tol = get_number(g, "integrator", "abs_tol");
        if (g.contains("rel_tol")) cfg.integrator.rel_tol = get_number(g, "integrator", "rel_tol");
        if (g.contains("max_step"))
            cfg.integrator.max_step = get_number(g, "integrator", "max_step");
        if (g.contains("renorm_every")) {
            if (!g["renorm_every"].is_number_integer())
                throw ConfigError("config: 'renorm_every' must be an integer");
            cfg.integrator.renorm_every = g["renorm_every"].get<int>();
        }
        try {
            cfg.integrator.validate();
        } catch (const Error& e) {
            throw ConfigError(std::string("config: ") + e.what());
        }
    }

    if (root.contains("outputs")) {
        const json& o = root["outputs"];
        if (!o.is_object()) throw ConfigError("config: 'outputs' must be an object");
        reject_unknown(o, "outputs", {"trajectory_csv", "report_json", "plot_svg"});
        auto path = [&o](const char* key) -> std::optional<std::string> {
            if (!o.contains(key)) return std::nullopt;
            if (!o.at(key).is_string())
                throw ConfigError(std::string("config: output '") + key + "' must be a string");
            return o.at(key).get<std::string>();
        };
        cfg.outputs.trajectory_csv = path("trajectory_csv");
        cfg.outputs.report_json = path("report_json");
        cfg.outputs.plot_svg = path("plot_svg");
    }

    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& config) {
    json root;
    root["version"] = 1;
    root["inertia"] = json::array({config.inertia[0], config.inertia[1], config.inertia[2]});

    json pot;
    switch (config.potential.kind) {
        case PotentialConfig::Kind::zero:
            pot["type"] = "zero";
            break;
        case PotentialConfig::Kind::linear:
            pot["type"] = "linear";
            pot["c"] = vec3_to_json(config.potential.c);
            break;
        case PotentialConfig::Kind::quadratic:
            pot["type"] = "quadratic";
            pot["B"] = mat3_to_json(config.potential.b);
            break;
    }
    root["potential"] = pot;

    json ini;
    if (config.full) {
        ini["type"] = "full";
        ini["q"] = mat3_to_json(config.full->q);
        ini["omega"] = vec3_to_json(config.full->omega);
    } else if (config.reduced) {
        ini["type"] = "reduced";
        ini["nu"] = vec3_to_json(config.reduced->nu);
        ini["nudot"] = vec3_to_json(config.reduced->nudot);
        ini["k"] = config.reduced->k;
    }
    root["initial"] = ini;

    json integ;
    integ["method"] = config.integrator.method == ode::Method::rk4 ? "rk4" : "rkf45";
    integ["step"] = config.integrator.step;
    integ["abs_tol"] = config.integrator.abs_tol;
    integ["rel_tol"] = config.integrator.rel_tol;
    integ["max_step"] = config.integrator.max_step;
    integ["renorm_every"] = config.integrator.renorm_every;
    integ["t_end"] = config.integrator.t_end;
    root["integrator"] = integ;

    json outs = json::object();
    if (config.outputs.trajectory_csv) outs["trajectory_csv"] = *config.outputs.trajectory_csv;
    if (config.outputs.report_json) outs["report_json"] = *config.outputs.report_json;
    if (config.outputs.plot_svg) outs["plot_svg"] = *config.outputs.plot_svg;
    root["outputs"] = outs;

    return root.dump(2) + "\n";
}

} // namespace poisson::cli
