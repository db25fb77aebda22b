#include "cli/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "poisson/errors.hpp"

namespace poisson::cli {

std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

void atomic_write_file(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
        out << content;
        if (!out.flush()) throw IoError("write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot rename temporary file onto '" + path + "'");
    }
}

std::string full_trajectory_csv(const body::Trajectory& traj) {
    std::string out = "t,a1,a2,a3,w1,w2,w3,E,J,unit_res,ortho_res\n";
    for (const auto& s : traj.samples) {
        out += format_double(s.t);
        for (int i = 0; i < 3; ++i) out += "," + format_double(s.nu[i]);
        for (int i = 0; i < 3; ++i) out += "," + format_double(s.omega[i]);
        out += "," + format_double(s.energy);
        out += "," + format_double(s.momentum);
        out += "," + format_double(s.unit_residual);
        out += "," + format_double(s.ortho_residual);
        out += "\n";
    }
    return out;
}

std::string reduced_trajectory_csv(const gyro2d::ReducedTrajectory& traj,
                                   const std::vector<std::optional<double>>& kg) {
    std::string out = "t,a1,a2,a3,Ered,chart_id,kg\n";
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        const auto& s = traj.samples[i];
        out += format_double(s.t);
        for (int j = 0; j < 3; ++j) out += "," + format_double(s.nu[j]);
        out += "," + format_double(s.energy);
        out += s.chart == gyro2d::ChartId::north ? ",0" : ",1";
        out += ",";
        if (i < kg.size() && kg[i]) out += format_double(*kg[i]);
        out += "\n";
    }
    return out;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_field(const std::string& s) {
    if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw SchemaError("csv: malformed numeric field '" + s + "'");
    return v;
}

} // namespace

CsvTable read_trajectory_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");

    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw SchemaError("csv: empty file '" + path + "'");
    table.header = split_line(line);

    const std::vector<std::string> full_hdr = {"t",  "a1", "a2", "a3",       "w1",       "w2",
                                               "w3", "E",  "J",  "unit_res", "ortho_res"};
    const std::vector<std::string> red_hdr = {"t", "a1", "a2", "a3", "Ered", "chart_id", "kg"};
    if (table.header == full_hdr)
        table.schema = CsvTable::Schema::full;
    else if (table.header == red_hdr)
        table.schema = CsvTable::Schema::reduced;
    else
        throw SchemaError("csv: unrecognized header in '" + path + "'");

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_line(line);
        if (fields.size() != table.header.size())
            throw SchemaError("csv: ragged row in '" + path + "'");
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& f : fields) row.push_back(parse_field(f));
        table.rows.push_back(std::move(row));
    }
    if (table.rows.empty()) throw SchemaError("csv: no data rows in '" + path + "'");
    return table;
}

} // namespace poisson::cli
