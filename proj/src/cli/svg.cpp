#include "cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "poisson/errors.hpp"

namespace poisson::cli {

namespace {

// Fixed-precision coordinate formatting keeps the output diffable.
std::string coord(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    // snprintf honors the global C locale; the CLI never changes it.
    return buf;
}

struct Series {
    std::string label;
    std::vector<double> values;
};

std::string sparkline(const Series& s, const std::vector<double>& t, double x0, double y0,
                      double w, double h, const char* color) {
    double lo = *std::min_element(s.values.begin(), s.values.end());
    double hi = *std::max_element(s.values.begin(), s.values.end());
    if (hi - lo < 1e-300) {
        lo -= 1.0;
        hi += 1.0;
    }
    const double t0 = t.front(), t1 = t.back();
    std::string pts;
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        const double px = x0 + (t[i] - t0) / (t1 - t0 + 1e-300) * w;
        const double py = y0 + h - (s.values[i] - lo) / (hi - lo) * h;
        if (!pts.empty()) pts += " ";
        pts += coord(px) + "," + coord(py);
    }
    std::string out;
    out += "<text x=\"" + coord(x0) + "\" y=\"" + coord(y0 - 6.0) +
           "\" font-size=\"12\" fill=\"#444\">" + s.label + " (range " + format_double(hi - lo) +
           ")</text>\n";
    out += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + color +
           "\" stroke-width=\"1\"/>\n";
    return out;
}

} // namespace

std::string render_trajectory_svg(const CsvTable& table) {
    const double width = 820, height = 440;
    const double cx = 210, cy = 220, r = 190;

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + coord(width) + "\" height=\"" +
           coord(height) + "\" viewBox=\"0 0 " + coord(width) + " " + coord(height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<circle cx=\"" + coord(cx) + "\" cy=\"" + coord(cy) + "\" r=\"" + coord(r) +
           "\" fill=\"none\" stroke=\"#999\" stroke-width=\"1\"/>\n";

    // Orthographic projection along axis 3: (a1, a2).
    std::string d;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const double a1 = table.rows[i][1], a2 = table.rows[i][2];
        const double px = cx + r * a1;
        const double py = cy - r * a2;
        d += (i == 0 ? "M" : " L") + coord(px) + " " + coord(py);
    }
    const auto& first = table.rows.front();
    const auto& last = table.rows.back();
    const double gap = std::hypot(last[1] - first[1], last[2] - first[2]) +
                       std::fabs(last[3] - first[3]);
    if (gap < 1e-3) d += " Z";
    svg += "<path d=\"" + d + "\" fill=\"none\" stroke=\"#0057b7\" stroke-width=\"1.2\"/>\n";

    std::vector<double> t;
    t.reserve(table.rows.size());
    for (const auto& row : table.rows) t.push_back(row[0]);

    std::vector<Series> series;
    if (table.schema == CsvTable::Schema::full) {
        Series e{"E drift", {}}, j{"J drift", {}};
        for (const auto& row : table.rows) {
            e.values.push_back(row[7] - table.rows[0][7]);
            j.values.push_back(row[8] - table.rows[0][8]);
        }
        series.push_back(std::move(e));
        series.push_back(std::move(j));
    } else {
        Series e{"Ered drift", {}};
        for (const auto& row : table.rows) e.values.push_back(row[4] - table.rows[0][4]);
        series.push_back(std::move(e));
    }

    double y0 = 60;
    const char* colors[] = {"#b22222", "#2e8b57"};
    for (std::size_t i = 0; i < series.size(); ++i) {
        svg += sparkline(series[i], t, 440, y0, 340, 120, colors[i % 2]);
        y0 += 170;
    }

    svg += "</svg>\n";
    return svg;
}

} // namespace poisson::cli
