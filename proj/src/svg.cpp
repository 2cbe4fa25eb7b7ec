#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "cnet/error.hpp"
#include "cnet/graph.hpp"
#include "cnet/pipeline.hpp"

namespace cnet {

namespace {

struct ScatterRow {
    std::string name;
    GraphFamily family;
    int cluster;
    double pc1, pc2;
};

std::vector<ScatterRow> parse_scatter(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open " + path);
    std::vector<ScatterRow> rows;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (lineno == 1 && line.rfind("name,", 0) == 0) continue;
        std::istringstream iss(line);
        ScatterRow r;
        std::string field;
        try {
            if (!std::getline(iss, r.name, ',')) throw input_error("short row");
            if (!std::getline(iss, field, ',')) throw input_error("short row");
            r.family = family_from_name(field);
            if (!std::getline(iss, field, ',')) throw input_error("short row");
            r.cluster = std::stoi(field);
            if (!std::getline(iss, field, ',')) throw input_error("short row");
            r.pc1 = std::stod(field);
            if (!std::getline(iss, field, ',')) throw input_error("short row");
            r.pc2 = std::stod(field);
        } catch (const std::exception& e) {
            throw input_error(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
        rows.push_back(std::move(r));
    }
    if (rows.empty()) throw input_error(path + ": no scatter rows");
    return rows;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

const char* cluster_color(int c) {
    static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
    return palette[((c % 10) + 10) % 10];
}

// one marker shape per family, fill color free
void marker(std::ostream& out, GraphFamily f, double x, double y, const std::string& fill) {
    const double r = 5.0;
    switch (f) {
    case GraphFamily::ErdosRenyi:
        out << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\"" << fmt(r)
            << "\" fill=\"" << fill << "\" stroke=\"black\"/>\n";
        break;
    case GraphFamily::NewmanWatts:
        out << "<rect x=\"" << fmt(x - r) << "\" y=\"" << fmt(y - r) << "\" width=\"" << fmt(2 * r)
            << "\" height=\"" << fmt(2 * r) << "\" fill=\"" << fill << "\" stroke=\"black\"/>\n";
        break;
    case GraphFamily::RandomRegular:
        out << "<polygon points=\"" << fmt(x) << "," << fmt(y - r) << " " << fmt(x - r) << ","
            << fmt(y + r) << " " << fmt(x + r) << "," << fmt(y + r) << "\" fill=\"" << fill
            << "\" stroke=\"black\"/>\n";
        break;
    case GraphFamily::PowerlawCluster:
        out << "<polygon points=\"" << fmt(x) << "," << fmt(y - r) << " " << fmt(x + r) << ","
            << fmt(y) << " " << fmt(x) << "," << fmt(y + r) << " " << fmt(x - r) << "," << fmt(y)
            << "\" fill=\"" << fill << "\" stroke=\"black\"/>\n";
        break;
    case GraphFamily::AgentSynthetic:
        out << "<path d=\"M" << fmt(x - r) << " " << fmt(y - r) << " L" << fmt(x + r) << " "
            << fmt(y + r) << " M" << fmt(x - r) << " " << fmt(y + r) << " L" << fmt(x + r) << " "
            << fmt(y - r) << "\" stroke=\"" << fill << "\" stroke-width=\"3\"/>\n";
        break;
    case GraphFamily::RealWorld:
        out << "<path d=\"M" << fmt(x) << " " << fmt(y - r) << " L" << fmt(x) << " " << fmt(y + r)
            << " M" << fmt(x - r) << " " << fmt(y) << " L" << fmt(x + r) << " " << fmt(y)
            << "\" stroke=\"" << fill << "\" stroke-width=\"3\"/>\n";
        break;
    }
}

} // namespace

void plot_scatter(const std::string& scatter_csv, const std::string& out_svg) {
    std::vector<ScatterRow> rows = parse_scatter(scatter_csv);

    const double width = 760, height = 560;
    const double left = 60, right = width - 180, top = 30, bottom = height - 50;

    double min_x = rows[0].pc1, max_x = rows[0].pc1;
    double min_y = rows[0].pc2, max_y = rows[0].pc2;
    for (const auto& r : rows) {
        min_x = std::min(min_x, r.pc1);
        max_x = std::max(max_x, r.pc1);
        min_y = std::min(min_y, r.pc2);
        max_y = std::max(max_y, r.pc2);
    }
    double span_x = std::max(max_x - min_x, 1e-9), span_y = std::max(max_y - min_y, 1e-9);
    min_x -= span_x * 0.05;
    max_x += span_x * 0.05;
    min_y -= span_y * 0.05;
    max_y += span_y * 0.05;
    auto sx = [&](double v) { return left + (v - min_x) / (max_x - min_x) * (right - left); };
    auto sy = [&](double v) { return bottom - (v - min_y) / (max_y - min_y) * (bottom - top); };

    std::ofstream out(out_svg);
    if (!out) throw input_error("cannot write " + out_svg);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    out << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(bottom) << "\" x2=\"" << fmt(right)
        << "\" y2=\"" << fmt(bottom) << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(top) << "\" x2=\"" << fmt(left)
        << "\" y2=\"" << fmt(bottom) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fmt((left + right) / 2) << "\" y=\"" << fmt(height - 15)
        << "\" text-anchor=\"middle\">PC1</text>\n";
    out << "<text x=\"18\" y=\"" << fmt((top + bottom) / 2)
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << fmt((top + bottom) / 2)
        << ")\">PC2</text>\n";

    for (const auto& r : rows)
        marker(out, r.family, sx(r.pc1), sy(r.pc2), cluster_color(r.cluster));

    // legend: marker shape per family, fill color per cluster
    double ly = top + 10;
    out << "<text x=\"" << fmt(right + 20) << "\" y=\"" << fmt(ly) << "\">family</text>\n";
    ly += 18;
    for (GraphFamily f : {GraphFamily::ErdosRenyi, GraphFamily::NewmanWatts,
                          GraphFamily::RandomRegular, GraphFamily::PowerlawCluster,
                          GraphFamily::AgentSynthetic, GraphFamily::RealWorld}) {
        marker(out, f, right + 28, ly - 4, "#cccccc");
        out << "<text x=\"" << fmt(right + 42) << "\" y=\"" << fmt(ly) << "\">" << family_name(f)
            << "</text>\n";
        ly += 18;
    }
    ly += 10;
    std::set<int> clusters;
    for (const auto& r : rows) clusters.insert(r.cluster);
    out << "<text x=\"" << fmt(right + 20) << "\" y=\"" << fmt(ly) << "\">cluster</text>\n";
    ly += 18;
    for (int c : clusters) {
        out << "<rect x=\"" << fmt(right + 22) << "\" y=\"" << fmt(ly - 10)
            << "\" width=\"12\" height=\"12\" fill=\"" << cluster_color(c) << "\"/>\n";
        out << "<text x=\"" << fmt(right + 42) << "\" y=\"" << fmt(ly) << "\">" << c
            << "</text>\n";
        ly += 18;
    }
    out << "</svg>\n";
}

} // namespace cnet
