#include "cnet/graph_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "cnet/error.hpp"

namespace cnet {

namespace {

using json = nlohmann::json;

struct RawEdge {
    std::int64_t u, v;
    double duration;
    bool has_duration;
};

[[noreturn]] void bad_line(const std::string& path, size_t lineno, const std::string& line) {
    throw input_error(path + ":" + std::to_string(lineno) + ": malformed line: " + line);
}

std::vector<RawEdge> parse_snap(const std::string& path, std::ifstream& in) {
    std::vector<RawEdge> edges;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;
        std::istringstream iss(line);
        std::int64_t u, v;
        if (!(iss >> u >> v)) bad_line(path, lineno, line);
        edges.push_back({u, v, 0.0, false});
    }
    return edges;
}

std::vector<RawEdge> parse_tsv(const std::string& path, std::ifstream& in) {
    std::vector<RawEdge> edges;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;
        std::istringstream iss(line);
        std::int64_t u, v;
        if (!(iss >> u >> v)) bad_line(path, lineno, line);
        double dur;
        if (iss >> dur)
            edges.push_back({u, v, dur, true});
        else
            edges.push_back({u, v, 0.0, false});
    }
    return edges;
}

// coordinate-format header: %%MatrixMarket matrix coordinate <field> <symmetry>
std::pair<std::vector<RawEdge>, std::int64_t> parse_matrix_market(const std::string& path,
                                                                  std::ifstream& in) {
    std::string line;
    size_t lineno = 0;
    if (!std::getline(in, line)) throw input_error(path + ": empty file");
    ++lineno;
    if (line.rfind("%%MatrixMarket", 0) != 0 || line.find("coordinate") == std::string::npos)
        throw input_error(path + ": not a coordinate MatrixMarket file");
    bool pattern = line.find("pattern") != std::string::npos;

    std::int64_t rows = 0, cols = 0, nnz = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '%') continue;
        std::istringstream iss(line);
        if (!(iss >> rows >> cols >> nnz)) bad_line(path, lineno, line);
        break;
    }
    if (rows <= 0) throw input_error(path + ": missing size line");

    std::vector<RawEdge> edges;
    edges.reserve(static_cast<size_t>(nnz));
    while (std::getline(in, line)) {
        ++lineno;
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '%') continue;
        std::istringstream iss(line);
        std::int64_t i, j;
        if (!(iss >> i >> j)) bad_line(path, lineno, line);
        double val = 1.0;
        if (!pattern && !(iss >> val)) bad_line(path, lineno, line);
        if (i < 1 || i > rows || j < 1 || j > cols) bad_line(path, lineno, line);
        edges.push_back({i - 1, j - 1, 0.0, false});
    }
    return {std::move(edges), std::max(rows, cols)};
}

} // namespace

GraphFormat format_from_name(const std::string& name) {
    if (name == "snap_edgelist" || name == "snap") return GraphFormat::SnapEdgeList;
    if (name == "matrix_market" || name == "mtx") return GraphFormat::MatrixMarket;
    if (name == "tsv") return GraphFormat::Tsv;
    throw input_error("unknown graph format: " + name);
}

LoadedGraph load_graph(const std::string& path, GraphFormat format, bool directed) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open " + path);

    std::vector<RawEdge> raw;
    std::int64_t fixed_dimension = -1;
    switch (format) {
    case GraphFormat::SnapEdgeList: raw = parse_snap(path, in); break;
    case GraphFormat::Tsv: raw = parse_tsv(path, in); break;
    case GraphFormat::MatrixMarket: {
        auto [edges, dim] = parse_matrix_market(path, in);
        raw = std::move(edges);
        fixed_dimension = dim;
        break;
    }
    }
    if (raw.empty()) throw input_error(path + ": no edges found");

    LoadedGraph out;
    bool with_durations = false;
    std::vector<EdgeInput> edges;
    edges.reserve(raw.size());

    if (fixed_dimension >= 0) {
        for (std::int64_t i = 0; i < fixed_dimension; ++i) out.original_ids.push_back(i + 1);
        for (const RawEdge& e : raw)
            edges.push_back({static_cast<NodeId>(e.u), static_cast<NodeId>(e.v), e.duration});
    } else {
        std::unordered_map<std::int64_t, NodeId> compact;
        compact.reserve(raw.size());
        auto id_of = [&](std::int64_t label) {
            auto [it, inserted] = compact.emplace(label, static_cast<NodeId>(compact.size()));
            if (inserted) out.original_ids.push_back(label);
            return it->second;
        };
        for (const RawEdge& e : raw) {
            NodeId u = id_of(e.u), v = id_of(e.v);
            with_durations = with_durations || e.has_duration;
            edges.push_back({u, v, e.duration});
        }
    }

    out.graph = Graph::from_edge_list(static_cast<NodeId>(out.original_ids.size()), edges,
                                      directed, with_durations);
    return out;
}

void save_graph(const std::string& path, const Graph& g, const GraphLabel& label,
                const std::vector<std::int64_t>* original_ids) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write " + path);
    char buf[64];
    for (NodeId u = 0; u < g.node_count(); ++u) {
        auto nbrs = g.neighbors(u);
        for (size_t i = 0; i < nbrs.size(); ++i) {
            NodeId v = nbrs[i];
            if (!g.directed() && v < u) continue; // store each undirected edge once
            out << u << '\t' << v;
            if (g.has_durations()) {
                std::snprintf(buf, sizeof(buf), "%.17g", g.durations(u)[i]);
                out << '\t' << buf;
            }
            out << '\n';
        }
    }
    out.close();

    json meta = {
        {"name", label.name},
        {"family", family_name(label.family)},
        {"directed", g.directed()},
        {"node_count", g.node_count()},
        {"has_durations", g.has_durations()},
    };
    std::ofstream ms(path + ".meta.json");
    if (!ms) throw input_error("cannot write " + path + ".meta.json");
    ms << meta.dump(2) << '\n';

    if (original_ids) {
        std::ofstream ns(path + ".nodes.tsv");
        if (!ns) throw input_error("cannot write " + path + ".nodes.tsv");
        for (size_t i = 0; i < original_ids->size(); ++i)
            ns << i << '\t' << (*original_ids)[i] << '\n';
    }
}

SavedGraph load_saved_graph(const std::string& path) {
    std::ifstream ms(path + ".meta.json");
    if (!ms) throw input_error("cannot open " + path + ".meta.json");
    json meta = json::parse(ms, nullptr, /*allow_exceptions=*/false);
    if (meta.is_discarded()) throw input_error(path + ".meta.json: invalid JSON");

    SavedGraph out;
    out.label.name = meta.at("name").get<std::string>();
    out.label.family = family_from_name(meta.at("family").get<std::string>());
    bool directed = meta.at("directed").get<bool>();
    NodeId node_count = meta.at("node_count").get<NodeId>();
    bool with_durations = meta.value("has_durations", false);

    std::ifstream in(path);
    if (!in) throw input_error("cannot open " + path);
    std::vector<RawEdge> raw = parse_tsv(path, in);
    std::vector<EdgeInput> edges;
    edges.reserve(raw.size());
    for (const RawEdge& e : raw)
        edges.push_back({static_cast<NodeId>(e.u), static_cast<NodeId>(e.v), e.duration});
    out.graph = Graph::from_edge_list(node_count, edges, directed, with_durations);
    return out;
}

} // namespace cnet
