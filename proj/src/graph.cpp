#include "cnet/graph.hpp"

#include <algorithm>
#include <queue>

#include "cnet/error.hpp"

namespace cnet {

const char* family_name(GraphFamily f) {
    switch (f) {
    case GraphFamily::ErdosRenyi: return "ErdosRenyi";
    case GraphFamily::NewmanWatts: return "NewmanWatts";
    case GraphFamily::RandomRegular: return "RandomRegular";
    case GraphFamily::PowerlawCluster: return "PowerlawCluster";
    case GraphFamily::AgentSynthetic: return "AgentSynthetic";
    case GraphFamily::RealWorld: return "RealWorld";
    }
    return "unknown";
}

GraphFamily family_from_name(const std::string& name) {
    for (GraphFamily f : {GraphFamily::ErdosRenyi, GraphFamily::NewmanWatts,
                          GraphFamily::RandomRegular, GraphFamily::PowerlawCluster,
                          GraphFamily::AgentSynthetic, GraphFamily::RealWorld}) {
        if (name == family_name(f)) return f;
    }
    throw input_error("unknown graph family: " + name);
}

Graph Graph::from_edge_list(NodeId node_count, std::span<const EdgeInput> edges,
                            bool directed, bool with_durations) {
    if (node_count < 0) throw input_error("negative node count");

    std::vector<EdgeInput> arcs;
    arcs.reserve(edges.size() * (directed ? 1 : 2));
    for (const EdgeInput& e : edges) {
        if (e.u < 0 || e.u >= node_count || e.v < 0 || e.v >= node_count)
            throw input_error("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                              ") out of range for node count " + std::to_string(node_count));
        if (e.u == e.v) continue; // simple graphs only
        arcs.push_back(e);
        if (!directed) arcs.push_back({e.v, e.u, e.duration});
    }

    std::sort(arcs.begin(), arcs.end(), [](const EdgeInput& a, const EdgeInput& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });

    Graph g;
    g.node_count_ = node_count;
    g.directed_ = directed;
    g.offsets_.assign(static_cast<size_t>(node_count) + 1, 0);
    g.neighbors_.reserve(arcs.size());
    if (with_durations) g.durations_.reserve(arcs.size());

    for (size_t i = 0; i < arcs.size();) {
        size_t j = i;
        double dur = 0.0;
        // parallel arcs merge, durations sum
        while (j < arcs.size() && arcs[j].u == arcs[i].u && arcs[j].v == arcs[i].v)
            dur += arcs[j++].duration;
        g.neighbors_.push_back(arcs[i].v);
        if (with_durations) g.durations_.push_back(dur);
        g.offsets_[static_cast<size_t>(arcs[i].u) + 1]++;
        i = j;
    }
    for (size_t u = 0; u < static_cast<size_t>(node_count); ++u)
        g.offsets_[u + 1] += g.offsets_[u];
    return g;
}

bool Graph::has_arc(NodeId u, NodeId v) const {
    auto nbrs = neighbors(u);
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

double Graph::average_degree() const {
    if (node_count_ == 0) return 0.0;
    return static_cast<double>(arc_count()) / node_count_;
}

std::vector<std::int32_t> bfs_distances(const Graph& g, NodeId source) {
    if (source < 0 || source >= g.node_count())
        throw input_error("bfs source out of range");
    std::vector<std::int32_t> dist(static_cast<size_t>(g.node_count()), -1);
    std::vector<NodeId> queue;
    queue.reserve(static_cast<size_t>(g.node_count()));
    dist[static_cast<size_t>(source)] = 0;
    queue.push_back(source);
    for (size_t head = 0; head < queue.size(); ++head) {
        NodeId u = queue[head];
        std::int32_t du = dist[static_cast<size_t>(u)];
        for (NodeId v : g.neighbors(u)) {
            if (dist[static_cast<size_t>(v)] < 0) {
                dist[static_cast<size_t>(v)] = du + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

Components connected_components(const Graph& g) {
    const NodeId n = g.node_count();
    Components out;
    out.component.assign(static_cast<size_t>(n), -1);

    // weak connectivity: build reverse adjacency once for directed graphs
    std::vector<std::vector<NodeId>> reverse;
    if (g.directed()) {
        reverse.resize(static_cast<size_t>(n));
        for (NodeId u = 0; u < n; ++u)
            for (NodeId v : g.neighbors(u)) reverse[static_cast<size_t>(v)].push_back(u);
    }

    std::vector<NodeId> stack;
    for (NodeId s = 0; s < n; ++s) {
        if (out.component[static_cast<size_t>(s)] >= 0) continue;
        NodeId id = out.count++;
        out.component[static_cast<size_t>(s)] = id;
        stack.assign(1, s);
        while (!stack.empty()) {
            NodeId u = stack.back();
            stack.pop_back();
            auto visit = [&](NodeId v) {
                if (out.component[static_cast<size_t>(v)] < 0) {
                    out.component[static_cast<size_t>(v)] = id;
                    stack.push_back(v);
                }
            };
            for (NodeId v : g.neighbors(u)) visit(v);
            if (g.directed())
                for (NodeId v : reverse[static_cast<size_t>(u)]) visit(v);
        }
    }
    return out;
}

Degrees degrees(const Graph& g) {
    const NodeId n = g.node_count();
    Degrees d;
    d.out.resize(static_cast<size_t>(n));
    for (NodeId u = 0; u < n; ++u) d.out[static_cast<size_t>(u)] = g.out_degree(u);
    if (!g.directed()) {
        d.in = d.out;
        return d;
    }
    d.in.assign(static_cast<size_t>(n), 0);
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v : g.neighbors(u)) d.in[static_cast<size_t>(v)]++;
    return d;
}

} // namespace cnet
