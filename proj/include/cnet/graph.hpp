#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cnet {

using NodeId = std::int32_t;

enum class GraphFamily {
    ErdosRenyi,
    NewmanWatts,
    RandomRegular,
    PowerlawCluster,
    AgentSynthetic,
    RealWorld,
};

const char* family_name(GraphFamily f);
GraphFamily family_from_name(const std::string& name);

struct GraphLabel {
    std::string name;
    GraphFamily family = GraphFamily::RealWorld;
};

struct EdgeInput {
    NodeId u = 0;
    NodeId v = 0;
    double duration = 0.0;
};

// Compact CSR adjacency. Immutable after construction; adjacency lists are
// sorted, duplicate-free, and self-loop free. Undirected graphs store both
// arc directions with matching durations.
class Graph {
public:
    Graph() = default;

    static Graph from_edge_list(NodeId node_count, std::span<const EdgeInput> edges,
                                bool directed, bool with_durations = false);

    NodeId node_count() const { return node_count_; }
    bool directed() const { return directed_; }
    bool has_durations() const { return !durations_.empty(); }

    // stored arcs (for undirected graphs this is 2E)
    std::int64_t arc_count() const { return static_cast<std::int64_t>(neighbors_.size()); }
    // undirected edge count; for directed graphs the arc count
    std::int64_t edge_count() const { return directed_ ? arc_count() : arc_count() / 2; }

    std::span<const NodeId> neighbors(NodeId u) const {
        return {neighbors_.data() + offsets_[u], neighbors_.data() + offsets_[u + 1]};
    }
    std::span<const double> durations(NodeId u) const {
        return {durations_.data() + offsets_[u], durations_.data() + offsets_[u + 1]};
    }
    NodeId out_degree(NodeId u) const {
        return static_cast<NodeId>(offsets_[u + 1] - offsets_[u]);
    }
    bool has_arc(NodeId u, NodeId v) const;

    const std::vector<std::int64_t>& offsets() const { return offsets_; }
    const std::vector<NodeId>& neighbor_array() const { return neighbors_; }
    const std::vector<double>& duration_array() const { return durations_; }

    double average_degree() const;

    bool operator==(const Graph&) const = default;

private:
    NodeId node_count_ = 0;
    bool directed_ = false;
    std::vector<std::int64_t> offsets_{0};
    std::vector<NodeId> neighbors_;
    std::vector<double> durations_;
};

struct LabeledGraph {
    GraphLabel label;
    Graph graph;
    double target_degree = 0.0;
};

// hop counts from source; unreachable nodes get -1
std::vector<std::int32_t> bfs_distances(const Graph& g, NodeId source);

struct Components {
    std::vector<NodeId> component;
    NodeId count = 0;
};

// weak connectivity for directed graphs
Components connected_components(const Graph& g);

struct Degrees {
    std::vector<NodeId> in;
    std::vector<NodeId> out;
};

Degrees degrees(const Graph& g);

} // namespace cnet
