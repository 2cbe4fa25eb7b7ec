#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cnet/graph.hpp"

namespace cnet {

enum class GraphFormat { SnapEdgeList, MatrixMarket, Tsv };

GraphFormat format_from_name(const std::string& name);

struct LoadedGraph {
    Graph graph;
    // original file label for compacted node id i
    std::vector<std::int64_t> original_ids;
};

// Node ids are compacted to 0..n-1 in first-appearance order (matrix-market
// files keep the declared dimension instead, since indices are matrix
// coordinates). Symmetrizes unless directed=true.
LoadedGraph load_graph(const std::string& path, GraphFormat format, bool directed = false);

// Canonical save: tsv edge list (u<v once for undirected; duration column when
// present), JSON metadata sidecar <path>.meta.json, and a node-label sidecar
// <path>.nodes.tsv when original labels are supplied.
void save_graph(const std::string& path, const Graph& g, const GraphLabel& label,
                const std::vector<std::int64_t>* original_ids = nullptr);

// Load a canonical tsv + sidecar pair written by save_graph.
struct SavedGraph {
    Graph graph;
    GraphLabel label;
};
SavedGraph load_saved_graph(const std::string& path);

} // namespace cnet
