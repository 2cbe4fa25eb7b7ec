#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cnet/graph.hpp"

namespace cnet {

enum class MeasureKind { Clustering, PageRank, Betweenness, Closeness, InDegree, OutDegree };

struct NodeMeasure {
    MeasureKind kind = MeasureKind::Clustering;
    std::vector<double> values;
};

NodeMeasure local_clustering(const Graph& g);

NodeMeasure pagerank(const Graph& g, double damping = 0.85, double tol = 1e-10,
                     int max_iter = 200);

struct BetweennessMode {
    // exact when pivots is empty; otherwise per-source contributions of
    // `count` sampled sources scaled by n/count
    std::optional<std::pair<int, std::uint64_t>> pivots; // count, seed
    static BetweennessMode exact() { return {}; }
    static BetweennessMode sampled(int count, std::uint64_t seed) {
        return {std::pair{count, seed}};
    }
};

NodeMeasure betweenness(const Graph& g, BetweennessMode mode = BetweennessMode::exact());

NodeMeasure closeness(const Graph& g);

double von_neumann_entropy(const Graph& g);
double structure_connectivity(const Graph& g);
double structure_connectedness(const Graph& g);

struct WienerMode {
    std::optional<std::pair<int, std::uint64_t>> sampled; // count, seed
    static WienerMode exact() { return {}; }
    static WienerMode estimate(int count, std::uint64_t seed) { return {std::pair{count, seed}}; }
};

double average_intersite_distance(const Graph& g, WienerMode mode = WienerMode::exact());

double vertex_distance_information(const Graph& g);

// CDF sampling with linear interpolation on rank q*(n-1)
std::vector<double> quantile_sample(std::vector<double> values, const std::vector<double>& probs);

inline const std::vector<double> kQuantileProbs = {0.10, 0.25, 0.50, 0.75, 0.90};

enum class FeatureLayout { Paper34, Full39 };

FeatureLayout layout_from_name(const std::string& name);
const char* layout_name(FeatureLayout layout);

struct FeatureVector {
    FeatureLayout layout = FeatureLayout::Paper34;
    std::vector<double> values;
    std::vector<std::string> slot_names;
};

struct FeatureProvenance {
    bool betweenness_exact = true;
    bool wiener_exact = true;
    std::uint64_t seed = 0;
    int sample_count = 0;
    bool vdi_defaulted = false; // edgeless graph, slot forced to 0
};

struct FeatureResult {
    FeatureVector vector;
    FeatureProvenance provenance;
};

// Six node measures x five quantiles plus in/out-degree mean and std (34
// slots); the full layout appends the five scalar measures. Graphs above
// approx_threshold nodes switch betweenness and the Wiener number to their
// sampled modes.
FeatureResult extract_features(const Graph& g, FeatureLayout layout, NodeId approx_threshold,
                               std::uint64_t seed = 0, int sample_count = 256);

std::vector<std::string> layout_slot_names(FeatureLayout layout);

} // namespace cnet
