#pragma once

#include <cstdint>
#include <vector>

#include "cnet/graph.hpp"

namespace cnet {

struct StylizedSpec {
    GraphFamily family = GraphFamily::ErdosRenyi;
    NodeId n = 0;
    double p = 0.0;  // ER edge prob; NW shortcut prob; powerlaw triangle prob
    NodeId k = 0;    // NW ring neighbors (total, both sides)
    NodeId d = 0;    // random-regular degree
    NodeId m = 0;    // powerlaw edges per new node
    std::uint64_t seed = 0;
};

Graph gen_erdos_renyi(const StylizedSpec& spec);
Graph gen_newman_watts(const StylizedSpec& spec);
Graph gen_random_regular(const StylizedSpec& spec);
Graph gen_powerlaw_cluster(const StylizedSpec& spec);
Graph gen_stylized(const StylizedSpec& spec);

// The four families at the three target average degrees (15, 40, 65),
// twelve graphs at n=10000 each.
std::vector<LabeledGraph> table3_suite(std::uint64_t seed);

} // namespace cnet
