// Brute-force reference implementations for the complexity measures, kept
// independent of the library's BFS/Brandes code paths: distances come from
// Floyd-Warshall and shortest paths are enumerated explicitly.
#pragma once

#include <random>
#include <vector>

#include "cnet/graph.hpp"

namespace oracle {

using cnet::Graph;
using cnet::NodeId;

inline std::vector<std::vector<int>> adjacency_matrix(const Graph& g) {
    int n = g.node_count();
    std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v : g.neighbors(u)) a[u][v] = 1;
    return a;
}

inline std::vector<std::vector<int>> floyd_warshall(const std::vector<std::vector<int>>& a) {
    const int n = static_cast<int>(a.size());
    const int inf = 1 << 28;
    std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
    for (int i = 0; i < n; ++i) d[i][i] = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (a[i][j]) d[i][j] = 1;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    return d;
}

// enumerate every shortest s->t path, recording interior visits
inline void enumerate_paths(const std::vector<std::vector<int>>& a,
                            const std::vector<std::vector<int>>& d, int at, int t,
                            std::vector<int>& path, long long& count,
                            std::vector<long long>& through) {
    if (at == t) {
        ++count;
        for (size_t i = 1; i + 1 < path.size(); ++i) ++through[path[i]];
        return;
    }
    const int n = static_cast<int>(a.size());
    for (int next = 0; next < n; ++next) {
        if (!a[at][next]) continue;
        if (d[at][t] != d[next][t] + 1) continue;
        path.push_back(next);
        enumerate_paths(a, d, next, t, path, count, through);
        path.pop_back();
    }
}

// ordered-pair betweenness, halved for undirected graphs
inline std::vector<double> betweenness(const Graph& g) {
    const int n = g.node_count();
    auto a = adjacency_matrix(g);
    auto d = floyd_warshall(a);
    const int inf = 1 << 28;
    std::vector<double> out(n, 0.0);
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) {
            if (s == t || d[s][t] >= inf) continue;
            long long count = 0;
            std::vector<long long> through(n, 0);
            std::vector<int> path{s};
            enumerate_paths(a, d, s, t, path, count, through);
            for (int v = 0; v < n; ++v)
                if (v != s && v != t && through[v] > 0)
                    out[v] += static_cast<double>(through[v]) / static_cast<double>(count);
        }
    if (!g.directed())
        for (double& v : out) v /= 2.0;
    return out;
}

inline std::vector<double> closeness(const Graph& g) {
    const int n = g.node_count();
    auto d = floyd_warshall(adjacency_matrix(g));
    const int inf = 1 << 28;
    std::vector<double> out(n, 0.0);
    for (int i = 0; i < n; ++i) {
        long long sum = 0;
        for (int j = 0; j < n; ++j)
            if (j != i && d[i][j] < inf) sum += d[i][j];
        if (sum > 0) out[i] = 1.0 / static_cast<double>(sum);
    }
    return out;
}

inline double average_intersite_distance(const Graph& g) {
    const int n = g.node_count();
    auto d = floyd_warshall(adjacency_matrix(g));
    const int inf = 1 << 28;
    long long total = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && d[i][j] < inf) total += d[i][j];
    return n == 0 ? 0.0 : static_cast<double>(total) / n;
}

inline std::vector<double> local_clustering(const Graph& g) {
    const int n = g.node_count();
    auto a = adjacency_matrix(g);
    std::vector<double> out(n, 0.0);
    for (int i = 0; i < n; ++i) {
        std::vector<int> nbrs;
        for (int j = 0; j < n; ++j)
            if (a[i][j]) nbrs.push_back(j);
        const auto k = static_cast<long long>(nbrs.size());
        if (k < 2) continue;
        long long links = 0;
        for (int x : nbrs)
            for (int y : nbrs)
                if (x != y && a[x][y]) ++links;
        out[i] = static_cast<double>(links) / static_cast<double>(k * (k - 1));
    }
    return out;
}

// random undirected connected graph with 2..max_nodes nodes
inline Graph random_connected_graph(std::mt19937& rng, int max_nodes) {
    std::uniform_int_distribution<int> size_dist(2, max_nodes);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    while (true) {
        int n = size_dist(rng);
        double p = unif(rng);
        std::vector<cnet::EdgeInput> edges;
        for (NodeId u = 0; u < n; ++u)
            for (NodeId v = u + 1; v < n; ++v)
                if (unif(rng) < p) edges.push_back({u, v});
        Graph g = Graph::from_edge_list(n, edges, false);
        if (cnet::connected_components(g).count == 1) return g;
    }
}

} // namespace oracle
