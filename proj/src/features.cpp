#include "cnet/features.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "cnet/error.hpp"
#include "cnet/rng.hpp"

namespace cnet {

namespace {

// Sort-then-sum so that accumulation is a function of the value multiset, not
// of node labeling; keeps feature extraction bitwise relabel-invariant.
double stable_sum(std::vector<double>& terms) {
    std::sort(terms.begin(), terms.end());
    double sum = 0.0;
    for (double t : terms) sum += t;
    return sum;
}

struct BfsBuffers {
    std::vector<std::int32_t> dist;
    std::vector<NodeId> order;
};

void bfs_into(const Graph& g, NodeId source, BfsBuffers& buf) {
    buf.dist.assign(static_cast<size_t>(g.node_count()), -1);
    buf.order.clear();
    buf.dist[static_cast<size_t>(source)] = 0;
    buf.order.push_back(source);
    for (size_t head = 0; head < buf.order.size(); ++head) {
        NodeId u = buf.order[head];
        std::int32_t du = buf.dist[static_cast<size_t>(u)];
        for (NodeId v : g.neighbors(u)) {
            if (buf.dist[static_cast<size_t>(v)] < 0) {
                buf.dist[static_cast<size_t>(v)] = du + 1;
                buf.order.push_back(v);
            }
        }
    }
}

std::vector<NodeId> sample_sources(NodeId n, int count, std::uint64_t seed) {
    CounterRng rng(seed, 0x50495654);
    std::vector<NodeId> all(static_cast<size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    for (int i = 0; i < count; ++i) {
        size_t j = static_cast<size_t>(i) +
                   static_cast<size_t>(rng.next_below(static_cast<std::uint64_t>(n - i)));
        std::swap(all[static_cast<size_t>(i)], all[j]);
    }
    all.resize(static_cast<size_t>(count));
    std::sort(all.begin(), all.end());
    return all;
}

} // namespace

NodeMeasure local_clustering(const Graph& g) {
    const NodeId n = g.node_count();
    NodeMeasure out{MeasureKind::Clustering, std::vector<double>(static_cast<size_t>(n), 0.0)};
    std::vector<char> mark(static_cast<size_t>(n), 0);
    for (NodeId i = 0; i < n; ++i) {
        auto nbrs = g.neighbors(i);
        const auto k = static_cast<std::int64_t>(nbrs.size());
        if (k < 2) continue;
        for (NodeId j : nbrs) mark[static_cast<size_t>(j)] = 1;
        std::int64_t links = 0; // ordered neighbor pairs joined by an arc
        for (NodeId j : nbrs)
            for (NodeId w : g.neighbors(j))
                if (w != i && mark[static_cast<size_t>(w)]) ++links;
        for (NodeId j : nbrs) mark[static_cast<size_t>(j)] = 0;
        out.values[static_cast<size_t>(i)] =
            static_cast<double>(links) / (static_cast<double>(k) * static_cast<double>(k - 1));
    }
    return out;
}

NodeMeasure pagerank(const Graph& g, double damping, double tol, int max_iter) {
    if (damping <= 0.0 || damping >= 1.0) throw input_error("pagerank: damping must be in (0,1)");
    const NodeId n = g.node_count();
    if (n == 0) return {MeasureKind::PageRank, {}};

    // in-neighbor lists with precomputed 1/out-degree
    std::vector<std::vector<std::pair<NodeId, double>>> incoming(static_cast<size_t>(n));
    std::vector<NodeId> dangling;
    for (NodeId u = 0; u < n; ++u) {
        NodeId deg = g.out_degree(u);
        if (deg == 0) {
            dangling.push_back(u);
            continue;
        }
        double inv = 1.0 / static_cast<double>(deg);
        for (NodeId v : g.neighbors(u)) incoming[static_cast<size_t>(v)].push_back({u, inv});
    }

    std::vector<double> pr(static_cast<size_t>(n), 1.0 / n), next(static_cast<size_t>(n));
    std::vector<double> terms;
    const double teleport = (1.0 - damping) / n;
    double residual = 0.0;
    for (int iter = 0; iter < max_iter; ++iter) {
        terms.clear();
        for (NodeId u : dangling) terms.push_back(pr[static_cast<size_t>(u)]);
        const double dangling_share = stable_sum(terms) / n;
        for (NodeId v = 0; v < n; ++v) {
            terms.clear();
            for (auto [u, inv] : incoming[static_cast<size_t>(v)])
                terms.push_back(pr[static_cast<size_t>(u)] * inv);
            next[static_cast<size_t>(v)] =
                teleport + damping * (stable_sum(terms) + dangling_share);
        }
        terms.clear();
        for (NodeId v = 0; v < n; ++v)
            terms.push_back(std::abs(next[static_cast<size_t>(v)] - pr[static_cast<size_t>(v)]));
        residual = stable_sum(terms);
        pr.swap(next);
        if (residual <= tol) {
            terms.assign(pr.begin(), pr.end());
            double total = stable_sum(terms);
            for (double& v : pr) v /= total;
            return {MeasureKind::PageRank, std::move(pr)};
        }
    }
    throw numeric_error("pagerank: residual " + std::to_string(residual) + " after " +
                        std::to_string(max_iter) + " iterations");
}

NodeMeasure betweenness(const Graph& g, BetweennessMode mode) {
    const NodeId n = g.node_count();
    NodeMeasure out{MeasureKind::Betweenness, std::vector<double>(static_cast<size_t>(n), 0.0)};
    if (n == 0) return out;

    std::vector<NodeId> sources;
    double scale = 1.0;
    if (mode.pivots) {
        auto [count, seed] = *mode.pivots;
        if (count <= 0) throw input_error("betweenness: pivot count must be positive");
        if (count > n) throw input_error("betweenness: pivot count exceeds node count");
        sources = sample_sources(n, count, seed);
        scale = static_cast<double>(n) / count;
    } else {
        sources.resize(static_cast<size_t>(n));
        std::iota(sources.begin(), sources.end(), 0);
    }

    // exact mode on small graphs accumulates per-node term lists so the
    // result is independent of source order (and hence of node labeling)
    const bool stable_accumulate = !mode.pivots && n <= 3000;
    std::vector<std::vector<double>> acc;
    if (stable_accumulate) acc.resize(static_cast<size_t>(n));

    std::vector<std::int32_t> dist(static_cast<size_t>(n));
    std::vector<double> sigma(static_cast<size_t>(n));
    std::vector<std::vector<double>> delta_terms(static_cast<size_t>(n));
    std::vector<double> delta(static_cast<size_t>(n));
    std::vector<NodeId> order;
    order.reserve(static_cast<size_t>(n));

    for (NodeId s : sources) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        order.clear();
        dist[static_cast<size_t>(s)] = 0;
        sigma[static_cast<size_t>(s)] = 1.0;
        order.push_back(s);
        for (size_t head = 0; head < order.size(); ++head) {
            NodeId u = order[head];
            std::int32_t du = dist[static_cast<size_t>(u)];
            for (NodeId v : g.neighbors(u)) {
                if (dist[static_cast<size_t>(v)] < 0) {
                    dist[static_cast<size_t>(v)] = du + 1;
                    order.push_back(v);
                }
                if (dist[static_cast<size_t>(v)] == du + 1)
                    sigma[static_cast<size_t>(v)] += sigma[static_cast<size_t>(u)];
            }
        }

        for (NodeId v : order) delta_terms[static_cast<size_t>(v)].clear();
        for (size_t i = order.size(); i-- > 0;) {
            NodeId w = order[i];
            delta[static_cast<size_t>(w)] = stable_sum(delta_terms[static_cast<size_t>(w)]);
            if (w == s) continue;
            double coeff = (1.0 + delta[static_cast<size_t>(w)]) / sigma[static_cast<size_t>(w)];
            for (NodeId v : g.neighbors(w)) {
                // predecessors of w on shortest paths from s
                if (dist[static_cast<size_t>(v)] == dist[static_cast<size_t>(w)] - 1)
                    delta_terms[static_cast<size_t>(v)].push_back(
                        sigma[static_cast<size_t>(v)] * coeff);
            }
            if (stable_accumulate)
                acc[static_cast<size_t>(w)].push_back(delta[static_cast<size_t>(w)]);
            else
                out.values[static_cast<size_t>(w)] += delta[static_cast<size_t>(w)];
        }
    }

    if (stable_accumulate)
        for (NodeId v = 0; v < n; ++v)
            out.values[static_cast<size_t>(v)] = stable_sum(acc[static_cast<size_t>(v)]);

    const double final_scale = scale * (g.directed() ? 1.0 : 0.5);
    for (double& v : out.values) v *= final_scale;
    return out;
}

NodeMeasure closeness(const Graph& g) {
    const NodeId n = g.node_count();
    NodeMeasure out{MeasureKind::Closeness, std::vector<double>(static_cast<size_t>(n), 0.0)};
    BfsBuffers buf;
    for (NodeId i = 0; i < n; ++i) {
        bfs_into(g, i, buf);
        std::int64_t sum = 0;
        for (NodeId v : buf.order) sum += buf.dist[static_cast<size_t>(v)];
        if (sum > 0) out.values[static_cast<size_t>(i)] = 1.0 / static_cast<double>(sum);
    }
    return out;
}

double von_neumann_entropy(const Graph& g) {
    std::vector<double> terms;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        double du = static_cast<double>(g.out_degree(u));
        for (NodeId v : g.neighbors(u)) {
            if (!g.directed() && v < u) continue; // each undirected edge once
            double dv = static_cast<double>(g.out_degree(v));
            terms.push_back(1.0 / (4.0 * du * dv));
        }
    }
    return static_cast<double>(g.node_count()) / 4.0 - stable_sum(terms);
}

double structure_connectivity(const Graph& g) {
    return static_cast<double>(g.edge_count()) - static_cast<double>(g.node_count()) + 1.0;
}

double structure_connectedness(const Graph& g) {
    const double v = static_cast<double>(g.node_count());
    if (g.node_count() < 2) throw input_error("structure_connectedness: need at least 2 nodes");
    return 2.0 * static_cast<double>(g.edge_count()) / (v * (v - 1.0)) * 100.0;
}

double average_intersite_distance(const Graph& g, WienerMode mode) {
    const NodeId n = g.node_count();
    if (n == 0) return 0.0;

    std::vector<NodeId> sources;
    double scale = 1.0;
    if (mode.sampled) {
        auto [count, seed] = *mode.sampled;
        if (count <= 0) throw input_error("average_intersite_distance: count must be positive");
        if (count > n) throw input_error("average_intersite_distance: count exceeds node count");
        sources = sample_sources(n, count, seed);
        scale = static_cast<double>(n) / count;
    } else {
        sources.resize(static_cast<size_t>(n));
        std::iota(sources.begin(), sources.end(), 0);
    }

    BfsBuffers buf;
    std::int64_t total = 0; // ordered reachable pairs
    for (NodeId s : sources) {
        bfs_into(g, s, buf);
        for (NodeId v : buf.order) total += buf.dist[static_cast<size_t>(v)];
    }
    // W = total/2 over ordered pairs, result 2W/V
    return scale * static_cast<double>(total) / static_cast<double>(n);
}

double vertex_distance_information(const Graph& g) {
    std::map<NodeId, std::int64_t> counts;
    std::int64_t a_total = 0;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        NodeId deg = g.out_degree(u);
        counts[deg]++;
        a_total += deg;
    }
    if (a_total <= 1)
        throw input_error("vertex_distance_information: undefined on an edgeless graph");
    const double a = static_cast<double>(a_total);
    double sum = 0.0;
    for (auto [deg, cnt] : counts) {
        if (deg < 2) continue; // a log2 a vanishes at 0 and 1
        sum += static_cast<double>(cnt) * static_cast<double>(deg) *
               std::log2(static_cast<double>(deg));
    }
    return sum / (a * std::log2(a));
}

std::vector<double> quantile_sample(std::vector<double> values,
                                    const std::vector<double>& probs) {
    if (values.empty()) throw input_error("quantile_sample: empty values");
    std::sort(values.begin(), values.end());
    std::vector<double> out;
    out.reserve(probs.size());
    const size_t n = values.size();
    for (double q : probs) {
        if (q < 0.0 || q > 1.0) throw input_error("quantile_sample: prob outside [0,1]");
        double h = q * static_cast<double>(n - 1);
        size_t lo = static_cast<size_t>(h);
        double frac = h - static_cast<double>(lo);
        double v = values[lo];
        if (frac > 0.0 && lo + 1 < n) v += frac * (values[lo + 1] - values[lo]);
        out.push_back(v);
    }
    return out;
}

FeatureLayout layout_from_name(const std::string& name) {
    if (name == "paper34") return FeatureLayout::Paper34;
    if (name == "full39") return FeatureLayout::Full39;
    throw input_error("unknown feature layout: " + name);
}

const char* layout_name(FeatureLayout layout) {
    return layout == FeatureLayout::Paper34 ? "paper34" : "full39";
}

std::vector<std::string> layout_slot_names(FeatureLayout layout) {
    static const char* measures[] = {"clustering", "pagerank",  "betweenness",
                                     "closeness",  "in_degree", "out_degree"};
    static const char* qs[] = {"q10", "q25", "q50", "q75", "q90"};
    std::vector<std::string> names;
    for (const char* m : measures)
        for (const char* q : qs) names.push_back(std::string(m) + "_" + q);
    for (const char* s : {"in_degree_mean", "in_degree_std", "out_degree_mean", "out_degree_std"})
        names.push_back(s);
    if (layout == FeatureLayout::Full39)
        for (const char* s : {"vn_entropy", "structure_connectivity", "structure_connectedness",
                              "avg_intersite_distance", "vertex_distance_information"})
            names.push_back(s);
    return names;
}

FeatureResult extract_features(const Graph& g, FeatureLayout layout, NodeId approx_threshold,
                               std::uint64_t seed, int sample_count) {
    if (g.node_count() == 0) throw input_error("extract_features: empty graph");

    FeatureResult res;
    res.vector.layout = layout;
    res.vector.slot_names = layout_slot_names(layout);
    res.provenance.seed = seed;

    const bool approximate = g.node_count() > approx_threshold;
    const int count = std::min<int>(sample_count, g.node_count());
    res.provenance.betweenness_exact = !approximate;
    res.provenance.wiener_exact = !approximate;
    res.provenance.sample_count = approximate ? count : 0;

    Degrees deg = degrees(g);
    auto as_doubles = [](const std::vector<NodeId>& v) {
        return std::vector<double>(v.begin(), v.end());
    };
    std::vector<double> in_deg = as_doubles(deg.in), out_deg = as_doubles(deg.out);

    std::vector<std::vector<double>> node_measures;
    node_measures.push_back(local_clustering(g).values);
    node_measures.push_back(pagerank(g).values);
    node_measures.push_back(
        betweenness(g, approximate ? BetweennessMode::sampled(count, seed)
                                   : BetweennessMode::exact())
            .values);
    node_measures.push_back(closeness(g).values);
    node_measures.push_back(in_deg);
    node_measures.push_back(out_deg);

    auto& values = res.vector.values;
    for (const auto& m : node_measures)
        for (double q : quantile_sample(m, kQuantileProbs)) values.push_back(q);

    auto mean_std = [&](const std::vector<NodeId>& d) {
        std::int64_t sum = 0;
        for (NodeId v : d) sum += v;
        double mean = static_cast<double>(sum) / static_cast<double>(d.size());
        std::vector<double> sq;
        sq.reserve(d.size());
        for (NodeId v : d) {
            double r = static_cast<double>(v) - mean;
            sq.push_back(r * r);
        }
        double var = stable_sum(sq) / static_cast<double>(d.size());
        return std::pair{mean, std::sqrt(var)};
    };
    auto [in_mean, in_std] = mean_std(deg.in);
    auto [out_mean, out_std] = mean_std(deg.out);
    values.insert(values.end(), {in_mean, in_std, out_mean, out_std});

    if (layout == FeatureLayout::Full39) {
        values.push_back(von_neumann_entropy(g));
        values.push_back(structure_connectivity(g));
        values.push_back(structure_connectedness(g));
        values.push_back(average_intersite_distance(
            g, approximate ? WienerMode::estimate(count, seed) : WienerMode::exact()));
        if (g.edge_count() == 0) {
            values.push_back(0.0);
            res.provenance.vdi_defaulted = true;
        } else {
            values.push_back(vertex_distance_information(g));
        }
    }
    return res;
}

} // namespace cnet
