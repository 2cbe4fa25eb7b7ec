#include "cnet/contact.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cnet/error.hpp"
#include "cnet/rng.hpp"

namespace cnet {

ContactMultigraph induce_contacts(const VisitSchedule& vs) {
    ContactMultigraph cm;
    for (const Visit& v : vs.visits) cm.node_count = std::max(cm.node_count, v.person + 1);

    // sweep each location's visits by start time; only visits still active at
    // the new start need the pairwise check
    std::vector<Visit> sorted = vs.visits;
    std::sort(sorted.begin(), sorted.end(), [](const Visit& a, const Visit& b) {
        if (a.location != b.location) return a.location < b.location;
        if (a.start != b.start) return a.start < b.start;
        return a.person < b.person;
    });

    std::vector<const Visit*> active;
    for (size_t i = 0; i < sorted.size(); ++i) {
        const Visit& v = sorted[i];
        if (i == 0 || sorted[i - 1].location != v.location) active.clear();
        std::erase_if(active, [&](const Visit* o) { return o->start + o->duration <= v.start; });
        for (const Visit* o : active) {
            if (o->person == v.person) continue;
            int overlap = std::min(o->start + o->duration, v.start + v.duration) -
                          std::max(o->start, v.start);
            if (overlap <= 0) continue;
            Contact c;
            if (o->person < v.person)
                c = {o->person, v.person, o->purpose, v.purpose, overlap};
            else
                c = {v.person, o->person, v.purpose, o->purpose, overlap};
            cm.contacts.push_back(c);
        }
        active.push_back(&v);
    }

    std::sort(cm.contacts.begin(), cm.contacts.end());
    return cm;
}

ActivityProbabilities parse_probabilities(const std::string& csv) {
    ActivityProbabilities probs;
    std::istringstream iss(csv);
    std::string item;
    int i = 0;
    while (std::getline(iss, item, ',')) {
        if (i >= kPurposeCount) throw input_error("expected 5 probabilities, got more");
        try {
            probs.p[i] = std::stod(item);
        } catch (const std::exception&) {
            throw input_error("bad probability value: " + item);
        }
        ++i;
    }
    if (i != kPurposeCount) throw input_error("expected 5 probabilities (home,work,shopping,other,school)");
    for (double v : probs.p)
        if (v < 0.0 || v > 1.0) throw input_error("probabilities must be in [0,1]");
    return probs;
}

Graph sample_contacts(const ContactMultigraph& cm, const ActivityProbabilities& probs,
                      std::uint64_t seed) {
    for (double v : probs.p)
        if (v < 0.0 || v > 1.0) throw input_error("probabilities must be in [0,1]");

    CounterRng rng(seed, 0x434f4e54);
    std::vector<EdgeInput> edges;
    for (const Contact& c : cm.contacts) {
        double u = rng.next_double(); // one uniform per collocation, every config
        double g = std::sqrt(probs[c.purpose_u] * probs[c.purpose_v]);
        if (u < g)
            edges.push_back({static_cast<NodeId>(c.u), static_cast<NodeId>(c.v),
                             static_cast<double>(c.overlap)});
    }
    return Graph::from_edge_list(static_cast<NodeId>(cm.node_count), edges,
                                 /*directed=*/false, /*with_durations=*/true);
}

const std::vector<Table2Entry>& table2_configs() {
    static const std::vector<Table2Entry> configs = {
        {"Full", {{1, 1, 1, 1, 1}}},
        {"Home", {{1, 0, 0, 0, 0}}},
        {"Work", {{0, 0.01, 0, 0, 0}}},
        {"Shopping", {{0, 0, 0.01, 0, 0}}},
        {"Other", {{0, 0, 0, 0.01, 0}}},
        {"School", {{0, 0, 0, 0, 0.01}}},
        {"G1", {{1, 0.01, 0, 0, 0.01}}},
        {"G2", {{1, 0.01, 0.01, 0, 0.01}}},
        {"G3", {{1, 0.01, 0.01, 0.01, 0.01}}},
        {"G4", {{1, 0.01, 0.01, 0.01, 0.1}}},
    };
    return configs;
}

std::vector<LabeledGraph> table2_suite(const ContactMultigraph& cm, std::uint64_t seed) {
    std::vector<LabeledGraph> out;
    for (const Table2Entry& cfg : table2_configs()) {
        LabeledGraph lg;
        lg.label = {cfg.name, GraphFamily::AgentSynthetic};
        lg.graph = sample_contacts(cm, cfg.probs, seed);
        lg.target_degree = lg.graph.average_degree();
        out.push_back(std::move(lg));
    }
    return out;
}

std::map<int, std::int64_t> duration_histogram(const Graph& g, int bin_minutes) {
    if (!g.has_durations()) throw input_error("duration_histogram: graph has no durations");
    if (bin_minutes <= 0) throw input_error("duration_histogram: bin size must be positive");
    std::map<int, std::int64_t> hist;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        auto nbrs = g.neighbors(u);
        auto durs = g.durations(u);
        for (size_t i = 0; i < nbrs.size(); ++i) {
            if (!g.directed() && nbrs[i] < u) continue;
            int bin = static_cast<int>(std::ceil(durs[i] / bin_minutes)) * bin_minutes;
            hist[bin]++;
        }
    }
    return hist;
}

std::map<NodeId, std::int64_t> degree_histogram(const Graph& g) {
    std::map<NodeId, std::int64_t> hist;
    for (NodeId u = 0; u < g.node_count(); ++u) hist[g.out_degree(u)]++;
    return hist;
}

void save_contacts(const std::string& path, const ContactMultigraph& cm) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write " + path);
    out << "# nodes " << cm.node_count << '\n';
    for (const Contact& c : cm.contacts)
        out << c.u << '\t' << c.v << '\t' << purpose_name(c.purpose_u) << '\t'
            << purpose_name(c.purpose_v) << '\t' << c.overlap << '\n';
}

ContactMultigraph load_contacts(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open " + path);
    ContactMultigraph cm;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream iss(line);
            std::string hash, word;
            if (iss >> hash >> word >> cm.node_count && word == "nodes") continue;
            continue;
        }
        std::istringstream iss(line);
        Contact c;
        std::string pu, pv;
        if (!(iss >> c.u >> c.v >> pu >> pv >> c.overlap))
            throw input_error(path + ":" + std::to_string(lineno) + ": malformed contact line");
        c.purpose_u = purpose_from_name(pu);
        c.purpose_v = purpose_from_name(pv);
        cm.contacts.push_back(c);
        cm.node_count = std::max({cm.node_count, c.u + 1, c.v + 1});
    }
    std::sort(cm.contacts.begin(), cm.contacts.end());
    return cm;
}

} // namespace cnet
