#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <set>

#include "cnet/contact.hpp"
#include "cnet/error.hpp"

using namespace cnet;
namespace fs = std::filesystem;

namespace {

std::set<std::pair<NodeId, NodeId>> edge_set(const Graph& g) {
    std::set<std::pair<NodeId, NodeId>> edges;
    for (NodeId u = 0; u < g.node_count(); ++u)
        for (NodeId v : g.neighbors(u))
            if (u < v) edges.insert({u, v});
    return edges;
}

ActivityProbabilities probs_all(double p) {
    ActivityProbabilities a;
    a.p.fill(p);
    return a;
}

// random multigraph over n persons with mixed purposes
ContactMultigraph random_multigraph(int n, int contacts, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> person(0, n - 1);
    std::uniform_int_distribution<int> purpose(0, kPurposeCount - 1);
    std::uniform_int_distribution<int> overlap(1, 300);
    ContactMultigraph cm;
    cm.node_count = n;
    for (int i = 0; i < contacts; ++i) {
        int u = person(rng), v = person(rng);
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        cm.contacts.push_back({u, v, static_cast<Purpose>(purpose(rng)),
                               static_cast<Purpose>(purpose(rng)), overlap(rng)});
    }
    std::sort(cm.contacts.begin(), cm.contacts.end());
    return cm;
}

} // namespace

TEST_CASE("collocated overlapping visits yield one contact with the overlap minutes") {
    VisitSchedule vs;
    vs.visits = {{0, 5, Purpose::Work, 480, 600}, {1, 5, Purpose::Work, 720, 600}};
    ContactMultigraph cm = induce_contacts(vs);
    REQUIRE(cm.contacts.size() == 1);
    CHECK(cm.contacts[0].u == 0);
    CHECK(cm.contacts[0].v == 1);
    CHECK(cm.contacts[0].overlap == 360);
}

TEST_CASE("touching intervals do not make a contact") {
    VisitSchedule vs;
    vs.visits = {{0, 5, Purpose::Work, 480, 120}, {1, 5, Purpose::Work, 600, 120}};
    CHECK(induce_contacts(vs).contacts.empty());
}

TEST_CASE("different locations never make a contact") {
    VisitSchedule vs;
    vs.visits = {{0, 1, Purpose::Work, 480, 600}, {1, 2, Purpose::Work, 480, 600}};
    CHECK(induce_contacts(vs).contacts.empty());
}

TEST_CASE("contact induction ignores visit order") {
    VisitSchedule vs;
    vs.visits = {{0, 5, Purpose::Work, 480, 600},
                 {1, 5, Purpose::Shopping, 720, 600},
                 {2, 5, Purpose::Work, 600, 60},
                 {2, 7, Purpose::Home, 0, 400}};
    ContactMultigraph a = induce_contacts(vs);
    std::reverse(vs.visits.begin(), vs.visits.end());
    ContactMultigraph b = induce_contacts(vs);
    CHECK(a.contacts == b.contacts);
    CHECK(a.node_count == b.node_count);
}

TEST_CASE("probability parsing") {
    ActivityProbabilities p = parse_probabilities("1,0.01,0,0.5,0.1");
    CHECK(p[Purpose::Home] == 1.0);
    CHECK(p[Purpose::Work] == 0.01);
    CHECK(p[Purpose::Other] == 0.5);
    CHECK_THROWS_AS(parse_probabilities("1,2"), input_error);
    CHECK_THROWS_AS(parse_probabilities("1,1,1,1,1.5"), input_error);
}

TEST_CASE("all-one probabilities keep every contact, all-zero keeps none") {
    ContactMultigraph cm = random_multigraph(40, 300, 9);
    Graph full = sample_contacts(cm, probs_all(1.0), 4);
    Graph none = sample_contacts(cm, probs_all(0.0), 4);
    std::set<std::pair<NodeId, NodeId>> expected;
    for (const Contact& c : cm.contacts) expected.insert({c.u, c.v});
    CHECK(edge_set(full) == expected);
    CHECK(none.edge_count() == 0);
    CHECK(full.node_count() == 40);
}

TEST_CASE("kept edges sum their contact overlaps into durations") {
    ContactMultigraph cm;
    cm.node_count = 2;
    cm.contacts = {{0, 1, Purpose::Home, Purpose::Home, 100},
                   {0, 1, Purpose::Work, Purpose::Work, 40}};
    Graph g = sample_contacts(cm, probs_all(1.0), 0);
    REQUIRE(g.edge_count() == 1);
    CHECK(g.durations(0)[0] == doctest::Approx(140.0));
}

TEST_CASE("uniform-purpose retention rate matches p") {
    ContactMultigraph cm;
    const int n = 20000;
    cm.node_count = 2 * n;
    for (int i = 0; i < n; ++i)
        cm.contacts.push_back({2 * i, 2 * i + 1, Purpose::Work, Purpose::Work, 30});
    ActivityProbabilities p;
    p[Purpose::Work] = 0.25;
    Graph g = sample_contacts(cm, p, 11);
    // binomial(20000, 0.25): 3 sigma is about 184
    CHECK(std::abs(static_cast<double>(g.edge_count()) - 5000.0) < 200.0);
}

TEST_CASE("elementwise-larger probabilities produce edge supersets") {
    ContactMultigraph cm = random_multigraph(60, 800, 31);
    ActivityProbabilities lo;
    lo.p = {1.0, 0.01, 0.0, 0.0, 0.01};
    ActivityProbabilities hi;
    hi.p = {1.0, 0.05, 0.2, 0.01, 0.1};
    auto e_lo = edge_set(sample_contacts(cm, lo, 5));
    auto e_hi = edge_set(sample_contacts(cm, hi, 5));
    auto e_full = edge_set(sample_contacts(cm, probs_all(1.0), 5));
    CHECK(std::includes(e_hi.begin(), e_hi.end(), e_lo.begin(), e_lo.end()));
    CHECK(std::includes(e_full.begin(), e_full.end(), e_hi.begin(), e_hi.end()));
}

TEST_CASE("sampling is deterministic in the seed") {
    ContactMultigraph cm = random_multigraph(30, 200, 8);
    ActivityProbabilities p = probs_all(0.5);
    CHECK(sample_contacts(cm, p, 42) == sample_contacts(cm, p, 42));
}

TEST_CASE("table2 configs cover the ten named samplings") {
    const auto& cfgs = table2_configs();
    REQUIRE(cfgs.size() == 10);
    CHECK(cfgs[0].name == "Full");
    CHECK(cfgs[0].probs.p == std::array<double, 5>{1, 1, 1, 1, 1});
    CHECK(cfgs.back().name == "G4");
    CHECK(cfgs.back().probs.p == std::array<double, 5>{1, 0.01, 0.01, 0.01, 0.1});
}

TEST_CASE("table2 suite is nested from home through g4 to full") {
    ContactMultigraph cm = random_multigraph(80, 4000, 77);
    auto suite = table2_suite(cm, 12);
    REQUIRE(suite.size() == 10);
    auto find = [&](const std::string& name) -> const Graph& {
        for (const auto& lg : suite)
            if (lg.label.name == name) return lg.graph;
        REQUIRE(false);
        return suite[0].graph;
    };
    std::vector<std::string> chain{"Home", "G1", "G2", "G3", "G4", "Full"};
    for (size_t i = 1; i < chain.size(); ++i) {
        auto inner = edge_set(find(chain[i - 1]));
        auto outer = edge_set(find(chain[i]));
        CHECK(std::includes(outer.begin(), outer.end(), inner.begin(), inner.end()));
    }
}

TEST_CASE("sampled durations never exceed the full graph's") {
    ContactMultigraph cm = random_multigraph(50, 1500, 19);
    Graph full = sample_contacts(cm, probs_all(1.0), 3);
    ActivityProbabilities mid;
    mid.p = {1.0, 0.3, 0.3, 0.3, 0.3};
    Graph part = sample_contacts(cm, mid, 3);
    for (NodeId u = 0; u < part.node_count(); ++u) {
        auto nbrs = part.neighbors(u);
        auto durs = part.durations(u);
        for (size_t i = 0; i < nbrs.size(); ++i) {
            auto fn = full.neighbors(u);
            auto it = std::lower_bound(fn.begin(), fn.end(), nbrs[i]);
            REQUIRE((it != fn.end() && *it == nbrs[i]));
            CHECK(durs[i] <= full.durations(u)[it - fn.begin()] + 1e-9);
        }
    }
}

TEST_CASE("duration histogram uses ceiling binning") {
    ContactMultigraph cm;
    cm.node_count = 6;
    cm.contacts = {{0, 1, Purpose::Home, Purpose::Home, 30},
                   {2, 3, Purpose::Home, Purpose::Home, 31},
                   {4, 5, Purpose::Home, Purpose::Home, 1}};
    Graph g = sample_contacts(cm, probs_all(1.0), 0);
    auto h = duration_histogram(g, 30);
    CHECK(h[30] == 2);
    CHECK(h[60] == 1);
}

TEST_CASE("duration histogram requires durations") {
    Graph g = Graph::from_edge_list(2, std::vector<EdgeInput>{{0, 1}}, false);
    CHECK_THROWS_AS(duration_histogram(g), input_error);
}

TEST_CASE("degree histogram on K3 and a star") {
    Graph k3 = Graph::from_edge_list(3, std::vector<EdgeInput>{{0, 1}, {1, 2}, {0, 2}}, false);
    auto hk = degree_histogram(k3);
    CHECK(hk[2] == 3);
    Graph s4 =
        Graph::from_edge_list(5, std::vector<EdgeInput>{{0, 1}, {0, 2}, {0, 3}, {0, 4}}, false);
    auto hs = degree_histogram(s4);
    CHECK(hs[1] == 4);
    CHECK(hs[4] == 1);
}

TEST_CASE("contact multigraphs survive a save/load round trip") {
    ContactMultigraph cm = random_multigraph(25, 120, 4);
    std::string path = (fs::temp_directory_path() / "cnet_contacts.tsv").string();
    save_contacts(path, cm);
    ContactMultigraph back = load_contacts(path);
    CHECK(back.node_count == cm.node_count);
    CHECK(back.contacts == cm.contacts);
    fs::remove(path);
}
