#include <doctest.h>

#include "cnet/error.hpp"
#include "cnet/stylized.hpp"

using namespace cnet;

namespace {

StylizedSpec er_spec(NodeId n, double p, std::uint64_t seed = 1) {
    StylizedSpec s;
    s.family = GraphFamily::ErdosRenyi;
    s.n = n;
    s.p = p;
    s.seed = seed;
    return s;
}

} // namespace

TEST_CASE("erdos-renyi degenerate probabilities") {
    Graph empty = gen_erdos_renyi(er_spec(50, 0.0));
    CHECK(empty.edge_count() == 0);
    Graph complete = gen_erdos_renyi(er_spec(30, 1.0));
    CHECK(complete.edge_count() == 30 * 29 / 2);
    for (NodeId u = 0; u < 30; ++u) CHECK(complete.out_degree(u) == 29);
}

TEST_CASE("erdos-renyi hits the expected average degree") {
    double sum = 0.0;
    for (std::uint64_t seed = 0; seed < 5; ++seed)
        sum += gen_erdos_renyi(er_spec(10000, 0.0015, seed)).average_degree();
    CHECK(sum / 5 == doctest::Approx(15.0).epsilon(0.05));
}

TEST_CASE("erdos-renyi average degree is monotone in p") {
    double prev = -1.0;
    for (double p : {0.0005, 0.0015, 0.0040}) {
        double avg = 0.0;
        for (std::uint64_t seed = 0; seed < 3; ++seed)
            avg += gen_erdos_renyi(er_spec(10000, p, seed)).average_degree();
        CHECK(avg > prev);
        prev = avg;
    }
}

TEST_CASE("newman-watts p=0 gives a pure ring lattice") {
    StylizedSpec s;
    s.family = GraphFamily::NewmanWatts;
    s.n = 100;
    s.k = 6;
    s.p = 0.0;
    Graph g = gen_newman_watts(s);
    for (NodeId u = 0; u < 100; ++u) CHECK(g.out_degree(u) == 6);
}

TEST_CASE("newman-watts rejects odd k") {
    StylizedSpec s;
    s.family = GraphFamily::NewmanWatts;
    s.n = 10000;
    s.k = 43;
    s.p = 0.5;
    CHECK_THROWS_AS(gen_newman_watts(s), input_error);
}

TEST_CASE("newman-watts average degree approaches k(1+p)") {
    StylizedSpec s;
    s.family = GraphFamily::NewmanWatts;
    s.n = 10000;
    s.k = 10;
    s.p = 0.5;
    s.seed = 3;
    CHECK(gen_newman_watts(s).average_degree() == doctest::Approx(15.0).epsilon(0.05));
}

TEST_CASE("random-regular output has zero degree variance") {
    StylizedSpec s;
    s.family = GraphFamily::RandomRegular;
    s.n = 1000;
    s.d = 7;
    s.seed = 5;
    Graph g = gen_random_regular(s);
    for (NodeId u = 0; u < s.n; ++u) CHECK(g.out_degree(u) == 7);
}

TEST_CASE("random-regular d=0 yields the empty graph") {
    StylizedSpec s;
    s.family = GraphFamily::RandomRegular;
    s.n = 10;
    s.d = 0;
    CHECK(gen_random_regular(s).edge_count() == 0);
}

TEST_CASE("random-regular rejects odd n*d") {
    StylizedSpec s;
    s.family = GraphFamily::RandomRegular;
    s.n = 5;
    s.d = 3;
    CHECK_THROWS_AS(gen_random_regular(s), input_error);
}

TEST_CASE("powerlaw-cluster average degree is about 2m") {
    StylizedSpec s;
    s.family = GraphFamily::PowerlawCluster;
    s.n = 10000;
    s.m = 8;
    s.p = 0.5;
    double avg = 0.0;
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        s.seed = seed;
        avg += gen_powerlaw_cluster(s).average_degree();
    }
    CHECK(avg / 3 == doctest::Approx(16.0).epsilon(0.10));
}

TEST_CASE("powerlaw-cluster p=0 still grows m edges per node") {
    StylizedSpec s;
    s.family = GraphFamily::PowerlawCluster;
    s.n = 500;
    s.m = 3;
    s.p = 0.0;
    Graph g = gen_powerlaw_cluster(s);
    CHECK(g.edge_count() == (500 - 3) * 3);
}

TEST_CASE("powerlaw-cluster rejects m out of range") {
    StylizedSpec s;
    s.family = GraphFamily::PowerlawCluster;
    s.n = 5;
    s.m = 5;
    CHECK_THROWS_AS(gen_powerlaw_cluster(s), input_error);
}

TEST_CASE("generators are deterministic in spec+seed") {
    StylizedSpec s;
    s.family = GraphFamily::PowerlawCluster;
    s.n = 300;
    s.m = 4;
    s.p = 0.5;
    s.seed = 42;
    CHECK(gen_powerlaw_cluster(s) == gen_powerlaw_cluster(s));

    s.family = GraphFamily::ErdosRenyi;
    s.p = 0.01;
    CHECK(gen_erdos_renyi(s) == gen_erdos_renyi(s));
    s.seed = 43;
    CHECK_FALSE(gen_erdos_renyi(s) == gen_erdos_renyi(er_spec(300, 0.01, 42)));
}

TEST_CASE("table3 suite has twelve graphs of 10000 nodes") {
    auto suite = table3_suite(9);
    REQUIRE(suite.size() == 12);
    for (const auto& lg : suite) CHECK(lg.graph.node_count() == 10000);
}

TEST_CASE("table3 ER target-40 uses the corrected probability") {
    auto suite = table3_suite(10);
    for (const auto& lg : suite)
        if (lg.label.name == "er-40")
            CHECK(lg.graph.average_degree() == doctest::Approx(40.0).epsilon(0.10));
}
