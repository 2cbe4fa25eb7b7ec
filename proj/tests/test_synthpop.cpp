#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>

#include "cnet/error.hpp"
#include "cnet/synthpop.hpp"

using namespace cnet;
namespace fs = std::filesystem;

namespace {

MarginalSet two_by_two(std::vector<double> rows, std::vector<double> cols,
                       std::vector<double> seed = {}) {
    MarginalSet m;
    m.axes = {{"r", {"a", "b"}, false}, {"c", {"x", "y"}, false}};
    m.marginals = {std::move(rows), std::move(cols)};
    m.seed_table = std::move(seed);
    return m;
}

Location loc(int id, double x, double y, Purpose p, double cap) {
    Location l;
    l.id = id;
    l.x = x;
    l.y = y;
    l.capacities[static_cast<int>(p)] = cap;
    return l;
}

std::string temp_path(const std::string& name) {
    return (fs::temp_directory_path() / name).string();
}

} // namespace

TEST_CASE("ipf on symmetric 2x2 marginals gives uniform cells") {
    auto x = ipf_fit(two_by_two({1, 1}, {1, 1}));
    for (double v : x) CHECK(v == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("ipf matches marginals and preserves the seed odds ratio") {
    auto x = ipf_fit(two_by_two({3, 7}, {4, 6}, {1, 2, 3, 4}));
    CHECK(x[0] + x[1] == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(x[2] + x[3] == doctest::Approx(7.0).epsilon(1e-9));
    CHECK(x[0] + x[2] == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(x[1] + x[3] == doctest::Approx(6.0).epsilon(1e-9));
    CHECK(x[0] * x[3] / (x[1] * x[2]) == doctest::Approx(4.0 / 6.0).epsilon(1e-6));
}

TEST_CASE("ipf keeps structural zeros at zero") {
    auto x = ipf_fit(two_by_two({3, 7}, {4, 6}, {0, 1, 1, 1}));
    CHECK(x[0] == 0.0);
    CHECK(x[0] + x[1] == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("ipf rejects disagreeing marginal totals") {
    CHECK_THROWS_AS(ipf_fit(two_by_two({3, 7}, {4, 5})), input_error);
}

TEST_CASE("ipf reports marginals without seed support") {
    CHECK_THROWS_AS(ipf_fit(two_by_two({3, 7}, {4, 6}, {0, 1, 0, 1})), numeric_error);
}

TEST_CASE("ipf on three axes converges") {
    MarginalSet m;
    m.axes = {{"a", {"0", "1"}, false}, {"b", {"0", "1", "2"}, false}, {"c", {"0", "1"}, false}};
    m.marginals = {{40, 60}, {20, 30, 50}, {45, 55}};
    auto x = ipf_fit(m, 1e-9, 500);
    double s0 = 0.0;
    for (size_t cell = 0; cell < x.size(); ++cell)
        if (m.unflatten(cell)[1] == 2) s0 += x[cell];
    CHECK(s0 == doctest::Approx(50.0).epsilon(1e-9));
}

TEST_CASE("sample_households with a point mass reproduces that category") {
    PopulationConfig cfg;
    cfg.marginals = two_by_two({0, 1}, {1, 0});
    cfg.size_axis = 0;
    cfg.sizes = {1, 3};
    Population pop = sample_households(cfg, {0, 0, 1, 0}, 10, 7);
    CHECK(pop.households.size() == 10);
    CHECK(pop.persons.size() == 30);
    for (const Household& hh : pop.households) {
        CHECK(hh.category == std::vector<int>{1, 0});
        REQUIRE(hh.members.size() == 3);
        CHECK(pop.persons[hh.members[0]].role == PersonRole::Adult);
        CHECK(pop.persons[hh.members[1]].role == PersonRole::Adult);
        CHECK(pop.persons[hh.members[2]].role == PersonRole::Child);
    }
}

TEST_CASE("sample_households frequencies follow the fitted tensor") {
    PopulationConfig cfg;
    cfg.marginals = two_by_two({1, 1}, {1, 1});
    Population pop = sample_households(cfg, {0.5, 0, 0.5, 0}, 4000, 21);
    int first = 0;
    for (const Household& hh : pop.households)
        if (hh.category[0] == 0) ++first;
    // binomial(4000, 0.5): 3 sigma is about 95
    CHECK(std::abs(first - 2000) < 100);
}

TEST_CASE("sample_households rejects an all-zero tensor") {
    PopulationConfig cfg;
    cfg.marginals = two_by_two({1, 1}, {1, 1});
    CHECK_THROWS_AS(sample_households(cfg, {0, 0, 0, 0}, 5, 1), input_error);
}

TEST_CASE("schedule matching picks the exact-category template") {
    PopulationConfig cfg;
    cfg.marginals = two_by_two({1, 1}, {1, 1});
    WeeklySchedule sched_a{{Purpose::Work, 540, 60}};
    WeeklySchedule sched_b{{Purpose::School, 540, 60}};
    cfg.templates = {{{0, 0}, {sched_a}}, {{1, 1}, {sched_b}}};

    Population pop;
    pop.households = {{0, {1, 1}, {0}, -1}};
    pop.persons = {{0, 0, 0, PersonRole::Adult}};
    auto out = assign_schedules(pop, cfg);
    REQUIRE(out.size() == 1);
    CHECK(out[0][0].purpose == Purpose::School);
}

TEST_CASE("schedule matching breaks ties toward the lowest template id") {
    PopulationConfig cfg;
    cfg.marginals = two_by_two({1, 1}, {1, 1});
    WeeklySchedule sched_a{{Purpose::Work, 540, 60}};
    WeeklySchedule sched_b{{Purpose::School, 540, 60}};
    cfg.templates = {{{0, 0}, {sched_a}}, {{0, 0}, {sched_b}}};

    Population pop;
    pop.households = {{0, {0, 0}, {0}, -1}};
    pop.persons = {{0, 0, 0, PersonRole::Adult}};
    CHECK(assign_schedules(pop, cfg)[0][0].purpose == Purpose::Work);
}

TEST_CASE("members cycle through the matched template's member schedules") {
    PopulationConfig cfg;
    cfg.marginals = two_by_two({1, 1}, {1, 1});
    WeeklySchedule sched_a{{Purpose::Work, 540, 60}};
    WeeklySchedule sched_b{{Purpose::School, 540, 60}};
    cfg.templates = {{{0, 0}, {sched_a, sched_b}}};

    Population pop;
    pop.households = {{0, {0, 0}, {0, 1, 2}, -1}};
    pop.persons = {{0, 0, 0, PersonRole::Adult},
                   {1, 0, 0, PersonRole::Adult},
                   {2, 0, 0, PersonRole::Child}};
    auto out = assign_schedules(pop, cfg);
    CHECK(out[0][0].purpose == Purpose::Work);
    CHECK(out[1][0].purpose == Purpose::School);
    CHECK(out[2][0].purpose == Purpose::Work);
}

TEST_CASE("home assignment is round-robin over HOME capacity") {
    Population pop;
    pop.locations = {loc(0, 0, 0, Purpose::Home, 2), loc(1, 1, 0, Purpose::Home, 2)};
    for (int h = 0; h < 4; ++h) pop.households.push_back({h, {}, {}, -1});
    assign_home_locations(pop);
    CHECK(pop.households[0].home_location == 0);
    CHECK(pop.households[1].home_location == 1);
    CHECK(pop.households[2].home_location == 0);
    CHECK(pop.households[3].home_location == 1);
}

TEST_CASE("home assignment fills a single location to capacity") {
    Population pop;
    pop.locations = {loc(0, 0, 0, Purpose::Home, 3)};
    for (int h = 0; h < 3; ++h) pop.households.push_back({h, {}, {}, -1});
    assign_home_locations(pop);
    for (const Household& hh : pop.households) CHECK(hh.home_location == 0);
}

TEST_CASE("home assignment rejects capacity shortfalls") {
    Population pop;
    pop.locations = {loc(0, 0, 0, Purpose::Home, 1)};
    pop.households = {{0, {}, {}, -1}, {1, {}, {}, -1}};
    CHECK_THROWS_AS(assign_home_locations(pop), input_error);
}

TEST_CASE("gravity choice frequencies follow capacity over squared distance") {
    Population pop;
    pop.locations = {loc(0, 0, 0, Purpose::Home, 1 << 20),
                     loc(1, 1, 0, Purpose::Shopping, 4),
                     loc(2, -1, 0, Purpose::Shopping, 1)};
    const int n = 20000;
    std::vector<WeeklySchedule> schedules;
    for (int h = 0; h < n; ++h) {
        pop.households.push_back({h, {}, {h}, 0});
        pop.persons.push_back({h, h, 0, PersonRole::Adult});
        schedules.push_back({{Purpose::Shopping, 600, 60}});
    }
    VisitSchedule vs = gravity_assign(pop, schedules, 13);
    REQUIRE(vs.visits.size() == static_cast<size_t>(n));
    int near = 0;
    for (const Visit& v : vs.visits)
        if (v.location == 1) ++near;
    // expected share 0.8; 3 sigma of binomial(20000, 0.8) is about 170
    CHECK(std::abs(near - 16000) < 200);
}

TEST_CASE("gravity drops candidates beyond the cutoff when closer ones exist") {
    Population pop;
    pop.locations = {loc(0, 0, 0, Purpose::Home, 10),
                     loc(1, 1, 0, Purpose::Shopping, 1),
                     loc(2, 100, 0, Purpose::Shopping, 1e9)};
    std::vector<WeeklySchedule> schedules;
    for (int h = 0; h < 50; ++h) {
        pop.households.push_back({h, {}, {h}, 0});
        pop.persons.push_back({h, h, 0, PersonRole::Adult});
        schedules.push_back({{Purpose::Shopping, 600, 60}});
    }
    VisitSchedule vs = gravity_assign(pop, schedules, 3);
    for (const Visit& v : vs.visits) CHECK(v.location == 1);
}

TEST_CASE("gravity falls back to all candidates when none are within the cutoff") {
    Population pop;
    pop.locations = {loc(0, 0, 0, Purpose::Home, 1), loc(1, 200, 0, Purpose::Work, 5)};
    pop.households = {{0, {}, {0}, 0}};
    pop.persons = {{0, 0, 0, PersonRole::Adult}};
    std::vector<WeeklySchedule> schedules{{{Purpose::Work, 540, 480}}};
    VisitSchedule vs = gravity_assign(pop, schedules, 1);
    REQUIRE(vs.visits.size() == 1);
    CHECK(vs.visits[0].location == 1);
}

TEST_CASE("work anchors are reused across the week") {
    Population pop;
    pop.locations = {loc(0, 0, 0, Purpose::Home, 1),
                     loc(1, 2, 0, Purpose::Work, 3),
                     loc(2, -2, 0, Purpose::Work, 3)};
    pop.households = {{0, {}, {0}, 0}};
    pop.persons = {{0, 0, 0, PersonRole::Adult}};
    WeeklySchedule week;
    for (int day = 0; day < 5; ++day) week.push_back({Purpose::Work, day * 1440 + 540, 480});
    VisitSchedule vs = gravity_assign(pop, {week}, 77);
    REQUIRE(vs.visits.size() == 5);
    for (const Visit& v : vs.visits) CHECK(v.location == vs.visits[0].location);
}

TEST_CASE("validate_visit_schedule rejects overlapping visits") {
    Population pop;
    pop.locations = {loc(0, 0, 0, Purpose::Home, 1)};
    pop.persons = {{0, 0, 0, PersonRole::Adult}};
    VisitSchedule vs;
    vs.visits = {{0, 0, Purpose::Home, 0, 120}, {0, 0, Purpose::Home, 60, 120}};
    CHECK_THROWS_AS(validate_visit_schedule(vs, pop), input_error);
    vs.visits[1].start = 120;
    CHECK_NOTHROW(validate_visit_schedule(vs, pop));
}

TEST_CASE("visits survive a save/load round trip") {
    VisitSchedule vs;
    vs.visits = {{0, 3, Purpose::Work, 540, 480}, {1, 0, Purpose::Home, 0, 540}};
    std::string path = temp_path("cnet_visits.tsv");
    save_visits(path, vs);
    VisitSchedule back = load_visits(path);
    REQUIRE(back.visits.size() == 2);
    CHECK(back.visits[0].purpose == Purpose::Work);
    CHECK(back.visits[1].duration == 540);
    fs::remove(path);
}

TEST_CASE("population config parsing") {
    std::string path = temp_path("cnet_popcfg.json");
    {
        std::ofstream out(path);
        out << R"({
  "axes": [
    {"name": "hh_size", "categories": ["1", "2"], "ordinal": true},
    {"name": "income", "categories": ["low", "high"]}
  ],
  "marginals": {"hh_size": [6, 4], "income": [5, 5]},
  "size_axis": "hh_size",
  "sizes": [1, 2],
  "locations": [
    {"x": 0.0, "y": 0.0, "capacities": {"HOME": 10}},
    {"x": 1.0, "y": 2.0, "capacities": {"WORK": 20, "SHOPPING": 5}}
  ],
  "templates": [
    {"category": {"hh_size": "1", "income": "low"},
     "members": [{"days": [[["HOME", 0, 540], ["WORK", 540, 480]], [], [], [], [], [], []]}]}
  ]
})";
    }
    PopulationConfig cfg = load_population_config(path);
    CHECK(cfg.marginals.axes.size() == 2);
    CHECK(cfg.marginals.axes[0].ordinal);
    CHECK(cfg.size_axis == 0);
    CHECK(cfg.sizes == std::vector<int>{1, 2});
    REQUIRE(cfg.locations.size() == 2);
    CHECK(cfg.locations[1].capacities[static_cast<int>(Purpose::Work)] == 20);
    REQUIRE(cfg.templates.size() == 1);
    REQUIRE(cfg.templates[0].member_schedules.size() == 1);
    const WeeklySchedule& s = cfg.templates[0].member_schedules[0];
    REQUIRE(s.size() == 2);
    CHECK(s[1].purpose == Purpose::Work);
    CHECK(s[1].start == 540);
    fs::remove(path);
}

TEST_CASE("population config rejects activities spanning midnight") {
    std::string path = temp_path("cnet_popcfg_bad.json");
    {
        std::ofstream out(path);
        out << R"({
  "axes": [{"name": "a", "categories": ["x"]}],
  "marginals": {"a": [1]},
  "locations": [],
  "templates": [
    {"category": {"a": "x"},
     "members": [{"days": [[["HOME", 1200, 300]], [], [], [], [], [], []]}]}
  ]
})";
    }
    CHECK_THROWS_AS(load_population_config(path), input_error);
    fs::remove(path);
}
