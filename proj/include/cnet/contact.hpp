#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cnet/graph.hpp"
#include "cnet/synthpop.hpp"

namespace cnet {

struct Contact {
    int u = 0, v = 0; // person ids, u < v
    Purpose purpose_u = Purpose::Home;
    Purpose purpose_v = Purpose::Home;
    int overlap = 0; // minutes, > 0

    auto operator<=>(const Contact&) const = default;
};

// One record per pair of visits collocated with positive time overlap.
// Contacts are kept in canonical sorted order so that downstream sampling is
// reproducible regardless of visit order.
struct ContactMultigraph {
    int node_count = 0;
    std::vector<Contact> contacts;
};

ContactMultigraph induce_contacts(const VisitSchedule& vs);

struct ActivityProbabilities {
    std::array<double, kPurposeCount> p{}; // home, work, shopping, other, school

    double& operator[](Purpose q) { return p[static_cast<int>(q)]; }
    double operator[](Purpose q) const { return p[static_cast<int>(q)]; }
};

ActivityProbabilities parse_probabilities(const std::string& csv);

// Each collocation kept independently with probability sqrt(p_a * p_b); a
// single coupled uniform per collocation makes elementwise-larger probability
// vectors produce supersets. Surviving overlaps sum into edge durations.
Graph sample_contacts(const ContactMultigraph& cm, const ActivityProbabilities& probs,
                      std::uint64_t seed);

struct Table2Entry {
    std::string name;
    ActivityProbabilities probs;
};

const std::vector<Table2Entry>& table2_configs();

std::vector<LabeledGraph> table2_suite(const ContactMultigraph& cm, std::uint64_t seed);

// counts per ceiling-rounded duration bin (bin key = upper bound in minutes)
std::map<int, std::int64_t> duration_histogram(const Graph& g, int bin_minutes = 30);

std::map<NodeId, std::int64_t> degree_histogram(const Graph& g);

void save_contacts(const std::string& path, const ContactMultigraph& cm);
ContactMultigraph load_contacts(const std::string& path);

} // namespace cnet
