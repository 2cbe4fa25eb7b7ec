#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace cnet {

enum class Purpose : int { Home = 0, Work = 1, Shopping = 2, Other = 3, School = 4 };
inline constexpr int kPurposeCount = 5;

const char* purpose_name(Purpose p);
Purpose purpose_from_name(const std::string& name);

struct Axis {
    std::string name;
    std::vector<std::string> categories;
    bool ordinal = false;
};

// Marginal targets plus a seed tensor over the axes' cross product,
// flattened row-major (last axis fastest).
struct MarginalSet {
    std::vector<Axis> axes;
    std::vector<std::vector<double>> marginals; // one vector per axis
    std::vector<double> seed_table;             // empty = all ones

    size_t cell_count() const;
    // category indices of flattened cell
    std::vector<int> unflatten(size_t cell) const;
};

// Every axis sum matched to its marginal within tol (L1) by alternating
// proportional scaling; preserves the seed's odds ratios and zeros.
std::vector<double> ipf_fit(const MarginalSet& m, double tol = 1e-9, int max_iter = 500);

enum class PersonRole { Adult, Child };

struct Person {
    int id = 0;
    int household = 0;
    int age_band = 0;
    PersonRole role = PersonRole::Adult;
};

struct Household {
    int id = 0;
    std::vector<int> category; // per-axis category index
    std::vector<int> members;  // person ids
    int home_location = -1;
};

struct Location {
    int id = 0;
    double x = 0.0, y = 0.0; // planar km
    std::array<double, kPurposeCount> capacities{};
};

struct Population {
    std::vector<Household> households;
    std::vector<Person> persons;
    std::vector<Location> locations;
};

struct Activity {
    Purpose purpose = Purpose::Home;
    int start = 0;    // minute within the week, [0, 10080)
    int duration = 0; // minutes, > 0
};

using WeeklySchedule = std::vector<Activity>; // time-ordered, non-overlapping

// Template household: demographics plus one weekly schedule per member.
struct ScheduleTemplate {
    std::vector<int> category;
    std::vector<WeeklySchedule> member_schedules;
};

struct Visit {
    int person = 0;
    int location = 0;
    Purpose purpose = Purpose::Home;
    int start = 0;
    int duration = 0;
};

struct VisitSchedule {
    std::vector<Visit> visits;
};

struct PopulationConfig {
    MarginalSet marginals;
    int size_axis = -1;          // axis whose categories carry household sizes
    std::vector<int> sizes;      // household size per size-axis category
    int age_axis = -1;           // optional axis used as the person age band
    std::vector<Location> locations;
    std::vector<ScheduleTemplate> templates;
};

PopulationConfig load_population_config(const std::string& path);

Population sample_households(const PopulationConfig& cfg, const std::vector<double>& fitted,
                             int n_households, std::uint64_t seed);

// Mahalanobis match of each household to the nearest template (covariance
// from the template set; ties to the lowest template id); members receive the
// matched household's member schedules.
std::vector<WeeklySchedule> assign_schedules(const Population& pop, const PopulationConfig& cfg);

// Round-robin over HOME-capacity locations ordered by id.
void assign_home_locations(Population& pop);

inline constexpr double kGravityCutoffKm = 80.47; // 50 miles
inline constexpr double kGravityDistanceFloorKm = 0.1;

// Gravity-model location choice: probability proportional to capacity over
// squared distance, candidates limited to the cutoff radius around the
// anchor point (all candidates if none fall inside). Work/school anchors are
// placed first relative to home; shopping/other relative to the midpoint of
// the surrounding located activities.
VisitSchedule gravity_assign(const Population& pop,
                             const std::vector<WeeklySchedule>& schedules,
                             std::uint64_t seed);

void validate_visit_schedule(const VisitSchedule& vs, const Population& pop);

void save_visits(const std::string& path, const VisitSchedule& vs);
VisitSchedule load_visits(const std::string& path);

} // namespace cnet
