#include "cnet/synthpop.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "cnet/error.hpp"
#include "cnet/rng.hpp"

namespace cnet {

using json = nlohmann::json;

const char* purpose_name(Purpose p) {
    switch (p) {
    case Purpose::Home: return "HOME";
    case Purpose::Work: return "WORK";
    case Purpose::Shopping: return "SHOPPING";
    case Purpose::Other: return "OTHER";
    case Purpose::School: return "SCHOOL";
    }
    return "?";
}

Purpose purpose_from_name(const std::string& name) {
    for (int i = 0; i < kPurposeCount; ++i)
        if (name == purpose_name(static_cast<Purpose>(i))) return static_cast<Purpose>(i);
    throw input_error("unknown activity purpose: " + name);
}

size_t MarginalSet::cell_count() const {
    size_t n = 1;
    for (const Axis& a : axes) n *= a.categories.size();
    return n;
}

std::vector<int> MarginalSet::unflatten(size_t cell) const {
    std::vector<int> idx(axes.size());
    for (size_t a = axes.size(); a-- > 0;) {
        size_t k = axes[a].categories.size();
        idx[a] = static_cast<int>(cell % k);
        cell /= k;
    }
    return idx;
}

std::vector<double> ipf_fit(const MarginalSet& m, double tol, int max_iter) {
    const size_t n_axes = m.axes.size();
    if (n_axes == 0) throw input_error("ipf: no axes");
    for (size_t a = 0; a < n_axes; ++a)
        if (m.marginals.at(a).size() != m.axes[a].categories.size())
            throw input_error("ipf: marginal length mismatch on axis " + m.axes[a].name);

    const double total = std::accumulate(m.marginals[0].begin(), m.marginals[0].end(), 0.0);
    for (size_t a = 1; a < n_axes; ++a) {
        double t = std::accumulate(m.marginals[a].begin(), m.marginals[a].end(), 0.0);
        if (std::abs(t - total) > std::max(tol, 1e-9 * std::abs(total)))
            throw input_error("ipf: marginal totals disagree (" + std::to_string(total) +
                              " vs " + std::to_string(t) + " on axis " + m.axes[a].name + ")");
    }

    const size_t cells = m.cell_count();
    std::vector<double> x = m.seed_table;
    if (x.empty()) x.assign(cells, 1.0);
    if (x.size() != cells) throw input_error("ipf: seed table size mismatch");
    for (double v : x)
        if (v < 0.0) throw input_error("ipf: negative seed cell");

    // stride of each axis in the row-major flattening
    std::vector<size_t> stride(n_axes, 1);
    for (size_t a = n_axes - 1; a-- > 0;)
        stride[a] = stride[a + 1] * m.axes[a + 1].categories.size();

    auto axis_sums = [&](size_t a) {
        std::vector<double> sums(m.axes[a].categories.size(), 0.0);
        for (size_t c = 0; c < cells; ++c)
            sums[(c / stride[a]) % m.axes[a].categories.size()] += x[c];
        return sums;
    };

    double residual = 0.0;
    for (int iter = 0; iter < max_iter; ++iter) {
        for (size_t a = 0; a < n_axes; ++a) {
            std::vector<double> sums = axis_sums(a);
            const size_t k = m.axes[a].categories.size();
            std::vector<double> factor(k, 1.0);
            for (size_t i = 0; i < k; ++i) {
                if (sums[i] > 0.0)
                    factor[i] = m.marginals[a][i] / sums[i];
                else if (m.marginals[a][i] > tol)
                    throw numeric_error("ipf: marginal " + m.axes[a].name + "[" +
                                        std::to_string(i) + "] has no seed support");
            }
            for (size_t c = 0; c < cells; ++c) x[c] *= factor[(c / stride[a]) % k];
        }
        residual = 0.0;
        for (size_t a = 0; a < n_axes; ++a) {
            std::vector<double> sums = axis_sums(a);
            double l1 = 0.0;
            for (size_t i = 0; i < sums.size(); ++i)
                l1 += std::abs(sums[i] - m.marginals[a][i]);
            residual = std::max(residual, l1);
        }
        if (residual <= tol) return x;
    }
    throw numeric_error("ipf: not converged after " + std::to_string(max_iter) +
                        " iterations, residual " + std::to_string(residual));
}

Population sample_households(const PopulationConfig& cfg, const std::vector<double>& fitted,
                             int n_households, std::uint64_t seed) {
    const MarginalSet& m = cfg.marginals;
    if (fitted.size() != m.cell_count()) throw input_error("sample_households: tensor size mismatch");
    std::vector<double> cum(fitted.size());
    std::partial_sum(fitted.begin(), fitted.end(), cum.begin());
    const double total = cum.empty() ? 0.0 : cum.back();
    if (!(total > 0.0)) throw input_error("sample_households: tensor has no mass");

    Population pop;
    pop.locations = cfg.locations;
    for (int h = 0; h < n_households; ++h) {
        CounterRng rng(seed, static_cast<std::uint64_t>(h));
        double u = rng.next_double() * total;
        size_t cell = static_cast<size_t>(
            std::lower_bound(cum.begin(), cum.end(), u) - cum.begin());
        if (cell >= fitted.size()) cell = fitted.size() - 1;

        Household hh;
        hh.id = h;
        hh.category = m.unflatten(cell);
        int size = 1;
        if (cfg.size_axis >= 0) size = cfg.sizes.at(static_cast<size_t>(hh.category[cfg.size_axis]));
        int age_band = cfg.age_axis >= 0 ? hh.category[cfg.age_axis] : 0;
        for (int i = 0; i < size; ++i) {
            Person p;
            p.id = static_cast<int>(pop.persons.size());
            p.household = h;
            p.age_band = age_band;
            p.role = i < 2 ? PersonRole::Adult : PersonRole::Child;
            hh.members.push_back(p.id);
            pop.persons.push_back(p);
        }
        pop.households.push_back(std::move(hh));
    }
    return pop;
}

namespace {

// categorical axes one-hot, ordinal axes as integer codes
Eigen::VectorXd encode_category(const MarginalSet& m, const std::vector<int>& category) {
    size_t dim = 0;
    for (const Axis& a : m.axes) dim += a.ordinal ? 1 : a.categories.size();
    Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
    Eigen::Index at = 0;
    for (size_t a = 0; a < m.axes.size(); ++a) {
        if (m.axes[a].ordinal) {
            v[at++] = static_cast<double>(category[a]);
        } else {
            v[at + category[a]] = 1.0;
            at += static_cast<Eigen::Index>(m.axes[a].categories.size());
        }
    }
    return v;
}

} // namespace

std::vector<WeeklySchedule> assign_schedules(const Population& pop, const PopulationConfig& cfg) {
    const auto& templates = cfg.templates;
    if (templates.empty()) throw input_error("assign_schedules: no templates");

    std::vector<Eigen::VectorXd> enc;
    enc.reserve(templates.size());
    for (const ScheduleTemplate& t : templates)
        enc.push_back(encode_category(cfg.marginals, t.category));
    const Eigen::Index dim = enc[0].size();

    Eigen::VectorXd mean = Eigen::VectorXd::Zero(dim);
    for (const auto& e : enc) mean += e;
    mean /= static_cast<double>(enc.size());
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(dim, dim);
    for (const auto& e : enc) {
        Eigen::VectorXd d = e - mean;
        cov += d * d.transpose();
    }
    cov /= static_cast<double>(enc.size());

    Eigen::MatrixXd prec;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(cov);
    if (lu.isInvertible()) {
        prec = lu.inverse();
    } else {
        // singular covariance: fall back to independent per-dimension variances
        prec = Eigen::MatrixXd::Zero(dim, dim);
        for (Eigen::Index i = 0; i < dim; ++i)
            prec(i, i) = cov(i, i) > 0.0 ? 1.0 / cov(i, i) : 1.0;
    }

    std::vector<WeeklySchedule> out(pop.persons.size());
    for (const Household& hh : pop.households) {
        Eigen::VectorXd q = encode_category(cfg.marginals, hh.category);
        size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (size_t t = 0; t < templates.size(); ++t) {
            Eigen::VectorXd d = q - enc[t];
            double dist = d.dot(prec * d);
            if (dist < best_d - 1e-12) { // ties keep the lowest template id
                best_d = dist;
                best = t;
            }
        }
        const auto& member_schedules = templates[best].member_schedules;
        if (member_schedules.empty())
            throw input_error("assign_schedules: template has no member schedules");
        for (size_t i = 0; i < hh.members.size(); ++i)
            out[static_cast<size_t>(hh.members[i])] =
                member_schedules[i % member_schedules.size()];
    }
    return out;
}

void assign_home_locations(Population& pop) {
    std::vector<std::pair<size_t, int>> slots; // location index, remaining capacity
    double total = 0.0;
    for (size_t i = 0; i < pop.locations.size(); ++i) {
        int cap = static_cast<int>(pop.locations[i].capacities[static_cast<int>(Purpose::Home)]);
        if (cap > 0) {
            slots.push_back({i, cap});
            total += cap;
        }
    }
    if (total < static_cast<double>(pop.households.size()))
        throw input_error("assign_home_locations: HOME capacity short by " +
                          std::to_string(pop.households.size() - static_cast<size_t>(total)) +
                          " households");

    size_t cursor = 0;
    for (Household& hh : pop.households) {
        while (slots[cursor % slots.size()].second == 0) ++cursor;
        auto& slot = slots[cursor % slots.size()];
        hh.home_location = pop.locations[slot.first].id;
        slot.second--;
        ++cursor;
    }
}

namespace {

struct Point {
    double x, y;
};

double dist_km(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

// gravity kernel draw around `anchor`; candidates outside the cutoff are
// dropped unless that empties the list
int gravity_pick(const std::vector<Location>& locations, const std::vector<size_t>& candidates,
                 Point anchor, Purpose purpose, CounterRng& rng) {
    std::vector<double> weight(candidates.size(), 0.0);
    bool any_within = false;
    for (size_t i = 0; i < candidates.size(); ++i) {
        const Location& loc = locations[candidates[i]];
        double d = dist_km(anchor, {loc.x, loc.y});
        if (d <= kGravityCutoffKm) any_within = true;
        double dd = std::max(d, kGravityDistanceFloorKm);
        weight[i] = loc.capacities[static_cast<int>(purpose)] / (dd * dd);
    }
    double total = 0.0;
    for (size_t i = 0; i < candidates.size(); ++i) {
        const Location& loc = locations[candidates[i]];
        double d = dist_km(anchor, {loc.x, loc.y});
        if (any_within && d > kGravityCutoffKm) weight[i] = 0.0;
        total += weight[i];
    }
    double u = rng.next_double() * total;
    double acc = 0.0;
    for (size_t i = 0; i < candidates.size(); ++i) {
        acc += weight[i];
        if (u < acc) return locations[candidates[i]].id;
    }
    return locations[candidates.back()].id;
}

} // namespace

VisitSchedule gravity_assign(const Population& pop,
                             const std::vector<WeeklySchedule>& schedules,
                             std::uint64_t seed) {
    if (schedules.size() != pop.persons.size())
        throw input_error("gravity_assign: schedule count mismatch");

    std::vector<size_t> loc_index(pop.locations.size());
    for (size_t i = 0; i < pop.locations.size(); ++i) {
        if (pop.locations[i].id != static_cast<int>(i))
            throw input_error("gravity_assign: location ids must be 0..n-1");
        loc_index[i] = i;
    }
    std::array<std::vector<size_t>, kPurposeCount> candidates;
    for (size_t i = 0; i < pop.locations.size(); ++i)
        for (int p = 0; p < kPurposeCount; ++p)
            if (pop.locations[i].capacities[p] > 0.0) candidates[p].push_back(i);

    auto coord = [&](int loc) -> Point {
        const Location& l = pop.locations[static_cast<size_t>(loc)];
        return {l.x, l.y};
    };

    VisitSchedule vs;
    for (const Household& hh : pop.households) {
        if (hh.home_location < 0)
            throw input_error("gravity_assign: household " + std::to_string(hh.id) +
                              " has no home location");
        CounterRng rng(seed, static_cast<std::uint64_t>(hh.id));
        Point home = coord(hh.home_location);

        for (int pid : hh.members) {
            const WeeklySchedule& sched = schedules[static_cast<size_t>(pid)];

            // anchor activities first: one location per person and purpose,
            // chosen relative to home
            std::array<int, kPurposeCount> anchor_loc;
            anchor_loc.fill(-1);
            anchor_loc[static_cast<int>(Purpose::Home)] = hh.home_location;
            for (const Activity& act : sched) {
                if (act.purpose != Purpose::Work && act.purpose != Purpose::School) continue;
                int p = static_cast<int>(act.purpose);
                if (anchor_loc[p] >= 0) continue;
                if (candidates[p].empty())
                    throw input_error(std::string("gravity_assign: no location with ") +
                                      purpose_name(act.purpose) + " capacity");
                anchor_loc[p] = gravity_pick(pop.locations, candidates[p], home, act.purpose, rng);
            }

            // discretionary activities relative to the midpoint of the
            // surrounding located activities
            int prev_loc = hh.home_location;
            for (size_t i = 0; i < sched.size(); ++i) {
                const Activity& act = sched[i];
                int chosen;
                int p = static_cast<int>(act.purpose);
                if (anchor_loc[p] >= 0) {
                    chosen = anchor_loc[p];
                } else {
                    if (candidates[p].empty())
                        throw input_error(std::string("gravity_assign: no location with ") +
                                          purpose_name(act.purpose) + " capacity");
                    int next_fixed = -1;
                    for (size_t j = i + 1; j < sched.size(); ++j) {
                        int q = static_cast<int>(sched[j].purpose);
                        if (anchor_loc[q] >= 0) {
                            next_fixed = anchor_loc[q];
                            break;
                        }
                    }
                    Point a = coord(prev_loc);
                    Point point = a;
                    if (next_fixed >= 0) {
                        Point b = coord(next_fixed);
                        point = {(a.x + b.x) / 2.0, (a.y + b.y) / 2.0};
                    }
                    chosen = gravity_pick(pop.locations, candidates[p], point, act.purpose, rng);
                }
                vs.visits.push_back({pid, chosen, act.purpose, act.start, act.duration});
                prev_loc = chosen;
            }
        }
    }
    return vs;
}

void validate_visit_schedule(const VisitSchedule& vs, const Population& pop) {
    std::vector<std::vector<std::pair<int, int>>> per_person(pop.persons.size());
    for (const Visit& v : vs.visits) {
        if (v.start < 0 || v.start >= 7 * 24 * 60) throw input_error("visit start out of range");
        if (v.duration <= 0) throw input_error("visit duration must be positive");
        if (v.location < 0 || v.location >= static_cast<int>(pop.locations.size()))
            throw input_error("visit location out of range");
        if (pop.locations[static_cast<size_t>(v.location)]
                .capacities[static_cast<int>(v.purpose)] <= 0.0)
            throw input_error("visit at location without capacity for its purpose");
        per_person[static_cast<size_t>(v.person)].push_back({v.start, v.start + v.duration});
    }
    for (auto& iv : per_person) {
        std::sort(iv.begin(), iv.end());
        for (size_t i = 1; i < iv.size(); ++i)
            if (iv[i].first < iv[i - 1].second)
                throw input_error("overlapping visits for one person");
    }
}

void save_visits(const std::string& path, const VisitSchedule& vs) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write " + path);
    for (const Visit& v : vs.visits)
        out << v.person << '\t' << v.location << '\t' << purpose_name(v.purpose) << '\t'
            << v.start << '\t' << v.duration << '\n';
}

VisitSchedule load_visits(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open " + path);
    VisitSchedule vs;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream iss(line);
        Visit v;
        std::string purpose;
        if (!(iss >> v.person >> v.location >> purpose >> v.start >> v.duration))
            throw input_error(path + ":" + std::to_string(lineno) + ": malformed visit line");
        v.purpose = purpose_from_name(purpose);
        vs.visits.push_back(v);
    }
    return vs;
}

PopulationConfig load_population_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open " + path);
    json j = json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) throw input_error(path + ": invalid JSON");

    PopulationConfig cfg;
    for (const auto& ja : j.at("axes")) {
        Axis a;
        a.name = ja.at("name").get<std::string>();
        a.categories = ja.at("categories").get<std::vector<std::string>>();
        a.ordinal = ja.value("ordinal", false);
        cfg.marginals.axes.push_back(std::move(a));
    }
    for (const Axis& a : cfg.marginals.axes)
        cfg.marginals.marginals.push_back(j.at("marginals").at(a.name).get<std::vector<double>>());
    if (j.contains("seed_table"))
        cfg.marginals.seed_table = j.at("seed_table").get<std::vector<double>>();

    auto axis_index = [&](const std::string& name) {
        for (size_t a = 0; a < cfg.marginals.axes.size(); ++a)
            if (cfg.marginals.axes[a].name == name) return static_cast<int>(a);
        throw input_error(path + ": unknown axis " + name);
    };
    if (j.contains("size_axis")) {
        cfg.size_axis = axis_index(j.at("size_axis").get<std::string>());
        cfg.sizes = j.at("sizes").get<std::vector<int>>();
        if (cfg.sizes.size() !=
            cfg.marginals.axes[static_cast<size_t>(cfg.size_axis)].categories.size())
            throw input_error(path + ": sizes length must match the size axis");
    }
    if (j.contains("age_axis")) cfg.age_axis = axis_index(j.at("age_axis").get<std::string>());

    int loc_id = 0;
    for (const auto& jl : j.at("locations")) {
        Location loc;
        loc.id = loc_id++;
        loc.x = jl.at("x").get<double>();
        loc.y = jl.at("y").get<double>();
        if (jl.contains("capacities"))
            for (const auto& [key, val] : jl.at("capacities").items())
                loc.capacities[static_cast<int>(purpose_from_name(key))] = val.get<double>();
        cfg.locations.push_back(loc);
    }

    auto category_tuple = [&](const json& jc) {
        std::vector<int> tuple(cfg.marginals.axes.size(), 0);
        for (size_t a = 0; a < cfg.marginals.axes.size(); ++a) {
            const Axis& ax = cfg.marginals.axes[a];
            std::string cat = jc.at(ax.name).get<std::string>();
            auto it = std::find(ax.categories.begin(), ax.categories.end(), cat);
            if (it == ax.categories.end())
                throw input_error(path + ": unknown category " + cat + " on axis " + ax.name);
            tuple[a] = static_cast<int>(it - ax.categories.begin());
        }
        return tuple;
    };

    for (const auto& jt : j.at("templates")) {
        ScheduleTemplate t;
        t.category = category_tuple(jt.at("category"));
        for (const auto& jm : jt.at("members")) {
            WeeklySchedule sched;
            const auto& days = jm.at("days");
            if (days.size() != 7) throw input_error(path + ": template member needs 7 days");
            for (size_t day = 0; day < 7; ++day) {
                int prev_end = 0;
                for (const auto& ja : days[day]) {
                    Activity act;
                    act.purpose = purpose_from_name(ja.at(0).get<std::string>());
                    int start = ja.at(1).get<int>();
                    act.duration = ja.at(2).get<int>();
                    if (act.duration <= 0) throw input_error(path + ": non-positive duration");
                    if (start < prev_end)
                        throw input_error(path + ": overlapping template activities");
                    if (start + act.duration > 24 * 60)
                        throw input_error(path + ": activities may not span midnight");
                    prev_end = start + act.duration;
                    act.start = static_cast<int>(day) * 24 * 60 + start;
                    sched.push_back(act);
                }
            }
            t.member_schedules.push_back(std::move(sched));
        }
        cfg.templates.push_back(std::move(t));
    }
    return cfg;
}

} // namespace cnet
