#include "cnet/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <Eigen/Dense>

#include "cnet/error.hpp"
#include "cnet/rng.hpp"

namespace cnet {

FeatureMatrix standardize(const FeatureMatrix& m) {
    const size_t rows = m.rows.size();
    if (rows < 2) throw input_error("standardize: need at least 2 rows");
    const size_t cols = m.rows[0].size();
    for (const auto& r : m.rows)
        if (r.size() != cols) throw input_error("standardize: ragged feature matrix");

    FeatureMatrix out = m;
    out.column_means.assign(cols, 0.0);
    out.column_stds.assign(cols, 0.0);
    out.zero_variance_columns.clear();

    for (size_t c = 0; c < cols; ++c) {
        double mean = 0.0;
        for (const auto& r : m.rows) mean += r[c];
        mean /= static_cast<double>(rows);
        double var = 0.0;
        for (const auto& r : m.rows) var += (r[c] - mean) * (r[c] - mean);
        var /= static_cast<double>(rows);
        double std = std::sqrt(var);
        out.column_means[c] = mean;
        out.column_stds[c] = std;
        if (std > 0.0) {
            for (size_t r = 0; r < rows; ++r) out.rows[r][c] = (m.rows[r][c] - mean) / std;
        } else {
            for (size_t r = 0; r < rows; ++r) out.rows[r][c] = 0.0;
            out.zero_variance_columns.push_back(static_cast<int>(c));
        }
    }
    return out;
}

namespace {

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return s;
}

struct LloydRun {
    std::vector<int> assignments;
    std::vector<std::vector<double>> centroids;
    double wcss = std::numeric_limits<double>::infinity();
    std::vector<double> wcss_history;
};

LloydRun run_lloyd(const std::vector<std::vector<double>>& points, int k, CounterRng& rng) {
    const size_t n = points.size();
    const size_t dim = points[0].size();

    // k-means++ seeding
    std::vector<std::vector<double>> centroids;
    centroids.push_back(points[static_cast<size_t>(rng.next_below(n))]);
    std::vector<double> d2(n);
    while (static_cast<int>(centroids.size()) < k) {
        double total = 0.0;
        for (size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& c : centroids) best = std::min(best, sq_dist(points[i], c));
            d2[i] = best;
            total += best;
        }
        size_t pick = 0;
        if (total > 0.0) {
            double u = rng.next_double() * total, acc = 0.0;
            for (size_t i = 0; i < n; ++i) {
                acc += d2[i];
                if (u < acc) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = static_cast<size_t>(rng.next_below(n));
        }
        centroids.push_back(points[pick]);
    }

    LloydRun run;
    run.assignments.assign(n, -1);
    for (int iter = 0; iter < 1000; ++iter) {
        std::vector<int> next(n);
        double wcss = 0.0;
        for (size_t i = 0; i < n; ++i) {
            int best = 0;
            double best_d = sq_dist(points[i], centroids[0]);
            for (int c = 1; c < k; ++c) {
                double d = sq_dist(points[i], centroids[static_cast<size_t>(c)]);
                if (d < best_d) { // ties keep the lowest centroid id
                    best_d = d;
                    best = c;
                }
            }
            next[i] = best;
            wcss += best_d;
        }
        run.wcss_history.push_back(wcss);
        if (next == run.assignments) {
            run.wcss = wcss;
            break;
        }
        run.assignments = std::move(next);

        std::vector<std::vector<double>> sums(static_cast<size_t>(k),
                                              std::vector<double>(dim, 0.0));
        std::vector<int> counts(static_cast<size_t>(k), 0);
        for (size_t i = 0; i < n; ++i) {
            auto c = static_cast<size_t>(run.assignments[i]);
            counts[c]++;
            for (size_t d = 0; d < dim; ++d) sums[c][d] += points[i][d];
        }
        for (int c = 0; c < k; ++c) {
            if (counts[static_cast<size_t>(c)] > 0) {
                for (size_t d = 0; d < dim; ++d)
                    sums[static_cast<size_t>(c)][d] /= counts[static_cast<size_t>(c)];
                centroids[static_cast<size_t>(c)] = sums[static_cast<size_t>(c)];
            } else {
                // reseed an empty cluster to the point farthest from its centroid
                size_t far = 0;
                double far_d = -1.0;
                for (size_t i = 0; i < n; ++i) {
                    double d = sq_dist(points[i],
                                       centroids[static_cast<size_t>(run.assignments[i])]);
                    if (d > far_d) {
                        far_d = d;
                        far = i;
                    }
                }
                centroids[static_cast<size_t>(c)] = points[far];
            }
        }
    }
    run.centroids = std::move(centroids);
    return run;
}

} // namespace

KMeansResult kmeans(const FeatureMatrix& m, int k, std::uint64_t seed, int restarts) {
    const size_t n = m.rows.size();
    if (k <= 0) throw input_error("kmeans: k must be positive");
    if (static_cast<size_t>(k) > n) throw input_error("kmeans: k exceeds row count");
    if (restarts <= 0) throw input_error("kmeans: restarts must be positive");

    LloydRun best;
    for (int r = 0; r < restarts; ++r) {
        CounterRng rng(seed, static_cast<std::uint64_t>(r));
        LloydRun run = run_lloyd(m.rows, k, rng);
        if (run.wcss < best.wcss) best = std::move(run); // ties keep the earliest restart
    }

    KMeansResult out;
    out.assignments = std::move(best.assignments);
    out.centroids = std::move(best.centroids);
    out.wcss = best.wcss;
    out.wcss_history = std::move(best.wcss_history);
    return out;
}

Pca2Result pca2(const FeatureMatrix& m) {
    const size_t n = m.rows.size();
    if (n < 3) throw input_error("pca2: need at least 3 rows");
    const auto dim = static_cast<Eigen::Index>(m.rows[0].size());

    Eigen::MatrixXd x(static_cast<Eigen::Index>(n), dim);
    for (size_t i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < dim; ++j)
            x(static_cast<Eigen::Index>(i), j) = m.rows[i][static_cast<size_t>(j)];
    Eigen::RowVectorXd mean = x.colwise().mean();
    x.rowwise() -= mean;

    Eigen::MatrixXd cov = x.transpose() * x / static_cast<double>(n - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success) throw numeric_error("pca2: eigendecomposition failed");
    Eigen::VectorXd evals = solver.eigenvalues(); // ascending
    Eigen::MatrixXd evecs = solver.eigenvectors();

    double total = 0.0;
    for (Eigen::Index i = 0; i < evals.size(); ++i) total += std::max(evals[i], 0.0);

    Pca2Result out;
    out.axes.assign(2, std::vector<double>(static_cast<size_t>(dim), 0.0));
    for (int a = 0; a < 2; ++a) {
        Eigen::Index idx = evals.size() - 1 - a;
        double lambda = idx >= 0 ? std::max(evals[idx], 0.0) : 0.0;
        if (a == 1 && (idx < 0 || lambda <= 1e-12 * std::max(1.0, evals[evals.size() - 1]))) {
            out.second_axis_degenerate = true;
            out.explained_variance[1] = 0.0;
            break;
        }
        Eigen::VectorXd axis = evecs.col(idx);
        // sign convention: the largest-magnitude entry is positive
        Eigen::Index arg = 0;
        axis.cwiseAbs().maxCoeff(&arg);
        if (axis[arg] < 0.0) axis = -axis;
        for (Eigen::Index j = 0; j < dim; ++j)
            out.axes[static_cast<size_t>(a)][static_cast<size_t>(j)] = axis[j];
        out.explained_variance[static_cast<size_t>(a)] = total > 0.0 ? lambda / total : 0.0;
    }

    out.projection.resize(n);
    for (size_t i = 0; i < n; ++i)
        for (int a = 0; a < 2; ++a) {
            double dot = 0.0;
            for (Eigen::Index j = 0; j < dim; ++j)
                dot += x(static_cast<Eigen::Index>(i), j) *
                       out.axes[static_cast<size_t>(a)][static_cast<size_t>(j)];
            out.projection[i][static_cast<size_t>(a)] = dot;
        }
    return out;
}

double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) throw input_error("ari: length mismatch");
    const auto n = static_cast<double>(a.size());
    std::map<std::pair<int, int>, double> cell;
    std::map<int, double> row, col;
    for (size_t i = 0; i < a.size(); ++i) {
        cell[{a[i], b[i]}]++;
        row[a[i]]++;
        col[b[i]]++;
    }
    auto choose2 = [](double x) { return x * (x - 1.0) / 2.0; };
    double sum_cells = 0.0, sum_rows = 0.0, sum_cols = 0.0;
    for (auto& [k, v] : cell) sum_cells += choose2(v);
    for (auto& [k, v] : row) sum_rows += choose2(v);
    for (auto& [k, v] : col) sum_cols += choose2(v);
    double expected = sum_rows * sum_cols / choose2(n);
    double max_index = (sum_rows + sum_cols) / 2.0;
    double denom = max_index - expected;
    if (denom == 0.0) return 1.0; // both partitions trivial and identical in structure
    return (sum_cells - expected) / denom;
}

AgreementResult label_agreement(const std::vector<int>& assignments,
                                const std::vector<GraphLabel>& labels) {
    if (assignments.size() != labels.size()) throw input_error("label_agreement: length mismatch");

    std::vector<int> truth(labels.size());
    for (size_t i = 0; i < labels.size(); ++i) truth[i] = static_cast<int>(labels[i].family);

    AgreementResult out;
    out.ari = adjusted_rand_index(assignments, truth);

    // modal cluster per family
    std::map<int, std::map<int, int>> family_clusters;
    for (size_t i = 0; i < labels.size(); ++i) family_clusters[truth[i]][assignments[i]]++;
    for (auto& [fam, clusters] : family_clusters) {
        int total = 0, modal = 0;
        for (auto& [c, cnt] : clusters) {
            total += cnt;
            modal = std::max(modal, cnt);
        }
        out.family_purity.push_back(
            {static_cast<GraphFamily>(fam), static_cast<double>(modal) / total});
    }

    // modal family per cluster
    std::map<int, std::map<int, int>> cluster_families;
    for (size_t i = 0; i < labels.size(); ++i) cluster_families[assignments[i]][truth[i]]++;
    std::map<int, GraphFamily> modal_family;
    for (auto& [c, fams] : cluster_families) {
        int best_cnt = -1, best_fam = 0;
        for (auto& [fam, cnt] : fams)
            if (cnt > best_cnt) {
                best_cnt = cnt;
                best_fam = fam;
            }
        modal_family[c] = static_cast<GraphFamily>(best_fam);
    }
    for (size_t i = 0; i < labels.size(); ++i)
        if (labels[i].family == GraphFamily::AgentSynthetic)
            out.synthetic_in_real_cluster.push_back(
                {labels[i].name, modal_family[assignments[i]] == GraphFamily::RealWorld});
    return out;
}

void save_feature_matrix_csv(const std::string& path, const FeatureMatrix& m) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write " + path);
    out << "name,family";
    for (const auto& s : m.slot_names) out << ',' << s;
    out << '\n';
    char buf[64];
    for (size_t i = 0; i < m.rows.size(); ++i) {
        out << m.labels[i].name << ',' << family_name(m.labels[i].family);
        for (double v : m.rows[i]) {
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            out << ',' << buf;
        }
        out << '\n';
    }
}

FeatureMatrix load_feature_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open " + path);
    FeatureMatrix m;
    std::string line;
    if (!std::getline(in, line)) throw input_error(path + ": empty csv");
    {
        std::istringstream iss(line);
        std::string field;
        std::getline(iss, field, ','); // name
        std::getline(iss, field, ','); // family
        while (std::getline(iss, field, ',')) m.slot_names.push_back(field);
    }
    m.layout = m.slot_names.size() == 39 ? FeatureLayout::Full39 : FeatureLayout::Paper34;
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream iss(line);
        std::string field;
        GraphLabel label;
        if (!std::getline(iss, label.name, ','))
            throw input_error(path + ":" + std::to_string(lineno) + ": malformed row");
        if (!std::getline(iss, field, ','))
            throw input_error(path + ":" + std::to_string(lineno) + ": malformed row");
        label.family = family_from_name(field);
        std::vector<double> row;
        while (std::getline(iss, field, ',')) row.push_back(std::stod(field));
        if (row.size() != m.slot_names.size())
            throw input_error(path + ":" + std::to_string(lineno) + ": wrong column count");
        m.labels.push_back(std::move(label));
        m.rows.push_back(std::move(row));
    }
    return m;
}

} // namespace cnet
