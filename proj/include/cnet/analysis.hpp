#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cnet/features.hpp"
#include "cnet/graph.hpp"

namespace cnet {

struct FeatureMatrix {
    FeatureLayout layout = FeatureLayout::Full39;
    std::vector<std::string> slot_names;
    std::vector<std::vector<double>> rows;
    std::vector<GraphLabel> labels;

    // populated by standardize()
    std::vector<double> column_means;
    std::vector<double> column_stds;
    std::vector<int> zero_variance_columns;
};

// zero-mean unit-variance columns (population std); constant columns map to
// zeros and are flagged
FeatureMatrix standardize(const FeatureMatrix& m);

struct KMeansResult {
    std::vector<int> assignments;
    std::vector<std::vector<double>> centroids;
    double wcss = 0.0;
    std::vector<double> wcss_history; // per Lloyd iteration of the winning run
};

// k-means++ seeding, Lloyd iterations, best of `restarts` runs by
// within-cluster sum of squares. Ties go to the lowest centroid id; an empty
// cluster is reseeded to the point farthest from its centroid.
KMeansResult kmeans(const FeatureMatrix& m, int k = 6, std::uint64_t seed = 0,
                    int restarts = 32);

struct Pca2Result {
    std::vector<std::array<double, 2>> projection;
    std::vector<std::vector<double>> axes; // two unit vectors
    std::array<double, 2> explained_variance{};
    bool second_axis_degenerate = false;
};

Pca2Result pca2(const FeatureMatrix& m);

struct AgreementResult {
    double ari = 0.0;
    std::vector<std::pair<GraphFamily, double>> family_purity;
    // per AgentSynthetic row: does its cluster's modal family equal RealWorld?
    std::vector<std::pair<std::string, bool>> synthetic_in_real_cluster;
};

AgreementResult label_agreement(const std::vector<int>& assignments,
                                const std::vector<GraphLabel>& labels);

double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b);

void save_feature_matrix_csv(const std::string& path, const FeatureMatrix& m);
FeatureMatrix load_feature_matrix_csv(const std::string& path);

} // namespace cnet
