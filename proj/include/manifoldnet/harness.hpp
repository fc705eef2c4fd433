#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "manifoldnet/graph.hpp"
#include "manifoldnet/ingest.hpp"

namespace manifoldnet {

enum class Metric { Riemannian, Frobenius };

Metric parse_metric(std::string_view text);
std::string_view metric_name(Metric metric) noexcept;

struct DistanceMatrix {
    std::vector<std::string> labels;
    Metric metric = Metric::Riemannian;
    Matrix entries;

    std::size_t size() const noexcept { return labels.size(); }
};

/// Entry (i, j) is computed once for i < j and mirrored, so symmetry is exact
/// and the result does not depend on the thread schedule.
DistanceMatrix pairwise_matrix(std::span<const SPDPoint> points, std::vector<std::string> labels, Metric metric,
                               std::size_t threads = 0);

/// Header row of labels followed by one row of distances per label.
void write_distance_csv(const DistanceMatrix& dm, std::ostream& out);
void write_distance_csv(const DistanceMatrix& dm, const std::filesystem::path& path);

struct ClassPairStats {
    std::string class_a;
    std::string class_b;
    std::size_t pair_count = 0;
    std::optional<double> mean;    // absent when the pair set is empty
    std::optional<double> stddev;  // population standard deviation
};

struct ClusteringResult {
    std::vector<std::size_t> assignment;  // cluster ids numbered by first appearance
    std::vector<std::size_t> medoids;     // medoids[c] is the medoid of cluster c
    double cost = 0.0;
};

struct ClassReport {
    std::vector<std::string> classes;  // first-appearance order
    std::vector<ClassPairStats> pairs;  // (a, b) with a <= b in class order
    std::optional<ClusteringResult> clustering;
    std::optional<double> accuracy;

    const ClassPairStats& pair(const std::string& a, const std::string& b) const;
    /// Every inter-class mean strictly exceeds every intra-class mean.
    bool inter_exceeds_intra() const;
};

ClassReport class_stats(const DistanceMatrix& dm, std::span<const std::string> classes);

inline constexpr std::size_t kDefaultRestarts = 10;

/// PAM (BUILD-free): seeded random initial medoids, then best-improvement
/// swaps until no single medoid/non-medoid swap lowers the total distance.
/// The cheapest of `restarts` runs wins; ties keep the earliest run.
ClusteringResult cluster_kmedoids(const DistanceMatrix& dm, std::size_t k, std::uint64_t seed,
                                  std::size_t restarts = kDefaultRestarts);

double clustering_cost(const DistanceMatrix& dm, std::span<const std::size_t> medoids);

/// Fraction of points whose cluster maps to their class under the best
/// one-to-one relabelling of clusters.
double clustering_accuracy(std::span<const std::size_t> assignment, std::span<const std::string> classes);

inline constexpr std::size_t kHeatmapSide = 512;

/// Binary PPM (P6). Entries are scaled linearly between the matrix min and
/// max and coloured blue -> green -> red; nearest-entry upscaling to `side`.
std::string heatmap_ppm(const DistanceMatrix& dm, std::size_t side = kHeatmapSide);
void heatmap(const DistanceMatrix& dm, const std::filesystem::path& path, std::size_t side = kHeatmapSide);

struct ExperimentOptions {
    double eps = kDefaultLaplacianEps;
    bool trace_normalize = false;
    std::size_t threads = 0;
    std::size_t heatmap_side = kHeatmapSide;
    std::filesystem::path out_dir;  // empty: no files written
};

/// L-hat (optionally trace-normalized) for each graph, built in parallel.
std::vector<SPDPoint> laplacian_points(std::span<const WeightedGraph> graphs, double eps, bool trace_normalize,
                                       std::size_t threads = 0);

struct ToyConfig {
    std::size_t n = 200;
    std::size_t m = 400;
    std::vector<std::uint64_t> seeds;
    std::vector<std::pair<double, double>> weight_supports{{1.0, 1.0}, {1.0, 1.5}, {1.0, 2.0}};
    ExperimentOptions options;
};

nlohmann::ordered_json run_toy(const ToyConfig& config);

struct ScaleFreeConfig {
    std::size_t n_per_class = 20;
    std::size_t n = 200;
    std::size_t m = 1164;
    std::size_t m_attach = 6;
    std::uint64_t seed = 0;
    std::size_t restarts = kDefaultRestarts;
    ExperimentOptions options;
};

nlohmann::ordered_json run_scalefree(const ScaleFreeConfig& config);

struct ExpressionConfig {
    std::size_t n_networks = 10;
    std::size_t subset_size = 20;
    std::uint64_t seed = 0;
    std::size_t restarts = kDefaultRestarts;
    std::string class_a = "class_a";
    std::string class_b = "class_b";
    IngestOptions ingest;
    ExperimentOptions options;
};

nlohmann::ordered_json run_expression(const ExpressionMatrix& expr_a, const ExpressionMatrix& expr_b,
                                      const TopologyTemplate& topo, const ExpressionConfig& config);

}  // namespace manifoldnet
