#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "manifoldnet/graph.hpp"

namespace manifoldnet {

/// Genes x samples expression values.
struct ExpressionMatrix {
    std::vector<std::string> gene_ids;
    std::vector<std::string> sample_ids;
    Matrix values;

    std::optional<std::size_t> gene_index(const std::string& gene) const;
    std::optional<std::size_t> sample_index(const std::string& sample) const;
};

/// CSV with a header row of sample ids (first cell ignored) and one row per
/// gene whose first cell is the gene id.
ExpressionMatrix parse_expression(std::istream& in, const std::string& source_name = "<stream>");
ExpressionMatrix load_expression(const std::filesystem::path& path);

/// Unweighted gene-gene interaction list; endpoints are always treated as labels.
struct TopologyTemplate {
    std::vector<std::pair<std::string, std::string>> pairs;
};

TopologyTemplate parse_topology(std::istream& in, const std::string& source_name = "<stream>");
TopologyTemplate load_topology(const std::filesystem::path& path);

enum class WeightMode { AbsCorrelation, SquaredCorrelation };

struct IngestOptions {
    WeightMode mode = WeightMode::AbsCorrelation;
    // Zero-weight edges keep this weight so the topology stays fixed.
    double zero_weight_floor = 1e-6;
};

/// Pearson correlation; nullopt when either series is constant.
std::optional<double> pearson(std::span<const double> a, std::span<const double> b);

struct CorrelationNetwork {
    WeightedGraph graph;
    std::vector<std::string> warnings;
};

CorrelationNetwork correlation_network(const ExpressionMatrix& expr, const TopologyTemplate& topo,
                                       std::span<const std::string> samples, const IngestOptions& options = {});

struct Cohort {
    std::uint64_t seed = 0;
    std::vector<WeightedGraph> networks;
    std::vector<std::vector<std::string>> subsets;
    std::vector<std::string> warnings;
};

/// Network i correlates a subset of `subset_size` samples drawn without
/// replacement with Rng(mix_seed(seed, i)).
Cohort build_cohort(const ExpressionMatrix& expr, const TopologyTemplate& topo, std::size_t n_networks,
                    std::size_t subset_size, std::uint64_t seed, const IngestOptions& options = {},
                    std::size_t threads = 0);

nlohmann::ordered_json cohort_manifest(const Cohort& cohort, const std::vector<std::string>& files = {});

/// Writes <prefix>_<i>.tsv per network and <prefix>_manifest.json; returns the file names.
std::vector<std::string> write_cohort(const Cohort& cohort, const std::filesystem::path& dir,
                                      const std::string& prefix);

}  // namespace manifoldnet
