#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "manifoldnet/spd.hpp"

namespace manifoldnet {

using NodeId = std::size_t;

struct Edge {
    NodeId u;
    NodeId v;
    double weight = 1.0;
};

struct Neighbor {
    NodeId node;
    double weight;
};

/// Undirected simple graph with strictly positive edge weights. Edges are
/// stored with u < v in insertion order; adjacency lists are sorted by id.
class WeightedGraph {
public:
    WeightedGraph(std::size_t node_count, std::vector<Edge> edges, std::vector<std::string> labels = {});

    std::size_t node_count() const noexcept { return adjacency_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    bool has_labels() const noexcept { return !labels_.empty(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    // Label if present, otherwise the decimal id.
    std::string label(NodeId node) const;
    std::optional<NodeId> find(const std::string& label) const;

    std::span<const Neighbor> neighbors(NodeId node) const { return adjacency_.at(node); }
    double degree(NodeId node) const;

    /// Same topology with new weights, one per edge in edges() order.
    WeightedGraph with_weights(std::span<const double> weights) const;

private:
    std::vector<Edge> edges_;
    std::vector<std::vector<Neighbor>> adjacency_;
    std::vector<std::string> labels_;
};

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

/// Unweighted BFS hop counts from `source`; kUnreachable marks other components.
std::vector<std::size_t> hop_distances(const WeightedGraph& g, NodeId source);

std::size_t hop_distance(const WeightedGraph& g, NodeId x, NodeId y);

bool is_connected(const WeightedGraph& g);

/// I - D^(-1/2) A D^(-1/2).
Matrix normalized_laplacian(const WeightedGraph& g);

inline constexpr double kDefaultLaplacianEps = 1e-3;

/// Normalized Laplacian shifted by eps * I, which places the graph on the SPD cone.
SPDPoint approx_laplacian(const WeightedGraph& g, double eps = kDefaultLaplacianEps);

SPDPoint trace_normalize(const SPDPoint& rho);

}  // namespace manifoldnet
