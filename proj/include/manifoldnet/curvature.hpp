#pragma once

// Ollivier-Ricci edge curvature: neighbour measures, the transportation LP
// behind W1 on the hop metric, and the curvature/spectrum diagnostic.

#include <cstddef>
#include <vector>

#include "manifoldnet/graph.hpp"

namespace manifoldnet {

/// Probability measure with finite support on graph nodes.
class NodeMeasure {
public:
    NodeMeasure(std::vector<NodeId> support, std::vector<double> mass);

    static NodeMeasure point(NodeId node) { return NodeMeasure({node}, {1.0}); }

    const std::vector<NodeId>& support() const noexcept { return support_; }
    const std::vector<double>& mass() const noexcept { return mass_; }
    std::size_t size() const noexcept { return support_.size(); }

private:
    std::vector<NodeId> support_;
    std::vector<double> mass_;
};

/// Mass `idleness` stays on x; the rest is spread over the neighbours of x
/// in proportion to edge weight.
NodeMeasure neighbor_measure(const WeightedGraph& g, NodeId x, double idleness = 0.0);

/// Exact minimum-cost transport between `supply` and `demand` (equal totals)
/// under `cost` (supply.size() x demand.size()). Successive shortest paths
/// with Johnson potentials on the bipartite residual network.
double transport_cost(const std::vector<double>& supply, const std::vector<double>& demand, const Matrix& cost);

double wasserstein1(const NodeMeasure& mu, const NodeMeasure& nu, const WeightedGraph& g);

double ollivier_curvature(const WeightedGraph& g, NodeId x, NodeId y, double idleness = 0.0);

/// Curvature of every edge, in edges() order.
std::vector<double> edge_curvatures(const WeightedGraph& g, double idleness = 0.0, std::size_t threads = 0);

struct SpectralReport {
    std::vector<double> eigenvalues;  // ascending, normalized Laplacian
    double min_edge_curvature;
    bool lower_bound_holds;  // k <= lambda_2
    bool upper_bound_holds;  // lambda_N <= 2 - k
    bool bound_satisfied;
};

SpectralReport spectral_curvature_report(const WeightedGraph& g, double idleness = 0.0, std::size_t threads = 0);

}  // namespace manifoldnet
