#include "manifoldnet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <unordered_map>
#include <utility>

namespace manifoldnet {

WeightedGraph::WeightedGraph(std::size_t node_count, std::vector<Edge> edges, std::vector<std::string> labels)
    : edges_(std::move(edges)), adjacency_(node_count), labels_(std::move(labels)) {
    if (node_count == 0) throw Error(ErrorKind::InvalidGraph, "graph needs at least one node");
    if (!labels_.empty() && labels_.size() != node_count) {
        throw Error(ErrorKind::InvalidGraph, "label count " + std::to_string(labels_.size()) +
                                                 " does not match node count " + std::to_string(node_count));
    }
    std::set<std::pair<NodeId, NodeId>> seen;
    for (auto& e : edges_) {
        if (e.u >= node_count || e.v >= node_count) {
            throw Error(ErrorKind::InvalidGraph, "edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                                                     ") references a node outside [0, " +
                                                     std::to_string(node_count) + ")");
        }
        if (e.u == e.v) throw Error(ErrorKind::InvalidGraph, "self-loop at node " + label(e.u));
        if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
            throw Error(ErrorKind::InvalidGraph, "edge (" + label(e.u) + ", " + label(e.v) +
                                                     ") has non-positive weight " + std::to_string(e.weight));
        }
        if (e.u > e.v) std::swap(e.u, e.v);
        if (!seen.emplace(e.u, e.v).second) {
            throw Error(ErrorKind::InvalidGraph, "duplicate edge (" + label(e.u) + ", " + label(e.v) + ")");
        }
        adjacency_[e.u].push_back({e.v, e.weight});
        adjacency_[e.v].push_back({e.u, e.weight});
    }
    for (auto& list : adjacency_) {
        std::sort(list.begin(), list.end(), [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
    }
}

std::string WeightedGraph::label(NodeId node) const {
    if (node < labels_.size()) return labels_[node];
    return std::to_string(node);
}

std::optional<NodeId> WeightedGraph::find(const std::string& text) const {
    if (has_labels()) {
        const auto it = std::find(labels_.begin(), labels_.end(), text);
        if (it == labels_.end()) return std::nullopt;
        return static_cast<NodeId>(it - labels_.begin());
    }
    if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        return std::nullopt;
    }
    const NodeId id = std::stoull(text);
    if (id >= node_count()) return std::nullopt;
    return id;
}

double WeightedGraph::degree(NodeId node) const {
    double total = 0.0;
    for (const auto& n : adjacency_.at(node)) total += n.weight;
    return total;
}

WeightedGraph WeightedGraph::with_weights(std::span<const double> weights) const {
    if (weights.size() != edges_.size()) {
        throw Error(ErrorKind::DimMismatch, "expected " + std::to_string(edges_.size()) + " weights, got " +
                                                std::to_string(weights.size()));
    }
    std::vector<Edge> edges = edges_;
    for (std::size_t i = 0; i < edges.size(); ++i) edges[i].weight = weights[i];
    return WeightedGraph(node_count(), std::move(edges), labels_);
}

std::vector<std::size_t> hop_distances(const WeightedGraph& g, NodeId source) {
    if (source >= g.node_count()) {
        throw Error(ErrorKind::InvalidArgument, "node " + std::to_string(source) + " out of range");
    }
    std::vector<std::size_t> dist(g.node_count(), kUnreachable);
    std::deque<NodeId> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        const NodeId u = queue.front();
        queue.pop_front();
        for (const auto& n : g.neighbors(u)) {
            if (dist[n.node] == kUnreachable) {
                dist[n.node] = dist[u] + 1;
                queue.push_back(n.node);
            }
        }
    }
    return dist;
}

std::size_t hop_distance(const WeightedGraph& g, NodeId x, NodeId y) {
    if (y >= g.node_count()) throw Error(ErrorKind::InvalidArgument, "node " + std::to_string(y) + " out of range");
    const std::size_t d = hop_distances(g, x)[y];
    if (d == kUnreachable) {
        throw Error(ErrorKind::Disconnected, "nodes " + g.label(x) + " and " + g.label(y) +
                                                 " lie in different components");
    }
    return d;
}

bool is_connected(const WeightedGraph& g) {
    const auto dist = hop_distances(g, 0);
    return std::none_of(dist.begin(), dist.end(), [](std::size_t d) { return d == kUnreachable; });
}

Matrix normalized_laplacian(const WeightedGraph& g) {
    const auto n = static_cast<Eigen::Index>(g.node_count());
    Vector inv_root_degree(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double d = g.degree(static_cast<NodeId>(i));
        if (!(d > 0.0)) throw Error(ErrorKind::IsolatedNode, "node " + g.label(static_cast<NodeId>(i)) + " has no edges");
        inv_root_degree(i) = 1.0 / std::sqrt(d);
    }
    Matrix lap = Matrix::Identity(n, n);
    for (const auto& e : g.edges()) {
        const auto u = static_cast<Eigen::Index>(e.u);
        const auto v = static_cast<Eigen::Index>(e.v);
        const double value = -e.weight * inv_root_degree(u) * inv_root_degree(v);
        lap(u, v) = value;
        lap(v, u) = value;
    }
    return lap;
}

SPDPoint approx_laplacian(const WeightedGraph& g, double eps) {
    if (!(eps > 0.0)) throw Error(ErrorKind::InvalidArgument, "eps must be positive, got " + std::to_string(eps));
    Matrix lap = normalized_laplacian(g);
    lap.diagonal().array() += eps;
    return SPDPoint(lap);
}

SPDPoint trace_normalize(const SPDPoint& rho) {
    const double tr = rho.trace();
    if (!(tr > 0.0)) throw Error(ErrorKind::InvalidArgument, "trace must be positive");
    return SPDPoint(rho.matrix() / tr);
}

}  // namespace manifoldnet
