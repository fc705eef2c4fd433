#include "manifoldnet/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "manifoldnet/parallel.hpp"

namespace manifoldnet {

NodeMeasure::NodeMeasure(std::vector<NodeId> support, std::vector<double> mass)
    : support_(std::move(support)), mass_(std::move(mass)) {
    if (support_.empty() || support_.size() != mass_.size()) {
        throw Error(ErrorKind::InvalidArgument, "measure needs matching non-empty support and mass lists");
    }
    if (std::set<NodeId>(support_.begin(), support_.end()).size() != support_.size()) {
        throw Error(ErrorKind::InvalidArgument, "measure support has repeated nodes");
    }
    double total = 0.0;
    for (double m : mass_) {
        if (!(m >= 0.0)) throw Error(ErrorKind::InvalidArgument, "negative mass " + std::to_string(m));
        total += m;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw Error(ErrorKind::InvalidArgument, "measure mass sums to " + std::to_string(total));
    }
}

NodeMeasure neighbor_measure(const WeightedGraph& g, NodeId x, double idleness) {
    if (!(idleness >= 0.0 && idleness < 1.0)) {
        throw Error(ErrorKind::InvalidArgument, "idleness must lie in [0, 1)");
    }
    const auto nbrs = g.neighbors(x);
    const double deg = g.degree(x);
    if (nbrs.empty()) throw Error(ErrorKind::IsolatedNode, "node " + g.label(x) + " has no edges");

    std::vector<NodeId> support;
    std::vector<double> mass;
    if (idleness > 0.0) {
        support.push_back(x);
        mass.push_back(idleness);
    }
    for (const auto& n : nbrs) {
        support.push_back(n.node);
        mass.push_back((1.0 - idleness) * n.weight / deg);
    }
    return NodeMeasure(std::move(support), std::move(mass));
}

double transport_cost(const std::vector<double>& supply, const std::vector<double>& demand, const Matrix& cost) {
    const auto m = static_cast<Eigen::Index>(supply.size());
    const auto n = static_cast<Eigen::Index>(demand.size());
    if (cost.rows() != m || cost.cols() != n) {
        throw Error(ErrorKind::DimMismatch, "cost matrix does not match supply/demand sizes");
    }
    if (m == 0 || n == 0) return 0.0;

    const double total = std::accumulate(supply.begin(), supply.end(), 0.0);
    const double tol = 1e-14 * std::max(1.0, total);
    constexpr double kInf = std::numeric_limits<double>::infinity();

    // Node layout: sources [0, m), sinks [m, m+n), super source m+n, super sink m+n+1.
    const Eigen::Index source = m + n;
    const Eigen::Index sink = m + n + 1;
    const Eigen::Index count = m + n + 2;

    std::vector<double> rem_supply = supply;
    std::vector<double> rem_demand = demand;
    Matrix flow = Matrix::Zero(m, n);
    std::vector<double> potential(static_cast<std::size_t>(count), 0.0);
    std::vector<double> dist(static_cast<std::size_t>(count));
    std::vector<Eigen::Index> prev(static_cast<std::size_t>(count));
    std::vector<char> done(static_cast<std::size_t>(count));

    auto remaining = [&](const std::vector<double>& v) {
        return std::any_of(v.begin(), v.end(), [tol](double x) { return x > tol; });
    };

    while (remaining(rem_supply) && remaining(rem_demand)) {
        std::fill(dist.begin(), dist.end(), kInf);
        std::fill(prev.begin(), prev.end(), -1);
        std::fill(done.begin(), done.end(), 0);
        dist[source] = 0.0;

        auto relax = [&](Eigen::Index u, Eigen::Index v, double c) {
            const double reduced = std::max(0.0, c + potential[u] - potential[v]);
            if (dist[u] + reduced < dist[v]) {
                dist[v] = dist[u] + reduced;
                prev[v] = u;
            }
        };

        for (;;) {
            Eigen::Index u = -1;
            for (Eigen::Index v = 0; v < count; ++v) {
                if (!done[v] && dist[v] < kInf && (u < 0 || dist[v] < dist[u])) u = v;
            }
            if (u < 0) break;
            done[u] = 1;
            if (u == source) {
                for (Eigen::Index i = 0; i < m; ++i) {
                    if (rem_supply[i] > tol) relax(source, i, 0.0);
                }
            } else if (u < m) {
                for (Eigen::Index j = 0; j < n; ++j) relax(u, m + j, cost(u, j));
            } else if (u < m + n) {
                const Eigen::Index j = u - m;
                for (Eigen::Index i = 0; i < m; ++i) {
                    if (flow(i, j) > tol) relax(u, i, -cost(i, j));
                }
                if (rem_demand[j] > tol) relax(u, sink, 0.0);
            }
        }
        if (!(dist[sink] < kInf)) break;

        for (Eigen::Index v = 0; v < count; ++v) potential[v] += std::min(dist[v], dist[sink]);

        // Bottleneck along the augmenting path S -> i0 -> j0 -> i1 -> ... -> jk -> T.
        double delta = kInf;
        for (Eigen::Index v = sink; v != source; v = prev[v]) {
            const Eigen::Index u = prev[v];
            if (u == source) {
                delta = std::min(delta, rem_supply[v]);
            } else if (v == sink) {
                delta = std::min(delta, rem_demand[u - m]);
            } else if (u >= m) {
                delta = std::min(delta, flow(v, u - m));
            }
        }
        for (Eigen::Index v = sink; v != source; v = prev[v]) {
            const Eigen::Index u = prev[v];
            if (u == source) {
                rem_supply[v] -= delta;
            } else if (v == sink) {
                rem_demand[u - m] -= delta;
            } else if (u < m) {
                flow(u, v - m) += delta;
            } else {
                flow(v, u - m) -= delta;
            }
        }
    }
    return flow.cwiseProduct(cost).sum();
}

double wasserstein1(const NodeMeasure& mu, const NodeMeasure& nu, const WeightedGraph& g) {
    const auto m = static_cast<Eigen::Index>(mu.size());
    const auto n = static_cast<Eigen::Index>(nu.size());
    Matrix cost(m, n);
    for (Eigen::Index i = 0; i < m; ++i) {
        const auto hops = hop_distances(g, mu.support()[i]);
        for (Eigen::Index j = 0; j < n; ++j) {
            const NodeId target = nu.support()[j];
            if (target >= g.node_count()) {
                throw Error(ErrorKind::InvalidArgument, "node " + std::to_string(target) + " out of range");
            }
            if (hops[target] == kUnreachable) {
                throw Error(ErrorKind::Disconnected, "measures are supported on different components (" +
                                                         g.label(mu.support()[i]) + ", " + g.label(target) + ")");
            }
            cost(i, j) = static_cast<double>(hops[target]);
        }
    }
    return transport_cost(mu.mass(), nu.mass(), cost);
}

double ollivier_curvature(const WeightedGraph& g, NodeId x, NodeId y, double idleness) {
    if (x == y) throw Error(ErrorKind::SameNode, "curvature needs two distinct nodes, got " + g.label(x) + " twice");
    // Fixed orientation so the value is exactly symmetric in (x, y).
    if (x > y) std::swap(x, y);
    const auto d = static_cast<double>(hop_distance(g, x, y));
    const double w1 = wasserstein1(neighbor_measure(g, x, idleness), neighbor_measure(g, y, idleness), g);
    return 1.0 - w1 / d;
}

std::vector<double> edge_curvatures(const WeightedGraph& g, double idleness, std::size_t threads) {
    std::vector<double> out(g.edge_count());
    parallel_for(out.size(), threads, [&](std::size_t i) {
        const Edge& e = g.edges()[i];
        out[i] = ollivier_curvature(g, e.u, e.v, idleness);
    });
    return out;
}

SpectralReport spectral_curvature_report(const WeightedGraph& g, double idleness, std::size_t threads) {
    if (!is_connected(g)) throw Error(ErrorKind::Disconnected, "spectral report needs a connected graph");
    if (g.node_count() < 2) throw Error(ErrorKind::InvalidGraph, "spectral report needs at least two nodes");

    const EigenPair eig = spd_eig(normalized_laplacian(g));
    const auto curv = edge_curvatures(g, idleness, threads);
    const double k = *std::min_element(curv.begin(), curv.end());

    SpectralReport report;
    report.eigenvalues.assign(eig.values.data(), eig.values.data() + eig.values.size());
    report.min_edge_curvature = k;
    constexpr double kSlack = 1e-8;
    report.lower_bound_holds = k <= report.eigenvalues[1] + kSlack;
    report.upper_bound_holds = report.eigenvalues.back() <= 2.0 - k + kSlack;
    report.bound_satisfied = report.lower_bound_holds && report.upper_bound_holds;
    return report;
}

}  // namespace manifoldnet
