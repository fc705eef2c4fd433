#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "manifoldnet/graph.hpp"

namespace manifoldnet {

enum class GraphKind { Chain, Star, Gnm, Ba };

GraphKind parse_graph_kind(std::string_view text);
std::string_view graph_kind_name(GraphKind kind) noexcept;

struct GenSpec {
    GraphKind kind = GraphKind::Gnm;
    std::size_t n = 0;
    std::size_t m = 0;  // target edge count
    // Preferential-attachment degree; derived from m when absent (a * (n - a) == m).
    std::optional<std::size_t> m_attach;
    std::uint64_t seed = 0;
    double weight_low = 1.0;
    double weight_high = 1.0;
};

void to_json(nlohmann::json& j, const GenSpec& spec);
void from_json(const nlohmann::json& j, GenSpec& spec);

/// Ring lattice: layer k joins i to i+k (mod n); layers are filled in order
/// until exactly m edges exist.
WeightedGraph gen_chain(std::size_t n, std::size_t m);

/// h hubs joined to every other node (and to each other), with h the largest
/// count whose hub edges fit in m; the remainder goes to random leaf-leaf pairs.
WeightedGraph gen_star(std::size_t n, std::size_t m, std::uint64_t seed);

/// Uniform simple graph with exactly m edges, resampled until connected.
WeightedGraph gen_gnm(std::size_t n, std::size_t m, std::uint64_t seed);

/// Barabasi-Albert preferential attachment. Nodes [0, m_attach) seed the
/// process and node m_attach joins all of them, so the edge count is
/// m_attach * (n - m_attach).
WeightedGraph gen_ba(std::size_t n, std::size_t m_attach, std::uint64_t seed);

/// i.i.d. Uniform[low, high) weights in edge order.
WeightedGraph assign_weights(const WeightedGraph& g, double low, double high, std::uint64_t seed);

/// Topology from `spec.seed`, weights from mix_seed(spec.seed, 1).
WeightedGraph generate(const GenSpec& spec);

inline constexpr int kGnmMaxAttempts = 1000;

}  // namespace manifoldnet
