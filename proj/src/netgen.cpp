#include "manifoldnet/netgen.hpp"

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "manifoldnet/random.hpp"

namespace manifoldnet {
namespace {

using PairSet = std::set<std::pair<NodeId, NodeId>>;

std::size_t max_edges(std::size_t n) { return n * (n - 1) / 2; }

std::vector<Edge> to_edges(const PairSet& pairs) {
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (const auto& [u, v] : pairs) edges.push_back({u, v, 1.0});
    return edges;
}

// Uniform unordered pair of distinct nodes drawn from `pool`.
std::pair<NodeId, NodeId> random_pair(Rng& rng, const std::vector<NodeId>& pool) {
    const auto a = rng.below(pool.size());
    auto b = rng.below(pool.size() - 1);
    if (b >= a) ++b;
    return std::minmax(pool[a], pool[b]);
}

}  // namespace

GraphKind parse_graph_kind(std::string_view text) {
    if (text == "chain") return GraphKind::Chain;
    if (text == "star") return GraphKind::Star;
    if (text == "gnm") return GraphKind::Gnm;
    if (text == "ba") return GraphKind::Ba;
    throw Error(ErrorKind::InfeasibleSpec, "unknown graph kind '" + std::string(text) + "'");
}

std::string_view graph_kind_name(GraphKind kind) noexcept {
    switch (kind) {
        case GraphKind::Chain: return "chain";
        case GraphKind::Star: return "star";
        case GraphKind::Gnm: return "gnm";
        case GraphKind::Ba: return "ba";
    }
    return "unknown";
}

void to_json(nlohmann::json& j, const GenSpec& spec) {
    j = nlohmann::json{{"kind", graph_kind_name(spec.kind)},
                       {"n", spec.n},
                       {"m", spec.m},
                       {"seed", spec.seed},
                       {"weight_low", spec.weight_low},
                       {"weight_high", spec.weight_high}};
    if (spec.m_attach) j["m_attach"] = *spec.m_attach;
}

void from_json(const nlohmann::json& j, GenSpec& spec) {
    spec.kind = parse_graph_kind(j.at("kind").get<std::string>());
    spec.n = j.at("n").get<std::size_t>();
    spec.m = j.value("m", std::size_t{0});
    spec.seed = j.value("seed", std::uint64_t{0});
    spec.weight_low = j.value("weight_low", 1.0);
    spec.weight_high = j.value("weight_high", 1.0);
    if (j.contains("m_attach")) spec.m_attach = j.at("m_attach").get<std::size_t>();
}

WeightedGraph gen_chain(std::size_t n, std::size_t m) {
    if (n < 3 || m < n || m > max_edges(n)) {
        throw Error(ErrorKind::InfeasibleSpec, "chain needs n >= 3 and n <= m <= n(n-1)/2, got n=" +
                                                   std::to_string(n) + " m=" + std::to_string(m));
    }
    std::vector<Edge> edges;
    edges.reserve(m);
    for (std::size_t step = 1; edges.size() < m; ++step) {
        // The antipodal layer of an even ring only has n/2 distinct edges.
        const std::size_t layer = (2 * step == n) ? n / 2 : n;
        for (std::size_t i = 0; i < layer && edges.size() < m; ++i) {
            const std::size_t j = (i + step) % n;
            edges.push_back({std::min(i, j), std::max(i, j), 1.0});
        }
    }
    return WeightedGraph(n, std::move(edges));
}

WeightedGraph gen_star(std::size_t n, std::size_t m, std::uint64_t seed) {
    if (n < 2 || m < n - 1 || m > max_edges(n)) {
        throw Error(ErrorKind::InfeasibleSpec, "star needs n-1 <= m <= n(n-1)/2, got n=" + std::to_string(n) +
                                                   " m=" + std::to_string(m));
    }
    auto hub_edges = [n](std::size_t h) { return h * (n - h) + h * (h - 1) / 2; };
    std::size_t hubs = 1;
    while (hubs + 1 < n && hub_edges(hubs + 1) <= m) ++hubs;

    PairSet pairs;
    for (NodeId a = 0; a < hubs; ++a) {
        for (NodeId b = a + 1; b < n; ++b) pairs.emplace(a, b);
    }
    std::vector<NodeId> leaves;
    for (NodeId v = hubs; v < n; ++v) leaves.push_back(v);

    const std::size_t extra = m - pairs.size();
    if (extra > 0 && extra > max_edges(leaves.size())) {
        throw Error(ErrorKind::InfeasibleSpec, "not enough leaf pairs for the remaining edge budget");
    }
    Rng rng(seed);
    PairSet leaf_pairs;
    while (leaf_pairs.size() < extra) leaf_pairs.insert(random_pair(rng, leaves));
    pairs.insert(leaf_pairs.begin(), leaf_pairs.end());

    auto edges = to_edges(pairs);
    std::stable_partition(edges.begin(), edges.end(), [hubs](const Edge& e) { return e.u < hubs; });
    return WeightedGraph(n, std::move(edges));
}

WeightedGraph gen_gnm(std::size_t n, std::size_t m, std::uint64_t seed) {
    if (n < 2 || m > max_edges(n) || m < n - 1) {
        throw Error(ErrorKind::InfeasibleSpec, "connected G(n,m) needs n-1 <= m <= n(n-1)/2, got n=" +
                                                   std::to_string(n) + " m=" + std::to_string(m));
    }
    std::vector<NodeId> nodes(n);
    for (NodeId v = 0; v < n; ++v) nodes[v] = v;

    const std::size_t total = max_edges(n);
    const bool sample_complement = 2 * m > total;
    const std::size_t draws = sample_complement ? total - m : m;

    Rng rng(seed);
    for (int attempt = 0; attempt < kGnmMaxAttempts; ++attempt) {
        PairSet drawn;
        while (drawn.size() < draws) drawn.insert(random_pair(rng, nodes));
        PairSet pairs;
        if (sample_complement) {
            for (NodeId u = 0; u < n; ++u) {
                for (NodeId v = u + 1; v < n; ++v) {
                    if (!drawn.count({u, v})) pairs.emplace(u, v);
                }
            }
        } else {
            pairs = std::move(drawn);
        }
        WeightedGraph g(n, to_edges(pairs));
        if (is_connected(g)) return g;
    }
    throw Error(ErrorKind::ConnectivityRetryExceeded, "no connected G(" + std::to_string(n) + ", " +
                                                          std::to_string(m) + ") sample in " +
                                                          std::to_string(kGnmMaxAttempts) + " attempts");
}

WeightedGraph gen_ba(std::size_t n, std::size_t m_attach, std::uint64_t seed) {
    if (m_attach < 1 || m_attach >= n) {
        throw Error(ErrorKind::InfeasibleSpec, "preferential attachment needs 1 <= m_attach < n, got n=" +
                                                   std::to_string(n) + " m_attach=" + std::to_string(m_attach));
    }
    std::vector<Edge> edges;
    edges.reserve(m_attach * (n - m_attach));
    // Each endpoint appears once per incident edge, so a uniform draw from
    // this list is a degree-proportional draw over nodes.
    std::vector<NodeId> endpoints;
    endpoints.reserve(2 * m_attach * (n - m_attach));
    for (NodeId s = 0; s < m_attach; ++s) {
        edges.push_back({s, m_attach, 1.0});
        endpoints.push_back(s);
        endpoints.push_back(m_attach);
    }
    Rng rng(seed);
    for (NodeId node = m_attach + 1; node < n; ++node) {
        std::set<NodeId> targets;
        while (targets.size() < m_attach) targets.insert(endpoints[rng.below(endpoints.size())]);
        for (NodeId t : targets) {
            edges.push_back({t, node, 1.0});
            endpoints.push_back(t);
            endpoints.push_back(node);
        }
    }
    return WeightedGraph(n, std::move(edges));
}

WeightedGraph assign_weights(const WeightedGraph& g, double low, double high, std::uint64_t seed) {
    if (!(low > 0.0 && low <= high)) {
        throw Error(ErrorKind::InvalidArgument, "weight support needs 0 < low <= high");
    }
    Rng rng(seed);
    std::vector<double> weights(g.edge_count());
    for (auto& w : weights) w = rng.uniform(low, high);
    return g.with_weights(weights);
}

WeightedGraph generate(const GenSpec& spec) {
    WeightedGraph topology = [&] {
        switch (spec.kind) {
            case GraphKind::Chain: return gen_chain(spec.n, spec.m);
            case GraphKind::Star: return gen_star(spec.n, spec.m, spec.seed);
            case GraphKind::Gnm: return gen_gnm(spec.n, spec.m, spec.seed);
            case GraphKind::Ba: {
                std::size_t attach = spec.m_attach.value_or(0);
                if (!spec.m_attach) {
                    for (std::size_t a = 1; a < spec.n; ++a) {
                        if (a * (spec.n - a) == spec.m) {
                            attach = a;
                            break;
                        }
                    }
                    if (attach == 0) {
                        throw Error(ErrorKind::InfeasibleSpec, "no m_attach gives exactly m=" +
                                                                   std::to_string(spec.m) + " edges");
                    }
                }
                return gen_ba(spec.n, attach, spec.seed);
            }
        }
        throw Error(ErrorKind::InfeasibleSpec, "unknown graph kind");
    }();
    return assign_weights(topology, spec.weight_low, spec.weight_high, mix_seed(spec.seed, 1));
}

}  // namespace manifoldnet
