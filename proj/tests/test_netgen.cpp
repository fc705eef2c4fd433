#include <doctest.h>

#include <algorithm>
#include <set>

#include "manifoldnet/netgen.hpp"
#include "manifoldnet/random.hpp"
#include "oracles.hpp"

using namespace manifoldnet;

namespace {

// Reference xoshiro256** step as published by its authors.
struct RefXoshiro {
    std::uint64_t s[4];
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t next() {
        const std::uint64_t result = rotl(s[1] * 5, 7) * 9;
        const std::uint64_t t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = rotl(s[3], 45);
        return result;
    }
};

std::size_t diameter(const WeightedGraph& g) {
    std::vector<oracle::E> edges;
    for (const auto& e : g.edges()) edges.push_back({e.u, e.v});
    const auto d = oracle::floyd_warshall(g.node_count(), edges);
    double best = 0.0;
    for (const auto& row : d)
        for (double x : row) best = std::max(best, x);
    return static_cast<std::size_t>(best);
}

bool same_graph(const WeightedGraph& a, const WeightedGraph& b) {
    if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) return false;
    for (std::size_t i = 0; i < a.edge_count(); ++i) {
        const auto &x = a.edges()[i], &y = b.edges()[i];
        if (x.u != y.u || x.v != y.v || x.weight != y.weight) return false;
    }
    return true;
}

void check_simple(const WeightedGraph& g) {
    std::set<std::pair<NodeId, NodeId>> seen;
    for (const auto& e : g.edges()) {
        CHECK(e.u < e.v);
        CHECK(seen.insert({e.u, e.v}).second);
    }
}

}  // namespace

TEST_CASE("splitmix64 and xoshiro256** match published reference values") {
    CHECK(splitmix64(0) == 0xE220A8397B1DCDAFULL);
    RefXoshiro ref{};
    std::uint64_t x = 42;
    for (auto& w : ref.s) {
        w = splitmix64(x);
        x += 0x9E3779B97F4A7C15ULL;
    }
    Rng rng(42);
    for (int i = 0; i < 100; ++i) CHECK(rng.next() == ref.next());
    Rng a(7), b(7);
    for (int i = 0; i < 50; ++i) CHECK(a.below(13) == b.below(13));
    Rng c(1);
    for (int i = 0; i < 1000; ++i) {
        const double u = c.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        CHECK(c.below(5) < 5);
    }
    CHECK(mix_seed(3, 1) != mix_seed(3, 2));
}

TEST_CASE("chain generator is a ring lattice") {
    const WeightedGraph c5 = gen_chain(5, 5);
    CHECK(c5.edge_count() == 5);
    for (NodeId v = 0; v < 5; ++v) CHECK(c5.neighbors(v).size() == 2);
    CHECK(diameter(c5) == 2);

    const WeightedGraph c = gen_chain(200, 400);
    CHECK(c.edge_count() == 400);
    for (NodeId v = 0; v < 200; ++v) CHECK(c.degree(v) == 4.0);
    CHECK(diameter(c) == 50);
    check_simple(c);
    CHECK(gen_chain(6, 15).edge_count() == 15);  // complete graph incl. the antipodal layer
    CHECK_THROWS_AS(gen_chain(5, 11), Error);
    CHECK_THROWS_AS(gen_chain(5, 4), Error);
}

TEST_CASE("star generator keeps hubs dominant and the diameter small") {
    const WeightedGraph s = gen_star(200, 400, 1);
    CHECK(s.edge_count() == 400);
    CHECK(is_connected(s));
    check_simple(s);
    CHECK(s.neighbors(0).size() == 199);
    CHECK(s.neighbors(1).size() == 199);
    CHECK(diameter(s) <= 3);
    CHECK(same_graph(s, gen_star(200, 400, 1)));
    CHECK(!same_graph(s, gen_star(200, 400, 2)));
    const WeightedGraph plain = gen_star(10, 9, 0);
    CHECK(plain.neighbors(0).size() == 9);
}

TEST_CASE("G(n, m) has exactly m edges and is connected") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const WeightedGraph g = gen_gnm(200, 400, seed);
        CHECK(g.edge_count() == 400);
        CHECK(is_connected(g));
        check_simple(g);
    }
    const WeightedGraph dense = gen_gnm(10, 40, 3);  // complement sampling
    CHECK(dense.edge_count() == 40);
    check_simple(dense);
    CHECK(same_graph(gen_gnm(50, 80, 11), gen_gnm(50, 80, 11)));
    try {
        gen_gnm(10, 9, 0);  // trees only: connected samples are rare but possible
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ConnectivityRetryExceeded);
    }
    CHECK_THROWS_AS(gen_gnm(10, 5, 0), Error);
}

TEST_CASE("preferential attachment has the closed-form edge count") {
    const WeightedGraph g = gen_ba(200, 6, 7);
    CHECK(g.edge_count() == 1164);
    CHECK(is_connected(g));
    check_simple(g);
    CHECK(same_graph(g, gen_ba(200, 6, 7)));
    double max_degree = 0.0;
    for (NodeId v = 0; v < 200; ++v) max_degree = std::max(max_degree, g.degree(v));
    CHECK(max_degree > 30.0);  // hubs emerge
    CHECK(gen_ba(10, 1, 0).edge_count() == 9);
    CHECK_THROWS_AS(gen_ba(5, 5, 0), Error);
}

TEST_CASE("weights are uniform on the support and deterministic") {
    const WeightedGraph g = gen_gnm(30, 60, 1);
    const WeightedGraph one = assign_weights(g, 1.0, 1.0, 5);
    for (const auto& e : one.edges()) CHECK(e.weight == 1.0);
    const WeightedGraph w = assign_weights(g, 1.0, 2.0, 5);
    for (const auto& e : w.edges()) {
        CHECK(e.weight >= 1.0);
        CHECK(e.weight <= 2.0);
    }
    CHECK(same_graph(w, assign_weights(g, 1.0, 2.0, 5)));
    CHECK_THROWS_AS(assign_weights(g, 0.0, 1.0, 5), Error);
    CHECK_THROWS_AS(assign_weights(g, 2.0, 1.0, 5), Error);
}

TEST_CASE("GenSpec JSON round trip and derived attachment degree") {
    GenSpec spec;
    spec.kind = GraphKind::Ba;
    spec.n = 200;
    spec.m = 1164;
    spec.seed = 9;
    const nlohmann::json j = spec;
    const GenSpec back = j.get<GenSpec>();
    CHECK(back.kind == GraphKind::Ba);
    CHECK(back.m == 1164);
    CHECK(!back.m_attach);
    CHECK(generate(back).edge_count() == 1164);
    CHECK(same_graph(generate(back), gen_ba(200, 6, 9)));
    spec.m = 1165;
    CHECK_THROWS_AS(generate(spec), Error);
    CHECK(parse_graph_kind("star") == GraphKind::Star);
    CHECK_THROWS_AS(parse_graph_kind("tree"), Error);
}
