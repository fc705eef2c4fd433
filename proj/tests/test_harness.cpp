#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "manifoldnet/harness.hpp"
#include "manifoldnet/netgen.hpp"
#include "oracles.hpp"

using namespace manifoldnet;

namespace {

DistanceMatrix from_entries(const Matrix& m, std::vector<std::string> labels = {}) {
    if (labels.empty()) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) labels.push_back("n" + std::to_string(i));
    }
    return DistanceMatrix{labels, Metric::Riemannian, m};
}

// Points on a line: distances |x_i - x_j|.
DistanceMatrix line(const std::vector<double>& xs) {
    const auto n = static_cast<Eigen::Index>(xs.size());
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = std::abs(xs[i] - xs[j]);
    return from_entries(m);
}

double brute_force_kmedoids(const DistanceMatrix& dm, std::size_t k) {
    const std::size_t n = dm.size();
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
    double best = std::numeric_limits<double>::infinity();
    do {
        double cost = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            double nearest = std::numeric_limits<double>::infinity();
            for (std::size_t q = 0; q < n; ++q)
                if (pick[q]) nearest = std::min(nearest, dm.entries(p, q));
            cost += nearest;
        }
        best = std::min(best, cost);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return best;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("pairwise matrix is exactly symmetric with a zero diagonal") {
    std::vector<SPDPoint> pts;
    std::vector<std::string> labels;
    for (std::uint64_t s = 0; s < 7; ++s) {
        pts.emplace_back(oracle::random_spd(4, s));
        labels.push_back("p" + std::to_string(s));
    }
    const auto riem = pairwise_matrix(pts, labels, Metric::Riemannian, 3);
    const auto seq = pairwise_matrix(pts, labels, Metric::Riemannian, 1);
    const auto frob = pairwise_matrix(pts, labels, Metric::Frobenius);
    CHECK(riem.entries == riem.entries.transpose());
    CHECK(riem.entries == seq.entries);
    CHECK(riem.entries.diagonal().isZero(0.0));
    CHECK(std::abs(riem.entries(1, 4) - oracle::riem_dist(pts[1].matrix(), pts[4].matrix())) < 1e-9);
    CHECK(frob.entries(2, 5) == doctest::Approx((pts[2].matrix() - pts[5].matrix()).norm()));
    CHECK_THROWS_AS(pairwise_matrix(pts, {"a"}, Metric::Riemannian), Error);
    CHECK(parse_metric("frobenius") == Metric::Frobenius);
    CHECK_THROWS_AS(parse_metric("cosine"), Error);
}

TEST_CASE("distance CSV has a label header") {
    std::ostringstream out;
    write_distance_csv(line({0.0, 1.5}), out);
    CHECK(out.str() == "n0,n1\n0,1.5\n1.5,0\n");
}

TEST_CASE("class statistics use population deviation and exclude the diagonal") {
    const auto dm = line({0.0, 1.0, 10.0, 13.0});
    const std::vector<std::string> classes{"a", "a", "b", "b"};
    const ClassReport r = class_stats(dm, classes);
    CHECK(r.classes == std::vector<std::string>{"a", "b"});
    REQUIRE(r.pairs.size() == 3);
    CHECK(r.pair("a", "a").pair_count == 1);
    CHECK(*r.pair("a", "a").mean == 1.0);
    CHECK(*r.pair("a", "a").stddev == 0.0);
    // Inter distances: 10, 13, 9, 12 -> mean 11, population variance 2.5.
    CHECK(*r.pair("b", "a").mean == 11.0);
    CHECK(*r.pair("a", "b").stddev == doctest::Approx(std::sqrt(2.5)));
    CHECK(r.inter_exceeds_intra());

    const ClassReport single = class_stats(line({0.0, 1.0, 2.0}), std::vector<std::string>{"a", "a", "b"});
    CHECK(single.pair("b", "b").pair_count == 0);
    CHECK(!single.pair("b", "b").mean);
    CHECK_THROWS_AS(class_stats(dm, std::vector<std::string>{"a", "b"}), Error);
    CHECK_THROWS_AS(class_stats(dm, std::vector<std::string>{"a", "b", "", "a"}), Error);
}

TEST_CASE("k-medoids reaches the exhaustive optimum on small instances") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        std::vector<double> xs;
        std::uint64_t state = seed + 1;
        for (int i = 0; i < 10; ++i) {
            state = state * 6364136223846793005ULL + 1442695040888963407ULL;
            xs.push_back(static_cast<double>(state >> 40) / 1e5 + (i < 5 ? 0.0 : 300.0));
        }
        const auto dm = line(xs);
        for (std::size_t k : {1, 2, 3}) {
            const auto r = cluster_kmedoids(dm, k, seed);
            CHECK(r.medoids.size() == k);
            CHECK(std::abs(r.cost - brute_force_kmedoids(dm, k)) < 1e-9);
            CHECK(std::abs(r.cost - clustering_cost(dm, r.medoids)) < 1e-12);
        }
        const auto two = cluster_kmedoids(dm, 2, seed);
        CHECK(two.assignment[0] == 0);
        std::vector<std::string> classes;
        for (int i = 0; i < 10; ++i) classes.push_back(i < 5 ? "left" : "right");
        CHECK(clustering_accuracy(two.assignment, classes) == 1.0);
    }
    CHECK_THROWS_AS(cluster_kmedoids(line({0, 1}), 3, 0), Error);
}

TEST_CASE("clustering accuracy uses the best relabelling") {
    const std::vector<std::size_t> assignment{1, 1, 0, 0, 0};
    CHECK(clustering_accuracy(assignment, std::vector<std::string>{"x", "x", "y", "y", "x"}) == 0.8);
    const std::vector<std::size_t> lumped{0, 0, 0, 0};
    CHECK(clustering_accuracy(lumped, std::vector<std::string>{"a", "a", "b", "b"}) == 0.5);
}

TEST_CASE("heat map is a binary PPM with the blue-green-red ramp") {
    const auto dm = line({0.0, 1.0, 2.0});
    const std::string img = heatmap_ppm(dm, 6);
    const std::string header = "P6\n6 6\n255\n";
    REQUIRE(img.size() == header.size() + 3 * 36);
    CHECK(img.substr(0, header.size()) == header);
    auto pixel = [&](std::size_t x, std::size_t y) {
        const std::size_t at = header.size() + 3 * (y * 6 + x);
        return std::array<int, 3>{static_cast<unsigned char>(img[at]), static_cast<unsigned char>(img[at + 1]),
                                  static_cast<unsigned char>(img[at + 2])};
    };
    CHECK(pixel(0, 0) == std::array<int, 3>{0, 0, 255});    // min -> blue
    CHECK(pixel(2, 0) == std::array<int, 3>{0, 255, 0});    // mid -> green
    CHECK(pixel(5, 0) == std::array<int, 3>{255, 0, 0});    // max -> red
    CHECK(pixel(1, 0) == pixel(0, 1));                       // upscaled blocks
    CHECK(heatmap_ppm(dm, 2).substr(0, 11) == "P6\n3 3\n255\n");  // never smaller than the matrix
}

TEST_CASE("scale-free preset writes the documented artifacts") {
    const auto dir = std::filesystem::temp_directory_path() / "manifoldnet_harness_test";
    std::filesystem::remove_all(dir);
    ScaleFreeConfig config;
    config.n_per_class = 4;
    config.n = 40;
    config.m = 3 * 37;
    config.m_attach = 3;
    config.seed = 5;
    config.options.out_dir = dir;
    config.options.heatmap_side = 16;
    const auto report = run_scalefree(config);
    std::vector<std::string> keys;
    for (const auto& [key, value] : report.items()) keys.push_back(key);
    CHECK(keys == std::vector<std::string>{"config", "seed", "matrices", "class_stats", "clustering",
                                           "ordering_summary", "warnings"});
    CHECK(report["matrices"]["riemannian"]["csv"] == "scalefree_riemannian.csv");
    for (const char* f : {"report.json", "scalefree_riemannian.csv", "scalefree_frobenius.csv",
                          "scalefree_riemannian.ppm", "scalefree_frobenius.ppm"}) {
        CHECK(std::filesystem::exists(dir / f));
    }
    CHECK(slurp(dir / "report.json") == report.dump(2) + "\n");
    std::filesystem::remove_all(dir);
}

TEST_CASE("toy preset on a small instance") {
    ToyConfig config;
    config.n = 20;
    config.m = 40;
    config.seeds = {0, 1};
    config.weight_supports = {{1.0, 1.0}, {1.0, 2.0}};
    const auto report = run_toy(config);
    const auto& per = report["ordering_summary"]["per_support"];
    REQUIRE(per.size() == 2);
    CHECK(per[0]["seeds"] == 2);
    CHECK(report["ordering_summary"]["records"].size() == 4);
    const auto& rec = report["ordering_summary"]["records"][0];
    CHECK(rec["riemannian"]["star_random"].get<double>() > 0.0);
    CHECK(report == run_toy(config));
}
