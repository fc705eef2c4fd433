// Acceptance run: one PASS/FAIL line per criterion, tolerances pinned below.
// Usage: acceptance [artifact-dir]   (default: a fresh directory under /tmp)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "manifoldnet/curvature.hpp"
#include "manifoldnet/harness.hpp"
#include "manifoldnet/ingest.hpp"
#include "manifoldnet/random.hpp"
#include "manifoldnet/spd.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace manifoldnet;

namespace {

constexpr double kDistTol = 1e-10;         // riem_dist(I, e I) vs sqrt(2)
constexpr double kMidpointTol = 1e-9;      // geodesic midpoint entries
constexpr double kRoundTripTol = 1e-8;     // exp/log round trips, relative Frobenius
constexpr double kAffineTol = 1e-8;        // invariance of riem_dist
constexpr double kFrechetTol = 1e-9;       // midpoint and commuting means, relative
constexpr double kGradientTol = 1e-9;      // Frechet gradient norm
constexpr double kEquivarianceTol = 1e-7;  // congruence equivariance of the mean, relative
constexpr double kCurvatureTol = 1e-9;
constexpr std::size_t kToyMinWins = 8;     // of 10 seeds
constexpr double kScaleFreeMinAccuracy = 0.90;
constexpr std::uint64_t kScaleFreeSeed = 1;
constexpr std::uint64_t kExpressionSeed = 11;
constexpr std::uint64_t kFixtureSeed = 2024;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " FAILED[" << what << "]";
        }
    }
};

using Clock = std::chrono::steady_clock;

bool report(int id, const std::string& title, double limit_s, const std::function<void(Outcome&)>& body) {
    Outcome o;
    const auto start = Clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail << " exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    o.require(secs < limit_s, "time limit");
    std::printf("[%s] criterion %d: %s (%.2f s, limit %.0f s)%s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(),
                secs, limit_s, o.detail.str().c_str());
    std::fflush(stdout);
    return o.pass;
}

double rel(const Matrix& a, const Matrix& b) { return (a - b).norm() / std::max(1.0, b.norm()); }

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

// ---- criterion 1 ----

void geometry(Outcome& o) {
    const SPDPoint id = SPDPoint::identity(2);
    Matrix e_id = std::exp(1.0) * Matrix::Identity(2, 2);
    const double d = riem_dist(id, SPDPoint(e_id));
    o.require(std::abs(d - std::sqrt(2.0)) <= kDistTol, "riem_dist(I, eI)");

    const Matrix mid = geodesic(id, SPDPoint(4.0 * Matrix::Identity(2, 2)), 0.5).matrix();
    o.require((mid - 2.0 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= kMidpointTol, "midpoint");

    double worst_roundtrip = 0.0, worst_affine = 0.0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        const SPDPoint a(oracle::random_spd(6, 1000 + s));
        const SPDPoint b(oracle::random_spd(6, 2000 + s));
        const TangentVector chi = log_map(a, b);
        worst_roundtrip = std::max(worst_roundtrip, rel(exp_map(a, chi).matrix(), b.matrix()));
        worst_roundtrip = std::max(worst_roundtrip, rel(log_map(a, exp_map(a, chi)).matrix(), chi.matrix()));

        // Congruence against the same pair, and commuting pairs against sum ln^2.
        const Matrix g = oracle::random_matrix(6, 3000 + s);
        const double dab = riem_dist(a, b);
        const double dg = riem_dist(SPDPoint(g * a.matrix() * g.transpose()), SPDPoint(g * b.matrix() * g.transpose()));
        worst_affine = std::max(worst_affine, std::abs(dg - dab));

        Vector p = a.matrix().diagonal(), q = b.matrix().diagonal();
        double closed = 0.0;
        for (Eigen::Index i = 0; i < 6; ++i) closed += std::pow(std::log(q(i) / p(i)), 2);
        worst_affine = std::max(worst_affine, std::abs(riem_dist(SPDPoint::diagonal(p), SPDPoint::diagonal(q)) -
                                                       std::sqrt(closed)));
    }
    o.require(worst_roundtrip <= kRoundTripTol, "exp/log round trip");
    o.require(worst_affine <= kAffineTol, "affine invariance");
    o.detail << " |d-sqrt2|=" << fmt(std::abs(d - std::sqrt(2.0))) << " roundtrip=" << fmt(worst_roundtrip)
             << " affine=" << fmt(worst_affine);
}

// ---- criterion 2 ----

void frechet(Outcome& o) {
    double worst_mid = 0.0;
    for (std::uint64_t s = 0; s < 10; ++s) {
        const Matrix a = oracle::random_spd(5, 4000 + s), b = oracle::random_spd(5, 5000 + s);
        const std::vector<SPDPoint> pair{SPDPoint(a), SPDPoint(b)};
        worst_mid = std::max(worst_mid, rel(frechet_mean(pair).mean.matrix(), oracle::geodesic(a, b, 0.5)));
    }
    o.require(worst_mid <= kFrechetTol, "two-point midpoint");

    std::vector<SPDPoint> diag;
    Vector log_sum = Vector::Zero(4);
    for (std::uint64_t s = 0; s < 10; ++s) {
        Vector v = oracle::random_spd(4, 6000 + s).diagonal();
        log_sum += v.array().log().matrix();
        diag.push_back(SPDPoint::diagonal(v));
    }
    const Matrix geometric = (log_sum / 10.0).array().exp().matrix().asDiagonal();
    const double commuting = rel(frechet_mean(diag).mean.matrix(), geometric);
    o.require(commuting <= kFrechetTol, "commuting geometric mean");

    double worst_grad = 0.0, worst_equiv = 0.0;
    int worst_iter = 0;
    for (std::uint64_t c = 0; c < 5; ++c) {
        std::vector<SPDPoint> cohort, moved;
        const Matrix g = oracle::random_matrix(10, 7000 + c);
        for (std::uint64_t s = 0; s < 20; ++s) {
            const Matrix m = oracle::random_spd(10, 8000 + 100 * c + s);
            cohort.emplace_back(m);
            moved.emplace_back(g * m * g.transpose());
        }
        const auto r = frechet_mean(cohort);
        worst_grad = std::max(worst_grad, r.gradient_norm);
        worst_iter = std::max(worst_iter, r.iterations);
        const Matrix expected = g * r.mean.matrix() * g.transpose();
        worst_equiv = std::max(worst_equiv, rel(frechet_mean(moved).mean.matrix(), expected));
    }
    o.require(worst_grad <= kGradientTol && worst_iter <= 100, "convergence");
    o.require(worst_equiv <= kEquivarianceTol, "congruence equivariance");
    o.detail << " midpoint=" << fmt(worst_mid) << " commuting=" << fmt(commuting) << " grad=" << fmt(worst_grad)
             << " iters<=" << worst_iter << " equivariance=" << fmt(worst_equiv);
}

// ---- criterion 3 ----

WeightedGraph build(std::size_t n, const std::vector<oracle::E>& edges) {
    std::vector<Edge> out;
    for (const auto& e : edges) out.push_back({e.u, e.v, e.w});
    return WeightedGraph(n, out);
}

double brute_curvature(std::size_t n, const std::vector<oracle::E>& edges, std::size_t x, std::size_t y) {
    const auto hop = oracle::floyd_warshall(n, edges);
    std::vector<std::size_t> nx, ny;
    for (const auto& e : edges) {
        if (e.u == x) nx.push_back(e.v);
        if (e.v == x) nx.push_back(e.u);
        if (e.u == y) ny.push_back(e.v);
        if (e.v == y) ny.push_back(e.u);
    }
    oracle::Mat cost(static_cast<Eigen::Index>(nx.size()), static_cast<Eigen::Index>(ny.size()));
    for (std::size_t i = 0; i < nx.size(); ++i)
        for (std::size_t j = 0; j < ny.size(); ++j) cost(i, j) = hop[nx[i]][ny[j]];
    std::vector<double> a(nx.size(), 1.0 / nx.size()), b(ny.size(), 1.0 / ny.size());
    return 1.0 - oracle::transport_by_vertices(a, b, cost) / hop[x][y];
}

void curvature(Outcome& o) {
    double worst = 0.0;
    auto check = [&](const std::string& name, std::size_t n, const std::vector<oracle::E>& edges, double closed) {
        const double lib = ollivier_curvature(build(n, edges), edges[0].u, edges[0].v);
        const double brute = brute_curvature(n, edges, edges[0].u, edges[0].v);
        const double err = std::max(std::abs(lib - brute), std::abs(lib - closed));
        worst = std::max(worst, err);
        o.require(err <= kCurvatureTol, name);
    };
    check("K2", 2, {{0, 1}}, 0.0);
    check("K3", 3, oracle::complete(3), 0.5);
    check("C4", 4, oracle::cycle(4), 0.0);
    double worst_spectral = 0.0;
    for (std::size_t n = 3; n <= 6; ++n) {
        const double kappa = static_cast<double>(n - 2) / static_cast<double>(n - 1);
        check("K" + std::to_string(n), n, oracle::complete(n), kappa);
        const auto r = spectral_curvature_report(build(n, oracle::complete(n)));
        worst_spectral = std::max(worst_spectral, std::abs(r.eigenvalues.back() - (2.0 - r.min_edge_curvature)));
        o.require(r.bound_satisfied, "bound K" + std::to_string(n));
    }
    o.require(worst_spectral <= kCurvatureTol, "lambda_N = 2 - kappa");
    o.detail << " curvature err=" << fmt(worst) << " spectral err=" << fmt(worst_spectral);
}

// ---- criteria 4-6 ----

ExperimentOptions options_for(const fs::path& dir) {
    ExperimentOptions opt;
    opt.out_dir = dir;
    return opt;
}

void toy(Outcome& o, const fs::path& dir) {
    ToyConfig config;
    for (std::uint64_t s = 0; s < 10; ++s) config.seeds.push_back(s);
    config.options = options_for(dir);
    const auto r = run_toy(config);
    for (const auto& s : r["ordering_summary"]["per_support"]) {
        const auto wins = s["riemannian_star_random_smallest"].get<std::size_t>();
        const std::string support = "(" + fmt(s["support"][0].get<double>()) + "," + fmt(s["support"][1].get<double>()) + ")";
        o.require(wins >= kToyMinWins, "support " + support);
        o.detail << " " << support << ": riemannian " << wins << "/10, frobenius "
                 << s["frobenius_star_random_smallest"].get<std::size_t>() << "/10;";
    }
}

void scalefree(Outcome& o, const fs::path& dir) {
    ScaleFreeConfig config;
    config.seed = kScaleFreeSeed;
    config.options = options_for(dir);
    const auto r = run_scalefree(config);
    const auto& stats = r["class_stats"]["riemannian"];
    double intra_max = 0.0, inter = 0.0;
    for (const auto& p : stats) {
        const double mean = p["mean"].get<double>();
        if (p["class_a"] == p["class_b"]) {
            intra_max = std::max(intra_max, mean);
        } else {
            inter = mean;
        }
    }
    const double acc = r["clustering"]["riemannian"]["accuracy"].get<double>();
    o.require(inter > intra_max, "inter > intra");
    o.require(acc >= kScaleFreeMinAccuracy, "accuracy");
    o.detail << " inter=" << fmt(inter) << " max intra=" << fmt(intra_max) << " accuracy=" << acc
             << " (frobenius accuracy=" << r["clustering"]["frobenius"]["accuracy"].get<double>() << ")";
}

double normal(Rng& rng) {
    const double u1 = 1.0 - rng.uniform();
    const double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

// Two latent factors drive two gene blocks. Class A blocks are contiguous
// halves, class B blocks alternate by parity.
ExpressionMatrix planted_class(bool contiguous, std::uint64_t seed, const std::string& prefix) {
    constexpr int kGenes = 50, kSamples = 40;
    ExpressionMatrix e;
    e.values.resize(kGenes, kSamples);
    for (int g = 0; g < kGenes; ++g) {
        char name[8];
        std::snprintf(name, sizeof name, "g%02d", g);
        e.gene_ids.emplace_back(name);
    }
    for (int s = 0; s < kSamples; ++s) e.sample_ids.push_back(prefix + std::to_string(s));
    Rng rng(seed);
    for (int s = 0; s < kSamples; ++s) {
        const double f[2] = {normal(rng), normal(rng)};
        for (int g = 0; g < kGenes; ++g) {
            const int block = contiguous ? (g < kGenes / 2 ? 0 : 1) : g % 2;
            e.values(g, s) = f[block] + 0.4 * normal(rng);
        }
    }
    return e;
}

TopologyTemplate planted_topology(std::uint64_t seed) {
    constexpr int kGenes = 50, kExtra = 100;
    auto name = [](int g) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "g%02d", g);
        return std::string(buf);
    };
    TopologyTemplate t;
    std::set<std::pair<int, int>> seen;
    for (int g = 0; g < kGenes; ++g) {
        const int h = (g + 1) % kGenes;
        seen.insert(std::minmax(g, h));
        t.pairs.emplace_back(name(g), name(h));
    }
    Rng rng(seed);
    while (static_cast<int>(seen.size()) < kGenes + kExtra) {
        const int a = static_cast<int>(rng.below(kGenes)), b = static_cast<int>(rng.below(kGenes));
        if (a == b || !seen.insert(std::minmax(a, b)).second) continue;
        t.pairs.emplace_back(name(a), name(b));
    }
    return t;
}

void expression(Outcome& o, const fs::path& dir) {
    const auto a = planted_class(true, mix_seed(kFixtureSeed, 0), "a");
    const auto b = planted_class(false, mix_seed(kFixtureSeed, 1), "b");
    const auto topo = planted_topology(mix_seed(kFixtureSeed, 2));
    o.require(topo.pairs.size() == 150, "150-edge topology");
    ExpressionConfig config;
    config.seed = kExpressionSeed;
    config.class_a = "contiguous";
    config.class_b = "alternating";
    config.options = options_for(dir);
    const auto r = run_expression(a, b, topo, config);
    double intra_max = 0.0, inter = 0.0;
    for (const auto& p : r["class_stats"]["riemannian"]) {
        const double mean = p["mean"].get<double>();
        if (p["class_a"] == p["class_b"]) {
            intra_max = std::max(intra_max, mean);
        } else {
            inter = mean;
        }
    }
    o.require(inter > intra_max, "inter > intra");
    o.detail << " inter=" << fmt(inter) << " max intra=" << fmt(intra_max)
             << " accuracy=" << r["clustering"]["riemannian"]["accuracy"].get<double>();
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

void determinism(Outcome& o, const fs::path& first, const fs::path& second) {
    Outcome scratch;
    toy(scratch, second / "toy");
    scalefree(scratch, second / "scalefree");
    expression(scratch, second / "expression");
    std::size_t compared = 0;
    for (const auto& entry : fs::recursive_directory_iterator(first)) {
        if (!entry.is_regular_file()) continue;
        const fs::path rel_path = fs::relative(entry.path(), first);
        const fs::path twin = second / rel_path;
        const bool same = fs::exists(twin) && slurp(entry.path()) == slurp(twin);
        o.require(same, rel_path.string());
        ++compared;
    }
    o.require(compared > 0, "artifacts present");
    o.detail << " " << compared << " artifacts byte-identical";
}

}  // namespace

int main(int argc, char** argv) {
    const fs::path root = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "manifoldnet_acceptance";
    fs::remove_all(root);
    const fs::path run1 = root / "run1", run2 = root / "run2";

    std::cout << "acceptance artifacts: " << root.string() << '\n';
    bool ok = true;
    ok &= report(1, "closed-form geometry", 5, geometry);
    ok &= report(2, "Frechet mean", 10, frechet);
    ok &= report(3, "curvature oracles", 10, curvature);
    ok &= report(4, "toy ordering d(star,random) smallest >= 8/10 per support", 120,
                 [&](Outcome& o) { toy(o, run1 / "toy"); });
    ok &= report(5, "scale-free vs random separation, accuracy >= 0.90", 600,
                 [&](Outcome& o) { scalefree(o, run1 / "scalefree"); });
    ok &= report(6, "expression fixture inter > intra", 120, [&](Outcome& o) { expression(o, run1 / "expression"); });
    ok &= report(7, "determinism of criteria 4-6 artifacts", 900,
                 [&](Outcome& o) { determinism(o, run1, run2); });
    std::cout << (ok ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED") << '\n';
    return ok ? 0 : 1;
}
