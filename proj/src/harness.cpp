#include "manifoldnet/harness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>

#include "manifoldnet/io.hpp"
#include "manifoldnet/netgen.hpp"
#include "manifoldnet/parallel.hpp"
#include "manifoldnet/random.hpp"

namespace manifoldnet {
namespace {

using Json = nlohmann::ordered_json;

std::string indexed(const std::string& prefix, std::size_t i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "_%02zu", i);
    return prefix + buf;
}

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json class_pairs_json(const ClassReport& report) {
    Json pairs = Json::array();
    for (const auto& p : report.pairs) {
        pairs.push_back(Json{{"class_a", p.class_a},
                             {"class_b", p.class_b},
                             {"pairs", p.pair_count},
                             {"mean", optional_json(p.mean)},
                             {"stddev", optional_json(p.stddev)}});
    }
    return pairs;
}

Json clustering_json(const ClusteringResult& c, double accuracy) {
    return Json{{"k", c.medoids.size()},
                {"assignment", c.assignment},
                {"medoids", c.medoids},
                {"cost", c.cost},
                {"accuracy", accuracy}};
}

Json options_json(const ExperimentOptions& o) {
    return Json{{"eps", o.eps},
                {"trace_normalize", o.trace_normalize},
                {"heatmap_side", o.heatmap_side}};
}

Json support_json(const std::pair<double, double>& s) { return Json::array({s.first, s.second}); }

// Distances, class statistics, clustering and artifacts for one labelled
// cohort under both metrics; fills the shared report sections.
void analyse_cohort(std::span<const SPDPoint> points, const std::vector<std::string>& labels,
                    const std::vector<std::string>& classes, std::uint64_t cluster_seed, std::size_t restarts,
                    const ExperimentOptions& options, const std::string& stem, Json& report) {
    std::size_t class_count = 0;
    {
        std::vector<std::string> distinct;
        for (const auto& c : classes) {
            if (std::find(distinct.begin(), distinct.end(), c) == distinct.end()) distinct.push_back(c);
        }
        class_count = distinct.size();
    }
    for (Metric metric : {Metric::Riemannian, Metric::Frobenius}) {
        const std::string name(metric_name(metric));
        const DistanceMatrix dm = pairwise_matrix(points, labels, metric, options.threads);
        ClassReport stats = class_stats(dm, classes);
        const ClusteringResult clusters = cluster_kmedoids(dm, class_count, cluster_seed, restarts);
        const double accuracy = clustering_accuracy(clusters.assignment, classes);

        report["class_stats"][name] = class_pairs_json(stats);
        report["clustering"][name] = clustering_json(clusters, accuracy);
        report["ordering_summary"][name] = Json{{"inter_exceeds_intra", stats.inter_exceeds_intra()}};

        if (!options.out_dir.empty()) {
            const std::string csv = stem + "_" + name + ".csv";
            const std::string ppm = stem + "_" + name + ".ppm";
            write_distance_csv(dm, options.out_dir / csv);
            heatmap(dm, options.out_dir / ppm, options.heatmap_side);
            report["matrices"][name] = Json{{"csv", csv}, {"heatmap", ppm}};
        }
    }
}

Json empty_report(Json config, Json seed) {
    Json report;
    report["config"] = std::move(config);
    report["seed"] = std::move(seed);
    report["matrices"] = Json::object();
    report["class_stats"] = Json::object();
    report["clustering"] = Json::object();
    report["ordering_summary"] = Json::object();
    report["warnings"] = Json::array();
    return report;
}

void emit_report(const ExperimentOptions& options, const Json& report) {
    if (options.out_dir.empty()) return;
    write_text_file(options.out_dir / "report.json", report.dump(2) + "\n");
}

}  // namespace

Metric parse_metric(std::string_view text) {
    if (text == "riemannian") return Metric::Riemannian;
    if (text == "frobenius") return Metric::Frobenius;
    throw Error(ErrorKind::InvalidArgument, "unknown metric '" + std::string(text) + "'");
}

std::string_view metric_name(Metric metric) noexcept {
    return metric == Metric::Riemannian ? "riemannian" : "frobenius";
}

DistanceMatrix pairwise_matrix(std::span<const SPDPoint> points, std::vector<std::string> labels, Metric metric,
                               std::size_t threads) {
    if (labels.size() != points.size()) {
        throw Error(ErrorKind::UnlabeledNetwork, std::to_string(points.size()) + " points but " +
                                                     std::to_string(labels.size()) + " labels");
    }
    const auto n = static_cast<Eigen::Index>(points.size());
    for (const auto& p : points) {
        if (p.dim() != points.front().dim()) throw Error(ErrorKind::DimMismatch, "cohort mixes matrix sizes");
    }
    std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    }
    DistanceMatrix dm{std::move(labels), metric, Matrix::Zero(n, n)};
    parallel_for(pairs.size(), threads, [&](std::size_t k) {
        const auto [i, j] = pairs[k];
        double d = 0.0;
        try {
            d = metric == Metric::Riemannian ? riem_dist(points[i], points[j])
                                             : frobenius_dist(points[i].matrix(), points[j].matrix());
        } catch (const Error& err) {
            throw Error(err.kind(), "pair (" + dm.labels[i] + ", " + dm.labels[j] + "): " + err.detail());
        }
        dm.entries(i, j) = d;
        dm.entries(j, i) = d;
    });
    return dm;
}

void write_distance_csv(const DistanceMatrix& dm, std::ostream& out) {
    for (std::size_t i = 0; i < dm.labels.size(); ++i) out << (i ? "," : "") << dm.labels[i];
    out << '\n';
    write_matrix_csv(dm.entries, out);
}

void write_distance_csv(const DistanceMatrix& dm, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
    write_distance_csv(dm, out);
    if (!out) throw Error(ErrorKind::IoError, "failed writing " + path.string());
}

const ClassPairStats& ClassReport::pair(const std::string& a, const std::string& b) const {
    for (const auto& p : pairs) {
        if ((p.class_a == a && p.class_b == b) || (p.class_a == b && p.class_b == a)) return p;
    }
    throw Error(ErrorKind::InvalidArgument, "no class pair " + a + " / " + b);
}

bool ClassReport::inter_exceeds_intra() const {
    double max_intra = -std::numeric_limits<double>::infinity();
    double min_inter = std::numeric_limits<double>::infinity();
    bool any_inter = false;
    for (const auto& p : pairs) {
        if (!p.mean) continue;
        if (p.class_a == p.class_b) {
            max_intra = std::max(max_intra, *p.mean);
        } else {
            min_inter = std::min(min_inter, *p.mean);
            any_inter = true;
        }
    }
    return any_inter && min_inter > max_intra;
}

ClassReport class_stats(const DistanceMatrix& dm, std::span<const std::string> classes) {
    if (classes.size() != dm.size()) {
        throw Error(ErrorKind::UnlabeledNetwork, std::to_string(dm.size()) + " networks but " +
                                                     std::to_string(classes.size()) + " class tags");
    }
    ClassReport report;
    std::vector<std::size_t> class_of(classes.size());
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (classes[i].empty()) throw Error(ErrorKind::UnlabeledNetwork, "network " + dm.labels[i] + " has no class");
        auto it = std::find(report.classes.begin(), report.classes.end(), classes[i]);
        if (it == report.classes.end()) it = report.classes.insert(report.classes.end(), classes[i]);
        class_of[i] = static_cast<std::size_t>(it - report.classes.begin());
    }
    const std::size_t c = report.classes.size();
    std::vector<std::vector<double>> buckets(c * c);
    for (std::size_t i = 0; i < dm.size(); ++i) {
        for (std::size_t j = i + 1; j < dm.size(); ++j) {
            const auto [a, b] = std::minmax(class_of[i], class_of[j]);
            buckets[a * c + b].push_back(dm.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
        }
    }
    for (std::size_t a = 0; a < c; ++a) {
        for (std::size_t b = a; b < c; ++b) {
            const auto& values = buckets[a * c + b];
            ClassPairStats s{report.classes[a], report.classes[b], values.size(), std::nullopt, std::nullopt};
            if (!values.empty()) {
                const double mean = std::accumulate(values.begin(), values.end(), 0.0) / values.size();
                double var = 0.0;
                for (double v : values) var += (v - mean) * (v - mean);
                s.mean = mean;
                s.stddev = std::sqrt(var / values.size());
            }
            report.pairs.push_back(std::move(s));
        }
    }
    return report;
}

double clustering_cost(const DistanceMatrix& dm, std::span<const std::size_t> medoids) {
    double cost = 0.0;
    for (std::size_t p = 0; p < dm.size(); ++p) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t med : medoids) {
            best = std::min(best, dm.entries(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(med)));
        }
        cost += best;
    }
    return cost;
}

ClusteringResult cluster_kmedoids(const DistanceMatrix& dm, std::size_t k, std::uint64_t seed,
                                  std::size_t restarts) {
    const std::size_t n = dm.size();
    if (k < 1 || k > n) {
        throw Error(ErrorKind::InvalidArgument, "k=" + std::to_string(k) + " must lie in [1, " + std::to_string(n) + "]");
    }
    const double scale = std::max(1.0, dm.entries.cwiseAbs().maxCoeff());
    const double min_gain = 1e-12 * scale;

    std::vector<std::size_t> best_medoids;
    double best_cost = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < std::max<std::size_t>(1, restarts); ++r) {
        Rng rng(mix_seed(seed, r));
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        for (std::size_t i = 0; i < k; ++i) std::swap(order[i], order[i + rng.below(n - i)]);
        std::vector<std::size_t> medoids(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
        double cost = clustering_cost(dm, medoids);

        for (;;) {
            double best_gain = min_gain;
            std::size_t swap_slot = k, swap_in = n;
            std::vector<std::size_t> trial = medoids;
            for (std::size_t slot = 0; slot < k; ++slot) {
                for (std::size_t h = 0; h < n; ++h) {
                    if (std::find(medoids.begin(), medoids.end(), h) != medoids.end()) continue;
                    trial[slot] = h;
                    const double gain = cost - clustering_cost(dm, trial);
                    if (gain > best_gain) {
                        best_gain = gain;
                        swap_slot = slot;
                        swap_in = h;
                    }
                }
                trial[slot] = medoids[slot];
            }
            if (swap_slot == k) break;
            medoids[swap_slot] = swap_in;
            cost = clustering_cost(dm, medoids);
        }
        if (cost < best_cost - min_gain) {
            best_cost = cost;
            best_medoids = medoids;
        }
    }

    std::sort(best_medoids.begin(), best_medoids.end());
    ClusteringResult result;
    result.cost = best_cost;
    result.assignment.resize(n);
    std::vector<std::size_t> cluster_of_medoid(k, k);
    for (std::size_t p = 0; p < n; ++p) {
        std::size_t nearest = 0;
        for (std::size_t slot = 1; slot < k; ++slot) {
            const auto row = static_cast<Eigen::Index>(p);
            if (dm.entries(row, static_cast<Eigen::Index>(best_medoids[slot])) <
                dm.entries(row, static_cast<Eigen::Index>(best_medoids[nearest]))) {
                nearest = slot;
            }
        }
        if (cluster_of_medoid[nearest] == k) {
            cluster_of_medoid[nearest] = result.medoids.size();
            result.medoids.push_back(best_medoids[nearest]);
        }
        result.assignment[p] = cluster_of_medoid[nearest];
    }
    // Medoids that attracted no point cannot occur (each medoid is nearest to
    // itself), so medoids.size() == k here.
    return result;
}

double clustering_accuracy(std::span<const std::size_t> assignment, std::span<const std::string> classes) {
    if (assignment.size() != classes.size() || assignment.empty()) {
        throw Error(ErrorKind::UnlabeledNetwork, "assignment and class lists differ in length");
    }
    std::vector<std::string> distinct;
    std::vector<std::size_t> class_of(classes.size());
    for (std::size_t i = 0; i < classes.size(); ++i) {
        auto it = std::find(distinct.begin(), distinct.end(), classes[i]);
        if (it == distinct.end()) it = distinct.insert(distinct.end(), classes[i]);
        class_of[i] = static_cast<std::size_t>(it - distinct.begin());
    }
    const std::size_t clusters = *std::max_element(assignment.begin(), assignment.end()) + 1;
    const std::size_t labels = std::max(clusters, distinct.size());
    if (labels > 9) throw Error(ErrorKind::InvalidArgument, "accuracy is limited to 9 clusters/classes");

    std::vector<std::size_t> perm(labels);
    std::iota(perm.begin(), perm.end(), 0);
    std::size_t best = 0;
    do {
        std::size_t hits = 0;
        for (std::size_t i = 0; i < assignment.size(); ++i) hits += perm[assignment[i]] == class_of[i];
        best = std::max(best, hits);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return static_cast<double>(best) / static_cast<double>(assignment.size());
}

std::string heatmap_ppm(const DistanceMatrix& dm, std::size_t side) {
    const std::size_t n = dm.size();
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "heat map of an empty matrix");
    side = std::max(side, n);
    const double lo = dm.entries.minCoeff();
    const double hi = dm.entries.maxCoeff();

    auto colour = [&](double v) {
        const double t = hi > lo ? (v - lo) / (hi - lo) : 0.0;
        double r = 0.0, g = 0.0, b = 0.0;
        if (t <= 0.5) {
            g = 2.0 * t;
            b = 1.0 - 2.0 * t;
        } else {
            r = 2.0 * t - 1.0;
            g = 2.0 - 2.0 * t;
        }
        auto byte = [](double x) { return static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * x))); };
        return std::array<char, 3>{byte(r), byte(g), byte(b)};
    };

    std::string header = "P6\n" + std::to_string(side) + " " + std::to_string(side) + "\n255\n";
    std::string out = header;
    out.reserve(header.size() + 3 * side * side);
    for (std::size_t y = 0; y < side; ++y) {
        const auto row = static_cast<Eigen::Index>(y * n / side);
        for (std::size_t x = 0; x < side; ++x) {
            const auto col = static_cast<Eigen::Index>(x * n / side);
            const auto rgb = colour(dm.entries(row, col));
            out.append(rgb.data(), rgb.size());
        }
    }
    return out;
}

void heatmap(const DistanceMatrix& dm, const std::filesystem::path& path, std::size_t side) {
    write_text_file(path, heatmap_ppm(dm, side));
}

std::vector<SPDPoint> laplacian_points(std::span<const WeightedGraph> graphs, double eps, bool trace_normalize,
                                       std::size_t threads) {
    std::vector<std::optional<SPDPoint>> built(graphs.size());
    parallel_for(graphs.size(), threads, [&](std::size_t i) {
        SPDPoint p = approx_laplacian(graphs[i], eps);
        built[i] = trace_normalize ? manifoldnet::trace_normalize(p) : std::move(p);
    });
    std::vector<SPDPoint> points;
    points.reserve(graphs.size());
    for (auto& p : built) points.push_back(std::move(*p));
    return points;
}

nlohmann::ordered_json run_toy(const ToyConfig& config) {
    if (config.seeds.empty()) throw Error(ErrorKind::InvalidArgument, "toy experiment needs at least one seed");
    const auto& opt = config.options;

    Json cfg{{"experiment", "toy"}, {"n", config.n}, {"m", config.m}};
    cfg["weight_supports"] = Json::array();
    for (const auto& s : config.weight_supports) cfg["weight_supports"].push_back(support_json(s));
    cfg["options"] = options_json(opt);
    Json report = empty_report(std::move(cfg), config.seeds);

    static const char* kPairs[] = {"star_random", "star_chain", "chain_random"};
    const WeightedGraph chain = gen_chain(config.n, config.m);

    Json records = Json::array();
    Json per_support = Json::array();
    for (const auto& support : config.weight_supports) {
        std::map<std::string, std::map<std::string, double>> sums;
        std::size_t riem_wins = 0, frob_wins = 0, frob_chain_star = 0;
        for (std::uint64_t seed : config.seeds) {
            const WeightedGraph star = gen_star(config.n, config.m, mix_seed(seed, 1));
            const WeightedGraph random = gen_gnm(config.n, config.m, mix_seed(seed, 2));
            const std::uint64_t weight_seed = mix_seed(seed, 3);
            const std::vector<WeightedGraph> graphs{
                assign_weights(chain, support.first, support.second, mix_seed(weight_seed, 0)),
                assign_weights(star, support.first, support.second, mix_seed(weight_seed, 1)),
                assign_weights(random, support.first, support.second, mix_seed(weight_seed, 2))};
            const auto pts = laplacian_points(graphs, opt.eps, opt.trace_normalize, opt.threads);
            const SPDPoint& c = pts[0];
            const SPDPoint& s = pts[1];
            const SPDPoint& r = pts[2];

            Json record{{"seed", seed}, {"support", support_json(support)}};
            for (Metric metric : {Metric::Riemannian, Metric::Frobenius}) {
                auto dist = [metric](const SPDPoint& a, const SPDPoint& b) {
                    return metric == Metric::Riemannian ? riem_dist(a, b) : frobenius_dist(a.matrix(), b.matrix());
                };
                const double d[3] = {dist(s, r), dist(s, c), dist(c, r)};
                const std::string name(metric_name(metric));
                Json entry;
                for (int p = 0; p < 3; ++p) {
                    entry[kPairs[p]] = d[p];
                    sums[name][kPairs[p]] += d[p];
                }
                const bool star_random_smallest = d[0] < d[1] && d[0] < d[2];
                entry["star_random_smallest"] = star_random_smallest;
                if (metric == Metric::Riemannian) {
                    riem_wins += star_random_smallest;
                } else {
                    frob_wins += star_random_smallest;
                    frob_chain_star += d[1] < d[0] && d[1] < d[2];
                }
                record[name] = std::move(entry);
            }
            records.push_back(std::move(record));
        }
        const double count = static_cast<double>(config.seeds.size());
        Json summary{{"support", support_json(support)},
                     {"seeds", config.seeds.size()},
                     {"riemannian_star_random_smallest", riem_wins},
                     {"riemannian_fraction", riem_wins / count},
                     {"frobenius_star_random_smallest", frob_wins},
                     {"frobenius_fraction", frob_wins / count},
                     {"frobenius_chain_star_smallest", frob_chain_star}};
        for (const auto& [metric, pairs] : sums) {
            for (const auto& [pair, total] : pairs) summary["mean_distance"][metric][pair] = total / count;
        }
        per_support.push_back(std::move(summary));
    }

    // Whether mean distances grow as the weight support widens (listed order).
    Json trend;
    for (const char* metric : {"riemannian", "frobenius"}) {
        for (const char* pair : kPairs) {
            bool nondecreasing = true;
            for (std::size_t i = 1; i < per_support.size(); ++i) {
                nondecreasing = nondecreasing && per_support[i]["mean_distance"][metric][pair].get<double>() >=
                                                     per_support[i - 1]["mean_distance"][metric][pair].get<double>();
            }
            trend[metric][pair] = nondecreasing;
        }
    }
    double min_fraction = 1.0;
    for (const auto& s : per_support) min_fraction = std::min(min_fraction, s["riemannian_fraction"].get<double>());

    report["ordering_summary"] = Json{{"per_support", std::move(per_support)},
                                      {"min_riemannian_fraction", min_fraction},
                                      {"mean_distance_nondecreasing", std::move(trend)},
                                      {"records", std::move(records)}};
    if (!opt.out_dir.empty()) std::filesystem::create_directories(opt.out_dir);
    emit_report(opt, report);
    return report;
}

nlohmann::ordered_json run_scalefree(const ScaleFreeConfig& config) {
    if (config.n_per_class < 2) throw Error(ErrorKind::InvalidArgument, "need at least 2 networks per class");
    const auto& opt = config.options;
    Json cfg{{"experiment", "scalefree"},
             {"n_per_class", config.n_per_class},
             {"n", config.n},
             {"m", config.m},
             {"m_attach", config.m_attach},
             {"restarts", config.restarts},
             {"options", options_json(opt)}};
    Json report = empty_report(std::move(cfg), config.seed);

    std::vector<WeightedGraph> graphs;
    std::vector<std::string> labels, classes;
    const std::uint64_t ba_seed = mix_seed(config.seed, 0);
    const std::uint64_t gnm_seed = mix_seed(config.seed, 1);
    for (std::size_t i = 0; i < config.n_per_class; ++i) {
        graphs.push_back(gen_ba(config.n, config.m_attach, mix_seed(ba_seed, i)));
        labels.push_back(indexed("scale_free", i));
        classes.emplace_back("scale_free");
    }
    for (std::size_t i = 0; i < config.n_per_class; ++i) {
        graphs.push_back(gen_gnm(config.n, config.m, mix_seed(gnm_seed, i)));
        labels.push_back(indexed("random", i));
        classes.emplace_back("random");
    }
    if (graphs.front().edge_count() != config.m) {
        report["warnings"].push_back("scale-free edge count " + std::to_string(graphs.front().edge_count()) +
                                     " differs from random edge count " + std::to_string(config.m));
    }
    if (!opt.out_dir.empty()) std::filesystem::create_directories(opt.out_dir);
    const auto points = laplacian_points(graphs, opt.eps, opt.trace_normalize, opt.threads);
    analyse_cohort(points, labels, classes, mix_seed(config.seed, 2), config.restarts, opt, "scalefree", report);
    emit_report(opt, report);
    return report;
}

nlohmann::ordered_json run_expression(const ExpressionMatrix& expr_a, const ExpressionMatrix& expr_b,
                                      const TopologyTemplate& topo, const ExpressionConfig& config) {
    const auto& opt = config.options;
    Json cfg{{"experiment", "expression"},
             {"n_networks", config.n_networks},
             {"subset_size", config.subset_size},
             {"classes", Json::array({config.class_a, config.class_b})},
             {"weight_mode", config.ingest.mode == WeightMode::AbsCorrelation ? "abs" : "squared"},
             {"zero_weight_floor", config.ingest.zero_weight_floor},
             {"restarts", config.restarts},
             {"options", options_json(opt)}};
    Json report = empty_report(std::move(cfg), config.seed);

    const Cohort cohort_a =
        build_cohort(expr_a, topo, config.n_networks, config.subset_size, mix_seed(config.seed, 0), config.ingest,
                     opt.threads);
    const Cohort cohort_b =
        build_cohort(expr_b, topo, config.n_networks, config.subset_size, mix_seed(config.seed, 1), config.ingest,
                     opt.threads);

    std::vector<WeightedGraph> graphs;
    std::vector<std::string> labels, classes;
    for (const auto* cohort : {&cohort_a, &cohort_b}) {
        const std::string& name = cohort == &cohort_a ? config.class_a : config.class_b;
        for (std::size_t i = 0; i < cohort->networks.size(); ++i) {
            graphs.push_back(cohort->networks[i]);
            labels.push_back(indexed(name, i));
            classes.push_back(name);
        }
        for (const auto& w : cohort->warnings) report["warnings"].push_back(name + " " + w);
    }
    if (!opt.out_dir.empty()) {
        std::filesystem::create_directories(opt.out_dir);
        write_cohort(cohort_a, opt.out_dir, config.class_a);
        write_cohort(cohort_b, opt.out_dir, config.class_b);
        report["matrices"]["cohorts"] = Json{{config.class_a, config.class_a + "_manifest.json"},
                                             {config.class_b, config.class_b + "_manifest.json"}};
    }
    const auto points = laplacian_points(graphs, opt.eps, opt.trace_normalize, opt.threads);
    analyse_cohort(points, labels, classes, mix_seed(config.seed, 2), config.restarts, opt, "expression", report);
    emit_report(opt, report);
    return report;
}

}  // namespace manifoldnet
