// manifoldnet: command-line front end for the network-manifold library.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "manifoldnet/curvature.hpp"
#include "manifoldnet/error.hpp"
#include "manifoldnet/harness.hpp"
#include "manifoldnet/ingest.hpp"
#include "manifoldnet/io.hpp"
#include "manifoldnet/netgen.hpp"
#include "manifoldnet/parallel.hpp"
#include "manifoldnet/random.hpp"
#include "manifoldnet/spd.hpp"

namespace fs = std::filesystem;
namespace mn = manifoldnet;
using Json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kUsage = 2, kIo = 3, kData = 4, kNoConvergence = 5 };

int exit_code(mn::ErrorKind kind) {
    using K = mn::ErrorKind;
    switch (kind) {
        case K::InvalidArgument:
        case K::InfeasibleSpec:
        case K::ConnectivityRetryExceeded: return kUsage;
        case K::IoError: return kIo;
        case K::NoConvergence: return kNoConvergence;
        default: return kData;
    }
}

bool g_verbose = false;

void log(const std::string& message) {
    if (g_verbose) std::cerr << "[manifoldnet] " << message << '\n';
}

struct Common {
    std::size_t threads = 0;
    bool verbose = false;
    bool show_config = false;
};

struct LaplacianFlags {
    double eps = mn::kDefaultLaplacianEps;
    bool trace_normalize = false;
};

void add_laplacian_flags(CLI::App* cmd, LaplacianFlags& f) {
    cmd->add_option("--eps", f.eps, "Diagonal shift added to the normalized Laplacian")->check(CLI::PositiveNumber);
    cmd->add_flag("--trace-normalize", f.trace_normalize, "Scale each Laplacian to unit trace");
}

void require_files(const std::vector<std::string>& paths) {
    for (const auto& p : paths) {
        if (!fs::is_regular_file(p)) throw mn::Error(mn::ErrorKind::IoError, "cannot read " + p);
    }
}

void prepare_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw mn::Error(mn::ErrorKind::IoError, "cannot create directory " + dir);
}

// Load, check connectivity and build L-hat; errors are prefixed with the file.
mn::SPDPoint load_point(const std::string& path, const LaplacianFlags& f) {
    const mn::WeightedGraph g = mn::read_edge_list(path);
    try {
        if (!mn::is_connected(g)) throw mn::Error(mn::ErrorKind::Disconnected, "graph is disconnected");
        mn::SPDPoint p = mn::approx_laplacian(g, f.eps);
        return f.trace_normalize ? mn::trace_normalize(p) : p;
    } catch (const mn::Error& err) {
        throw mn::Error(err.kind(), path + ": " + err.detail());
    }
}

void emit_text(const std::string& out, const std::string& text) {
    if (out.empty() || out == "-") {
        std::cout << text;
    } else {
        mn::write_text_file(out, text);
        log("wrote " + out);
    }
}

void emit_matrix(const std::string& out, const mn::Matrix& m) {
    std::ostringstream s;
    mn::write_matrix_csv(m, s);
    emit_text(out, s.str());
}

std::vector<std::pair<double, double>> parse_supports(const std::vector<std::string>& specs) {
    std::vector<std::pair<double, double>> supports;
    for (const auto& s : specs) {
        const auto colon = s.find(':');
        try {
            if (colon == std::string::npos) throw std::invalid_argument(s);
            std::size_t used = 0;
            const double low = std::stod(s.substr(0, colon), &used);
            const double high = std::stod(s.substr(colon + 1));
            if (!(low > 0.0 && low <= high)) throw std::invalid_argument(s);
            supports.emplace_back(low, high);
        } catch (const std::exception&) {
            throw mn::Error(mn::ErrorKind::InvalidArgument, "weight support must be LOW:HIGH with 0 < LOW <= HIGH, got '" + s + "'");
        }
    }
    return supports;
}

mn::WeightMode parse_weight_mode(const std::string& text) {
    if (text == "abs") return mn::WeightMode::AbsCorrelation;
    if (text == "squared") return mn::WeightMode::SquaredCorrelation;
    throw mn::Error(mn::ErrorKind::InvalidArgument, "weight mode must be 'abs' or 'squared'");
}

Json default_config(std::size_t threads) {
    return Json{{"eps", mn::kDefaultLaplacianEps},
                {"frechet_tol", mn::FrechetOptions{}.tol},
                {"frechet_max_iter", mn::FrechetOptions{}.max_iter},
                {"eig_floor", mn::kEigFloor},
                {"symmetry_tol", mn::kSymmetryTol},
                {"idleness", 0.0},
                {"zero_weight_floor", mn::IngestOptions{}.zero_weight_floor},
                {"weight_mode", "abs"},
                {"kmedoids_restarts", mn::kDefaultRestarts},
                {"heatmap_side", mn::kHeatmapSide},
                {"gnm_max_attempts", mn::kGnmMaxAttempts},
                {"threads", threads ? threads : mn::default_thread_count()}};
}

mn::NodeId resolve_node(const mn::WeightedGraph& g, const std::string& token) {
    if (auto id = g.find(token)) return *id;
    if (!g.has_labels() && !token.empty() && token.find_first_not_of("0123456789") == std::string::npos) {
        const mn::NodeId id = std::stoull(token);
        if (id < g.node_count()) return id;
    }
    throw mn::Error(mn::ErrorKind::InvalidArgument, "unknown node '" + token + "'");
}

void require_seed(const CLI::Option* opt, const std::string& what) {
    if (opt->count() == 0) throw mn::Error(mn::ErrorKind::InvalidArgument, "--seed is required for " + what);
}

// ---- generate ----

struct GenerateCmd {
    CLI::App* cmd = nullptr;
    std::string spec_file;
    std::string kind = "gnm";
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t m_attach = 0;
    std::size_t count = 1;
    std::uint64_t seed = 0;
    double weight_low = 1.0;
    double weight_high = 1.0;
    std::string out_dir = ".";
    std::string prefix = "graph";
    CLI::Option *kind_opt, *n_opt, *m_opt, *attach_opt, *seed_opt, *low_opt, *high_opt;

    void setup(CLI::App& app) {
        cmd = app.add_subcommand("generate", "Generate synthetic graphs as edge-list files");
        cmd->add_option("--spec", spec_file, "JSON generation spec (flags given explicitly override it)");
        kind_opt = cmd->add_option("--kind", kind, "chain | star | gnm | ba");
        n_opt = cmd->add_option("--n", n, "Node count");
        m_opt = cmd->add_option("--m", m, "Edge count");
        attach_opt = cmd->add_option("--m-attach", m_attach, "Preferential-attachment degree (ba)");
        cmd->add_option("--count", count, "Number of graphs")->check(CLI::PositiveNumber);
        seed_opt = cmd->add_option("--seed", seed, "Base seed; graph i uses mix(seed, i)");
        low_opt = cmd->add_option("--weight-low", weight_low, "Lower end of the uniform weight support");
        high_opt = cmd->add_option("--weight-high", weight_high, "Upper end of the uniform weight support");
        cmd->add_option("--out-dir", out_dir, "Output directory");
        cmd->add_option("--prefix", prefix, "File name prefix");
    }

    int run() {
        mn::GenSpec spec;
        bool seeded = false;
        if (!spec_file.empty()) {
            require_files({spec_file});
            std::ifstream in(spec_file);
            try {
                const auto j = nlohmann::json::parse(in);
                spec = j.get<mn::GenSpec>();
                seeded = j.contains("seed");
            } catch (const nlohmann::json::exception& err) {
                throw mn::Error(mn::ErrorKind::InvalidArgument, spec_file + ": " + err.what());
            }
        } else if (kind_opt->count() == 0 || n_opt->count() == 0) {
            throw mn::Error(mn::ErrorKind::InvalidArgument, "generate needs --kind and --n (or --spec)");
        }
        if (kind_opt->count()) spec.kind = mn::parse_graph_kind(kind);
        if (n_opt->count()) spec.n = n;
        if (m_opt->count()) spec.m = m;
        if (attach_opt->count()) spec.m_attach = m_attach;
        if (seed_opt->count()) {
            spec.seed = seed;
            seeded = true;
        }
        if (low_opt->count()) spec.weight_low = weight_low;
        if (high_opt->count()) spec.weight_high = weight_high;
        if (spec.kind == mn::GraphKind::Ba && !spec.m_attach && spec.m == 0) {
            throw mn::Error(mn::ErrorKind::InvalidArgument, "ba needs --m-attach or --m");
        }
        const bool random = spec.kind != mn::GraphKind::Chain || spec.weight_low != spec.weight_high;
        if (random && !seeded) require_seed(seed_opt, std::string(mn::graph_kind_name(spec.kind)) + " graphs");

        prepare_dir(out_dir);
        Json manifest{{"spec", nlohmann::json(spec)}, {"count", count}, {"graphs", Json::array()}};
        const std::uint64_t base = spec.seed;
        for (std::size_t i = 0; i < count; ++i) {
            mn::GenSpec one = spec;
            one.seed = mn::mix_seed(base, i);
            const mn::WeightedGraph g = mn::generate(one);
            char name[32];
            std::snprintf(name, sizeof name, "_%03zu.tsv", i);
            const std::string file = prefix + "_" + std::string(mn::graph_kind_name(spec.kind)) + name;
            mn::write_edge_list(g, fs::path(out_dir) / file);
            log("wrote " + file + " (" + std::to_string(g.edge_count()) + " edges)");
            manifest["graphs"].push_back(
                Json{{"file", file}, {"seed", one.seed}, {"nodes", g.node_count()}, {"edges", g.edge_count()}});
        }
        mn::write_text_file(fs::path(out_dir) / (prefix + "_manifest.json"), manifest.dump(2) + "\n");
        return kOk;
    }
};

// ---- laplacian ----

struct LaplacianCmd {
    CLI::App* cmd = nullptr;
    std::string graph;
    std::string out;
    LaplacianFlags lap;

    void setup(CLI::App& app) {
        cmd = app.add_subcommand("laplacian", "Write the shifted normalized Laplacian of a graph as CSV");
        cmd->add_option("--graph", graph, "Edge-list file")->required();
        cmd->add_option("--out", out, "Output CSV (stdout when omitted)");
        add_laplacian_flags(cmd, lap);
    }

    int run() {
        require_files({graph});
        emit_matrix(out, load_point(graph, lap).matrix());
        return kOk;
    }
};

// ---- dist ----

struct DistCmd {
    CLI::App* cmd = nullptr;
    std::vector<std::string> graphs;
    std::string metric = "riemannian";
    std::string out;
    LaplacianFlags lap;

    void setup(CLI::App& app) {
        cmd = app.add_subcommand("dist", "Pairwise distance matrix between graphs");
        cmd->add_option("graphs", graphs, "Two or more edge-list files")->required()->expected(2, -1);
        cmd->add_option("--metric", metric, "riemannian | frobenius");
        cmd->add_option("--out", out, "Output CSV (stdout when omitted)");
        add_laplacian_flags(cmd, lap);
    }

    int run(std::size_t threads) {
        const mn::Metric which = mn::parse_metric(metric);
        require_files(graphs);
        std::vector<mn::SPDPoint> points;
        for (const auto& g : graphs) points.push_back(load_point(g, lap));
        const auto dm = mn::pairwise_matrix(points, graphs, which, threads);
        std::ostringstream s;
        mn::write_distance_csv(dm, s);
        emit_text(out, s.str());
        return kOk;
    }
};

// ---- mean ----

struct MeanCmd {
    CLI::App* cmd = nullptr;
    std::vector<std::string> graphs;
    std::vector<std::string> queries;
    std::string out;
    std::string stats_out;
    mn::FrechetOptions frechet;
    LaplacianFlags lap;

    void setup(CLI::App& app) {
        cmd = app.add_subcommand("mean", "Frechet mean (and optional cohort statistics) of graph Laplacians");
        cmd->add_option("graphs", graphs, "Edge-list files")->required();
        cmd->add_option("--tol", frechet.tol, "Gradient-norm tolerance")->check(CLI::PositiveNumber);
        cmd->add_option("--max-iter", frechet.max_iter, "Iteration cap")->check(CLI::PositiveNumber);
        cmd->add_option("--out", out, "Mean matrix CSV (stdout when omitted)");
        cmd->add_option("--query", queries, "Graphs to score by Mahalanobis distance and density");
        cmd->add_option("--stats", stats_out, "Write iteration count and query scores as JSON");
        add_laplacian_flags(cmd, lap);
    }

    int run() {
        require_files(graphs);
        require_files(queries);
        std::vector<mn::SPDPoint> points;
        for (const auto& g : graphs) points.push_back(load_point(g, lap));
        const auto result = mn::frechet_mean(points, frechet);
        log("converged in " + std::to_string(result.iterations) + " iterations, gradient norm " +
            mn::format_double(result.gradient_norm));
        emit_matrix(out, result.mean.matrix());

        Json stats{{"count", points.size()},
                   {"iterations", result.iterations},
                   {"gradient_norm", result.gradient_norm},
                   {"queries", Json::array()}};
        if (!queries.empty()) {
            const mn::CohortStats cohort(result.mean, mn::cohort_covariance(points, result.mean), points.size());
            stats["covariance_rank"] = cohort.rank();
            for (const auto& q : queries) {
                const mn::SPDPoint p = load_point(q, lap);
                const auto density = mn::gaussian_density(cohort, p);
                stats["queries"].push_back(Json{{"graph", q},
                                                {"mahalanobis", mn::mahalanobis(cohort, p)},
                                                {"density", density.value},
                                                {"degenerate", density.degenerate}});
            }
        }
        if (!stats_out.empty()) mn::write_text_file(stats_out, stats.dump(2) + "\n");
        return kOk;
    }
};

// ---- curvature ----

struct CurvatureCmd {
    CLI::App* cmd = nullptr;
    std::string graph;
    std::vector<std::string> edge;
    double idleness = 0.0;
    bool spectral = false;
    std::string out;

    void setup(CLI::App& app) {
        cmd = app.add_subcommand("curvature", "Ollivier-Ricci edge curvature");
        cmd->add_option("--graph", graph, "Edge-list file")->required();
        cmd->add_option("--edge", edge, "Single node pair U V")->expected(2);
        cmd->add_option("--idleness", idleness, "Mass kept at the centre of each neighbour measure")
            ->check(CLI::Range(0.0, 1.0));
        cmd->add_flag("--spectral", spectral, "Report the curvature bounds on the Laplacian spectrum as JSON");
        cmd->add_option("--out", out, "Output file (stdout when omitted)");
    }

    int run(std::size_t threads) {
        require_files({graph});
        const mn::WeightedGraph g = mn::read_edge_list(graph);
        if (!edge.empty()) {
            const double k = mn::ollivier_curvature(g, resolve_node(g, edge[0]), resolve_node(g, edge[1]), idleness);
            emit_text(out, mn::format_double(k) + "\n");
        } else if (spectral) {
            const auto r = mn::spectral_curvature_report(g, idleness, threads);
            Json j{{"min_edge_curvature", r.min_edge_curvature},
                   {"lambda_2", r.eigenvalues.size() > 1 ? r.eigenvalues[1] : 0.0},
                   {"lambda_max", r.eigenvalues.back()},
                   {"lower_bound_holds", r.lower_bound_holds},
                   {"upper_bound_holds", r.upper_bound_holds},
                   {"bound_satisfied", r.bound_satisfied},
                   {"eigenvalues", r.eigenvalues}};
            emit_text(out, j.dump(2) + "\n");
        } else {
            const auto ks = mn::edge_curvatures(g, idleness, threads);
            std::ostringstream s;
            for (std::size_t i = 0; i < ks.size(); ++i) {
                const auto& e = g.edges()[i];
                s << g.label(e.u) << '\t' << g.label(e.v) << '\t' << mn::format_double(ks[i]) << '\n';
            }
            emit_text(out, s.str());
        }
        return kOk;
    }
};

// ---- ingest ----

struct IngestFlags {
    std::string mode = "abs";
    double zero_weight_floor = mn::IngestOptions{}.zero_weight_floor;

    void add(CLI::App* cmd) {
        cmd->add_option("--weight-mode", mode, "abs (|r|) or squared (r^2)");
        cmd->add_option("--zero-weight-floor", zero_weight_floor, "Weight given to zero-correlation edges")
            ->check(CLI::PositiveNumber);
    }

    mn::IngestOptions options() const { return {parse_weight_mode(mode), zero_weight_floor}; }
};

struct IngestCmd {
    CLI::App* cmd = nullptr;
    std::string expression;
    std::string topology;
    std::size_t n_networks = 10;
    std::size_t subset_size = 20;
    std::uint64_t seed = 0;
    CLI::Option* seed_opt = nullptr;
    std::string out_dir = ".";
    std::string prefix = "cohort";
    IngestFlags ingest;

    void setup(CLI::App& app) {
        cmd = app.add_subcommand("ingest", "Build correlation-weighted networks from an expression matrix");
        cmd->add_option("--expression", expression, "Expression CSV (genes x samples)")->required();
        cmd->add_option("--topology", topology, "Gene-gene edge list")->required();
        cmd->add_option("--n-networks", n_networks, "Networks to build")->check(CLI::PositiveNumber);
        cmd->add_option("--subset-size", subset_size, "Samples per network")->check(CLI::Range(2, 1 << 30));
        seed_opt = cmd->add_option("--seed", seed, "Base seed; network i uses mix(seed, i)");
        cmd->add_option("--out-dir", out_dir, "Output directory");
        cmd->add_option("--prefix", prefix, "File name prefix");
        ingest.add(cmd);
    }

    int run(std::size_t threads) {
        require_seed(seed_opt, "ingest");
        require_files({expression, topology});
        const auto options = ingest.options();
        prepare_dir(out_dir);
        const auto expr = mn::load_expression(expression);
        const auto topo = mn::load_topology(topology);
        const auto cohort = mn::build_cohort(expr, topo, n_networks, subset_size, seed, options, threads);
        for (const auto& w : cohort.warnings) log("warning: " + w);
        const auto files = mn::write_cohort(cohort, out_dir, prefix);
        log("wrote " + std::to_string(files.size()) + " networks to " + out_dir);
        return kOk;
    }
};

// ---- experiment ----

struct ExperimentFlags {
    LaplacianFlags lap;
    std::size_t heatmap_side = mn::kHeatmapSide;
    std::string out_dir;

    void add(CLI::App* cmd) {
        add_laplacian_flags(cmd, lap);
        cmd->add_option("--heatmap-side", heatmap_side, "Heat-map image side in pixels")->check(CLI::PositiveNumber);
        cmd->add_option("--out-dir", out_dir, "Artifact directory (report JSON goes to stdout when omitted)");
    }

    mn::ExperimentOptions options(std::size_t threads) const {
        mn::ExperimentOptions o;
        o.eps = lap.eps;
        o.trace_normalize = lap.trace_normalize;
        o.threads = threads;
        o.heatmap_side = heatmap_side;
        o.out_dir = out_dir;
        return o;
    }

    void finish(const Json& report) const {
        if (out_dir.empty()) {
            std::cout << report.dump(2) << '\n';
        } else {
            log("report written to " + (fs::path(out_dir) / "report.json").string());
        }
    }
};

struct ToyCmd {
    CLI::App* cmd = nullptr;
    std::size_t seeds = 10;
    std::vector<std::uint64_t> seed_list;
    std::size_t n = 200;
    std::size_t m = 400;
    std::vector<std::string> supports{"1:1", "1:1.5", "1:2"};
    ExperimentFlags flags;

    void setup(CLI::App* parent) {
        cmd = parent->add_subcommand("toy", "Chain / star / random distance ordering");
        auto* count = cmd->add_option("--seeds", seeds, "Use seeds 0..N-1")->check(CLI::PositiveNumber);
        cmd->add_option("--seed-list", seed_list, "Explicit seeds")->excludes(count);
        cmd->add_option("--n", n, "Node count");
        cmd->add_option("--m", m, "Edge count");
        cmd->add_option("--support", supports, "Weight supports LOW:HIGH (repeatable)");
        flags.add(cmd);
    }

    int run(std::size_t threads) {
        mn::ToyConfig config;
        config.n = n;
        config.m = m;
        config.weight_supports = parse_supports(supports);
        if (seed_list.empty()) {
            for (std::uint64_t s = 0; s < seeds; ++s) config.seeds.push_back(s);
        } else {
            config.seeds = seed_list;
        }
        config.options = flags.options(threads);
        if (!flags.out_dir.empty()) prepare_dir(flags.out_dir);
        flags.finish(mn::run_toy(config));
        return kOk;
    }
};

struct ScaleFreeCmd {
    CLI::App* cmd = nullptr;
    mn::ScaleFreeConfig config;
    CLI::Option* seed_opt = nullptr;
    ExperimentFlags flags;

    void setup(CLI::App* parent) {
        cmd = parent->add_subcommand("scalefree", "Preferential-attachment vs uniform random cohorts");
        cmd->add_option("--n-per-class", config.n_per_class, "Networks per class")->check(CLI::Range(2, 1 << 20));
        cmd->add_option("--n", config.n, "Node count");
        cmd->add_option("--m", config.m, "Edge count of the random class");
        cmd->add_option("--m-attach", config.m_attach, "Attachment degree of the scale-free class");
        seed_opt = cmd->add_option("--seed", config.seed, "Base seed");
        cmd->add_option("--restarts", config.restarts, "k-medoids restarts")->check(CLI::PositiveNumber);
        flags.add(cmd);
    }

    int run(std::size_t threads) {
        require_seed(seed_opt, "experiment scalefree");
        config.options = flags.options(threads);
        if (!flags.out_dir.empty()) prepare_dir(flags.out_dir);
        flags.finish(mn::run_scalefree(config));
        return kOk;
    }
};

struct ExpressionCmd {
    CLI::App* cmd = nullptr;
    std::string expression_a;
    std::string expression_b;
    std::string topology;
    mn::ExpressionConfig config;
    CLI::Option* seed_opt = nullptr;
    IngestFlags ingest;
    ExperimentFlags flags;

    void setup(CLI::App* parent) {
        cmd = parent->add_subcommand("expression", "Two expression cohorts over a shared topology");
        cmd->add_option("--expression-a", expression_a, "Expression CSV of the first class")->required();
        cmd->add_option("--expression-b", expression_b, "Expression CSV of the second class")->required();
        cmd->add_option("--topology", topology, "Gene-gene edge list")->required();
        cmd->add_option("--class-a", config.class_a, "Name of the first class");
        cmd->add_option("--class-b", config.class_b, "Name of the second class");
        cmd->add_option("--n-networks", config.n_networks, "Networks per class")->check(CLI::PositiveNumber);
        cmd->add_option("--subset-size", config.subset_size, "Samples per network")->check(CLI::Range(2, 1 << 30));
        seed_opt = cmd->add_option("--seed", config.seed, "Base seed");
        cmd->add_option("--restarts", config.restarts, "k-medoids restarts")->check(CLI::PositiveNumber);
        ingest.add(cmd);
        flags.add(cmd);
    }

    int run(std::size_t threads) {
        require_seed(seed_opt, "experiment expression");
        require_files({expression_a, expression_b, topology});
        if (config.class_a == config.class_b) {
            throw mn::Error(mn::ErrorKind::InvalidArgument, "class names must differ");
        }
        config.ingest = ingest.options();
        config.options = flags.options(threads);
        if (!flags.out_dir.empty()) prepare_dir(flags.out_dir);
        const auto a = mn::load_expression(expression_a);
        const auto b = mn::load_expression(expression_b);
        const auto topo = mn::load_topology(topology);
        flags.finish(mn::run_expression(a, b, topo, config));
        return kOk;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Networks as points on the manifold of SPD matrices", "manifoldnet"};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(0, 1);

    Common common;
    app.add_option("--threads", common.threads, "Worker threads (0: machine parallelism)")
        ->envname("MANIFOLDNET_THREADS");
    app.add_flag("-v,--verbose", common.verbose, "Log progress to stderr");
    app.add_flag("--show-config", common.show_config, "Print numeric defaults as JSON and exit");
    app.fallthrough();

    GenerateCmd generate;
    LaplacianCmd laplacian;
    DistCmd dist;
    MeanCmd mean;
    CurvatureCmd curvature;
    IngestCmd ingest;
    generate.setup(app);
    laplacian.setup(app);
    dist.setup(app);
    mean.setup(app);
    curvature.setup(app);
    ingest.setup(app);

    auto* experiment = app.add_subcommand("experiment", "Run an experiment preset");
    experiment->require_subcommand(1);
    ToyCmd toy;
    ScaleFreeCmd scalefree;
    ExpressionCmd expression;
    toy.setup(experiment);
    scalefree.setup(experiment);
    expression.setup(experiment);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int rc = app.exit(err);
        return rc == 0 ? kOk : kUsage;
    }

    g_verbose = common.verbose;
    const std::size_t threads = common.threads;
    try {
        if (common.show_config) {
            std::cout << default_config(threads).dump(2) << '\n';
            return kOk;
        }
        if (*generate.cmd) return generate.run();
        if (*laplacian.cmd) return laplacian.run();
        if (*dist.cmd) return dist.run(threads);
        if (*mean.cmd) return mean.run();
        if (*curvature.cmd) return curvature.run(threads);
        if (*ingest.cmd) return ingest.run(threads);
        if (*toy.cmd) return toy.run(threads);
        if (*scalefree.cmd) return scalefree.run(threads);
        if (*expression.cmd) return expression.run(threads);
        std::cerr << app.help();
        return kUsage;
    } catch (const mn::Error& err) {
        std::cerr << "manifoldnet: " << err.what() << '\n';
        return exit_code(err.kind());
    } catch (const std::filesystem::filesystem_error& err) {
        std::cerr << "manifoldnet: " << err.what() << '\n';
        return kIo;
    } catch (const std::exception& err) {
        std::cerr << "manifoldnet: " << err.what() << '\n';
        return kData;
    }
}
