#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <tuple>

#include "manifoldnet/curvature.hpp"
#include "manifoldnet/harness.hpp"
#include "manifoldnet/ingest.hpp"
#include "manifoldnet/io.hpp"
#include "manifoldnet/netgen.hpp"
#include "manifoldnet/random.hpp"
#include "manifoldnet/spd.hpp"

namespace py = pybind11;
namespace mn = manifoldnet;

namespace {

std::vector<mn::SPDPoint> points(const std::vector<mn::Matrix>& mats) {
    std::vector<mn::SPDPoint> out;
    out.reserve(mats.size());
    for (const auto& m : mats) out.emplace_back(m);
    return out;
}

std::vector<std::string> default_labels(std::size_t n, std::optional<std::vector<std::string>> labels) {
    if (labels) return *labels;
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Networks as points on the manifold of SPD matrices";

    // Messages start with the error kind, e.g. "NotPositiveDefinite: ...".
    py::register_exception<mn::Error>(m, "ManifoldNetError", PyExc_ValueError);

    // geometry
    m.def("riem_dist", [](const mn::Matrix& a, const mn::Matrix& b) {
        return mn::riem_dist(mn::SPDPoint(a), mn::SPDPoint(b));
    }, py::arg("a"), py::arg("b"));
    m.def("frobenius_dist", &mn::frobenius_dist, py::arg("a"), py::arg("b"));
    m.def("exp_map", [](const mn::Matrix& rho, const mn::Matrix& chi) {
        return mn::exp_map(mn::SPDPoint(rho), mn::TangentVector(chi)).matrix();
    }, py::arg("rho"), py::arg("chi"));
    m.def("log_map", [](const mn::Matrix& rho0, const mn::Matrix& rho1) {
        return mn::log_map(mn::SPDPoint(rho0), mn::SPDPoint(rho1)).matrix();
    }, py::arg("rho0"), py::arg("rho1"));
    m.def("geodesic", [](const mn::Matrix& a, const mn::Matrix& b, double t) {
        return mn::geodesic(mn::SPDPoint(a), mn::SPDPoint(b), t).matrix();
    }, py::arg("a"), py::arg("b"), py::arg("t"));
    m.def("vec_at_identity", &mn::vec_at_identity, py::arg("a"));
    m.def("frechet_mean", [](const std::vector<mn::Matrix>& mats, double tol, int max_iter) {
        const auto r = mn::frechet_mean(points(mats), {tol, max_iter});
        return std::make_tuple(r.mean.matrix(), r.iterations, r.gradient_norm);
    }, py::arg("points"), py::arg("tol") = mn::FrechetOptions{}.tol, py::arg("max_iter") = mn::FrechetOptions{}.max_iter,
       "Returns (mean, iterations, gradient_norm).");

    py::class_<mn::CohortStats>(m, "CohortStats")
        .def(py::init([](const std::vector<mn::Matrix>& mats, double tol, int max_iter) {
                 return mn::cohort_stats(points(mats), {tol, max_iter});
             }),
             py::arg("points"), py::arg("tol") = mn::FrechetOptions{}.tol,
             py::arg("max_iter") = mn::FrechetOptions{}.max_iter)
        .def_property_readonly("mean", [](const mn::CohortStats& s) { return s.mean().matrix(); })
        .def_property_readonly("covariance", &mn::CohortStats::covariance)
        .def_property_readonly("rank", &mn::CohortStats::rank)
        .def_property_readonly("degenerate", &mn::CohortStats::degenerate)
        .def("mahalanobis", [](const mn::CohortStats& s, const mn::Matrix& rho) {
            return mn::mahalanobis(s, mn::SPDPoint(rho));
        }, py::arg("rho"))
        .def("density", [](const mn::CohortStats& s, const mn::Matrix& rho) {
            return mn::gaussian_density(s, mn::SPDPoint(rho)).value;
        }, py::arg("rho"));

    // graphs
    py::class_<mn::WeightedGraph>(m, "Graph")
        .def(py::init([](std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, double>>& edges,
                         std::vector<std::string> labels) {
                 std::vector<mn::Edge> es;
                 for (const auto& [u, v, w] : edges) es.push_back({u, v, w});
                 return mn::WeightedGraph(n, std::move(es), std::move(labels));
             }),
             py::arg("n"), py::arg("edges"), py::arg("labels") = std::vector<std::string>{})
        .def_property_readonly("node_count", &mn::WeightedGraph::node_count)
        .def_property_readonly("edge_count", &mn::WeightedGraph::edge_count)
        .def_property_readonly("labels", &mn::WeightedGraph::labels)
        .def_property_readonly("edges", [](const mn::WeightedGraph& g) {
            std::vector<std::tuple<std::size_t, std::size_t, double>> out;
            for (const auto& e : g.edges()) out.emplace_back(e.u, e.v, e.weight);
            return out;
        })
        .def("degree", &mn::WeightedGraph::degree);

    m.def("normalized_laplacian", &mn::normalized_laplacian, py::arg("graph"));
    m.def("approx_laplacian", [](const mn::WeightedGraph& g, double eps, bool trace_normalize) {
        mn::SPDPoint p = mn::approx_laplacian(g, eps);
        return (trace_normalize ? mn::trace_normalize(p) : p).matrix();
    }, py::arg("graph"), py::arg("eps") = mn::kDefaultLaplacianEps, py::arg("trace_normalize") = false);
    m.def("is_connected", &mn::is_connected, py::arg("graph"));
    m.def("read_edge_list", py::overload_cast<const std::filesystem::path&>(&mn::read_edge_list), py::arg("path"));
    m.def("write_edge_list",
          py::overload_cast<const mn::WeightedGraph&, const std::filesystem::path&>(&mn::write_edge_list),
          py::arg("graph"), py::arg("path"));

    // curvature
    m.def("ollivier_curvature", &mn::ollivier_curvature, py::arg("graph"), py::arg("x"), py::arg("y"),
          py::arg("idleness") = 0.0);
    m.def("edge_curvatures", &mn::edge_curvatures, py::arg("graph"), py::arg("idleness") = 0.0,
          py::arg("threads") = 0);
    m.def("spectral_curvature_report", [](const mn::WeightedGraph& g, double idleness) {
        const auto r = mn::spectral_curvature_report(g, idleness);
        py::dict d;
        d["eigenvalues"] = r.eigenvalues;
        d["min_edge_curvature"] = r.min_edge_curvature;
        d["lower_bound_holds"] = r.lower_bound_holds;
        d["upper_bound_holds"] = r.upper_bound_holds;
        d["bound_satisfied"] = r.bound_satisfied;
        return d;
    }, py::arg("graph"), py::arg("idleness") = 0.0);

    // generators
    m.def("mix_seed", &mn::mix_seed, py::arg("base"), py::arg("index"));
    m.def("gen_chain", &mn::gen_chain, py::arg("n"), py::arg("m"));
    m.def("gen_star", &mn::gen_star, py::arg("n"), py::arg("m"), py::arg("seed"));
    m.def("gen_gnm", &mn::gen_gnm, py::arg("n"), py::arg("m"), py::arg("seed"));
    m.def("gen_ba", &mn::gen_ba, py::arg("n"), py::arg("m_attach"), py::arg("seed"));
    m.def("assign_weights", &mn::assign_weights, py::arg("graph"), py::arg("low"), py::arg("high"), py::arg("seed"));

    // ingest
    m.def("pearson", [](const std::vector<double>& a, const std::vector<double>& b) { return mn::pearson(a, b); },
          py::arg("a"), py::arg("b"));

    // harness
    m.def("pairwise_matrix", [](const std::vector<mn::Matrix>& mats, const std::string& metric,
                                std::optional<std::vector<std::string>> labels, std::size_t threads) {
        return mn::pairwise_matrix(points(mats), default_labels(mats.size(), labels), mn::parse_metric(metric),
                                   threads)
            .entries;
    }, py::arg("points"), py::arg("metric") = "riemannian", py::arg("labels") = py::none(), py::arg("threads") = 0);
    m.def("cluster_kmedoids", [](const mn::Matrix& d, std::size_t k, std::uint64_t seed, std::size_t restarts) {
        const mn::DistanceMatrix dm{default_labels(static_cast<std::size_t>(d.rows()), std::nullopt),
                                    mn::Metric::Riemannian, d};
        const auto r = mn::cluster_kmedoids(dm, k, seed, restarts);
        return std::make_tuple(r.assignment, r.medoids, r.cost);
    }, py::arg("distances"), py::arg("k"), py::arg("seed"), py::arg("restarts") = mn::kDefaultRestarts,
       "Returns (assignment, medoids, cost).");
    m.def("clustering_accuracy", [](const std::vector<std::size_t>& a, const std::vector<std::string>& classes) {
        return mn::clustering_accuracy(a, classes);
    }, py::arg("assignment"), py::arg("classes"));
    m.def("_run_toy", [](const std::vector<std::uint64_t>& seeds, std::size_t n, std::size_t m_edges,
                         const std::vector<std::pair<double, double>>& supports, double eps) {
        mn::ToyConfig c;
        c.seeds = seeds;
        c.n = n;
        c.m = m_edges;
        c.weight_supports = supports;
        c.options.eps = eps;
        return mn::run_toy(c).dump();
    });
    m.def("_run_scalefree", [](std::size_t n_per_class, std::size_t n, std::size_t m_edges, std::size_t m_attach,
                               std::uint64_t seed, double eps, std::string out_dir) {
        mn::ScaleFreeConfig c;
        c.n_per_class = n_per_class;
        c.n = n;
        c.m = m_edges;
        c.m_attach = m_attach;
        c.seed = seed;
        c.options.eps = eps;
        c.options.out_dir = out_dir;
        return mn::run_scalefree(c).dump();
    });

    m.attr("DEFAULT_EPS") = mn::kDefaultLaplacianEps;
}
