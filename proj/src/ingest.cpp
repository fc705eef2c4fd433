#include "manifoldnet/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "manifoldnet/io.hpp"
#include "manifoldnet/parallel.hpp"
#include "manifoldnet/random.hpp"

namespace manifoldnet {
namespace {

std::string clean(std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    s = s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return s;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ',')) fields.push_back(clean(field));
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::string where(const std::string& source, std::size_t line, std::size_t col) {
    return source + " (row " + std::to_string(line) + ", column " + std::to_string(col) + ")";
}

}  // namespace

std::optional<std::size_t> ExpressionMatrix::gene_index(const std::string& gene) const {
    const auto it = std::find(gene_ids.begin(), gene_ids.end(), gene);
    if (it == gene_ids.end()) return std::nullopt;
    return static_cast<std::size_t>(it - gene_ids.begin());
}

std::optional<std::size_t> ExpressionMatrix::sample_index(const std::string& sample) const {
    const auto it = std::find(sample_ids.begin(), sample_ids.end(), sample);
    if (it == sample_ids.end()) return std::nullopt;
    return static_cast<std::size_t>(it - sample_ids.begin());
}

ExpressionMatrix parse_expression(std::istream& in, const std::string& source_name) {
    ExpressionMatrix expr;
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::unordered_set<std::string> genes;
    while (std::getline(in, line)) {
        ++line_no;
        if (clean(line).empty()) continue;
        const auto fields = split_csv(line);
        if (!header_seen) {
            header_seen = true;
            std::unordered_set<std::string> samples;
            for (std::size_t c = 1; c < fields.size(); ++c) {
                if (!samples.insert(fields[c]).second) {
                    throw Error(ErrorKind::DuplicateId, "sample '" + fields[c] + "' repeated in " + source_name);
                }
                expr.sample_ids.push_back(fields[c]);
            }
            if (expr.sample_ids.empty()) throw Error(ErrorKind::ParseError, source_name + ": header has no samples");
            continue;
        }
        if (fields.size() != expr.sample_ids.size() + 1) {
            throw Error(ErrorKind::ParseError, where(source_name, line_no, fields.size()) + ": expected " +
                                                   std::to_string(expr.sample_ids.size() + 1) + " fields");
        }
        if (!genes.insert(fields[0]).second) {
            throw Error(ErrorKind::DuplicateId, "gene '" + fields[0] + "' repeated in " + source_name);
        }
        std::vector<double> row(expr.sample_ids.size());
        for (std::size_t c = 1; c < fields.size(); ++c) {
            const std::string& cell = fields[c];
            const char* begin = cell.data();
            if (!cell.empty() && *begin == '+') ++begin;
            const auto [ptr, ec] = std::from_chars(begin, cell.data() + cell.size(), row[c - 1]);
            if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(row[c - 1])) {
                throw Error(ErrorKind::ParseError,
                            where(source_name, line_no, c + 1) + ": non-numeric cell '" + cell + "'");
            }
        }
        expr.gene_ids.push_back(fields[0]);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw Error(ErrorKind::ParseError, source_name + ": no gene rows");
    expr.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(expr.sample_ids.size()));
    for (std::size_t g = 0; g < rows.size(); ++g) {
        for (std::size_t s = 0; s < rows[g].size(); ++s) expr.values(g, s) = rows[g][s];
    }
    return expr;
}

ExpressionMatrix load_expression(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
    return parse_expression(in, path.string());
}

TopologyTemplate parse_topology(std::istream& in, const std::string& source_name) {
    TopologyTemplate topo;
    std::set<std::pair<std::string, std::string>> seen;
    std::string line;
    for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
        const std::string stripped = clean(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        std::vector<std::string> fields;
        std::istringstream stream(stripped);
        for (std::string f; std::getline(stream, f, '\t');) fields.push_back(clean(f));
        if (fields.size() < 2) {
            fields.clear();
            std::istringstream ws(stripped);
            for (std::string f; ws >> f;) fields.push_back(f);
        }
        if (fields.size() < 2 || fields.size() > 3) {
            throw Error(ErrorKind::ParseError, source_name + ":" + std::to_string(line_no) + ": expected 'a<TAB>b'");
        }
        if (fields[0] == fields[1]) {
            throw Error(ErrorKind::InvalidGraph, source_name + ":" + std::to_string(line_no) + ": self-loop on " +
                                                     fields[0]);
        }
        if (!seen.insert(std::minmax(fields[0], fields[1])).second) {
            throw Error(ErrorKind::InvalidGraph, source_name + ":" + std::to_string(line_no) + ": duplicate pair " +
                                                     fields[0] + " - " + fields[1]);
        }
        topo.pairs.emplace_back(fields[0], fields[1]);
    }
    if (topo.pairs.empty()) throw Error(ErrorKind::ParseError, source_name + ": no gene pairs");
    return topo;
}

TopologyTemplate load_topology(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
    return parse_topology(in, path.string());
}

std::optional<double> pearson(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.size() < 2) {
        throw Error(ErrorKind::InvalidArgument, "correlation needs two equal-length series of length >= 2");
    }
    const auto [amin, amax] = std::minmax_element(a.begin(), a.end());
    const auto [bmin, bmax] = std::minmax_element(b.begin(), b.end());
    if (*amin == *amax || *bmin == *bmax) return std::nullopt;

    const double n = static_cast<double>(a.size());
    const double mean_a = std::accumulate(a.begin(), a.end(), 0.0) / n;
    const double mean_b = std::accumulate(b.begin(), b.end(), 0.0) / n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - mean_a;
        const double db = b[i] - mean_b;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

CorrelationNetwork correlation_network(const ExpressionMatrix& expr, const TopologyTemplate& topo,
                                       std::span<const std::string> samples, const IngestOptions& options) {
    if (samples.size() < 2) throw Error(ErrorKind::InvalidArgument, "correlation needs at least 2 samples");
    std::vector<std::size_t> columns;
    for (const auto& s : samples) {
        const auto idx = expr.sample_index(s);
        if (!idx) throw Error(ErrorKind::InvalidArgument, "unknown sample '" + s + "'");
        columns.push_back(*idx);
    }

    std::vector<std::string> labels;
    std::unordered_map<std::string, NodeId> node_of;
    std::vector<std::vector<double>> series;
    auto node = [&](const std::string& gene) {
        if (const auto it = node_of.find(gene); it != node_of.end()) return it->second;
        const auto row = expr.gene_index(gene);
        if (!row) throw Error(ErrorKind::MissingGene, "gene '" + gene + "' is not in the expression matrix");
        std::vector<double> values;
        values.reserve(columns.size());
        for (std::size_t c : columns) values.push_back(expr.values(static_cast<Eigen::Index>(*row), c));
        series.push_back(std::move(values));
        labels.push_back(gene);
        return node_of[gene] = labels.size() - 1;
    };

    std::vector<std::string> warnings;
    std::vector<Edge> edges;
    for (const auto& [a, b] : topo.pairs) {
        const NodeId u = node(a);
        const NodeId v = node(b);
        const auto r = pearson(series[u], series[v]);
        double weight = 0.0;
        if (!r) {
            warnings.push_back("ConstantGene: edge " + a + " - " + b +
                                      " has a constant gene over the chosen samples; weight set to 0");
        } else {
            weight = options.mode == WeightMode::AbsCorrelation ? std::abs(*r) : (*r) * (*r);
        }
        if (weight == 0.0) {
            weight = options.zero_weight_floor;
            warnings.push_back("ZeroWeight: edge " + a + " - " + b + " kept with weight " +
                                      format_double(options.zero_weight_floor));
        }
        edges.push_back({u, v, weight});
    }
    const std::size_t node_count = labels.size();
    return {WeightedGraph(node_count, std::move(edges), std::move(labels)), std::move(warnings)};
}

Cohort build_cohort(const ExpressionMatrix& expr, const TopologyTemplate& topo, std::size_t n_networks,
                    std::size_t subset_size, std::uint64_t seed, const IngestOptions& options, std::size_t threads) {
    const std::size_t sample_count = expr.sample_ids.size();
    if (subset_size < 2 || subset_size > sample_count) {
        throw Error(ErrorKind::InvalidArgument, "subset size " + std::to_string(subset_size) +
                                                    " must lie in [2, " + std::to_string(sample_count) + "]");
    }
    Cohort cohort;
    cohort.seed = seed;
    cohort.subsets.resize(n_networks);
    for (std::size_t i = 0; i < n_networks; ++i) {
        Rng rng(mix_seed(seed, i));
        std::vector<std::size_t> order(sample_count);
        std::iota(order.begin(), order.end(), 0);
        for (std::size_t k = 0; k < subset_size; ++k) {
            const std::size_t pick = k + rng.below(sample_count - k);
            std::swap(order[k], order[pick]);
        }
        order.resize(subset_size);
        std::sort(order.begin(), order.end());
        for (std::size_t idx : order) cohort.subsets[i].push_back(expr.sample_ids[idx]);
    }

    std::vector<std::optional<CorrelationNetwork>> built(n_networks);
    parallel_for(n_networks, threads, [&](std::size_t i) {
        built[i] = correlation_network(expr, topo, cohort.subsets[i], options);
    });
    for (std::size_t i = 0; i < n_networks; ++i) {
        for (const auto& w : built[i]->warnings) cohort.warnings.push_back("network " + std::to_string(i) + ": " + w);
        cohort.networks.push_back(std::move(built[i]->graph));
    }
    return cohort;
}

nlohmann::ordered_json cohort_manifest(const Cohort& cohort, const std::vector<std::string>& files) {
    nlohmann::ordered_json j;
    j["seed"] = cohort.seed;
    j["networks"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < cohort.networks.size(); ++i) {
        nlohmann::ordered_json entry;
        entry["index"] = i;
        if (i < files.size()) entry["file"] = files[i];
        entry["subset"] = cohort.subsets[i];
        j["networks"].push_back(std::move(entry));
    }
    j["warnings"] = cohort.warnings;
    return j;
}

std::vector<std::string> write_cohort(const Cohort& cohort, const std::filesystem::path& dir,
                                      const std::string& prefix) {
    std::filesystem::create_directories(dir);
    std::vector<std::string> files;
    for (std::size_t i = 0; i < cohort.networks.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "_%03zu.tsv", i);
        files.push_back(prefix + name);
        write_edge_list(cohort.networks[i], dir / files.back());
    }
    write_text_file(dir / (prefix + "_manifest.json"), cohort_manifest(cohort, files).dump(2) + "\n");
    return files;
}

}  // namespace manifoldnet
