#include "manifoldnet/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace manifoldnet {
namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, sep)) fields.push_back(field);
    if (!line.empty() && line.back() == sep) fields.emplace_back();
    return fields;
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool is_index(const std::string& s) {
    return !s.empty() && s.size() < 19 && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool parse_number(const std::string& text, double& out) {
    const std::string t = trim(text);
    if (t.empty()) return false;
    const char* begin = t.data();
    if (*begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, t.data() + t.size(), out);
    return ec == std::errc() && ptr == t.data() + t.size() && std::isfinite(out);
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
    return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
    return out;
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

WeightedGraph parse_edge_list(std::istream& in, const std::string& source_name) {
    struct RawEdge {
        std::string u, v;
        double weight;
        std::size_t line;
    };
    std::vector<RawEdge> raw;
    std::string line;
    for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        auto fields = split(stripped, '\t');
        if (fields.size() < 2) {
            // Tolerate space-separated files when no tab is present.
            std::istringstream ws(stripped);
            fields.clear();
            for (std::string f; ws >> f;) fields.push_back(f);
        }
        if (fields.size() < 2 || fields.size() > 3) {
            throw Error(ErrorKind::ParseError, source_name + ":" + std::to_string(line_no) +
                                                   ": expected 'u<TAB>v[<TAB>weight]'");
        }
        double weight = 1.0;
        if (fields.size() == 3 && !parse_number(fields[2], weight)) {
            throw Error(ErrorKind::ParseError, source_name + ":" + std::to_string(line_no) + ": bad weight '" +
                                                   fields[2] + "'");
        }
        raw.push_back({trim(fields[0]), trim(fields[1]), weight, line_no});
    }
    if (raw.empty()) throw Error(ErrorKind::ParseError, source_name + ": no edges");

    const bool numeric =
        std::all_of(raw.begin(), raw.end(), [](const RawEdge& e) { return is_index(e.u) && is_index(e.v); });

    std::vector<Edge> edges;
    std::vector<std::string> labels;
    std::size_t node_count = 0;
    if (numeric) {
        for (const auto& e : raw) {
            const NodeId u = std::stoull(e.u);
            const NodeId v = std::stoull(e.v);
            node_count = std::max({node_count, u + 1, v + 1});
            edges.push_back({u, v, e.weight});
        }
    } else {
        std::unordered_map<std::string, NodeId> ids;
        auto intern = [&](const std::string& label) {
            const auto [it, inserted] = ids.emplace(label, labels.size());
            if (inserted) labels.push_back(label);
            return it->second;
        };
        for (const auto& e : raw) {
            const NodeId u = intern(e.u);
            const NodeId v = intern(e.v);
            edges.push_back({u, v, e.weight});
        }
        node_count = labels.size();
    }
    try {
        return WeightedGraph(node_count, std::move(edges), std::move(labels));
    } catch (const Error& err) {
        throw Error(err.kind(), source_name + ": " + err.detail());
    }
}

WeightedGraph read_edge_list(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse_edge_list(in, path.string());
}

void write_edge_list(const WeightedGraph& g, std::ostream& out) {
    for (const auto& e : g.edges()) {
        out << g.label(e.u) << '\t' << g.label(e.v) << '\t' << format_double(e.weight) << '\n';
    }
}

void write_edge_list(const WeightedGraph& g, const std::filesystem::path& path) {
    auto out = open_output(path);
    write_edge_list(g, out);
    if (!out) throw Error(ErrorKind::IoError, "failed writing " + path.string());
}

nlohmann::ordered_json label_map_json(const WeightedGraph& g) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (NodeId v = 0; v < g.node_count(); ++v) j[g.label(v)] = v;
    return j;
}

Matrix read_matrix_csv(const std::filesystem::path& path, bool symmetric) {
    auto in = open_input(path);
    std::vector<std::vector<double>> rows;
    std::string line;
    for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
        if (trim(line).empty()) continue;
        std::vector<double> row;
        const auto fields = split(trim(line), ',');
        for (std::size_t col = 0; col < fields.size(); ++col) {
            double value = 0.0;
            if (!parse_number(fields[col], value)) {
                throw Error(ErrorKind::ParseError, path.string() + ":" + std::to_string(line_no) + ":" +
                                                       std::to_string(col + 1) + ": not a number '" + fields[col] +
                                                       "'");
            }
            row.push_back(value);
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw Error(ErrorKind::ParseError, path.string() + ":" + std::to_string(line_no) + ": ragged row");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw Error(ErrorKind::ParseError, path.string() + ": empty matrix");
    Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    }
    if (!symmetric) return m;
    try {
        return symmetrized(m);
    } catch (const Error& err) {
        throw Error(err.kind(), path.string() + ": " + err.detail());
    }
}

void write_matrix_csv(const Matrix& m, std::ostream& out) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
}

void write_matrix_csv(const Matrix& m, const std::filesystem::path& path) {
    auto out = open_output(path);
    write_matrix_csv(m, out);
    if (!out) throw Error(ErrorKind::IoError, "failed writing " + path.string());
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
    auto out = open_output(path);
    out << contents;
    if (!out) throw Error(ErrorKind::IoError, "failed writing " + path.string());
}

}  // namespace manifoldnet
