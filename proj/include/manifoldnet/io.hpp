#pragma once

// Exchange formats:
//   edge list  - TSV lines `u<TAB>v[<TAB>weight]`, '#' comments, blank lines
//                ignored. If every endpoint is a non-negative integer it is
//                used as the node id directly; otherwise endpoints are labels
//                given dense ids in first-appearance order.
//   matrix CSV - one row per matrix row, no header.
//   label map  - JSON object {label: id} in id order.

#include <filesystem>
#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "manifoldnet/graph.hpp"

namespace manifoldnet {

/// Shortest decimal form that round-trips to the same double.
std::string format_double(double value);

WeightedGraph parse_edge_list(std::istream& in, const std::string& source_name = "<stream>");
WeightedGraph read_edge_list(const std::filesystem::path& path);

void write_edge_list(const WeightedGraph& g, std::ostream& out);
void write_edge_list(const WeightedGraph& g, const std::filesystem::path& path);

nlohmann::ordered_json label_map_json(const WeightedGraph& g);

/// Reads a dense matrix; symmetric=true validates symmetry at the usual
/// relative tolerance and returns the symmetrized matrix.
Matrix read_matrix_csv(const std::filesystem::path& path, bool symmetric = true);
void write_matrix_csv(const Matrix& m, std::ostream& out);
void write_matrix_csv(const Matrix& m, const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace manifoldnet
