#pragma once

#include <filesystem>
#include <istream>
#include <string>

#include "turan/graph.hpp"
#include "turan/hypergraph.hpp"

namespace turan::io {

/// Edge-list text: "n m", then m lines "u v" (0-based). Errors are
/// Error(ParseError) naming the source and line.
Graph parse_edge_list(std::istream& in, const std::string& source = "<input>");
Graph read_edge_list(const std::filesystem::path& path);

/// Canonical form: pairs with u < v in lexicographic order.
std::string format_edge_list(const Graph& g);

/// Hypergraph text: "n m", then m lines of three ascending vertices.
Hypergraph3 parse_hypergraph(std::istream& in, const std::string& source = "<input>");
Hypergraph3 read_hypergraph(const std::filesystem::path& path);
std::string format_hypergraph(const Hypergraph3& hg);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace turan::io
