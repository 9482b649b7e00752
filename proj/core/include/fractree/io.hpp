#pragma once

#include <map>
#include <string>

#include "fractree/graph.hpp"
#include "fractree/tree.hpp"
#include "fractree/word.hpp"

namespace fractree {

inline constexpr const char* kSchemaTag = "fractree/1";

// Tree JSON: {"alphabet_size": 2, "terminal_nodes": ["00","01","10","110"]}.
// A "schema" key is emitted on output and ignored on input.
TreeSpec tree_from_json(const std::string& text);
std::string tree_to_json(const TreeSpec& spec);

// Graph JSON: {"n": 2, "root": 1, "edges": [[1,1,"0"],[1,2,"1"],[2,1,"0"]]}
// with 1-based vertices; the root must be vertex 1. "alphabet_size" is
// emitted on output and, when absent on input, inferred as max label + 1.
PointedGraph graph_from_json(const std::string& text);
std::string graph_to_json(const PointedGraph& g);

// Graphviz export; the distinguished vertex is double-circled.
std::string graph_to_dot(const PointedGraph& g);

// Complexity table JSON: {"entries": {"010": 7.0, ...}}.
std::map<Word, double> table_from_json(const std::string& text,
                                       std::uint32_t alphabet_size);

std::string read_file(const std::string& path);

}  // namespace fractree
