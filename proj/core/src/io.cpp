#include "fractree/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fractree/error.hpp"

namespace fractree {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
  json parsed = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (parsed.is_discarded()) {
    raise(Errc::InvalidFormat, "malformed JSON");
  }
  return parsed;
}

}  // namespace

TreeSpec tree_from_json(const std::string& text) {
  const json parsed = parse_json(text);
  if (!parsed.is_object() || !parsed.contains("alphabet_size") ||
      !parsed.contains("terminal_nodes")) {
    raise(Errc::InvalidFormat,
          "tree JSON needs \"alphabet_size\" and \"terminal_nodes\"");
  }
  if (!parsed["alphabet_size"].is_number_unsigned() ||
      !parsed["terminal_nodes"].is_array()) {
    raise(Errc::InvalidFormat, "tree JSON fields have the wrong types");
  }
  const auto alphabet_size = parsed["alphabet_size"].get<std::uint32_t>();
  std::vector<std::string> terminals;
  for (const json& node : parsed["terminal_nodes"]) {
    if (!node.is_string()) {
      raise(Errc::InvalidFormat, "terminal nodes must be strings");
    }
    terminals.push_back(node.get<std::string>());
  }
  return TreeSpec::from_strings(alphabet_size, terminals);
}

std::string tree_to_json(const TreeSpec& spec) {
  json out;
  out["schema"] = kSchemaTag;
  out["alphabet_size"] = spec.alphabet_size();
  json nodes = json::array();
  for (const Word& t : spec.terminals()) {
    nodes.push_back(format_word(t));
  }
  out["terminal_nodes"] = std::move(nodes);
  return out.dump(2) + "\n";
}

PointedGraph graph_from_json(const std::string& text) {
  const json parsed = parse_json(text);
  if (!parsed.is_object() || !parsed.contains("n") || !parsed.contains("root") ||
      !parsed.contains("edges") || !parsed["edges"].is_array()) {
    raise(Errc::InvalidFormat, "graph JSON needs \"n\", \"root\" and \"edges\"");
  }
  const auto n = parsed["n"].get<std::uint32_t>();
  if (parsed["root"].get<std::uint32_t>() != 1) {
    raise(Errc::InvalidFormat, "the distinguished vertex must be vertex 1");
  }

  Symbol max_label = 0;
  std::vector<Edge> edges;
  for (const json& entry : parsed["edges"]) {
    if (!entry.is_array() || entry.size() != 3 || !entry[0].is_number_unsigned() ||
        !entry[1].is_number_unsigned() || !entry[2].is_string()) {
      raise(Errc::InvalidFormat, "each edge must be [from, to, \"label\"]");
    }
    const auto from = entry[0].get<std::uint32_t>();
    const auto to = entry[1].get<std::uint32_t>();
    if (from < 1 || from > n || to < 1 || to > n) {
      raise(Errc::InvalidFormat, "edge endpoints must lie in 1..n");
    }
    const Word label = parse_word(entry[2].get<std::string>(), kMaxTextAlphabet);
    if (label.size() != 1) {
      raise(Errc::InvalidFormat, "edge labels must be single symbols");
    }
    max_label = std::max(max_label, label[0]);
    edges.push_back(Edge{from - 1, to - 1, label[0]});
  }

  std::uint32_t alphabet_size = max_label + 1;
  if (parsed.contains("alphabet_size")) {
    alphabet_size = parsed["alphabet_size"].get<std::uint32_t>();
  }
  return PointedGraph::create(n, alphabet_size, std::move(edges));
}

std::string graph_to_json(const PointedGraph& g) {
  json out;
  out["schema"] = kSchemaTag;
  out["n"] = g.vertex_count();
  out["root"] = 1;
  out["alphabet_size"] = g.alphabet_size();
  json edges = json::array();
  for (const Edge& e : g.edges()) {
    edges.push_back(json::array(
        {e.from + 1, e.to + 1, format_word(Word{e.label})}));
  }
  out["edges"] = std::move(edges);
  return out.dump(2) + "\n";
}

std::string graph_to_dot(const PointedGraph& g) {
  std::ostringstream out;
  out << "digraph fractree {\n";
  out << "  rankdir=LR;\n";
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    out << "  v" << (v + 1) << " [shape="
        << (v == PointedGraph::kRoot ? "doublecircle" : "circle") << "];\n";
  }
  for (const Edge& e : g.edges()) {
    out << "  v" << (e.from + 1) << " -> v" << (e.to + 1) << " [label=\""
        << format_word(Word{e.label}) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::map<Word, double> table_from_json(const std::string& text,
                                       std::uint32_t alphabet_size) {
  const json parsed = parse_json(text);
  if (!parsed.is_object() || !parsed.contains("entries") ||
      !parsed["entries"].is_object()) {
    raise(Errc::InvalidFormat, "table JSON needs an \"entries\" object");
  }
  std::map<Word, double> table;
  for (const auto& [key, value] : parsed["entries"].items()) {
    if (!value.is_number()) {
      raise(Errc::InvalidFormat, "table values must be numbers");
    }
    table[parse_word(key, alphabet_size)] = value.get<double>();
  }
  return table;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    raise(Errc::InvalidFormat, "cannot open file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace fractree
