#include "fractree/tree.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "fractree/error.hpp"

namespace fractree {

TreeSpec TreeSpec::validate(std::uint32_t alphabet_size,
                            std::vector<Word> terminal_nodes, bool keep_order) {
  if (alphabet_size < 2) {
    raise(Errc::InvalidFormat, "alphabet size must be at least 2, got " +
                                   std::to_string(alphabet_size));
  }
  if (terminal_nodes.size() < 2) {
    raise(Errc::DegenerateTree,
          "a tree needs at least 2 terminal nodes, got " +
              std::to_string(terminal_nodes.size()));
  }
  for (const Word& t : terminal_nodes) {
    if (t.empty()) {
      raise(Errc::EmptyTerminal, "terminal nodes must be non-empty strings");
    }
    for (const Symbol s : t) {
      if (s >= alphabet_size) {
        raise(Errc::SymbolOutOfRange,
              "symbol " + std::to_string(s) + " in terminal node exceeds alphabet size " +
                  std::to_string(alphabet_size));
      }
    }
  }
  if (!keep_order) {
    std::sort(terminal_nodes.begin(), terminal_nodes.end(), length_lex_less);
  }
  // Pairwise prefix check; k stays small enough that quadratic is fine.
  for (std::size_t i = 0; i < terminal_nodes.size(); ++i) {
    for (std::size_t j = 0; j < terminal_nodes.size(); ++j) {
      if (i == j) continue;
      if (is_prefix_of(terminal_nodes[i], terminal_nodes[j])) {
        raise(Errc::NotPrefixFree, "\"" + format_word(terminal_nodes[i]) +
                                       "\" is a prefix of \"" +
                                       format_word(terminal_nodes[j]) + "\"");
      }
    }
  }
  return TreeSpec(alphabet_size, std::move(terminal_nodes));
}

TreeSpec TreeSpec::from_strings(std::uint32_t alphabet_size,
                                const std::vector<std::string>& terminal_nodes,
                                bool keep_order) {
  std::vector<Word> words;
  words.reserve(terminal_nodes.size());
  for (const std::string& t : terminal_nodes) {
    words.push_back(parse_word(t, alphabet_size));
  }
  return validate(alphabet_size, std::move(words), keep_order);
}

std::size_t TreeSpec::max_terminal_depth() const {
  std::size_t depth = 0;
  for (const Word& t : terminals_) depth = std::max(depth, t.size());
  return depth;
}

TreeNodes tree_nodes(const TreeSpec& spec) {
  std::map<Word, bool> closure;  // node -> is terminal
  closure[Word{}] = false;
  for (const Word& t : spec.terminals()) {
    for (std::size_t len = 1; len < t.size(); ++len) {
      closure.emplace(Word(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(len)), false);
    }
    closure[t] = true;
  }

  TreeNodes nodes;
  nodes.all.reserve(closure.size());
  for (const auto& [word, is_terminal] : closure) {
    nodes.all.push_back(word);
  }
  std::sort(nodes.all.begin(), nodes.all.end(), length_lex_less);
  nodes.terminal_flag.reserve(nodes.all.size());
  for (const Word& word : nodes.all) {
    const bool is_terminal = closure.at(word);
    nodes.terminal_flag.push_back(is_terminal);
    if (!is_terminal) nodes.non_terminal.push_back(word);
  }
  return nodes;
}

TreeIndex::TreeIndex(const TreeSpec& spec) : alphabet_size_(spec.alphabet_size()) {
  const TreeNodes nodes = tree_nodes(spec);
  std::map<Word, int> id;
  for (std::size_t i = 0; i < nodes.all.size(); ++i) {
    id.emplace(nodes.all[i], static_cast<int>(i));
  }
  children_.assign(nodes.all.size() * alphabet_size_, kNoChild);
  terminal_symbol_.assign(nodes.all.size(), -1);
  for (std::size_t i = 0; i < nodes.all.size(); ++i) {
    Word child = nodes.all[i];
    child.push_back(0);
    for (Symbol a = 0; a < alphabet_size_; ++a) {
      child.back() = a;
      const auto it = id.find(child);
      if (it != id.end()) {
        children_[i * alphabet_size_ + a] = it->second;
      }
    }
  }
  for (std::size_t i = 0; i < spec.terminals().size(); ++i) {
    terminal_symbol_[static_cast<std::size_t>(id.at(spec.terminals()[i]))] =
        static_cast<int>(i);
  }
}

int TreeIndex::step(int node, Symbol a) const {
  if (a >= alphabet_size_) return kNoChild;
  return children_[static_cast<std::size_t>(node) * alphabet_size_ + a];
}

std::vector<std::size_t> depth_profile(const TreeSpec& spec) {
  const TreeNodes nodes = tree_nodes(spec);
  std::vector<std::size_t> profile(nodes.non_terminal_count(), 0);
  for (const Word& t : spec.terminals()) {
    profile.at(t.size() - 1) += 1;
  }
  return profile;
}

bool is_in_expansion(const TreeSpec& spec, const Word& sigma) {
  const TreeIndex index(spec);
  int node = index.root();
  for (const Symbol a : sigma) {
    node = index.step(node, a);
    if (node == TreeIndex::kNoChild) return false;
    if (index.is_terminal(node)) node = index.root();
  }
  return true;
}

double MetricDistance::value() const {
  if (identical) return 0.0;
  return std::pow(static_cast<double>(base),
                  -static_cast<double>(common_prefix));
}

MetricDistance metric_distance(const Word& x, const Word& y,
                               std::uint32_t alphabet_size) {
  if (x.size() != y.size()) {
    raise(Errc::LengthMismatch, "strings have lengths " +
                                    std::to_string(x.size()) + " and " +
                                    std::to_string(y.size()));
  }
  MetricDistance distance;
  distance.base = alphabet_size;
  distance.common_prefix = common_prefix_length(x, y);
  distance.identical = distance.common_prefix == x.size();
  return distance;
}

}  // namespace fractree
