#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fractree/word.hpp"

namespace fractree {

// A finite tree over the alphabet {0,..,m-1}, given by its prefix-free set
// of terminal nodes. The order of the terminal list is the coding order:
// terminal i encodes to symbol i. Immutable after validation.
class TreeSpec {
 public:
  // Validates alphabet size, symbol ranges, non-emptiness, prefix-freeness
  // and the branching requirement (at least two terminals). Unless
  // keep_order is set, terminals are canonicalized to length-lexicographic
  // order, which fixes the coding bijection deterministically.
  static TreeSpec validate(std::uint32_t alphabet_size,
                           std::vector<Word> terminal_nodes,
                           bool keep_order = false);

  static TreeSpec from_strings(std::uint32_t alphabet_size,
                               const std::vector<std::string>& terminal_nodes,
                               bool keep_order = false);

  std::uint32_t alphabet_size() const { return alphabet_size_; }
  const std::vector<Word>& terminals() const { return terminals_; }
  std::size_t terminal_count() const { return terminals_.size(); }
  std::size_t max_terminal_depth() const;

  bool operator==(const TreeSpec& other) const = default;

 private:
  TreeSpec(std::uint32_t alphabet_size, std::vector<Word> terminals)
      : alphabet_size_(alphabet_size), terminals_(std::move(terminals)) {}

  std::uint32_t alphabet_size_;
  std::vector<Word> terminals_;
};

// The downward closure of the terminal set under the prefix relation,
// split into terminal and non-terminal nodes. Non-terminals are kept in
// length-lexicographic order, so non_terminal[0] is the root.
struct TreeNodes {
  std::vector<Word> all;            // every node, length-lex
  std::vector<Word> non_terminal;   // proper prefixes of terminals, incl. root
  std::vector<bool> terminal_flag;  // parallel to `all`

  std::size_t non_terminal_count() const { return non_terminal.size(); }
};

TreeNodes tree_nodes(const TreeSpec& spec);

// Deterministic child-lookup index over the nodes of the tree. Node ids
// number the closure; terminal nodes additionally know their coding symbol.
class TreeIndex {
 public:
  explicit TreeIndex(const TreeSpec& spec);

  static constexpr int kNoChild = -1;

  int root() const { return 0; }
  // Child of `node` along symbol a, or kNoChild when that node is absent.
  int step(int node, Symbol a) const;
  bool is_terminal(int node) const { return terminal_symbol_[node] >= 0; }
  // Coding symbol of a terminal node (negative for non-terminals).
  int terminal_symbol(int node) const { return terminal_symbol_[node]; }
  std::size_t node_count() const { return terminal_symbol_.size(); }

 private:
  std::uint32_t alphabet_size_;
  std::vector<int> children_;         // node * m + a -> child id
  std::vector<int> terminal_symbol_;  // per node
};

// d_i = number of terminal nodes of depth i, for i = 1..n where n is the
// number of non-terminal nodes. The tail is zero-padded: the deepest
// terminal has depth at most n.
std::vector<std::size_t> depth_profile(const TreeSpec& spec);

// Membership in T*, the self-similar expansion of the tree: sigma must
// decompose as a concatenation of terminal nodes followed by a (possibly
// empty) prefix of some node of the tree.
bool is_in_expansion(const TreeSpec& spec, const Word& sigma);

// The standard metric m^{-j} between two equal-length strings agreeing on
// exactly j leading symbols, kept in exact (base, exponent) form.
struct MetricDistance {
  std::uint32_t base = 0;
  std::size_t common_prefix = 0;
  bool identical = false;

  double value() const;
};

MetricDistance metric_distance(const Word& x, const Word& y,
                               std::uint32_t alphabet_size);

}  // namespace fractree
