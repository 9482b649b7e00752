#pragma once

// Seeded generators shared by the property and acceptance suites.

#include <algorithm>
#include <map>
#include <random>
#include <vector>

#include "fractree/coding.hpp"
#include "fractree/tree.hpp"
#include "fractree/word.hpp"

namespace fractree::test {

// Random leaf cut of the m-ary tree: grow from the root by replacing a
// random leaf with one child (a chain step) or with several children (a
// split), so the result is prefix-free by construction with terminal count
// in [2, max_terminals] and depths <= max_depth.
inline TreeSpec random_tree_spec(std::mt19937_64& rng, std::uint32_t m,
                                 std::size_t max_terminals = 12,
                                 std::size_t max_depth = 8) {
  std::uniform_int_distribution<std::size_t> k_dist(2, max_terminals);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  for (;;) {
    const std::size_t target = k_dist(rng);
    std::vector<Word> leaves{Word{}};
    for (int guard = 0; guard < 4096; ++guard) {
      const bool root_pending = leaves.size() == 1 && leaves[0].empty();
      if (!root_pending && leaves.size() >= target) break;

      std::vector<std::size_t> expandable;
      for (std::size_t i = 0; i < leaves.size(); ++i) {
        if (leaves[i].size() < max_depth) expandable.push_back(i);
      }
      if (expandable.empty()) break;
      std::uniform_int_distribution<std::size_t> pick_dist(0, expandable.size() - 1);
      const std::size_t pick = expandable[pick_dist(rng)];
      const Word base = leaves[pick];

      // Budget keeps the terminal count from overshooting the target.
      const std::size_t budget = target - (leaves.size() - 1);
      std::size_t child_count = 1;
      const bool may_split = budget >= 2;
      const bool must_split = base.empty() && leaves.size() == 1 && target >= 2 &&
                              base.size() + 1 == max_depth;
      if (may_split && (must_split || coin(rng) > 0.25)) {
        std::uniform_int_distribution<std::size_t> c_dist(
            2, std::min<std::size_t>(m, budget));
        child_count = c_dist(rng);
      }

      std::vector<Symbol> symbols(m);
      for (std::uint32_t a = 0; a < m; ++a) symbols[a] = a;
      std::shuffle(symbols.begin(), symbols.end(), rng);
      symbols.resize(child_count);
      std::sort(symbols.begin(), symbols.end());

      leaves.erase(leaves.begin() + static_cast<std::ptrdiff_t>(pick));
      for (const Symbol a : symbols) {
        Word child = base;
        child.push_back(a);
        leaves.push_back(std::move(child));
      }
    }

    bool usable = leaves.size() >= 2;
    for (const Word& leaf : leaves) usable = usable && !leaf.empty();
    if (usable) return TreeSpec::validate(m, std::move(leaves));
  }
}

inline Word random_code_word(std::mt19937_64& rng, std::size_t code_alphabet,
                             std::size_t length) {
  std::uniform_int_distribution<Symbol> dist(
      0, static_cast<Symbol>(code_alphabet - 1));
  Word y(length);
  for (Symbol& s : y) s = dist(rng);
  return y;
}

// A uniformly random complexity value for every non-empty prefix of x.
inline std::map<Word, double> random_prefix_table(std::mt19937_64& rng,
                                                  const Word& x) {
  std::uniform_real_distribution<double> value(0.0, 100.0);
  std::map<Word, double> table;
  for (std::size_t n = 1; n <= x.size(); ++n) {
    table[Word(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n))] =
        value(rng);
  }
  return table;
}

}  // namespace fractree::test
