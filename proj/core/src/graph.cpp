#include "fractree/graph.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <unordered_map>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "fractree/coding.hpp"
#include "fractree/error.hpp"

namespace fractree {

namespace {

using bigint = boost::multiprecision::cpp_int;

std::string edge_text(const Edge& e) {
  return "v" + std::to_string(e.from + 1) + " -> v" + std::to_string(e.to + 1) +
         " [" + std::to_string(e.label) + "]";
}

}  // namespace

PointedGraph PointedGraph::create(std::uint32_t vertex_count,
                                  std::uint32_t alphabet_size,
                                  std::vector<Edge> edges) {
  if (vertex_count == 0) {
    raise(Errc::InvalidFormat, "a pointed graph needs at least one vertex");
  }
  if (alphabet_size == 0) {
    raise(Errc::InvalidFormat, "alphabet size must be positive");
  }
  for (const Edge& e : edges) {
    if (e.from >= vertex_count || e.to >= vertex_count) {
      raise(Errc::InvalidFormat, "edge endpoint out of range: " + edge_text(e));
    }
    if (e.label >= alphabet_size) {
      raise(Errc::SymbolOutOfRange, "edge label out of range: " + edge_text(e));
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    if (a.from != b.from) return a.from < b.from;
    if (a.label != b.label) return a.label < b.label;
    return a.to < b.to;
  });
  // Parallel edges between a fixed ordered pair must carry distinct labels,
  // which is exactly the absence of duplicate (from, to, label) triples.
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i] == edges[i - 1]) {
      raise(Errc::InvalidFormat, "duplicate labeled edge: " + edge_text(edges[i]));
    }
  }

  PointedGraph g;
  g.vertex_count_ = vertex_count;
  g.alphabet_size_ = alphabet_size;
  g.edges_ = std::move(edges);
  g.out_begin_.assign(vertex_count + 1, 0);
  for (const Edge& e : g.edges_) g.out_begin_[e.from + 1] += 1;
  for (std::uint32_t v = 0; v < vertex_count; ++v) {
    g.out_begin_[v + 1] += g.out_begin_[v];
  }
  return g;
}

std::span<const Edge> PointedGraph::out_edges(std::uint32_t v) const {
  if (v >= vertex_count_) {
    raise(Errc::InvalidFormat, "vertex index out of range");
  }
  return std::span<const Edge>(edges_.data() + out_begin_[v],
                               out_begin_[v + 1] - out_begin_[v]);
}

std::optional<std::size_t> PointedGraph::find_out_edge(std::uint32_t v,
                                                       Symbol a) const {
  for (std::size_t i = out_begin_[v]; i < out_begin_[v + 1]; ++i) {
    if (edges_[i].label == a) return i;
  }
  return std::nullopt;
}

std::int64_t IntMatrix::max_row_sum() const {
  std::int64_t best = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t sum = 0;
    for (std::size_t j = 0; j < n; ++j) sum += at(i, j);
    best = std::max(best, sum);
  }
  return best;
}

IntMatrix adjacency_matrix(const PointedGraph& g) {
  IntMatrix a;
  a.n = g.vertex_count();
  a.values.assign(a.n * a.n, 0);
  for (const Edge& e : g.edges()) {
    a.at(e.from, e.to) += 1;
  }
  return a;
}

PointedGraph graph_from_tree(const TreeSpec& spec) {
  const TreeNodes nodes = tree_nodes(spec);
  std::map<Word, std::uint32_t> non_terminal_id;
  for (std::size_t i = 0; i < nodes.non_terminal.size(); ++i) {
    non_terminal_id.emplace(nodes.non_terminal[i], static_cast<std::uint32_t>(i));
  }

  std::vector<Edge> edges;
  for (std::size_t i = 0; i < nodes.all.size(); ++i) {
    const Word& node = nodes.all[i];
    if (nodes.terminal_flag[i]) {
      // Terminal child: edge from its parent back to the root.
      Word parent(node.begin(), node.end() - 1);
      edges.push_back(Edge{non_terminal_id.at(parent), PointedGraph::kRoot,
                           node.back()});
    } else if (!node.empty()) {
      Word parent(node.begin(), node.end() - 1);
      edges.push_back(Edge{non_terminal_id.at(parent), non_terminal_id.at(node),
                           node.back()});
    }
  }

  PointedGraph g = PointedGraph::create(
      static_cast<std::uint32_t>(nodes.non_terminal_count()),
      spec.alphabet_size(), std::move(edges));
  if (!check_right_resolving(g) || !check_irreducible(g)) {
    raise(Errc::InternalCheckFailed,
          "tree-derived graph must be right-resolving and irreducible");
  }
  return g;
}

bool check_right_resolving(const PointedGraph& g) {
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    const auto out = g.out_edges(v);
    // Out-edges are sorted by label.
    for (std::size_t i = 1; i < out.size(); ++i) {
      if (out[i].label == out[i - 1].label) return false;
    }
  }
  return true;
}

bool check_irreducible(const PointedGraph& g) {
  const std::uint32_t n = g.vertex_count();
  // Walks of length >= 1 are required for every ordered pair, so a vertex
  // with no cycle through it (e.g. an edgeless single vertex) fails.
  for (std::uint32_t start = 0; start < n; ++start) {
    std::vector<bool> reached(n, false);
    std::vector<std::uint32_t> stack;
    for (const Edge& e : g.out_edges(start)) {
      if (!reached[e.to]) {
        reached[e.to] = true;
        stack.push_back(e.to);
      }
    }
    while (!stack.empty()) {
      const std::uint32_t v = stack.back();
      stack.pop_back();
      for (const Edge& e : g.out_edges(v)) {
        if (!reached[e.to]) {
          reached[e.to] = true;
          stack.push_back(e.to);
        }
      }
    }
    for (std::uint32_t v = 0; v < n; ++v) {
      if (!reached[v]) return false;
    }
  }
  return true;
}

namespace {

// True iff the subgraph induced by deleting the root has a directed cycle.
bool has_cycle_avoiding_root(const PointedGraph& g) {
  const std::uint32_t n = g.vertex_count();
  // Colors: 0 unvisited, 1 on stack, 2 done.
  std::vector<int> color(n, 0);
  color[PointedGraph::kRoot] = 2;

  for (std::uint32_t start = 0; start < n; ++start) {
    if (color[start] != 0) continue;
    std::vector<std::pair<std::uint32_t, std::size_t>> stack;
    stack.emplace_back(start, 0);
    color[start] = 1;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      const auto out = g.out_edges(v);
      bool descended = false;
      while (next < out.size()) {
        const std::uint32_t to = out[next++].to;
        if (to == PointedGraph::kRoot) continue;
        if (color[to] == 1) return true;
        if (color[to] == 0) {
          color[to] = 1;
          stack.emplace_back(to, 0);
          descended = true;
          break;
        }
      }
      if (!descended && next >= out.size()) {
        color[v] = 2;
        stack.pop_back();
      }
    }
  }
  return false;
}

}  // namespace

GraphValidation validate_pointed_graph(const PointedGraph& g) {
  GraphValidation report;
  report.right_resolving = check_right_resolving(g);
  report.irreducible = check_irreducible(g);
  report.cycles_through_root = !has_cycle_avoiding_root(g);

  report.multi_edges_to_root_only = true;
  const auto& edges = g.edges();
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> pair_count;
  for (const Edge& e : edges) {
    pair_count[{e.from, e.to}] += 1;
  }
  for (const auto& [pair, count] : pair_count) {
    if (count <= 1) continue;
    if (pair.second != PointedGraph::kRoot) {
      report.multi_edges_to_root_only = false;
    } else if (pair.first == PointedGraph::kRoot) {
      // Accepted, but worth surfacing: the inverse construction also works
      // when a multiple edge originates at the distinguished vertex.
      report.warnings.push_back(
          "multiple edge originates at the distinguished vertex (x" +
          std::to_string(count) + " v1 -> v1)");
    }
  }
  return report;
}

TreeSpec tree_from_graph(const PointedGraph& g) {
  const GraphValidation report = validate_pointed_graph(g);
  if (!report.right_resolving) {
    raise(Errc::NotRightResolving,
          "some vertex has two out-edges with the same label");
  }
  if (!report.irreducible) {
    raise(Errc::NotIrreducible, "graph is not strongly connected");
  }
  if (!report.multi_edges_to_root_only) {
    raise(Errc::MultipleEdgeNotToRoot,
          "a multiple edge terminates outside the distinguished vertex");
  }
  if (!report.cycles_through_root) {
    raise(Errc::CycleAvoidsRoot,
          "a cycle avoids the distinguished vertex");
  }

  // First-return walks at the root: explore label words of walks that leave
  // the root and stop on their first return. Condition (b) makes the
  // off-root part acyclic, so the exploration terminates.
  std::vector<Word> terminals;
  Word prefix;
  auto dfs = [&](auto&& self, std::uint32_t v) -> void {
    for (const Edge& e : g.out_edges(v)) {
      prefix.push_back(e.label);
      if (e.to == PointedGraph::kRoot) {
        terminals.push_back(prefix);
      } else {
        self(self, e.to);
      }
      prefix.pop_back();
    }
  };
  dfs(dfs, PointedGraph::kRoot);

  return TreeSpec::validate(g.alphabet_size(), std::move(terminals));
}

double CharPoly::operator()(double z) const {
  double value = 1.0;
  for (const std::int64_t c : coeffs) {
    value = value * z + static_cast<double>(c);
  }
  return value;
}

CharPoly charpoly_leverrier(const IntMatrix& a) {
  const std::size_t n = a.n;
  if (n == 0 || a.values.size() != n * n) {
    raise(Errc::InvalidFormat, "matrix must be square and non-empty");
  }

  std::vector<bigint> big_a(a.values.begin(), a.values.end());
  // M starts as the identity; after step k it holds A^k + c_1 A^{k-1} +
  // ... + c_k I, so tr(A * M) at step k is the Leverrier trace term.
  std::vector<bigint> m(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1;

  std::vector<bigint> am(n * n);
  std::vector<bigint> coeffs;
  coeffs.reserve(n);
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        bigint sum = 0;
        for (std::size_t t = 0; t < n; ++t) {
          sum += big_a[i * n + t] * m[t * n + j];
        }
        am[i * n + j] = sum;
      }
    }
    bigint trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += am[i * n + i];
    if (trace % static_cast<std::int64_t>(k) != 0) {
      raise(Errc::InternalCheckFailed,
            "Leverrier trace not divisible by " + std::to_string(k));
    }
    const bigint ck = -trace / static_cast<std::int64_t>(k);
    coeffs.push_back(ck);
    m = am;
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] += ck;
  }

  CharPoly cp;
  cp.coeffs.reserve(n);
  for (const bigint& c : coeffs) {
    if (c < std::numeric_limits<std::int64_t>::min() ||
        c > std::numeric_limits<std::int64_t>::max()) {
      raise(Errc::ArithmeticOverflow,
            "characteristic polynomial coefficient exceeds 64 bits");
    }
    cp.coeffs.push_back(static_cast<std::int64_t>(c));
  }
  return cp;
}

bool verify_thm4(const TreeSpec& spec) {
  const CharPoly cp = charpoly_leverrier(adjacency_matrix(graph_from_tree(spec)));
  const std::vector<std::size_t> profile = depth_profile(spec);
  if (cp.degree() != profile.size()) return false;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (-cp.coeffs[i] != static_cast<std::int64_t>(profile[i])) return false;
  }
  return true;
}

double perron_eigenvalue(const CharPoly& cp, double tol, double upper_bound) {
  if (cp.degree() == 0) {
    raise(Errc::InvalidFormat, "polynomial must have positive degree");
  }
  if (!(tol > 0.0)) {
    raise(Errc::InvalidFormat, "tolerance must be positive");
  }
  double hi = upper_bound;
  if (!(hi > 1.0)) {
    std::int64_t max_abs = 1;
    for (const std::int64_t c : cp.coeffs) {
      max_abs = std::max(max_abs, std::abs(c));
    }
    hi = 1.0 + static_cast<double>(max_abs);  // Cauchy root bound
  }
  while (cp(hi) <= 0.0) hi *= 2.0;  // only reachable with a caller-supplied bound

  // Scan down from the bound to bracket the rightmost sign change, with
  // increasing resolution before declaring that no root lies in [1, hi].
  double lo = std::numeric_limits<double>::quiet_NaN();
  double hi_bracket = hi;
  for (std::size_t steps = 1024; steps <= (1u << 16); steps *= 8) {
    double prev = hi;
    for (std::size_t s = 1; s <= steps; ++s) {
      const double z =
          hi - (hi - 1.0) * static_cast<double>(s) / static_cast<double>(steps);
      if (cp(z) < 0.0) {
        lo = z;
        hi_bracket = prev;
        break;
      }
      prev = z;
    }
    if (!std::isnan(lo)) break;
  }
  if (std::isnan(lo)) {
    // Exact integer evaluation at 1: a spectral radius of exactly 1.
    std::int64_t p1 = 1;
    for (const std::int64_t c : cp.coeffs) p1 += c;
    if (p1 == 0) return 1.0;
    raise(Errc::NoRootInBracket,
          "no sign change in [1, " + std::to_string(hi) + "]");
  }

  double a = lo;
  double b = hi_bracket;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (a + b);
    if (b - a <= tol * std::max(1.0, a)) {
      return mid;
    }
    if (cp(mid) < 0.0) {
      a = mid;
    } else {
      b = mid;
    }
  }
  raise(Errc::NonConvergence, "root bisection did not reach tolerance");
}

double perron_eigenvalue(const IntMatrix& a, double tol) {
  const CharPoly cp = charpoly_leverrier(a);
  return perron_eigenvalue(cp, tol, 1.0 + static_cast<double>(a.max_row_sum()));
}

bool verify_thm5(const TreeSpec& spec, double tol) {
  const double rho = perron_eigenvalue(adjacency_matrix(graph_from_tree(spec)));
  const double alpha = channel_capacity(LengthFunction::from_spec(spec)).alpha;
  return std::abs(std::log2(rho) - alpha) <= tol;
}

namespace {

// Vertex subsets for the block-counting subset automaton; supports graphs
// with up to 128 vertices.
struct VertexMask {
  std::array<std::uint64_t, 2> bits{0, 0};

  void set(std::uint32_t v) { bits[v >> 6] |= std::uint64_t{1} << (v & 63); }
  bool empty() const { return bits[0] == 0 && bits[1] == 0; }
  bool operator==(const VertexMask&) const = default;
};

struct MaskKey {
  VertexMask mask;
  std::size_t depth = 0;

  bool operator==(const MaskKey&) const = default;
};

struct MaskKeyHash {
  std::size_t operator()(const MaskKey& key) const {
    std::uint64_t h = key.mask.bits[0] * 0x9e3779b97f4a7c15ull;
    h ^= key.mask.bits[1] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= key.depth + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    raise(Errc::ArithmeticOverflow, "block count exceeds 64 bits");
  }
  return out;
}

}  // namespace

std::uint64_t count_blocks(const PointedGraph& g, std::size_t block_length,
                           bool initial_only, std::size_t guard) {
  if (block_length < 1) {
    raise(Errc::InvalidFormat, "block length must be at least 1");
  }
  if (block_length > guard) {
    raise(Errc::BlockLengthTooLarge,
          "block length " + std::to_string(block_length) +
              " exceeds the guard of " + std::to_string(guard));
  }
  if (!check_right_resolving(g)) {
    raise(Errc::NotRightResolving, "block counting needs a right-resolving graph");
  }
  const std::uint32_t n = g.vertex_count();
  if (n > 128) {
    raise(Errc::InvalidFormat, "block counting supports at most 128 vertices");
  }
  const std::uint32_t m = g.alphabet_size();

  // delta[v][a]: unique successor of v along label a, or -1. Uniqueness is
  // the right-resolving property checked above.
  std::vector<std::int64_t> delta(static_cast<std::size_t>(n) * m, -1);
  for (const Edge& e : g.edges()) {
    delta[static_cast<std::size_t>(e.from) * m + e.label] = e.to;
  }

  VertexMask start;
  if (initial_only) {
    start.set(PointedGraph::kRoot);
  } else {
    for (std::uint32_t v = 0; v < n; ++v) start.set(v);
  }

  std::unordered_map<MaskKey, std::uint64_t, MaskKeyHash> memo;
  auto count = [&](auto&& self, const VertexMask& mask,
                   std::size_t depth) -> std::uint64_t {
    if (depth == 0) return 1;
    const MaskKey key{mask, depth};
    const auto found = memo.find(key);
    if (found != memo.end()) return found->second;

    std::uint64_t total = 0;
    for (Symbol a = 0; a < m; ++a) {
      VertexMask next;
      for (std::size_t word = 0; word < 2; ++word) {
        std::uint64_t bits = mask.bits[word];
        while (bits != 0) {
          const std::uint32_t v =
              static_cast<std::uint32_t>(word * 64 +
                                         static_cast<std::uint32_t>(
                                             __builtin_ctzll(bits)));
          bits &= bits - 1;
          const std::int64_t to = delta[static_cast<std::size_t>(v) * m + a];
          if (to >= 0) next.set(static_cast<std::uint32_t>(to));
        }
      }
      if (!next.empty()) {
        total = checked_add(total, self(self, next, depth - 1));
      }
    }
    memo.emplace(key, total);
    return total;
  };
  return count(count, start, block_length);
}

EntropyEstimate entropy_estimate(const PointedGraph& g, std::size_t n_max,
                                 std::size_t guard) {
  if (n_max < 2) {
    raise(Errc::InvalidFormat, "entropy estimation needs block length >= 2");
  }
  EntropyEstimate estimate;
  const double inv_n = 1.0 / static_cast<double>(n_max);
  estimate.h_p =
      inv_n * std::log2(static_cast<double>(count_blocks(g, n_max, false, guard)));
  estimate.h_top =
      inv_n * std::log2(static_cast<double>(count_blocks(g, n_max, true, guard)));
  return estimate;
}

}  // namespace fractree
