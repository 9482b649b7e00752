#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fractree/tree.hpp"
#include "fractree/word.hpp"

namespace fractree {

struct Edge {
  std::uint32_t from = 0;
  std::uint32_t to = 0;
  Symbol label = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Edge-labeled directed multigraph with a distinguished start vertex.
// Vertices are 0-based internally; vertex 0 is the distinguished vertex
// (printed as v1 in DOT/JSON). Labels on parallel edges between a fixed
// ordered vertex pair must be distinct; right-resolving is a separately
// checked property, not a construction invariant.
class PointedGraph {
 public:
  static constexpr std::uint32_t kRoot = 0;

  static PointedGraph create(std::uint32_t vertex_count,
                             std::uint32_t alphabet_size,
                             std::vector<Edge> edges);

  std::uint32_t vertex_count() const { return vertex_count_; }
  std::uint32_t alphabet_size() const { return alphabet_size_; }
  const std::vector<Edge>& edges() const { return edges_; }

  // Out-edges of v as a contiguous slice, ordered by (label, to).
  std::span<const Edge> out_edges(std::uint32_t v) const;
  // Index into edges() of the first out-edge of v labeled a, if any.
  std::optional<std::size_t> find_out_edge(std::uint32_t v, Symbol a) const;

  bool operator==(const PointedGraph& other) const = default;

 private:
  PointedGraph() = default;

  std::uint32_t vertex_count_ = 0;
  std::uint32_t alphabet_size_ = 0;
  std::vector<Edge> edges_;             // sorted by (from, label, to)
  std::vector<std::size_t> out_begin_;  // vertex_count_ + 1 offsets
};

struct IntMatrix {
  std::size_t n = 0;
  std::vector<std::int64_t> values;  // row-major

  std::int64_t& at(std::size_t i, std::size_t j) { return values[i * n + j]; }
  std::int64_t at(std::size_t i, std::size_t j) const { return values[i * n + j]; }
  std::int64_t max_row_sum() const;
};

IntMatrix adjacency_matrix(const PointedGraph& g);

// Theorem-3(i) construction: one vertex per non-terminal node in
// length-lexicographic order, tree edges between non-terminals, and one
// edge back to the root per terminal child. The result is checked to be
// right-resolving and irreducible.
PointedGraph graph_from_tree(const TreeSpec& spec);

bool check_right_resolving(const PointedGraph& g);
bool check_irreducible(const PointedGraph& g);

struct GraphValidation {
  bool right_resolving = false;
  bool irreducible = false;
  bool multi_edges_to_root_only = false;  // condition (a)
  bool cycles_through_root = false;       // condition (b)
  std::vector<std::string> warnings;

  bool tree_compatible() const {
    return right_resolving && irreducible && multi_edges_to_root_only &&
           cycles_through_root;
  }
};

GraphValidation validate_pointed_graph(const PointedGraph& g);

// Theorem-3(ii) construction: recovers the finite tree whose expansion is
// the path set of g. Terminal nodes are the label words of first-return
// walks at the distinguished vertex. Preconditions (right-resolving,
// irreducible, conditions (a) and (b)) are checked and reported as typed
// errors.
TreeSpec tree_from_graph(const PointedGraph& g);

// Characteristic polynomial z^n + c_1 z^{n-1} + ... + c_n with exact
// integer coefficients.
struct CharPoly {
  std::vector<std::int64_t> coeffs;  // c_1..c_n

  std::size_t degree() const { return coeffs.size(); }
  double operator()(double z) const;
};

// Faddeev-Leverrier recurrence c_k = -(1/k) tr(A^k + c_1 A^{k-1} + ... +
// c_{k-1} A), evaluated in unbounded exact integer arithmetic; every
// division by k is checked to be exact.
CharPoly charpoly_leverrier(const IntMatrix& a);

// -c_i equals the number of terminal nodes of depth i, as exact integers.
bool verify_thm4(const TreeSpec& spec);

// Largest real root of the characteristic polynomial, by locating the sign
// change nearest the upper bound and bisecting. `upper_bound`, when
// positive, should dominate the spectral radius (callers with the matrix
// at hand pass 1 + max row sum); otherwise the Cauchy bound 1 + max|c_i|
// is used.
double perron_eigenvalue(const CharPoly& cp, double tol = 1e-12,
                         double upper_bound = 0.0);
double perron_eigenvalue(const IntMatrix& a, double tol = 1e-12);

// log2(rho) equals the channel capacity of the induced length function,
// with the two sides produced by independent solvers.
bool verify_thm5(const TreeSpec& spec, double tol = 1e-9);

inline constexpr std::size_t kDefaultBlockGuard = 30;

// Number of distinct label words of length `block_length`: of walks from
// the distinguished vertex when initial_only, otherwise of walks from any
// vertex (the blocks of the shift closure). Requires a right-resolving
// graph; counts are computed over deduplicated word sets via the subset
// automaton, never by enumerating walks.
std::uint64_t count_blocks(const PointedGraph& g, std::size_t block_length,
                           bool initial_only,
                           std::size_t guard = kDefaultBlockGuard);

struct EntropyEstimate {
  double h_p = 0.0;    // (1/n) log2 N_n, all blocks of the shift closure
  double h_top = 0.0;  // (1/n) log2 N_n^I, initial blocks only
};

EntropyEstimate entropy_estimate(const PointedGraph& g, std::size_t n_max,
                                 std::size_t guard = kDefaultBlockGuard);

}  // namespace fractree
