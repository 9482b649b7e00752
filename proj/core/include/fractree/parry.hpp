#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "fractree/graph.hpp"
#include "fractree/tree.hpp"
#include "fractree/word.hpp"

namespace fractree {

// Perron data of an irreducible pointed graph: eigenvalue, positive right
// and left eigenvectors, per-edge transition probabilities r_j/(r_i rho)
// and the stationary distribution pi_i = l_i r_i. The right eigenvector is
// normalized to r_1 = 1 and the left one so that sum l_i r_i = 1; every
// transition probability is invariant under rescaling either vector.
class ParryModel {
 public:
  double rho() const { return rho_; }
  const std::vector<double>& right_eigvec() const { return right_; }
  const std::vector<double>& left_eigvec() const { return left_; }
  const std::vector<double>& stationary() const { return stationary_; }
  const PointedGraph& graph() const { return graph_; }

  // Transition probability of the edge at `edge_index` in graph().edges().
  double edge_probability(std::size_t edge_index) const {
    return edge_prob_.at(edge_index);
  }
  const std::vector<double>& edge_probabilities() const { return edge_prob_; }

 private:
  friend ParryModel build_parry(const PointedGraph&, double);

  explicit ParryModel(PointedGraph g) : graph_(std::move(g)) {}

  double rho_ = 0.0;
  std::vector<double> right_;
  std::vector<double> left_;
  std::vector<double> stationary_;
  std::vector<double> edge_prob_;
  PointedGraph graph_;
};

// Power iteration for the Perron pair, run on A + I so that periodic
// graphs converge too, seeded with the all-ones vector and stopped on a
// componentwise relative eigen-residual. The eigenvalue is cross-checked
// against the characteristic-polynomial root to 1e-9.
ParryModel build_parry(const PointedGraph& g, double tol = 1e-12);

// Probability of traversing a closed walk at the distinguished vertex,
// given as indices into graph().edges(). Telescoping makes this rho^{-n}
// for a walk of length n.
double cycle_probability(const ParryModel& pm,
                         std::span<const std::size_t> edge_indices);

enum class CylinderMode {
  kConditional,  // walk starts at the given vertex with probability 1
  kStationary,   // weighted by the stationary mass of the start vertex
};

// Parry probability of the unique label walk reading `word` from `start`.
double parry_cylinder(const ParryModel& pm, const Word& word,
                      std::uint32_t start,
                      CylinderMode mode = CylinderMode::kConditional);

// Entropy -sum_e pi_{i(e)} p(e) log2 p(e) of the Parry chain; equals
// log2(rho), the topological entropy, since the Parry measure is the
// measure of maximal entropy.
double measure_entropy(const ParryModel& pm);

// Compares the measure derived from the length function against the
// conditional-at-root Parry probability of the decoded label walk, on
// every code word of length <= depth.
bool verify_thm6(const TreeSpec& spec, std::size_t depth, double tol = 1e-9);

}  // namespace fractree
