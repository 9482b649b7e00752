#include "fractree/parry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <utility>

#include "fractree/coding.hpp"
#include "fractree/error.hpp"

namespace fractree {

namespace {

constexpr int kMaxPowerIterations = 200000;

// Largest positive eigenvector of A (row-major adjacency counts), computed
// by power iteration on A + I. Adding the identity shifts the spectrum by
// one without moving eigenvectors, which makes the iteration converge even
// when the graph is periodic. Returns the eigenvalue estimate of A.
double power_iteration(const IntMatrix& a, std::vector<double>& vec,
                       bool transpose, double tol) {
  const std::size_t n = a.n;
  vec.assign(n, 1.0);
  std::vector<double> image(n, 0.0);

  const auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t i = 0; i < n; ++i) {
      double sum = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double entry =
            static_cast<double>(transpose ? a.at(j, i) : a.at(i, j));
        sum += entry * x[j];
      }
      y[i] = sum;
    }
  };

  double lambda = 0.0;
  for (int iter = 0; iter < kMaxPowerIterations; ++iter) {
    apply(vec, image);
    // Rayleigh quotient for A; both vectors stay strictly positive.
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      num += vec[i] * image[i];
      den += vec[i] * vec[i];
    }
    lambda = num / den;

    bool converged = lambda > 0.0;
    for (std::size_t i = 0; i < n && converged; ++i) {
      if (std::abs(image[i] - lambda * vec[i]) > tol * lambda * vec[i]) {
        converged = false;
      }
    }
    if (converged) return lambda;

    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      image[i] += vec[i];  // shifted step: (A + I) x
      norm = std::max(norm, image[i]);
    }
    for (std::size_t i = 0; i < n; ++i) vec[i] = image[i] / norm;
  }
  raise(Errc::NonConvergence, "power iteration did not reach tolerance");
}

}  // namespace

ParryModel build_parry(const PointedGraph& g, double tol) {
  if (!(tol > 0.0)) {
    raise(Errc::InvalidFormat, "tolerance must be positive");
  }
  if (!check_irreducible(g)) {
    raise(Errc::NotIrreducible, "Parry model needs an irreducible graph");
  }
  const IntMatrix a = adjacency_matrix(g);

  ParryModel pm(g);
  pm.rho_ = power_iteration(a, pm.right_, /*transpose=*/false, tol);
  const double rho_left = power_iteration(a, pm.left_, /*transpose=*/true, tol);

  const double rho_poly =
      perron_eigenvalue(charpoly_leverrier(a), 1e-13,
                        1.0 + static_cast<double>(a.max_row_sum()));
  if (std::abs(pm.rho_ - rho_poly) > 1e-9 || std::abs(rho_left - rho_poly) > 1e-9) {
    raise(Errc::NonConvergence,
          "power-iteration eigenvalue drifts from the polynomial root by more "
          "than 1e-9");
  }

  // r_1 = 1 normalization; with it the golden-mean values match the hand
  // computation. Transition probabilities do not depend on the scaling.
  const double r0 = pm.right_[PointedGraph::kRoot];
  for (double& v : pm.right_) v /= r0;

  double inner = 0.0;
  for (std::size_t i = 0; i < pm.left_.size(); ++i) {
    inner += pm.left_[i] * pm.right_[i];
  }
  for (double& v : pm.left_) v /= inner;

  pm.stationary_.resize(pm.right_.size());
  for (std::size_t i = 0; i < pm.right_.size(); ++i) {
    pm.stationary_[i] = pm.left_[i] * pm.right_[i];
  }

  pm.edge_prob_.reserve(g.edges().size());
  for (const Edge& e : g.edges()) {
    pm.edge_prob_.push_back(pm.right_[e.to] / (pm.right_[e.from] * pm.rho_));
  }
  return pm;
}

double cycle_probability(const ParryModel& pm,
                         std::span<const std::size_t> edge_indices) {
  const auto& edges = pm.graph().edges();
  if (edge_indices.empty()) {
    raise(Errc::NotAClosedWalk, "a closed walk needs at least one edge");
  }
  std::uint32_t at = PointedGraph::kRoot;
  double probability = 1.0;
  for (const std::size_t index : edge_indices) {
    if (index >= edges.size()) {
      raise(Errc::NotAClosedWalk, "edge index out of range");
    }
    const Edge& e = edges[index];
    if (e.from != at) {
      raise(Errc::NotAClosedWalk,
            "edge starts at v" + std::to_string(e.from + 1) +
                " but the walk is at v" + std::to_string(at + 1));
    }
    probability *= pm.edge_probability(index);
    at = e.to;
  }
  if (at != PointedGraph::kRoot) {
    raise(Errc::NotAClosedWalk, "walk ends at v" + std::to_string(at + 1) +
                                    ", not at the distinguished vertex");
  }
  return probability;
}

double parry_cylinder(const ParryModel& pm, const Word& word,
                      std::uint32_t start, CylinderMode mode) {
  const PointedGraph& g = pm.graph();
  if (start >= g.vertex_count()) {
    raise(Errc::InvalidFormat, "start vertex out of range");
  }
  double probability =
      mode == CylinderMode::kStationary ? pm.stationary()[start] : 1.0;
  std::uint32_t at = start;
  for (std::size_t pos = 0; pos < word.size(); ++pos) {
    const auto edge_index = g.find_out_edge(at, word[pos]);
    if (!edge_index) {
      raise(Errc::NoSuchWalk, "no out-edge labeled " + std::to_string(word[pos]) +
                                  " at v" + std::to_string(at + 1) +
                                  " (word position " + std::to_string(pos) + ")");
    }
    probability *= pm.edge_probability(*edge_index);
    at = g.edges()[*edge_index].to;
  }
  return probability;
}

double measure_entropy(const ParryModel& pm) {
  const auto& edges = pm.graph().edges();
  double h = 0.0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const double p = pm.edge_probability(i);
    h -= pm.stationary()[edges[i].from] * p * std::log2(p);
  }
  return h;
}

bool verify_thm6(const TreeSpec& spec, std::size_t depth, double tol) {
  const PointedGraph g = graph_from_tree(spec);
  const ParryModel pm = build_parry(g);
  const LengthFunction lf = LengthFunction::from_spec(spec);
  const DerivedMeasure dm = derived_measure(channel_capacity(lf), lf);
  const std::size_t k = spec.terminal_count();

  // Walk the code tree once, extending both measures per code symbol. The
  // label walk of any decoded word returns to the root at block ends.
  auto descend = [&](auto&& self, std::size_t level, double mu,
                     double parry) -> bool {
    if (level == depth) return true;
    for (Symbol symbol = 0; symbol < k; ++symbol) {
      double extended = parry;
      std::uint32_t at = PointedGraph::kRoot;
      for (const Symbol label : spec.terminals()[symbol]) {
        const auto edge_index = g.find_out_edge(at, label);
        if (!edge_index) {
          raise(Errc::InternalCheckFailed,
                "decoded block does not label a walk from the root");
        }
        extended *= pm.edge_probability(*edge_index);
        at = g.edges()[*edge_index].to;
      }
      if (at != PointedGraph::kRoot) {
        raise(Errc::InternalCheckFailed,
              "decoded block does not return to the root");
      }
      const double mu_extended = mu * dm.symbol_probs[symbol];
      if (std::abs(mu_extended - extended) > tol) return false;
      if (!self(self, level + 1, mu_extended, extended)) return false;
    }
    return true;
  };
  return descend(descend, 0, 1.0, 1.0);
}

}  // namespace fractree
