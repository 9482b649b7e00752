#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "fractree/coding.hpp"
#include "fractree/error.hpp"
#include "fractree/parry.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace fractree;

namespace {

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a fractree::Error");
  return Errc::InternalCheckFailed;
}

const TreeSpec& golden() {
  static const TreeSpec spec = TreeSpec::from_strings(2, {"0", "10"});
  return spec;
}

}  // namespace

TEST_CASE("golden-mean Parry model matches the hand computation") {
  const ParryModel pm = build_parry(graph_from_tree(golden()));
  const double phi = test::golden_ratio();

  CHECK(pm.rho() == doctest::Approx(phi).epsilon(1e-11));
  CHECK(pm.right_eigvec()[0] == 1.0);
  CHECK(pm.right_eigvec()[1] == doctest::Approx(1.0 / phi).epsilon(1e-10));

  // Edges in sorted order: the root loop, the edge to v2, the return edge.
  CHECK(pm.edge_probability(0) == doctest::Approx(1.0 / phi).epsilon(1e-10));
  CHECK(pm.edge_probability(1) ==
        doctest::Approx(1.0 / (phi * phi)).epsilon(1e-10));
  CHECK(pm.edge_probability(2) == doctest::Approx(1.0).epsilon(1e-10));

  CHECK(pm.stationary()[0] ==
        doctest::Approx(phi * phi / (phi * phi + 1.0)).epsilon(1e-10));
  CHECK(pm.stationary()[1] ==
        doctest::Approx(1.0 / (phi * phi + 1.0)).epsilon(1e-10));

  CHECK(measure_entropy(pm) ==
        doctest::Approx(test::log2_golden_ratio()).epsilon(1e-10));
}

TEST_CASE("full shift Parry model is uniform") {
  const ParryModel pm =
      build_parry(graph_from_tree(TreeSpec::from_strings(2, {"0", "1"})));
  CHECK(pm.rho() == doctest::Approx(2.0).epsilon(1e-11));
  CHECK(pm.edge_probability(0) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(pm.edge_probability(1) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(measure_entropy(pm) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("power iteration converges on periodic graphs") {
  // All terminals at depth 2: every cycle has even length, so the
  // adjacency matrix has period 2.
  const TreeSpec spec = TreeSpec::from_strings(2, {"00", "01"});
  const ParryModel pm = build_parry(graph_from_tree(spec));
  CHECK(pm.rho() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
  // v1 -> v2 is forced; each of the two return edges is a coin flip.
  CHECK(pm.edge_probability(0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(pm.edge_probability(1) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(pm.edge_probability(2) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(measure_entropy(pm) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("Parry model invariants hold on random specs") {
  std::mt19937_64 rng(10401);
  for (int trial = 0; trial < 30; ++trial) {
    const TreeSpec spec = test::random_tree_spec(rng, trial % 2 == 0 ? 2 : 3);
    const PointedGraph g = graph_from_tree(spec);
    const ParryModel pm = build_parry(g);
    const IntMatrix a = adjacency_matrix(g);
    const std::size_t n = a.n;

    // Eigen equations, componentwise relative.
    for (std::size_t i = 0; i < n; ++i) {
      double right_image = 0.0;
      double left_image = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        right_image += static_cast<double>(a.at(i, j)) * pm.right_eigvec()[j];
        left_image += static_cast<double>(a.at(j, i)) * pm.left_eigvec()[j];
      }
      CHECK(std::abs(right_image - pm.rho() * pm.right_eigvec()[i]) <=
            1e-10 * pm.rho() * pm.right_eigvec()[i]);
      CHECK(std::abs(left_image - pm.rho() * pm.left_eigvec()[i]) <=
            1e-10 * pm.rho() * pm.left_eigvec()[i]);
    }

    // Out-transition probabilities sum to one at every vertex.
    std::vector<double> row_sum(n, 0.0);
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
      row_sum[g.edges()[e].from] += pm.edge_probability(e);
    }
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(row_sum[i] - 1.0) <= 1e-10);
    }

    // Stationarity of pi under the aggregated transition matrix.
    std::vector<double> pushed(n, 0.0);
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
      pushed[g.edges()[e].to] +=
          pm.stationary()[g.edges()[e].from] * pm.edge_probability(e);
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(pushed[i] - pm.stationary()[i]) <= 1e-10);
      total += pm.stationary()[i];
    }
    CHECK(std::abs(total - 1.0) <= 1e-10);

    // Transition probabilities are invariant under rescaling the
    // eigenvector.
    const double scale = 3.7;
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
      const Edge& edge = g.edges()[e];
      const double scaled = (scale * pm.right_eigvec()[edge.to]) /
                            ((scale * pm.right_eigvec()[edge.from]) * pm.rho());
      CHECK(scaled == doctest::Approx(pm.edge_probability(e)).epsilon(1e-12));
    }

    // Entropy, the Perron root and the channel capacity form a triangle.
    const double h = measure_entropy(pm);
    const double alpha = channel_capacity(LengthFunction::from_spec(spec)).alpha;
    CHECK(std::abs(h - std::log2(pm.rho())) <= 1e-9);
    CHECK(std::abs(h - alpha) <= 1e-9);
  }
}

TEST_CASE("build_parry rejects reducible graphs and bad tolerances") {
  const PointedGraph reducible =
      PointedGraph::create(2, 2, {{0, 0, 0}, {1, 0, 0}});
  CHECK(code_of([&] { build_parry(reducible); }) == Errc::NotIrreducible);
  CHECK(code_of([&] { build_parry(graph_from_tree(golden()), 0.0); }) ==
        Errc::InvalidFormat);
}

TEST_CASE("closed walks at the root have probability rho^-n") {
  const ParryModel pm = build_parry(graph_from_tree(golden()));
  const double phi = test::golden_ratio();

  // Single loop "0" and the two-edge cycle "10".
  CHECK(cycle_probability(pm, std::vector<std::size_t>{0}) ==
        doctest::Approx(1.0 / phi).epsilon(1e-10));
  CHECK(cycle_probability(pm, std::vector<std::size_t>{1, 2}) ==
        doctest::Approx(1.0 / (phi * phi)).epsilon(1e-10));

  std::mt19937_64 rng(10402);
  for (int trial = 0; trial < 15; ++trial) {
    const TreeSpec spec = test::random_tree_spec(rng, trial % 2 == 0 ? 2 : 3);
    const PointedGraph g = graph_from_tree(spec);
    const ParryModel model = build_parry(g);
    for (const auto& walk : test::closed_walks_at_root(g, 8)) {
      const double expected =
          std::pow(model.rho(), -static_cast<double>(walk.size()));
      const double actual = cycle_probability(model, walk);
      CHECK(std::abs(actual - expected) <= 1e-9 * expected);
    }
  }
}

TEST_CASE("cycle_probability validates the walk") {
  const ParryModel pm = build_parry(graph_from_tree(golden()));
  CHECK(code_of([&] { cycle_probability(pm, std::vector<std::size_t>{}); }) ==
        Errc::NotAClosedWalk);
  // Edge 1 leaves the root but ends at v2.
  CHECK(code_of([&] { cycle_probability(pm, std::vector<std::size_t>{1}); }) ==
        Errc::NotAClosedWalk);
  // Edge 2 starts at v2, not at the root.
  CHECK(code_of([&] { cycle_probability(pm, std::vector<std::size_t>{2}); }) ==
        Errc::NotAClosedWalk);
  CHECK(code_of([&] { cycle_probability(pm, std::vector<std::size_t>{9}); }) ==
        Errc::NotAClosedWalk);
}

TEST_CASE("parry_cylinder follows label walks") {
  const ParryModel pm = build_parry(graph_from_tree(golden()));
  const double phi = test::golden_ratio();

  CHECK(parry_cylinder(pm, parse_word("10", 2), PointedGraph::kRoot) ==
        doctest::Approx(1.0 / (phi * phi)).epsilon(1e-10));
  CHECK(parry_cylinder(pm, Word{}, PointedGraph::kRoot) == 1.0);
  CHECK(code_of([&] {
          parry_cylinder(pm, parse_word("11", 2), PointedGraph::kRoot);
        }) == Errc::NoSuchWalk);

  // From v2 the only continuation is "0".
  CHECK(parry_cylinder(pm, parse_word("0", 2), 1) ==
        doctest::Approx(1.0).epsilon(1e-10));

  const double stationary = parry_cylinder(pm, parse_word("10", 2),
                                           PointedGraph::kRoot,
                                           CylinderMode::kStationary);
  CHECK(stationary ==
        doctest::Approx(pm.stationary()[0] / (phi * phi)).epsilon(1e-10));
}

TEST_CASE("measure entropy equals log2(rho) on the worked example") {
  const ParryModel pm = build_parry(
      graph_from_tree(TreeSpec::from_strings(2, {"00", "01", "10", "110"})));
  CHECK(measure_entropy(pm) ==
        doctest::Approx(std::log2(test::fig1_rho())).epsilon(1e-10));
}

TEST_CASE("restricted Parry measure equals the pushforward of mu") {
  CHECK(verify_thm6(golden(), 5));
  CHECK(verify_thm6(TreeSpec::from_strings(2, {"0", "1"}), 5));
  CHECK(verify_thm6(TreeSpec::from_strings(2, {"00", "01", "10", "110"}), 4));

  std::mt19937_64 rng(10403);
  for (int trial = 0; trial < 15; ++trial) {
    CHECK(verify_thm6(test::random_tree_spec(rng, trial % 2 == 0 ? 2 : 3), 3));
  }
}
