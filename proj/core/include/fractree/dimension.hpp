#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "fractree/tree.hpp"
#include "fractree/word.hpp"

namespace fractree {

// A pluggable stand-in for prefix-free Kolmogorov complexity: any
// deterministic, total map from finite strings to non-negative reals.
struct ComplexityFunction {
  std::string name;
  std::function<double(const Word&)> eval;

  double operator()(const Word& word) const { return eval(word); }
};

// Exact finite map, for tests and replayable runs. Querying outside the
// table throws TableMiss.
ComplexityFunction make_table_backend(std::map<Word, double> entries);

// Heuristic phrase-count estimator: C(s) = P * log2(P + alphabet_size)
// where P is the number of LZ78 phrases of s. Not normative, just a cheap
// compressibility proxy.
ComplexityFunction make_lz78_backend(std::uint32_t alphabet_size);

// C(s) = -log2 mu(s) for the Bernoulli measure with the given symbol
// probabilities.
ComplexityFunction make_ideal_mu_backend(std::vector<double> symbol_probs);

std::vector<std::string> builtin_backends();

// Finite-scale trace of C(x restricted to n) / (n log2 m). The liminf and
// limsup proxies are the min and max over the tail window, which is the
// final half of the supplied indices (rounded up to at least one entry).
struct DimensionTrace {
  std::vector<std::size_t> indices;
  std::vector<double> ratios;
  double running_min = 0.0;
  double running_max = 0.0;
  double liminf_proxy = 0.0;
  double limsup_proxy = 0.0;
  std::size_t tail_window_begin = 0;  // index into `indices`
};

DimensionTrace dimension_trace(const ComplexityFunction& complexity,
                               const Word& x_prefix, std::uint32_t alphabet_size,
                               std::span<const std::size_t> indices);

// Billingsley variant: ratios C(x restricted to n) / (-log2 mu(x restricted
// to n)) for the Bernoulli measure given by symbol_probs.
DimensionTrace dimension_trace_mu(const ComplexityFunction& complexity,
                                  const Word& x_prefix,
                                  std::span<const double> symbol_probs,
                                  std::span<const std::size_t> indices);

// At every full parse point n_j of x_prefix, checks
//   C(x|n_j) / (n_j log2 m)  ==  sdim * C(x|n_j) / (-log2 mu_l(y|j))
// within tol. The right side defines the code-side complexity from the
// tree side, so the identity is pure algebra of alpha, sdim and mu_l and
// must hold for every backend.
bool transfer_identity_check(const TreeSpec& spec,
                             const ComplexityFunction& complexity,
                             const Word& x_prefix, double tol = 1e-9);

// Subsequence bounds: the min over all prefix lengths is at most the min
// over cut points, and the max over cut points is at most the max over all
// prefix lengths.
struct SandwichReport {
  double min_all = 0.0;
  double max_all = 0.0;
  double min_cuts = 0.0;
  double max_cuts = 0.0;
  std::size_t cut_count = 0;
  bool ok = false;
};

SandwichReport sandwich_check(const TreeSpec& spec,
                              const ComplexityFunction& complexity,
                              const Word& x_prefix);

}  // namespace fractree
