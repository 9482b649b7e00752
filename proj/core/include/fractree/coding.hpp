#pragma once

#include <cstdint>
#include <vector>

#include "fractree/tree.hpp"
#include "fractree/word.hpp"

namespace fractree {

inline constexpr double kDefaultSolveTol = 1e-12;

// Per-symbol letter costs of an unequal-cost code. When induced by a tree,
// cost i is the depth of the i-th terminal node and alphabet_size is the
// alphabet the tree lives over.
class LengthFunction {
 public:
  LengthFunction(std::vector<std::uint32_t> costs, std::uint32_t alphabet_size);

  static LengthFunction from_spec(const TreeSpec& spec);

  const std::vector<std::uint32_t>& costs() const { return costs_; }
  std::uint32_t alphabet_size() const { return alphabet_size_; }
  std::size_t symbol_count() const { return costs_.size(); }

  // Total cost of a code word: sum of per-symbol costs.
  std::uint64_t word_cost(const Word& y) const;

 private:
  std::vector<std::uint32_t> costs_;
  std::uint32_t alphabet_size_;
};

struct CapacityResult {
  double alpha = 0.0;     // channel capacity, bits
  double r = 0.0;         // 2^{-alpha}
  double sdim = 0.0;      // alpha / log2(alphabet size)
  double residual = 0.0;  // |sum r^cost(i) - 1| at termination
};

// Unique alpha >= 0 with sum_i 2^{-alpha*cost(i)} = 1, found by bisection
// on f(r) = sum_i r^cost(i) - 1 over [0,1]; f is strictly increasing with
// a guaranteed sign change whenever there are at least two symbols.
CapacityResult channel_capacity(const LengthFunction& lf,
                                double tol = kDefaultSolveTol);

// Unique beta with sum_i m^{-beta*|tau_i|} = 1, solved by direct bisection
// in beta over [0,1] (the bracket is valid by the Kraft inequality). This
// deliberately shares no code path with channel_capacity, so the identity
// alpha = log2(m) * beta stays a genuine cross-check.
double similarity_dimension(const TreeSpec& spec, double tol = kDefaultSolveTol);

// Bernoulli measure derived from a length function: symbol i has
// probability r^cost(i).
struct DerivedMeasure {
  std::vector<double> symbol_probs;
  double alpha = 0.0;
  std::vector<std::uint32_t> costs;

  // Product measure of the cylinder defined by a code word.
  double word_measure(const Word& y) const;
};

DerivedMeasure derived_measure(const CapacityResult& capacity,
                               const LengthFunction& lf);

// Cut positions 0 = n_0 < n_1 < ... of the unique parse of a member of T*
// into terminal nodes, together with the resulting code symbols. Always
// n_{j+1} - n_j = cost(code_symbols[j]).
struct TSequence {
  std::vector<std::size_t> cut_points;
  Word code_symbols;
};

struct EncodeResult {
  TSequence sequence;
  Word remainder;  // proper prefix of some terminal node, possibly empty
};

// Parses x_prefix in T* into terminal blocks. The trailing partial block is
// returned as the remainder rather than being an error, so callers can
// reason about positions strictly between cut points.
EncodeResult encode(const TreeSpec& spec, const Word& x_prefix);

// Concatenates the terminal nodes selected by the code word.
Word decode(const TreeSpec& spec, const Word& y_prefix);

struct CodedWordMeasure {
  double mu = 0.0;
  double neg_log2_mu = 0.0;  // alpha * total cost of the word
};

// Evaluates mu_l on a coded cylinder two ways: as the product of symbol
// probabilities and as 2^{-alpha * cost}; the two routes must agree.
CodedWordMeasure measure_of_coded_word(const DerivedMeasure& measure,
                                       const Word& y_prefix);

}  // namespace fractree
