#include "fractree/coding.hpp"

#include <cmath>
#include <cstdlib>
#include <functional>
#include <utility>

#include "fractree/error.hpp"

namespace fractree {

namespace {

constexpr int kMaxBisectionIterations = 200;

// Bisection for a strictly monotone f with f(lo) and f(hi) of opposite
// signs; stops once |f(mid)| <= tol. `increasing` tells which side of the
// bracket to move.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              bool increasing, double tol) {
  for (int iter = 0; iter < kMaxBisectionIterations; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double value = f(mid);
    if (std::abs(value) <= tol) return mid;
    if ((value < 0.0) == increasing) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  raise(Errc::NonConvergence,
        "bisection residual did not reach tolerance within " +
            std::to_string(kMaxBisectionIterations) + " iterations");
}

void check_tolerance(double tol) {
  if (!(tol > 0.0)) {
    raise(Errc::InvalidFormat, "tolerance must be positive");
  }
}

}  // namespace

LengthFunction::LengthFunction(std::vector<std::uint32_t> costs,
                               std::uint32_t alphabet_size)
    : costs_(std::move(costs)), alphabet_size_(alphabet_size) {
  if (costs_.size() < 2) {
    raise(Errc::DegenerateTree, "a length function needs at least 2 symbols");
  }
  for (const std::uint32_t cost : costs_) {
    if (cost == 0) {
      raise(Errc::InvalidFormat, "letter costs must be positive");
    }
  }
  if (alphabet_size_ < 2) {
    raise(Errc::InvalidFormat, "source alphabet size must be at least 2");
  }
}

LengthFunction LengthFunction::from_spec(const TreeSpec& spec) {
  std::vector<std::uint32_t> costs;
  costs.reserve(spec.terminal_count());
  for (const Word& t : spec.terminals()) {
    costs.push_back(static_cast<std::uint32_t>(t.size()));
  }
  return LengthFunction(std::move(costs), spec.alphabet_size());
}

std::uint64_t LengthFunction::word_cost(const Word& y) const {
  std::uint64_t total = 0;
  for (const Symbol s : y) {
    if (s >= costs_.size()) {
      raise(Errc::SymbolOutOfRange,
            "code symbol " + std::to_string(s) + " exceeds code alphabet size " +
                std::to_string(costs_.size()));
    }
    total += costs_[s];
  }
  return total;
}

CapacityResult channel_capacity(const LengthFunction& lf, double tol) {
  check_tolerance(tol);
  const auto& costs = lf.costs();
  const auto kraft_sum = [&costs](double r) {
    double sum = 0.0;
    for (const std::uint32_t cost : costs) {
      sum += std::pow(r, static_cast<double>(cost));
    }
    return sum - 1.0;
  };
  // f(0) = -1 and f(1) = k - 1 >= 1, so the bracket always holds.
  const double r = bisect(kraft_sum, 0.0, 1.0, /*increasing=*/true, tol);

  CapacityResult result;
  result.r = r;
  result.alpha = -std::log2(r);
  result.sdim = result.alpha / std::log2(static_cast<double>(lf.alphabet_size()));
  result.residual = std::abs(kraft_sum(r));
  return result;
}

double similarity_dimension(const TreeSpec& spec, double tol) {
  check_tolerance(tol);
  const double m = static_cast<double>(spec.alphabet_size());
  const auto similarity_sum = [&spec, m](double beta) {
    double sum = 0.0;
    for (const Word& t : spec.terminals()) {
      sum += std::pow(m, -beta * static_cast<double>(t.size()));
    }
    return sum - 1.0;
  };
  // Decreasing in beta; g(0) = k - 1 > 0 and g(1) <= 0 by Kraft.
  return bisect(similarity_sum, 0.0, 1.0, /*increasing=*/false, tol);
}

double DerivedMeasure::word_measure(const Word& y) const {
  double mu = 1.0;
  for (const Symbol s : y) {
    if (s >= symbol_probs.size()) {
      raise(Errc::SymbolOutOfRange,
            "code symbol " + std::to_string(s) + " exceeds code alphabet size " +
                std::to_string(symbol_probs.size()));
    }
    mu *= symbol_probs[s];
  }
  return mu;
}

DerivedMeasure derived_measure(const CapacityResult& capacity,
                               const LengthFunction& lf) {
  DerivedMeasure measure;
  measure.alpha = capacity.alpha;
  measure.costs = lf.costs();
  measure.symbol_probs.reserve(lf.costs().size());
  for (const std::uint32_t cost : lf.costs()) {
    measure.symbol_probs.push_back(
        std::pow(capacity.r, static_cast<double>(cost)));
  }
  return measure;
}

EncodeResult encode(const TreeSpec& spec, const Word& x_prefix) {
  const TreeIndex index(spec);
  EncodeResult result;
  result.sequence.cut_points.push_back(0);

  int node = index.root();
  std::size_t last_cut = 0;
  for (std::size_t pos = 0; pos < x_prefix.size(); ++pos) {
    const Symbol a = x_prefix[pos];
    if (a >= spec.alphabet_size()) {
      raise(Errc::SymbolOutOfRange,
            "symbol " + std::to_string(a) + " at position " + std::to_string(pos) +
                " exceeds alphabet size " + std::to_string(spec.alphabet_size()));
    }
    node = index.step(node, a);
    if (node == TreeIndex::kNoChild) {
      raise(Errc::NotInExpansion,
            "no node of the expansion continues with symbol " +
                std::to_string(a) + " at position " + std::to_string(pos));
    }
    if (index.is_terminal(node)) {
      result.sequence.code_symbols.push_back(
          static_cast<Symbol>(index.terminal_symbol(node)));
      result.sequence.cut_points.push_back(pos + 1);
      last_cut = pos + 1;
      node = index.root();
    }
  }
  result.remainder.assign(x_prefix.begin() + static_cast<std::ptrdiff_t>(last_cut),
                          x_prefix.end());
  return result;
}

Word decode(const TreeSpec& spec, const Word& y_prefix) {
  Word x;
  for (const Symbol s : y_prefix) {
    if (s >= spec.terminal_count()) {
      raise(Errc::SymbolOutOfRange,
            "code symbol " + std::to_string(s) + " exceeds code alphabet size " +
                std::to_string(spec.terminal_count()));
    }
    const Word& block = spec.terminals()[s];
    x.insert(x.end(), block.begin(), block.end());
  }
  return x;
}

CodedWordMeasure measure_of_coded_word(const DerivedMeasure& measure,
                                       const Word& y_prefix) {
  CodedWordMeasure out;
  out.mu = measure.word_measure(y_prefix);
  std::uint64_t total_cost = 0;
  for (const Symbol s : y_prefix) {
    total_cost += measure.costs.at(s);
  }
  out.neg_log2_mu = measure.alpha * static_cast<double>(total_cost);
  // The two routes agree exactly in algebra; only float rounding separates
  // them, and only while the product stays in normal double range.
  if (out.mu > 0.0 &&
      std::abs(-std::log2(out.mu) - out.neg_log2_mu) > 1e-9) {
    raise(Errc::InternalCheckFailed,
          "product and cost routes for -log2(mu) disagree beyond 1e-9");
  }
  return out;
}

}  // namespace fractree
