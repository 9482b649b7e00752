#include "fractree/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <memory>
#include <utility>

#include "fractree/coding.hpp"
#include "fractree/error.hpp"

namespace fractree {

ComplexityFunction make_table_backend(std::map<Word, double> entries) {
  auto table = std::make_shared<std::map<Word, double>>(std::move(entries));
  return ComplexityFunction{
      "table", [table](const Word& word) -> double {
        const auto found = table->find(word);
        if (found == table->end()) {
          raise(Errc::TableMiss, "no entry for \"" + format_word(word) + "\"");
        }
        return found->second;
      }};
}

ComplexityFunction make_lz78_backend(std::uint32_t alphabet_size) {
  return ComplexityFunction{
      "lz78", [alphabet_size](const Word& word) -> double {
        // Incremental dictionary parse; the trailing partial phrase counts.
        std::map<std::pair<int, Symbol>, int> trie;
        int next_id = 1;
        int current = 0;
        std::uint64_t phrases = 0;
        for (const Symbol s : word) {
          const auto found = trie.find({current, s});
          if (found != trie.end()) {
            current = found->second;
          } else {
            trie.emplace(std::pair<int, Symbol>{current, s}, next_id++);
            phrases += 1;
            current = 0;
          }
        }
        if (current != 0) phrases += 1;
        if (phrases == 0) return 0.0;
        return static_cast<double>(phrases) *
               std::log2(static_cast<double>(phrases) +
                         static_cast<double>(alphabet_size));
      }};
}

ComplexityFunction make_ideal_mu_backend(std::vector<double> symbol_probs) {
  if (symbol_probs.empty()) {
    raise(Errc::InvalidFormat, "ideal-mu backend needs symbol probabilities");
  }
  double sum = 0.0;
  for (const double p : symbol_probs) {
    if (!(p > 0.0)) {
      raise(Errc::InvalidFormat, "symbol probabilities must be positive");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    raise(Errc::InvalidFormat, "symbol probabilities must sum to 1");
  }
  auto probs = std::make_shared<std::vector<double>>(std::move(symbol_probs));
  return ComplexityFunction{
      "ideal_mu", [probs](const Word& word) -> double {
        double neg_log = 0.0;
        for (const Symbol s : word) {
          if (s >= probs->size()) {
            raise(Errc::SymbolOutOfRange,
                  "symbol " + std::to_string(s) + " outside the measure alphabet");
          }
          neg_log -= std::log2((*probs)[s]);
        }
        return neg_log;
      }};
}

std::vector<std::string> builtin_backends() {
  return {"table", "lz78", "ideal-mu"};
}

namespace {

DimensionTrace trace_with_denominator(
    const ComplexityFunction& complexity, const Word& x_prefix,
    std::span<const std::size_t> indices,
    const std::function<double(std::size_t)>& denominator) {
  DimensionTrace trace;
  trace.indices.assign(indices.begin(), indices.end());
  std::size_t previous = 0;
  for (const std::size_t index : trace.indices) {
    if (index < 1 || index > x_prefix.size()) {
      raise(Errc::IndexOutOfRange,
            "index " + std::to_string(index) + " outside [1, " +
                std::to_string(x_prefix.size()) + "]");
    }
    if (index <= previous) {
      raise(Errc::IndexOutOfRange, "indices must be strictly increasing");
    }
    previous = index;
    const Word prefix(x_prefix.begin(),
                      x_prefix.begin() + static_cast<std::ptrdiff_t>(index));
    trace.ratios.push_back(complexity(prefix) / denominator(index));
  }
  if (trace.ratios.empty()) {
    raise(Errc::IndexOutOfRange, "at least one index is required");
  }

  trace.running_min = *std::min_element(trace.ratios.begin(), trace.ratios.end());
  trace.running_max = *std::max_element(trace.ratios.begin(), trace.ratios.end());
  trace.tail_window_begin = trace.ratios.size() / 2;
  trace.liminf_proxy = *std::min_element(
      trace.ratios.begin() + static_cast<std::ptrdiff_t>(trace.tail_window_begin),
      trace.ratios.end());
  trace.limsup_proxy = *std::max_element(
      trace.ratios.begin() + static_cast<std::ptrdiff_t>(trace.tail_window_begin),
      trace.ratios.end());
  return trace;
}

}  // namespace

DimensionTrace dimension_trace(const ComplexityFunction& complexity,
                               const Word& x_prefix, std::uint32_t alphabet_size,
                               std::span<const std::size_t> indices) {
  if (alphabet_size < 2) {
    raise(Errc::InvalidFormat, "alphabet size must be at least 2");
  }
  const double log2_m = std::log2(static_cast<double>(alphabet_size));
  return trace_with_denominator(
      complexity, x_prefix, indices,
      [log2_m](std::size_t n) { return static_cast<double>(n) * log2_m; });
}

DimensionTrace dimension_trace_mu(const ComplexityFunction& complexity,
                                  const Word& x_prefix,
                                  std::span<const double> symbol_probs,
                                  std::span<const std::size_t> indices) {
  // Prefix sums of -log2 p over x, so each index costs O(1).
  std::vector<double> neg_log(x_prefix.size() + 1, 0.0);
  for (std::size_t i = 0; i < x_prefix.size(); ++i) {
    const Symbol s = x_prefix[i];
    if (s >= symbol_probs.size()) {
      raise(Errc::SymbolOutOfRange,
            "symbol " + std::to_string(s) + " outside the measure alphabet");
    }
    neg_log[i + 1] = neg_log[i] - std::log2(symbol_probs[s]);
  }
  return trace_with_denominator(
      complexity, x_prefix, indices,
      [&neg_log](std::size_t n) { return neg_log[n]; });
}

bool transfer_identity_check(const TreeSpec& spec,
                             const ComplexityFunction& complexity,
                             const Word& x_prefix, double tol) {
  EncodeResult parsed;
  try {
    parsed = encode(spec, x_prefix);
  } catch (const Error& e) {
    raise(Errc::ParseFailure, e.what());
  }

  const LengthFunction lf = LengthFunction::from_spec(spec);
  const CapacityResult capacity = channel_capacity(lf);
  const DerivedMeasure measure = derived_measure(capacity, lf);
  const double log2_m = std::log2(static_cast<double>(spec.alphabet_size()));

  const Word& symbols = parsed.sequence.code_symbols;
  for (std::size_t j = 1; j <= symbols.size(); ++j) {
    const std::size_t n_j = parsed.sequence.cut_points[j];
    const Word prefix(x_prefix.begin(),
                      x_prefix.begin() + static_cast<std::ptrdiff_t>(n_j));
    // The code-side complexity at y|j is defined as the tree-side value at
    // x|n_j, mirroring the two translation machines.
    const double c = complexity(prefix);
    const Word coded(symbols.begin(),
                     symbols.begin() + static_cast<std::ptrdiff_t>(j));
    const double neg_log2_mu = -std::log2(measure.word_measure(coded));
    const double lhs = c / (static_cast<double>(n_j) * log2_m);
    const double rhs = capacity.sdim * c / neg_log2_mu;
    if (std::abs(lhs - rhs) > tol) return false;
  }
  return true;
}

SandwichReport sandwich_check(const TreeSpec& spec,
                              const ComplexityFunction& complexity,
                              const Word& x_prefix) {
  EncodeResult parsed;
  try {
    parsed = encode(spec, x_prefix);
  } catch (const Error& e) {
    raise(Errc::ParseFailure, e.what());
  }

  SandwichReport report;
  report.cut_count = parsed.sequence.code_symbols.size();
  if (x_prefix.empty()) {
    report.ok = true;
    return report;
  }

  const double log2_m = std::log2(static_cast<double>(spec.alphabet_size()));
  std::vector<double> ratios(x_prefix.size() + 1, 0.0);
  report.min_all = std::numeric_limits<double>::infinity();
  report.max_all = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 1; n <= x_prefix.size(); ++n) {
    const Word prefix(x_prefix.begin(),
                      x_prefix.begin() + static_cast<std::ptrdiff_t>(n));
    ratios[n] = complexity(prefix) / (static_cast<double>(n) * log2_m);
    report.min_all = std::min(report.min_all, ratios[n]);
    report.max_all = std::max(report.max_all, ratios[n]);
  }

  if (report.cut_count == 0) {
    // No full block parsed; the subsequence claim is vacuous.
    report.min_cuts = report.max_cuts = std::numeric_limits<double>::quiet_NaN();
    report.ok = true;
    return report;
  }
  report.min_cuts = std::numeric_limits<double>::infinity();
  report.max_cuts = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 1; j <= report.cut_count; ++j) {
    const double ratio = ratios[parsed.sequence.cut_points[j]];
    report.min_cuts = std::min(report.min_cuts, ratio);
    report.max_cuts = std::max(report.max_cuts, ratio);
  }
  report.ok = report.min_all <= report.min_cuts && report.max_cuts <= report.max_all;
  return report;
}

}  // namespace fractree
