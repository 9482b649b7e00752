#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "fractree/coding.hpp"
#include "fractree/dimension.hpp"
#include "fractree/error.hpp"
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

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> indices(n);
  for (std::size_t i = 0; i < n; ++i) indices[i] = i + 1;
  return indices;
}

}  // namespace

TEST_CASE("builtin backends behave as specified") {
  CHECK(builtin_backends() ==
        std::vector<std::string>{"table", "lz78", "ideal-mu"});

  const ComplexityFunction uniform = make_ideal_mu_backend({0.5, 0.5});
  CHECK(uniform(Word(8, 0)) == doctest::Approx(8.0).epsilon(1e-12));

  const ComplexityFunction table = make_table_backend({{parse_word("01", 2), 7.0}});
  CHECK(table(parse_word("01", 2)) == 7.0);
  CHECK(code_of([&] { table(parse_word("10", 2)); }) == Errc::TableMiss);

  const ComplexityFunction lz = make_lz78_backend(2);
  CHECK(lz(Word{}) == 0.0);
  const double repetitive = lz(parse_word("0000000000", 2));
  const double mixed = lz(parse_word("0110100110", 2));
  CHECK(repetitive > 0.0);
  CHECK(repetitive < mixed);

  CHECK(code_of([] { make_ideal_mu_backend({0.5, -0.5}); }) == Errc::InvalidFormat);
  CHECK(code_of([] { make_ideal_mu_backend({0.5, 0.4}); }) == Errc::InvalidFormat);
}

TEST_CASE("ideal-mu on the derived measure reproduces the coded cost") {
  const LengthFunction lf = LengthFunction::from_spec(golden());
  const DerivedMeasure dm = derived_measure(channel_capacity(lf), lf);
  const ComplexityFunction backend = make_ideal_mu_backend(dm.symbol_probs);
  const Word y = parse_word("0110", 2);
  CHECK(backend(y) ==
        doctest::Approx(measure_of_coded_word(dm, y).neg_log2_mu).epsilon(1e-12));
}

TEST_CASE("dimension_trace computes normalized ratios") {
  // Uniform measure on a binary alphabet: every ratio is exactly one.
  const ComplexityFunction uniform = make_ideal_mu_backend({0.5, 0.5});
  const Word x = parse_word("01101001", 2);
  const DimensionTrace trace = dimension_trace(uniform, x, 2, all_indices(8));
  for (const double ratio : trace.ratios) CHECK(ratio == 1.0);
  CHECK(trace.running_min == 1.0);
  CHECK(trace.limsup_proxy == 1.0);

  // A table growing like n/2 gives constant ratio 0.5.
  std::map<Word, double> half;
  for (std::size_t n = 1; n <= 8; ++n) {
    half[Word(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n))] =
        static_cast<double>(n) / 2.0;
  }
  const DimensionTrace half_trace =
      dimension_trace(make_table_backend(half), x, 2, all_indices(8));
  for (const double ratio : half_trace.ratios) {
    CHECK(ratio == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("trace window statistics and index validation") {
  const Word x = parse_word("0000", 2);
  std::map<Word, double> table;
  const double values[4] = {4.0, 6.0, 6.0, 4.0};  // ratios 4, 3, 2, 1
  for (std::size_t n = 1; n <= 4; ++n) {
    table[Word(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n))] =
        values[n - 1];
  }
  const ComplexityFunction backend = make_table_backend(table);
  const DimensionTrace trace = dimension_trace(backend, x, 2, all_indices(4));
  CHECK(trace.ratios == std::vector<double>{4.0, 3.0, 2.0, 1.0});
  CHECK(trace.running_min == 1.0);
  CHECK(trace.running_max == 4.0);
  CHECK(trace.tail_window_begin == 2);
  CHECK(trace.liminf_proxy == 1.0);
  CHECK(trace.limsup_proxy == 2.0);

  CHECK(code_of([&] {
          dimension_trace(backend, x, 2, std::vector<std::size_t>{0, 1});
        }) == Errc::IndexOutOfRange);
  CHECK(code_of([&] {
          dimension_trace(backend, x, 2, std::vector<std::size_t>{1, 5});
        }) == Errc::IndexOutOfRange);
  CHECK(code_of([&] {
          dimension_trace(backend, x, 2, std::vector<std::size_t>{3, 2});
        }) == Errc::IndexOutOfRange);
  CHECK(code_of([&] {
          dimension_trace(backend, x, 2, std::vector<std::size_t>{});
        }) == Errc::IndexOutOfRange);
}

TEST_CASE("measure-normalized trace is identically one for its own measure") {
  const LengthFunction lf = LengthFunction::from_spec(golden());
  const DerivedMeasure dm = derived_measure(channel_capacity(lf), lf);
  const ComplexityFunction backend = make_ideal_mu_backend(dm.symbol_probs);

  std::mt19937_64 rng(11501);
  const Word y = test::random_code_word(rng, 2, 24);
  const DimensionTrace trace =
      dimension_trace_mu(backend, y, dm.symbol_probs, all_indices(24));
  for (const double ratio : trace.ratios) {
    CHECK(ratio == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("transfer identity holds at every parse point") {
  // Worked example: x = 010|0|1..., cut points 1 and 3; an arbitrary table
  // value cancels on both sides.
  const Word x = parse_word("010", 2);
  std::map<Word, double> table{{parse_word("0", 2), 11.5},
                               {parse_word("010", 2), 7.0}};
  CHECK(transfer_identity_check(golden(), make_table_backend(table), x));

  // Zero complexity: both sides vanish.
  std::map<Word, double> zeros;
  for (std::size_t n = 1; n <= 3; ++n) {
    zeros[Word(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n))] = 0.0;
  }
  CHECK(transfer_identity_check(golden(), make_table_backend(zeros), x));

  CHECK(code_of([&] {
          transfer_identity_check(golden(), make_lz78_backend(2),
                                  parse_word("11", 2));
        }) == Errc::ParseFailure);
}

TEST_CASE("transfer identity is backend independent") {
  const TreeSpec fig1 = TreeSpec::from_strings(2, {"00", "01", "10", "110"});
  std::mt19937_64 rng(11502);

  for (int trial = 0; trial < 50; ++trial) {
    const Word y = test::random_code_word(rng, fig1.terminal_count(), 50);
    const Word x = decode(fig1, y);
    const ComplexityFunction table =
        make_table_backend(test::random_prefix_table(rng, x));
    CHECK(transfer_identity_check(fig1, table, x));
  }

  // Structured backends satisfy the same identity.
  std::mt19937_64 rng2(11503);
  for (int trial = 0; trial < 10; ++trial) {
    const TreeSpec spec = test::random_tree_spec(rng2, trial % 2 == 0 ? 2 : 3);
    const Word x = decode(spec, test::random_code_word(rng2, spec.terminal_count(), 30));
    CHECK(transfer_identity_check(spec, make_lz78_backend(spec.alphabet_size()), x));
    CHECK(transfer_identity_check(
        spec,
        make_ideal_mu_backend(std::vector<double>(
            spec.alphabet_size(), 1.0 / spec.alphabet_size())),
        x));
  }
}

TEST_CASE("sandwich bounds hold for any backend") {
  std::mt19937_64 rng(11504);
  for (int trial = 0; trial < 50; ++trial) {
    const TreeSpec spec = test::random_tree_spec(rng, trial % 2 == 0 ? 2 : 3);
    const Word x = decode(spec, test::random_code_word(rng, spec.terminal_count(), 20));
    const SandwichReport report = sandwich_check(
        spec, make_table_backend(test::random_prefix_table(rng, x)), x);
    CHECK(report.ok);
    CHECK(report.min_all <= report.min_cuts);
    CHECK(report.max_cuts <= report.max_all);
  }
}

TEST_CASE("sandwich report on a long lz78 trace") {
  std::mt19937_64 rng(11505);
  const Word y = test::random_code_word(rng, 2, 130);
  Word x = decode(golden(), y);
  x.resize(200);
  const SandwichReport report =
      sandwich_check(golden(), make_lz78_backend(2), x);
  CHECK(report.ok);
  CHECK(report.cut_count > 0);
  CHECK(report.min_cuts - report.min_all >= 0.0);
  CHECK(report.max_all - report.max_cuts >= 0.0);
}

TEST_CASE("cut ratios coincide with all ratios on the full shift") {
  // Every position is a cut point, so the two ranges agree exactly.
  const TreeSpec full = TreeSpec::from_strings(2, {"0", "1"});
  std::mt19937_64 rng(11506);
  const Word x = test::random_code_word(rng, 2, 40);
  const SandwichReport report = sandwich_check(
      full, make_table_backend(test::random_prefix_table(rng, x)), x);
  CHECK(report.ok);
  CHECK(report.min_all == report.min_cuts);
  CHECK(report.max_all == report.max_cuts);
}
