#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fractree/fractree.hpp"

namespace fractree::cli {

namespace {

using nlohmann::json;

constexpr int kPrecision = 12;  // significant digits for numeric output

std::string poly_to_string(const CharPoly& cp) {
  const std::size_t n = cp.degree();
  std::ostringstream out;
  out << "z";
  if (n > 1) out << "^" << n;
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t c = cp.coeffs[i];
    if (c == 0) continue;
    const std::size_t power = n - 1 - i;
    out << (c < 0 ? " - " : " + ");
    const std::int64_t mag = std::abs(c);
    if (mag != 1 || power == 0) out << mag;
    if (power >= 1) {
      out << "z";
      if (power > 1) out << "^" << power;
    }
  }
  return out.str();
}

std::string format_code_word(const Word& y, std::size_t code_alphabet) {
  if (code_alphabet <= kMaxTextAlphabet) return format_word(y);
  std::ostringstream out;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i > 0) out << ",";
    out << y[i];
  }
  return out.str();
}

// Code words are digit strings for small code alphabets, or comma/space
// separated integers otherwise.
Word parse_code_word(const std::string& text, std::size_t code_alphabet) {
  if (text.find(',') == std::string::npos &&
      text.find(' ') == std::string::npos) {
    return parse_word(text,
                      static_cast<std::uint32_t>(std::min<std::size_t>(
                          code_alphabet, kMaxTextAlphabet)));
  }
  std::string spaced = text;
  std::replace(spaced.begin(), spaced.end(), ',', ' ');
  std::istringstream in(spaced);
  Word word;
  unsigned long value = 0;
  while (in >> value) {
    if (value >= code_alphabet) {
      raise(Errc::SymbolOutOfRange, "code symbol " + std::to_string(value) +
                                        " exceeds code alphabet size " +
                                        std::to_string(code_alphabet));
    }
    word.push_back(static_cast<Symbol>(value));
  }
  return word;
}

std::string load_input(const std::string& value) {
  if (!value.empty() && value.front() == '@') {
    std::string text = read_file(value.substr(1));
    text.erase(std::remove_if(text.begin(), text.end(),
                              [](unsigned char c) { return std::isspace(c); }),
               text.end());
    return text;
  }
  return value;
}

struct Options {
  std::string tree_path;
  std::string graph_path;
  std::string input;
  std::string format;
  std::string backend = "lz78";
  std::string table_path;
  std::string probs_csv;
  std::string indices_csv;
  bool json_output = false;
  bool billingsley = false;
  double tol = kDefaultSolveTol;
  std::size_t depth = 5;
  std::size_t tables = 50;
  std::size_t walk_length = 32;
  std::size_t block_length = 20;
  std::size_t guard = kDefaultBlockGuard;
  std::uint64_t seed = 1;
};

TreeSpec load_tree(const Options& opt) {
  return tree_from_json(read_file(opt.tree_path));
}

std::vector<double> parse_probs(const std::string& csv) {
  std::vector<double> probs;
  std::istringstream in(csv);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (!token.empty()) probs.push_back(std::stod(token));
  }
  return probs;
}

std::vector<std::size_t> parse_indices(const std::string& csv) {
  std::vector<std::size_t> indices;
  std::istringstream in(csv);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (!token.empty()) indices.push_back(std::stoul(token));
  }
  return indices;
}

void cmd_validate(const Options& opt, std::ostream& out) {
  const TreeSpec spec = load_tree(opt);
  const TreeNodes nodes = tree_nodes(spec);
  const auto profile = depth_profile(spec);
  if (opt.json_output) {
    json j;
    j["schema"] = kSchemaTag;
    j["valid"] = true;
    j["alphabet_size"] = spec.alphabet_size();
    j["terminal_count"] = spec.terminal_count();
    j["non_terminal_count"] = nodes.non_terminal_count();
    j["depth_profile"] = profile;
    out << j.dump(2) << "\n";
    return;
  }
  out << "valid tree: m = " << spec.alphabet_size() << ", k = "
      << spec.terminal_count() << " terminals, n = " << nodes.non_terminal_count()
      << " non-terminal nodes\n";
  out << "depth profile = [";
  for (std::size_t i = 0; i < profile.size(); ++i) {
    out << (i ? ", " : "") << profile[i];
  }
  out << "]\n";
}

void cmd_capacity(const Options& opt, std::ostream& out) {
  const TreeSpec spec = load_tree(opt);
  const CapacityResult cap =
      channel_capacity(LengthFunction::from_spec(spec), opt.tol);
  if (opt.json_output) {
    json j{{"schema", kSchemaTag},
           {"alpha", cap.alpha},
           {"r", cap.r},
           {"sdim", cap.sdim},
           {"residual", cap.residual}};
    out << j.dump(2) << "\n";
    return;
  }
  out << "alpha    = " << cap.alpha << "\n";
  out << "r        = " << cap.r << "\n";
  out << "sdim     = " << cap.sdim << "\n";
  out << "residual = " << cap.residual << "\n";
}

void cmd_sdim(const Options& opt, std::ostream& out) {
  const TreeSpec spec = load_tree(opt);
  const double beta = similarity_dimension(spec, opt.tol);
  if (opt.json_output) {
    json j{{"schema", kSchemaTag}, {"sdim", beta}};
    out << j.dump(2) << "\n";
    return;
  }
  out << "sdim = " << beta << "\n";
}

void cmd_measure(const Options& opt, std::ostream& out) {
  const TreeSpec spec = load_tree(opt);
  const LengthFunction lf = LengthFunction::from_spec(spec);
  const DerivedMeasure dm = derived_measure(channel_capacity(lf, opt.tol), lf);
  json j{{"schema", kSchemaTag}, {"symbol_probs", dm.symbol_probs}};
  if (!opt.input.empty()) {
    const Word y = parse_code_word(load_input(opt.input), spec.terminal_count());
    const CodedWordMeasure mu = measure_of_coded_word(dm, y);
    j["mu"] = mu.mu;
    j["neg_log2_mu"] = mu.neg_log2_mu;
    if (!opt.json_output) {
      out << "mu          = " << mu.mu << "\n";
      out << "neg_log2_mu = " << mu.neg_log2_mu << "\n";
      return;
    }
  }
  if (opt.json_output) {
    out << j.dump(2) << "\n";
    return;
  }
  out << "p = [";
  for (std::size_t i = 0; i < dm.symbol_probs.size(); ++i) {
    out << (i ? ", " : "") << dm.symbol_probs[i];
  }
  out << "]\n";
}

void cmd_encode(const Options& opt, std::ostream& out) {
  const TreeSpec spec = load_tree(opt);
  const Word x = parse_word(load_input(opt.input), spec.alphabet_size());
  const EncodeResult result = encode(spec, x);
  if (opt.json_output) {
    json j{{"schema", kSchemaTag},
           {"symbols", format_code_word(result.sequence.code_symbols,
                                        spec.terminal_count())},
           {"cut_points", result.sequence.cut_points},
           {"remainder", format_word(result.remainder)}};
    out << j.dump(2) << "\n";
    return;
  }
  out << "symbols    = "
      << format_code_word(result.sequence.code_symbols, spec.terminal_count())
      << "\n";
  out << "cut_points = [";
  for (std::size_t i = 0; i < result.sequence.cut_points.size(); ++i) {
    out << (i ? ", " : "") << result.sequence.cut_points[i];
  }
  out << "]\n";
  out << "remainder  = \"" << format_word(result.remainder) << "\"\n";
}

void cmd_decode(const Options& opt, std::ostream& out) {
  const TreeSpec spec = load_tree(opt);
  const Word y = parse_code_word(load_input(opt.input), spec.terminal_count());
  const Word x = decode(spec, y);
  if (opt.json_output) {
    json j{{"schema", kSchemaTag}, {"output", format_word(x)}};
    out << j.dump(2) << "\n";
    return;
  }
  out << format_word(x) << "\n";
}

void cmd_graph(const Options& opt, std::ostream& out) {
  const PointedGraph g = graph_from_tree(load_tree(opt));
  if (opt.format == "json" || opt.json_output) {
    out << graph_to_json(g);
  } else {
    out << graph_to_dot(g);
  }
}

void cmd_tree_from_graph(const Options& opt, std::ostream& out,
                         std::ostream& err) {
  const PointedGraph g = graph_from_json(read_file(opt.graph_path));
  for (const std::string& warning : validate_pointed_graph(g).warnings) {
    err << "warning: " << warning << "\n";
  }
  out << tree_to_json(tree_from_graph(g));
}

void cmd_charpoly(const Options& opt, std::ostream& out) {
  const TreeSpec spec = load_tree(opt);
  const CharPoly cp = charpoly_leverrier(adjacency_matrix(graph_from_tree(spec)));
  if (opt.json_output) {
    json j{{"schema", kSchemaTag},
           {"degree", cp.degree()},
           {"coefficients", cp.coeffs},
           {"polynomial", poly_to_string(cp)}};
    out << j.dump(2) << "\n";
    return;
  }
  out << "p(z) = " << poly_to_string(cp) << "\n";
  out << "c = [";
  for (std::size_t i = 0; i < cp.coeffs.size(); ++i) {
    out << (i ? ", " : "") << cp.coeffs[i];
  }
  out << "]\n";
}

void cmd_perron(const Options& opt, std::ostream& out) {
  const TreeSpec spec = load_tree(opt);
  const double rho = perron_eigenvalue(adjacency_matrix(graph_from_tree(spec)),
                                       opt.tol);
  if (opt.json_output) {
    json j{{"schema", kSchemaTag}, {"rho", rho}, {"log2_rho", std::log2(rho)}};
    out << j.dump(2) << "\n";
    return;
  }
  out << "rho       = " << rho << "\n";
  out << "log2(rho) = " << std::log2(rho) << "\n";
}

void cmd_parry(const Options& opt, std::ostream& out) {
  const TreeSpec spec = load_tree(opt);
  const PointedGraph g = graph_from_tree(spec);
  const ParryModel pm = build_parry(g, opt.tol);
  if (opt.json_output) {
    json edges = json::array();
    for (std::size_t i = 0; i < g.edges().size(); ++i) {
      const Edge& e = g.edges()[i];
      edges.push_back(json{{"from", e.from + 1},
                           {"to", e.to + 1},
                           {"label", format_word(Word{e.label})},
                           {"probability", pm.edge_probability(i)}});
    }
    json j{{"schema", kSchemaTag},
           {"rho", pm.rho()},
           {"right_eigvec", pm.right_eigvec()},
           {"left_eigvec", pm.left_eigvec()},
           {"stationary", pm.stationary()},
           {"edges", edges},
           {"entropy", measure_entropy(pm)}};
    out << j.dump(2) << "\n";
    return;
  }
  out << "rho = " << pm.rho() << "\n";
  const auto print_vec = [&](const char* name, const std::vector<double>& v) {
    out << name << " = [";
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << v[i];
    out << "]\n";
  };
  print_vec("right eigvec", pm.right_eigvec());
  print_vec("left eigvec ", pm.left_eigvec());
  print_vec("stationary  ", pm.stationary());
  out << "transitions:\n";
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const Edge& e = g.edges()[i];
    out << "  v" << (e.from + 1) << " -" << format_word(Word{e.label}) << "-> v"
        << (e.to + 1) << "  p = " << pm.edge_probability(i) << "\n";
  }
  out << "entropy h = " << measure_entropy(pm) << "\n";
}

void cmd_entropy(const Options& opt, std::ostream& out) {
  const TreeSpec spec = load_tree(opt);
  const PointedGraph g = graph_from_tree(spec);
  const EntropyEstimate estimate =
      entropy_estimate(g, opt.block_length, opt.guard);
  const std::uint64_t blocks =
      count_blocks(g, opt.block_length, false, opt.guard);
  const std::uint64_t initial_blocks =
      count_blocks(g, opt.block_length, true, opt.guard);
  const double log2_rho =
      std::log2(perron_eigenvalue(adjacency_matrix(g), opt.tol));
  if (opt.json_output) {
    json j{{"schema", kSchemaTag},
           {"n", opt.block_length},
           {"blocks", blocks},
           {"initial_blocks", initial_blocks},
           {"h_p", estimate.h_p},
           {"h_top", estimate.h_top},
           {"log2_rho", log2_rho}};
    out << j.dump(2) << "\n";
    return;
  }
  out << "n              = " << opt.block_length << "\n";
  out << "N_n            = " << blocks << "\n";
  out << "N_n^I          = " << initial_blocks << "\n";
  out << "h_p   (1/n)log2 N_n   = " << estimate.h_p << "\n";
  out << "h_top (1/n)log2 N_n^I = " << estimate.h_top << "\n";
  out << "log2(rho)      = " << log2_rho << "\n";
}

ComplexityFunction build_backend(const Options& opt, const TreeSpec& spec) {
  if (opt.backend == "lz78") {
    return make_lz78_backend(spec.alphabet_size());
  }
  if (opt.backend == "table") {
    if (opt.table_path.empty()) {
      raise(Errc::InvalidFormat, "the table backend needs --table FILE");
    }
    return make_table_backend(
        table_from_json(read_file(opt.table_path), spec.alphabet_size()));
  }
  if (opt.backend == "ideal-mu") {
    std::vector<double> probs = opt.probs_csv.empty()
                                    ? std::vector<double>(
                                          spec.alphabet_size(),
                                          1.0 / spec.alphabet_size())
                                    : parse_probs(opt.probs_csv);
    return make_ideal_mu_backend(std::move(probs));
  }
  raise(Errc::InvalidFormat, "unknown backend: " + opt.backend);
}

void cmd_dimension(const Options& opt, std::ostream& out) {
  const TreeSpec spec = load_tree(opt);
  const Word x = parse_word(load_input(opt.input), spec.alphabet_size());
  const ComplexityFunction backend = build_backend(opt, spec);

  std::vector<std::size_t> indices = opt.indices_csv.empty()
                                         ? std::vector<std::size_t>()
                                         : parse_indices(opt.indices_csv);
  if (indices.empty()) {
    indices.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) indices[i] = i + 1;
  }

  DimensionTrace trace;
  if (opt.billingsley) {
    std::vector<double> probs = opt.probs_csv.empty()
                                    ? std::vector<double>(
                                          spec.alphabet_size(),
                                          1.0 / spec.alphabet_size())
                                    : parse_probs(opt.probs_csv);
    trace = dimension_trace_mu(backend, x, probs, indices);
  } else {
    trace = dimension_trace(backend, x, spec.alphabet_size(), indices);
  }

  if (opt.format == "json" || opt.json_output) {
    json j{{"schema", kSchemaTag},
           {"backend", backend.name},
           {"indices", trace.indices},
           {"ratios", trace.ratios},
           {"running_min", trace.running_min},
           {"running_max", trace.running_max},
           {"liminf_proxy", trace.liminf_proxy},
           {"limsup_proxy", trace.limsup_proxy},
           {"tail_window_begin", trace.tail_window_begin}};
    out << j.dump(2) << "\n";
    return;
  }
  out << "n,ratio\n";
  for (std::size_t i = 0; i < trace.indices.size(); ++i) {
    out << trace.indices[i] << "," << trace.ratios[i] << "\n";
  }
}

void cmd_verify(const Options& opt, std::ostream& out, int& exit_code) {
  const TreeSpec spec = load_tree(opt);

  struct Check {
    std::string name;
    std::string description;
    bool pass = false;
  };
  std::vector<Check> checks;

  checks.push_back({"thm4", "charpoly coefficients equal negated depth profile",
                    verify_thm4(spec)});
  checks.push_back({"thm5", "|log2(rho) - alpha| within 1e-9",
                    verify_thm5(spec, 1e-9)});
  checks.push_back({"thm6",
                    "Parry matches pushforward to depth " +
                        std::to_string(opt.depth),
                    verify_thm6(spec, opt.depth, 1e-9)});

  // Transfer identity plus sandwich bounds over random complexity tables on
  // random members of the expansion.
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<Symbol> symbol_dist(
      0, static_cast<Symbol>(spec.terminal_count() - 1));
  std::uniform_real_distribution<double> value_dist(0.0, 100.0);
  bool transfer_ok = true;
  for (std::size_t trial = 0; trial < opt.tables && transfer_ok; ++trial) {
    Word y(opt.walk_length);
    for (Symbol& s : y) s = symbol_dist(rng);
    const Word x = decode(spec, y);
    std::map<Word, double> table;
    for (std::size_t n = 1; n <= x.size(); ++n) {
      table[Word(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n))] =
          value_dist(rng);
    }
    const ComplexityFunction backend = make_table_backend(std::move(table));
    transfer_ok = transfer_identity_check(spec, backend, x, 1e-9) &&
                  sandwich_check(spec, backend, x).ok;
  }
  checks.push_back({"transfer",
                    "finite-scale identity + sandwich bounds, " +
                        std::to_string(opt.tables) + " random tables",
                    transfer_ok});

  bool all_pass = true;
  for (const Check& check : checks) all_pass = all_pass && check.pass;

  if (opt.json_output) {
    json rows = json::array();
    for (const Check& check : checks) {
      rows.push_back(json{{"name", check.name},
                          {"description", check.description},
                          {"pass", check.pass}});
    }
    json j{{"schema", kSchemaTag}, {"checks", rows}, {"all_pass", all_pass}};
    out << j.dump(2) << "\n";
  } else {
    for (const Check& check : checks) {
      out << std::left << std::setw(10) << check.name << std::setw(60)
          << check.description << (check.pass ? "PASS" : "FAIL") << "\n";
    }
    out << std::left << std::setw(70) << "overall"
        << (all_pass ? "PASS" : "FAIL") << "\n";
  }
  exit_code = all_pass ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  Options opt;
  int exit_code = 0;
  out << std::setprecision(kPrecision);

  CLI::App app{"fractal tree coding, spectra and measures"};
  app.require_subcommand(1);
  app.add_flag("--json", opt.json_output, "machine-readable JSON output");
  app.add_option("--tol", opt.tol, "solver tolerance")
      ->envname("FRACTREE_TOL")
      ->check(CLI::PositiveNumber);

  const auto add_tree = [&](CLI::App* sub) {
    sub->add_option("--tree", opt.tree_path, "tree spec JSON file")->required();
  };

  auto* validate = app.add_subcommand("validate", "validate a tree spec");
  add_tree(validate);
  validate->callback([&] { cmd_validate(opt, out); });

  auto* capacity =
      app.add_subcommand("capacity", "channel capacity of the length function");
  add_tree(capacity);
  capacity->callback([&] { cmd_capacity(opt, out); });

  auto* sdim = app.add_subcommand("sdim", "similarity dimension");
  add_tree(sdim);
  sdim->callback([&] { cmd_sdim(opt, out); });

  auto* measure = app.add_subcommand("measure", "measure derived from the tree");
  add_tree(measure);
  measure->add_option("--input", opt.input, "code word to measure");
  measure->callback([&] { cmd_measure(opt, out); });

  auto* encode_cmd = app.add_subcommand("encode", "parse a member of T*");
  add_tree(encode_cmd);
  encode_cmd->add_option("--input", opt.input, "word over the tree alphabet")
      ->required();
  encode_cmd->callback([&] { cmd_encode(opt, out); });

  auto* decode_cmd = app.add_subcommand("decode", "expand a code word");
  add_tree(decode_cmd);
  decode_cmd->add_option("--input", opt.input, "word over the code alphabet")
      ->required();
  decode_cmd->callback([&] { cmd_decode(opt, out); });

  auto* graph = app.add_subcommand("graph", "export the pointed graph");
  add_tree(graph);
  graph->add_option("--format", opt.format, "dot|json")
      ->default_val("dot")
      ->check(CLI::IsMember({"dot", "json"}));
  graph->callback([&] { cmd_graph(opt, out); });

  auto* tfg = app.add_subcommand("tree-from-graph",
                                 "recover the tree from a pointed graph");
  tfg->add_option("--graph", opt.graph_path, "graph JSON file")->required();
  tfg->callback([&] { cmd_tree_from_graph(opt, out, err); });

  auto* charpoly = app.add_subcommand("charpoly",
                                      "characteristic polynomial (exact)");
  add_tree(charpoly);
  charpoly->callback([&] { cmd_charpoly(opt, out); });

  auto* perron = app.add_subcommand("perron", "Perron eigenvalue");
  add_tree(perron);
  perron->callback([&] { cmd_perron(opt, out); });

  auto* parry = app.add_subcommand("parry", "Parry measure data");
  add_tree(parry);
  parry->callback([&] { cmd_parry(opt, out); });

  auto* entropy = app.add_subcommand("entropy", "finite-scale entropy estimates");
  add_tree(entropy);
  entropy->add_option("--length", opt.block_length, "block length n")
      ->default_val(20);
  entropy->add_option("--guard", opt.guard, "block length guard rail")
      ->default_val(kDefaultBlockGuard);
  entropy->callback([&] { cmd_entropy(opt, out); });

  auto* dimension = app.add_subcommand("dimension", "finite-scale dimension trace");
  add_tree(dimension);
  dimension->add_option("--input", opt.input, "word over the tree alphabet, or @file")->required();
  dimension->add_option("--backend", opt.backend, "table|lz78|ideal-mu")
      ->default_val("lz78")
      ->check(CLI::IsMember(builtin_backends()));
  dimension->add_option("--table", opt.table_path, "table backend JSON file");
  dimension->add_option("--probs", opt.probs_csv,
                        "comma-separated symbol probabilities");
  dimension->add_option("--indices", opt.indices_csv,
                        "comma-separated prefix lengths");
  dimension->add_option("--format", opt.format, "csv|json")
      ->default_val("csv")
      ->check(CLI::IsMember({"csv", "json"}));
  dimension->add_flag("--billingsley", opt.billingsley,
                      "normalize by -log2 mu instead of length");
  dimension->callback([&] { cmd_dimension(opt, out); });

  auto* verify = app.add_subcommand("verify", "run all cross-identity checks");
  add_tree(verify);
  verify->add_option("--depth", opt.depth, "coded depth for the measure check")
      ->default_val(5);
  verify->add_option("--tables", opt.tables, "random complexity tables")
      ->default_val(50);
  verify->add_option("--walk-length", opt.walk_length,
                     "code symbols per random walk")
      ->default_val(32);
  verify->add_option("--seed", opt.seed, "RNG seed")->default_val(1);
  verify->callback([&] { cmd_verify(opt, out, exit_code); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 1;
  }
  return exit_code;
}

}  // namespace fractree::cli
