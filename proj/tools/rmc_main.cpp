#include "rmc/errw.hpp"
#include "rmc/errors.hpp"
#include "rmc/inference.hpp"
#include "rmc/io.hpp"
#include "rmc/prior_density.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace {

using namespace rmc;

constexpr std::uint64_t kDefaultSeed = 1;

enum class InputKind { kAuto, kSequence, kTable };

struct Options {
  std::string input;
  std::string alphabet;
  std::string start;
  std::string end;
  std::string models = "iid-uniform,iid,rev,markov";
  std::string prior = "uniform:1";
  std::string format = "kv";
  InputKind kind = InputKind::kAuto;
  std::string graph;
  std::string weights;
  std::string at;
  std::string out;
  std::uint64_t steps = 1000;
  std::size_t walkers = 100;
  std::optional<std::uint64_t> seed;
  bool stationary = false;
};

/// Key/value report that renders either as key=value lines or as an
/// aligned two-column table.
class Report {
 public:
  void add(std::string key, std::string value) { rows_.emplace_back(std::move(key), std::move(value)); }

  void print(std::ostream& os, const std::string& format) const {
    std::size_t width = 0;
    for (const auto& [k, v] : rows_) width = std::max(width, k.size());
    for (const auto& [k, v] : rows_) {
      if (format == "table") os << k << std::string(width - k.size() + 2, ' ') << v << '\n';
      else os << k << '=' << v << '\n';
    }
  }

 private:
  std::vector<std::pair<std::string, std::string>> rows_;
};

std::uint64_t resolve_seed(const Options& o) {
  if (o.seed) return *o.seed;
  if (const char* env = std::getenv("RMC_SEED")) {
    try {
      std::size_t used = 0;
      const auto value = std::stoull(env, &used);
      if (used == std::string(env).size()) return value;
    } catch (const std::exception&) {
    }
    throw InputError(std::string("RMC_SEED is not an unsigned integer: ") + env);
  }
  return kDefaultSeed;
}

void add_header(Report& r, const Options& o, const std::string& command) {
  r.add("version", RMC_VERSION);
  r.add("command", command);
  r.add("seed", std::to_string(resolve_seed(o)));
}

void add_digest(Report& r, const std::string& key, const std::string& path, const std::string& content) {
  r.add(key, path);
  r.add(key + ".fnv1a64", hex64(fnv1a64(content)));
}

std::optional<std::string> optional_arg(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return s;
}

struct LoadedData {
  std::string content;
  CountTable table;
  bool from_sequence;
  std::uint64_t length;
};

LoadedData load_data(const Options& o) {
  std::string content = read_text_file(o.input);
  const auto as_sequence = [&]() {
    const auto alphabet = o.alphabet.empty() ? std::nullopt : std::optional<std::string_view>(o.alphabet);
    const SequenceDocument doc = parse_sequence(content, alphabet);
    if (!o.start.empty() && o.start != std::string(1, doc.symbols.front()))
      throw InputError("--start " + o.start + " disagrees with the sequence");
    if (!o.end.empty() && !doc.symbols.empty() && o.end != std::string(1, doc.symbols.back()))
      throw InputError("--end " + o.end + " disagrees with the sequence");
    SequenceCounts counts = sequence_to_counts(doc);
    return LoadedData{content, std::move(counts.table), true, doc.symbols.size()};
  };
  const auto as_table = [&]() {
    CountTable table = parse_count_table(content, optional_arg(o.start), optional_arg(o.end));
    return LoadedData{content, table, false, table.transitions() + 1};
  };
  switch (o.kind) {
    case InputKind::kSequence: return as_sequence();
    case InputKind::kTable: return as_table();
    case InputKind::kAuto: break;
  }
  try {
    return as_table();
  } catch (const InputError&) {
    return as_sequence();
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<double> load_weights(const Graph& g, const std::string& spec) {
  if (const auto c = parse_uniform_weight(spec)) return std::vector<double>(g.edge_count(), *c);
  return parse_weight_map(g, read_text_file(spec));
}

std::string fixed(double v, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

int run_counts(const Options& o) {
  const LoadedData data = load_data(o);
  Report r;
  add_header(r, o, "counts");
  add_digest(r, "input", o.input, data.content);
  const CountTable& t = data.table;
  r.add("length", std::to_string(data.length));
  if (t.start()) r.add("start", t.symbols()[*t.start()]);
  if (t.end()) r.add("end", t.symbols()[*t.end()]);
  if (t.end()) {
    const auto freq = t.symbol_frequencies();
    for (std::size_t v = 0; v < t.size(); ++v) r.add("n." + t.symbols()[v], std::to_string(freq[v]));
  }
  for (std::size_t v = 0; v < t.size(); ++v) r.add("k." + t.symbols()[v], std::to_string(t.row_sum(v)));
  r.print(std::cout, o.format);
  std::cout << "\n# directed counts N_ij\n" << format_count_table(t);
  std::cout << "\n# undirected counts k_ij\n" << format_undirected_counts(t);
  return 0;
}

int run_test(const Options& o) {
  const LoadedData data = load_data(o);
  std::vector<ModelSpec> models;
  for (const auto& name : split_list(o.models)) {
    ModelSpec m = parse_model(name);
    if (auto* rev = std::get_if<model::Reversible>(&m)) {
      const Graph g = count_table_graph(data.table);
      if (const auto c = parse_uniform_weight(o.prior)) rev->uniform_weight = *c;
      else rev->weights = load_weights(g, o.prior);
    }
    models.push_back(std::move(m));
  }
  if (models.empty()) throw InputError("--models is empty");
  Report r;
  add_header(r, o, "test");
  add_digest(r, "input", o.input, data.content);
  r.add("prior.rev", o.prior);
  const BayesTestReport report = bayes_test(models, data.table);
  for (const auto& [k, v] : report.entries) r.add(k, v);
  r.print(std::cout, o.format);
  return 0;
}

int run_posterior(const Options& o) {
  const LoadedData data = load_data(o);
  const Graph g = count_table_graph(data.table);
  const TransitionCounts counts = count_table_statistic(g, data.table);
  const PriorParams prior(g, counts.start, load_weights(g, o.prior));
  const PriorParams post = posterior_update(g, prior, counts);
  Report r;
  add_header(r, o, "posterior");
  add_digest(r, "input", o.input, data.content);
  r.add("prior", o.prior);
  r.add("posterior.start", g.label(post.start()));
  for (EdgeId e = 0; e < g.edge_count(); ++e) r.add("posterior.a." + g.edge_label(e), fixed(post[e], 17));
  r.add("logml.rev", format_log10(log_marginal_reversible(g, prior, counts), 16));
  r.print(std::cout, o.format);
  return 0;
}

GraphSpec load_graph(const Options& o, std::string& content) {
  content = read_text_file(o.graph);
  GraphSpec spec = parse_graph_spec(content);
  if (!o.start.empty()) spec.start = spec.graph.vertex(o.start);
  if (!o.weights.empty()) spec.weights = load_weights(spec.graph, o.weights);
  if (!spec.start) throw InputError("no start vertex (--start or \"start\" in the graph spec)");
  if (!spec.weights) spec.weights = std::vector<double>(spec.graph.edge_count(), 1.0);
  return spec;
}

int run_simulate(const Options& o) {
  std::string graph_text;
  const GraphSpec spec = load_graph(o, graph_text);
  const Graph& g = spec.graph;
  const PriorParams params(g, *spec.start, *spec.weights);
  const std::uint64_t seed = resolve_seed(o);
  const EdgeFrequencySamples samples =
      posterior_edge_frequency_samples(g, params, o.steps, o.walkers, RandomSource(seed));

  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out);
    if (!file) throw InputError("cannot write " + o.out);
  }
  std::ostream& os = o.out.empty() ? std::cout : file;

  Report r;
  add_header(r, o, "simulate");
  add_digest(r, "graph", o.graph, graph_text);
  r.add("start", g.label(params.start()));
  r.add("steps", std::to_string(o.steps));
  r.add("walkers", std::to_string(o.walkers));
  std::ostringstream header;
  r.print(header, "kv");
  std::string line;
  std::istringstream lines(header.str());
  while (std::getline(lines, line)) os << "# " << line << '\n';

  if (o.stationary) {
    const StationaryEstimate nu = estimate_stationary(g, samples);
    for (VertexId v = 0; v < g.vertex_count(); ++v) os << (v ? "\t" : "") << "nu." << g.label(v);
    os << '\n';
    for (std::size_t w = 0; w < samples.walkers; ++w) {
      for (VertexId v = 0; v < g.vertex_count(); ++v) os << (v ? "\t" : "") << fixed(nu.walker_estimate(w, v));
      os << '\n';
    }
    return 0;
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) os << (e ? "\t" : "") << g.edge_label(e);
  os << '\n';
  for (std::size_t w = 0; w < samples.walkers; ++w) {
    for (EdgeId e = 0; e < g.edge_count(); ++e) os << (e ? "\t" : "") << fixed(samples.frequency(w, e));
    os << '\n';
  }
  return 0;
}

int run_density(const Options& o) {
  std::string graph_text;
  const GraphSpec spec = load_graph(o, graph_text);
  const Graph& g = spec.graph;
  const std::string point_text = read_text_file(o.at);
  const SimplexPoint x = parse_simplex_point(g, point_text);
  const PriorDensity phi(g, PriorParams(g, *spec.start, *spec.weights));
  const LogValue value = phi.log_density_exact(x);
  Report r;
  add_header(r, o, "density");
  add_digest(r, "graph", o.graph, graph_text);
  add_digest(r, "point", o.at, point_text);
  r.add("start", g.label(*spec.start));
  r.add("log_density", fixed(value.log_double(), 17));
  r.add("density", format_log10(value, 16));
  r.add("log_partition", fixed(phi.partition().log_double(), 17));
  r.print(std::cout, o.format);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian analysis of reversible Markov chains"};
  app.set_version_flag("--version", std::string(RMC_VERSION));
  app.require_subcommand(1);
  Options o;

  const std::map<std::string, InputKind> kinds{
      {"auto", InputKind::kAuto}, {"sequence", InputKind::kSequence}, {"table", InputKind::kTable}};
  const auto data_options = [&](CLI::App* cmd) {
    cmd->add_option("input", o.input, "Sequence file or count table")->required();
    cmd->add_option("--alphabet", o.alphabet, "Symbols of the alphabet (default: observed symbols)");
    cmd->add_option("--start", o.start, "First symbol (count tables of closed sequences)");
    cmd->add_option("--end", o.end, "Last symbol (count tables of closed sequences)");
    cmd->add_option("--input-kind", o.kind, "auto, sequence or table")
        ->transform(CLI::CheckedTransformer(kinds, CLI::ignore_case));
    cmd->add_option("--format", o.format, "kv or table")->check(CLI::IsMember({"kv", "table"}));
    cmd->add_option("--seed", o.seed, "Seed recorded in the report (default: $RMC_SEED or 1)");
  };

  auto* counts = app.add_subcommand("counts", "Directed and undirected transition count tables");
  data_options(counts);

  auto* test = app.add_subcommand("test", "Marginal likelihoods and Bayes factors");
  data_options(test);
  test->add_option("--models", o.models, "Comma-separated: iid-uniform, iid, rev, markov");
  test->add_option("--prior", o.prior, "Reversible prior: uniform:<c> or a JSON edge weight file");

  auto* posterior = app.add_subcommand("posterior", "Posterior parameters of the reversible model");
  data_options(posterior);
  posterior->add_option("--prior", o.prior, "uniform:<c> or a JSON edge weight file");

  const auto graph_options = [&](CLI::App* cmd) {
    cmd->add_option("--graph", o.graph, "JSON graph spec")->required();
    cmd->add_option("--weights", o.weights, "uniform:<c> or a JSON edge weight file");
    cmd->add_option("--start", o.start, "Start vertex label");
    cmd->add_option("--seed", o.seed, "Random seed (default: $RMC_SEED or 1)");
  };

  auto* simulate = app.add_subcommand("simulate", "Edge-reinforced random walk posterior samples");
  graph_options(simulate);
  simulate->add_option("--steps", o.steps, "Steps per walker")->check(CLI::PositiveNumber);
  simulate->add_option("--walkers", o.walkers, "Number of walkers")->check(CLI::PositiveNumber);
  simulate->add_option("--out", o.out, "Output file (default: stdout)");
  simulate->add_flag("--stationary", o.stationary, "Dump per-walker stationary estimates instead of k_e/n");

  auto* density = app.add_subcommand("density", "Log prior density at a point of the simplex");
  graph_options(density);
  density->add_option("--at", o.at, "JSON edge weight point")->required();
  density->add_option("--format", o.format, "kv or table")->check(CLI::IsMember({"kv", "table"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*counts) return run_counts(o);
    if (*test) return run_test(o);
    if (*posterior) return run_posterior(o);
    if (*simulate) return run_simulate(o);
    if (*density) return run_density(o);
  } catch (const DomainError& e) {
    std::cerr << "rmc: numerical domain error: " << e.what() << '\n';
    return 3;
  } catch (const InputError& e) {
    std::cerr << "rmc: input error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "rmc: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
