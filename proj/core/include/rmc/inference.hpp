#pragma once

#include "rmc/graph.hpp"
#include "rmc/log_value.hpp"
#include "rmc/path_stats.hpp"
#include "rmc/prior_density.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace rmc {

/// Directed bigram counts N_ij over a symbol alphabet, with the first and
/// last symbol of the underlying sequence when known.
class CountTable {
 public:
  /// Throws InputError unless counts is |symbols|^2 and the table is the
  /// bigram table of a single sequence (row and column sums agree except
  /// for one surplus row at the start and one at the end). Explicit start
  /// and end must agree with the imbalance.
  CountTable(std::vector<std::string> symbols, std::vector<std::uint64_t> counts,
             std::optional<std::size_t> start = std::nullopt, std::optional<std::size_t> end = std::nullopt);

  std::size_t size() const noexcept { return symbols_.size(); }
  const std::vector<std::string>& symbols() const noexcept { return symbols_; }
  std::optional<std::size_t> find_symbol(std::string_view s) const;
  std::uint64_t operator()(std::size_t i, std::size_t j) const { return counts_.at(i * size() + j); }
  const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }

  std::uint64_t row_sum(std::size_t i) const;
  std::uint64_t column_sum(std::size_t j) const;
  /// Number of transitions, i.e. sequence length - 1.
  std::uint64_t transitions() const;

  /// Known when given explicitly or when row/column sums differ; a table
  /// of a closed sequence leaves them unknown.
  std::optional<std::size_t> start() const noexcept { return start_; }
  std::optional<std::size_t> end() const noexcept { return end_; }
  bool endpoints_known() const noexcept { return start_.has_value() && end_.has_value(); }

  /// n_v = row sum + [v = end]. Requires a known end.
  std::vector<std::uint64_t> symbol_frequencies() const;

  friend bool operator==(const CountTable&, const CountTable&) = default;

 private:
  std::vector<std::string> symbols_;
  std::vector<std::uint64_t> counts_;
  std::optional<std::size_t> start_;
  std::optional<std::size_t> end_;
};

/// Complete graph with loops on the table's symbols (edge order of
/// graphs::complete) and the undirected statistic k_{ij} = N_ij + N_ji,
/// k_{ii} = 2 N_ii. Requires known endpoints.
Graph count_table_graph(const CountTable& table);
TransitionCounts count_table_statistic(const Graph& g, const CountTable& table);

namespace model {

struct IidUniform {};
/// Dirichlet(alpha) over symbols; empty alpha means all ones.
struct IidDirichlet {
  std::vector<double> alpha;
};
/// Conjugate reversible prior on the complete graph with loops. Empty
/// weights means every a_e = uniform_weight.
struct Reversible {
  double uniform_weight = 1.0;
  std::vector<double> weights;
};
/// Independent Dirichlet rows; alpha row-major |V| x |V|, empty means ones.
struct FullMarkov {
  std::vector<double> alpha;
};

}  // namespace model

using ModelSpec = std::variant<model::IidUniform, model::IidDirichlet, model::Reversible, model::FullMarkov>;

/// "iid-uniform", "iid", "rev" or "markov".
std::string model_name(const ModelSpec& m);
/// Default-hyperparameter model for one of the names above.
ModelSpec parse_model(std::string_view name);

/// a_e + k_e with the walk restarted at counts.end.
PriorParams posterior_update(const Graph& g, const PriorParams& params, const TransitionCounts& counts);

/// Probability of any path with statistic `counts` under the reversible
/// mixture, computed as ratios of gamma functions. With
/// closed_avoiding_start the path must start and end at the same vertex
/// other than params.start(), and every vertex uses the (a_v + 1 + 2i)
/// denominator.
LogValue log_marginal_reversible(const Graph& g, const PriorParams& params, const TransitionCounts& counts,
                                 bool closed_avoiding_start = false);

/// Prior expectation of x_e^2 / (x_v x_v') for a non-loop e = {v, v'}, or
/// of x_e / x_v for a loop at v.
double moment_back_forth(const Graph& g, const PriorParams& params, EdgeId e0);

/// iid-uniform, iid-dirichlet or full-markov marginal likelihood of the
/// sequence behind the table. Throws InputError for the reversible model.
LogValue log_marginal_competitor(const ModelSpec& m, const CountTable& table);
/// Any model; the reversible one runs on count_table_graph(table).
LogValue log_marginal(const ModelSpec& m, const CountTable& table);

struct BayesFactor {
  wide_real log_value;  ///< natural log of P(data|H0) / P(data|H1)
  double log10 = 0.0;
  std::string text;     ///< 6 significant digits, e.g. "5.2628e-39"
};

BayesFactor bayes_factor(const LogValue& h0, const LogValue& h1);

/// Unreduced ratio N_vv' / N_v'v.
struct CountRatio {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 0;

  bool defined() const noexcept { return denominator != 0; }
  std::string text() const;
  /// Equality as rationals (compared in lowest terms).
  bool same_value(const CountRatio& other) const noexcept;
};

struct PairDiagnostic {
  std::size_t v = 0;
  std::size_t w = 0;
  CountRatio ratio;
  std::int64_t difference = 0;  ///< N_vw - N_wv
  double flow_forward = 0.0;    ///< nu(v) k(v, w)
  double flow_backward = 0.0;   ///< nu(w) k(w, v)
};

struct DiagnosticsReport {
  std::vector<double> stationary;     ///< visit frequencies of X_1..X_n
  std::vector<PairDiagnostic> pairs;  ///< v < w in symbol order
};

DiagnosticsReport reversibility_diagnostics(const CountTable& table);

/// Ordered key/value lines: logml.<model>, bf.<h0>_vs_<h1> for every pair
/// in the order given, diag.ratio.<v><w>.
struct BayesTestReport {
  std::vector<std::string> models;
  std::vector<LogValue> marginals;
  std::vector<std::pair<std::string, std::string>> entries;
};

BayesTestReport bayes_test(const std::vector<ModelSpec>& models, const CountTable& table);

}  // namespace rmc
