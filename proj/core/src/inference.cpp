#include "rmc/inference.hpp"

#include "rmc/errors.hpp"
#include "rmc/io.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rmc {

namespace {

const wide_real& log2_wide() {
  static const wide_real value = log_wide(wide_real(2));
  return value;
}

/// log prod_{i<k} (a + i)
wide_real log_rising(double a, std::uint64_t k) {
  if (k == 0) return 0;
  const wide_real wa(a);
  return lgamma_wide(wa + wide_real(k)) - lgamma_wide(wa);
}

/// log prod_{i<k} (a + 2i) = k log 2 + log prod_{i<k} (a/2 + i)
wide_real log_rising_by_two(const wide_real& a, std::uint64_t k) {
  if (k == 0) return 0;
  const wide_real half = a / 2;
  return wide_real(k) * log2_wide() + lgamma_wide(half + wide_real(k)) - lgamma_wide(half);
}

wide_real lgamma_of(double x) { return lgamma_wide(wide_real(x)); }

}  // namespace

CountTable::CountTable(std::vector<std::string> symbols, std::vector<std::uint64_t> counts,
                       std::optional<std::size_t> start, std::optional<std::size_t> end)
    : symbols_(std::move(symbols)), counts_(std::move(counts)), start_(start), end_(end) {
  const std::size_t n = symbols_.size();
  if (n == 0) throw InputError("count table has no symbols");
  if (counts_.size() != n * n) throw InputError("count table is not square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (symbols_[i] == symbols_[j]) throw InputError("duplicate symbol " + symbols_[i]);
  if ((start_ && *start_ >= n) || (end_ && *end_ >= n)) throw InputError("start or end symbol out of range");

  std::optional<std::size_t> surplus_out;
  std::optional<std::size_t> surplus_in;
  for (std::size_t v = 0; v < n; ++v) {
    const auto diff = static_cast<std::int64_t>(row_sum(v)) - static_cast<std::int64_t>(column_sum(v));
    if (diff == 0) continue;
    if (diff == 1 && !surplus_out) surplus_out = v;
    else if (diff == -1 && !surplus_in) surplus_in = v;
    else throw InputError("count table is not the bigram table of a single sequence (symbol " + symbols_[v] + ")");
  }
  if (surplus_out.has_value() != surplus_in.has_value())
    throw InputError("count table is not the bigram table of a single sequence");
  if (surplus_out) {
    if (start_ && *start_ != *surplus_out)
      throw InputError("count table implies start " + symbols_[*surplus_out] + ", not " + symbols_[*start_]);
    if (end_ && *end_ != *surplus_in)
      throw InputError("count table implies end " + symbols_[*surplus_in] + ", not " + symbols_[*end_]);
    start_ = surplus_out;
    end_ = surplus_in;
  } else if (start_ && end_ && *start_ != *end_) {
    throw InputError("balanced count table requires start == end");
  } else if (start_.has_value() != end_.has_value()) {
    // A balanced table is a closed sequence: one endpoint pins the other.
    if (start_) end_ = start_;
    else start_ = end_;
  }
}

std::optional<std::size_t> CountTable::find_symbol(std::string_view s) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i] == s) return i;
  return std::nullopt;
}

std::uint64_t CountTable::row_sum(std::size_t i) const {
  std::uint64_t s = 0;
  for (std::size_t j = 0; j < size(); ++j) s += (*this)(i, j);
  return s;
}

std::uint64_t CountTable::column_sum(std::size_t j) const {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < size(); ++i) s += (*this)(i, j);
  return s;
}

std::uint64_t CountTable::transitions() const {
  std::uint64_t s = 0;
  for (std::uint64_t c : counts_) s += c;
  return s;
}

std::vector<std::uint64_t> CountTable::symbol_frequencies() const {
  if (!end_) throw InputError("symbol frequencies need the last symbol (--end)");
  std::vector<std::uint64_t> out(size());
  for (std::size_t v = 0; v < size(); ++v) out[v] = row_sum(v) + (v == *end_ ? 1 : 0);
  return out;
}

Graph count_table_graph(const CountTable& table) {
  return graphs::complete(table.size(), true, table.symbols());
}

TransitionCounts count_table_statistic(const Graph& g, const CountTable& table) {
  if (!table.endpoints_known()) throw InputError("the reversible model needs start and end symbols (--start/--end)");
  if (g.vertex_count() != table.size()) throw InputError("graph does not match the count table alphabet");
  TransitionCounts c;
  c.edge.assign(g.edge_count(), 0);
  c.departures.assign(g.vertex_count(), 0);
  for (std::size_t i = 0; i < table.size(); ++i) {
    const VertexId vi = g.vertex(table.symbols()[i]);
    c.departures[vi] = table.row_sum(i);
    for (std::size_t j = 0; j < table.size(); ++j) {
      const auto e = g.edge_between(vi, g.vertex(table.symbols()[j]));
      if (!e) {
        if (table(i, j) != 0) throw InputError("observed transition is not an edge of the graph");
        continue;
      }
      c.edge[*e] += i == j ? 2 * table(i, j) : table(i, j);
    }
  }
  c.start = g.vertex(table.symbols()[*table.start()]);
  c.end = g.vertex(table.symbols()[*table.end()]);
  c.steps = table.transitions();
  return c;
}

std::string model_name(const ModelSpec& m) {
  switch (m.index()) {
    case 0: return "iid-uniform";
    case 1: return "iid";
    case 2: return "rev";
    default: return "markov";
  }
}

ModelSpec parse_model(std::string_view name) {
  if (name == "iid-uniform") return model::IidUniform{};
  if (name == "iid") return model::IidDirichlet{};
  if (name == "rev") return model::Reversible{};
  if (name == "markov") return model::FullMarkov{};
  throw InputError("unknown model '" + std::string(name) + "' (expected iid-uniform, iid, rev or markov)");
}

PriorParams posterior_update(const Graph& g, const PriorParams& params, const TransitionCounts& counts) {
  if (counts.start != params.start())
    throw InputError("observation starts at " + g.label(counts.start) + " but the prior starts at " +
                     g.label(params.start()));
  if (counts.edge.size() != g.edge_count()) throw InputError("counts do not match graph edges");
  std::vector<double> weights(params.weights().begin(), params.weights().end());
  for (EdgeId e = 0; e < weights.size(); ++e) weights[e] += static_cast<double>(counts.edge[e]);
  return PriorParams(g, counts.end, std::move(weights));
}

LogValue log_marginal_reversible(const Graph& g, const PriorParams& params, const TransitionCounts& counts,
                                 bool closed_avoiding_start) {
  if (counts.edge.size() != g.edge_count() || counts.departures.size() != g.vertex_count())
    throw InputError("counts do not match the graph");
  if (params.size() != g.edge_count()) throw InputError("prior does not match graph edges");
  if (closed_avoiding_start) {
    if (counts.start != counts.end || counts.start == params.start() || counts.departures[params.start()] != 0)
      throw InputError("the closed-path formula needs a closed path that avoids the prior start");
  } else if (counts.start != params.start()) {
    throw InputError("path starts at " + g.label(counts.start) + " but the prior starts at " +
                     g.label(params.start()));
  }

  wide_real out = 0;
  for (const Edge& e : g.edges()) {
    const std::uint64_t k = counts.edge[e.id];
    if (e.is_loop()) {
      if (k % 2 != 0) throw InputError("loop count must be even: " + g.edge_label(e.id));
      out += log_rising_by_two(wide_real(params[e.id]), k / 2);
    } else {
      out += log_rising(params[e.id], k);
    }
  }
  const std::vector<double> av = params.vertex_weights(g);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const bool at_start = v == params.start() && !closed_avoiding_start;
    const wide_real base = at_start ? wide_real(av[v]) : wide_real(av[v]) + 1;
    out -= log_rising_by_two(base, counts.departures[v]);
  }
  return LogValue::from_log(out);
}

double moment_back_forth(const Graph& g, const PriorParams& params, EdgeId e0) {
  const Edge& e = g.edge(e0);
  const std::vector<double> av = params.vertex_weights(g);
  const double a = params[e0];
  const VertexId v0 = params.start();
  if (e.is_loop()) return e.u == v0 ? a / av[e.u] : a / (av[e.u] + 1.0);
  if (e.u == v0) return a * (a + 1.0) / (av[e.u] * (av[e.v] + 1.0));
  if (e.v == v0) return a * (a + 1.0) / (av[e.v] * (av[e.u] + 1.0));
  return a * (a + 1.0) / ((av[e.u] + 1.0) * (av[e.v] + 1.0));
}

namespace {

std::vector<double> ones_or(const std::vector<double>& alpha, std::size_t n, const char* what) {
  if (alpha.empty()) return std::vector<double>(n, 1.0);
  if (alpha.size() != n) throw InputError(std::string(what) + " has the wrong number of hyperparameters");
  for (double a : alpha)
    if (!(a > 0.0) || !std::isfinite(a)) throw InputError(std::string(what) + " hyperparameters must be positive");
  return alpha;
}

/// log of Gamma(sum alpha) / Gamma(n + sum alpha) * prod Gamma(n_i + alpha_i) / Gamma(alpha_i)
wide_real log_dirichlet_multinomial(std::span<const std::uint64_t> counts, std::span<const double> alpha) {
  wide_real alpha_sum = 0;
  wide_real out = 0;
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    alpha_sum += alpha[i];
    total += counts[i];
    if (counts[i] != 0) out += lgamma_wide(wide_real(alpha[i]) + wide_real(counts[i])) - lgamma_of(alpha[i]);
  }
  return out + lgamma_wide(alpha_sum) - lgamma_wide(alpha_sum + wide_real(total));
}

}  // namespace

LogValue log_marginal_competitor(const ModelSpec& m, const CountTable& table) {
  const std::size_t n = table.size();
  if (std::holds_alternative<model::IidUniform>(m)) {
    std::uint64_t length = 0;
    for (std::uint64_t f : table.symbol_frequencies()) length += f;
    return LogValue::from_log(-wide_real(length) * log_wide(wide_real(n)));
  }
  if (const auto* iid = std::get_if<model::IidDirichlet>(&m)) {
    const auto alpha = ones_or(iid->alpha, n, "iid model");
    const auto freq = table.symbol_frequencies();
    return LogValue::from_log(log_dirichlet_multinomial(freq, alpha));
  }
  if (const auto* markov = std::get_if<model::FullMarkov>(&m)) {
    const auto alpha = ones_or(markov->alpha, n * n, "full Markov model");
    wide_real out = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::span<const std::uint64_t> row(table.counts().data() + i * n, n);
      out += log_dirichlet_multinomial(row, std::span<const double>(alpha.data() + i * n, n));
    }
    return LogValue::from_log(out);
  }
  throw InputError("the reversible model is not a competitor model; use log_marginal");
}

LogValue log_marginal(const ModelSpec& m, const CountTable& table) {
  const auto* rev = std::get_if<model::Reversible>(&m);
  if (!rev) return log_marginal_competitor(m, table);
  const Graph g = count_table_graph(table);
  const TransitionCounts counts = count_table_statistic(g, table);
  const PriorParams params = rev->weights.empty() ? PriorParams::uniform(g, counts.start, rev->uniform_weight)
                                                  : PriorParams(g, counts.start, rev->weights);
  return log_marginal_reversible(g, params, counts);
}

BayesFactor bayes_factor(const LogValue& h0, const LogValue& h1) {
  if (h0.is_zero() || h1.is_zero()) throw DomainError("Bayes factor of a zero marginal likelihood");
  BayesFactor out;
  out.log_value = log_ratio(h0, h1);
  out.log10 = (out.log_value / ln10_wide()).convert_to<double>();
  out.text = format_log10(LogValue::from_log(out.log_value), 6);
  return out;
}

std::string CountRatio::text() const { return std::to_string(numerator) + "/" + std::to_string(denominator); }

bool CountRatio::same_value(const CountRatio& other) const noexcept {
  const auto reduced = [](const CountRatio& r) {
    const std::uint64_t g = std::gcd(r.numerator, r.denominator);
    return g == 0 ? std::pair<std::uint64_t, std::uint64_t>{0, 0}
                  : std::pair<std::uint64_t, std::uint64_t>{r.numerator / g, r.denominator / g};
  };
  return reduced(*this) == reduced(other);
}

DiagnosticsReport reversibility_diagnostics(const CountTable& table) {
  const std::size_t n = table.size();
  DiagnosticsReport out;
  const double total = static_cast<double>(table.transitions());
  out.stationary.assign(n, 0.0);
  std::vector<double> rows(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (total > 0) out.stationary[v] = static_cast<double>(table.column_sum(v)) / total;
    rows[v] = static_cast<double>(table.row_sum(v));
  }
  const auto flow = [&](std::size_t v, std::size_t w) {
    return rows[v] > 0 ? out.stationary[v] * static_cast<double>(table(v, w)) / rows[v] : 0.0;
  };
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w = v + 1; w < n; ++w) {
      PairDiagnostic d;
      d.v = v;
      d.w = w;
      d.ratio = {table(v, w), table(w, v)};
      d.difference = static_cast<std::int64_t>(table(v, w)) - static_cast<std::int64_t>(table(w, v));
      d.flow_forward = flow(v, w);
      d.flow_backward = flow(w, v);
      out.pairs.push_back(d);
    }
  }
  return out;
}

BayesTestReport bayes_test(const std::vector<ModelSpec>& models, const CountTable& table) {
  BayesTestReport report;
  for (const ModelSpec& m : models) {
    report.models.push_back(model_name(m));
    report.marginals.push_back(log_marginal(m, table));
    report.entries.emplace_back("logml." + report.models.back(), format_log10(report.marginals.back(), 16));
  }
  for (std::size_t i = 0; i < models.size(); ++i)
    for (std::size_t j = i + 1; j < models.size(); ++j)
      report.entries.emplace_back("bf." + report.models[i] + "_vs_" + report.models[j],
                                  bayes_factor(report.marginals[i], report.marginals[j]).text);
  const DiagnosticsReport diag = reversibility_diagnostics(table);
  for (const PairDiagnostic& d : diag.pairs) {
    const std::string key = "diag.ratio." + table.symbols()[d.v] + table.symbols()[d.w];
    report.entries.emplace_back(key, d.ratio.text());
  }
  return report;
}

}  // namespace rmc
