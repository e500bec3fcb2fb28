#include "rmc/path_stats.hpp"

#include "rmc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rmc {

Path::Path(std::vector<VertexId> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw InputError("a path has at least one vertex");
}

void check_admissible(const Graph& g, const Path& p) {
  auto vs = p.vertices();
  for (VertexId v : vs)
    if (v >= g.vertex_count()) throw InputError("path visits unknown vertex index " + std::to_string(v));
  for (std::size_t i = 1; i < vs.size(); ++i) {
    if (!g.edge_between(vs[i - 1], vs[i]))
      throw PathError(i, "inadmissible step " + std::to_string(i) + ": no edge {" + g.label(vs[i - 1]) + "," +
                             g.label(vs[i]) + "}");
  }
}

TransitionCounts transition_counts(const Graph& g, const Path& p) {
  check_admissible(g, p);
  TransitionCounts c;
  c.edge.assign(g.edge_count(), 0);
  c.departures.assign(g.vertex_count(), 0);
  c.start = p.start();
  c.end = p.end();
  c.steps = p.steps();
  auto vs = p.vertices();
  for (std::size_t i = 1; i < vs.size(); ++i) {
    const EdgeId e = *g.edge_between(vs[i - 1], vs[i]);
    c.edge[e] += g.is_loop(e) ? 2 : 1;
    ++c.departures[vs[i - 1]];
  }
  return c;
}

ReconstructedDepartures reconstruct_departures(const Graph& g, std::span<const std::uint64_t> edge_counts,
                                               VertexId start) {
  if (edge_counts.size() != g.edge_count()) throw InputError("edge count vector has wrong length");
  std::vector<std::uint64_t> incidence(g.vertex_count(), 0);
  std::vector<std::uint64_t> non_loop_degree(g.vertex_count(), 0);
  for (const Edge& e : g.edges()) {
    const std::uint64_t k = edge_counts[e.id];
    if (e.is_loop()) {
      if (k % 2 != 0) throw InputError("loop count must be even: " + g.edge_label(e.id));
      incidence[e.u] += k;
    } else {
      incidence[e.u] += k;
      incidence[e.v] += k;
      non_loop_degree[e.u] += k;
      non_loop_degree[e.v] += k;
    }
  }

  ReconstructedDepartures out;
  out.end = start;
  std::vector<VertexId> odd;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (non_loop_degree[v] % 2 == 1) odd.push_back(v);
  if (odd.size() == 2 && (odd[0] == start || odd[1] == start)) {
    out.end = odd[0] == start ? odd[1] : odd[0];
  } else if (!odd.empty()) {
    throw InputError("edge counts are not the statistic of a path from the given start");
  }

  out.departures.resize(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    std::uint64_t twice = incidence[v] + (v == start ? 1 : 0);
    if (v == out.end) --twice;
    out.departures[v] = twice / 2;
  }
  return out;
}

SimplexPoint::SimplexPoint(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw DomainError("simplex point has no coordinates");
  double sum = 0.0;
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) throw DomainError("simplex coordinates must be positive and finite");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kTolerance)
    throw DomainError("simplex coordinates sum to " + std::to_string(sum) + ", not 1");
}

SimplexPoint SimplexPoint::normalized(std::vector<double> weights) {
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(sum > 0.0)) throw DomainError("cannot normalize weights with non-positive sum");
  for (double& w : weights) w /= sum;
  return SimplexPoint(std::move(weights));
}

std::vector<double> SimplexPoint::vertex_weights(const Graph& g) const {
  if (weights_.size() != g.edge_count()) throw InputError("simplex point does not match graph edges");
  std::vector<double> xv(g.vertex_count(), 0.0);
  for (const Edge& e : g.edges()) {
    xv[e.u] += weights_[e.id];
    if (!e.is_loop()) xv[e.v] += weights_[e.id];
  }
  return xv;
}

LogValue markov_path_log_prob(const Graph& g, const SimplexPoint& x, const TransitionCounts& counts) {
  if (x.size() != g.edge_count()) throw InputError("simplex point does not match graph edges");
  const std::vector<double> xv = x.vertex_weights(g);
  wide_real log_prob = 0;
  for (const Edge& e : g.edges()) {
    const std::uint64_t k = counts.edge.at(e.id);
    if (k == 0) continue;
    const double power = e.is_loop() ? static_cast<double>(k / 2) : static_cast<double>(k);
    log_prob += power * log_wide(wide_real(x[e.id]));
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const std::uint64_t k = counts.departures.at(v);
    if (k != 0) log_prob -= static_cast<double>(k) * log_wide(wide_real(xv[v]));
  }
  return LogValue::from_log(log_prob);
}

LogValue markov_path_log_prob(const Graph& g, const SimplexPoint& x, const Path& p) {
  return markov_path_log_prob(g, x, transition_counts(g, p));
}

namespace {

void extend_paths(const Graph& g, std::vector<VertexId>& prefix, std::size_t steps, std::vector<std::uint64_t>* budget,
                  std::vector<Path>& out) {
  if (prefix.size() == steps + 1) {
    out.emplace_back(prefix);
    return;
  }
  const VertexId here = prefix.back();
  // Neighbours in vertex order so that output is lexicographic.
  std::vector<std::pair<VertexId, EdgeId>> next;
  for (EdgeId id : g.incident(here)) next.emplace_back(g.edge(id).other(here), id);
  std::sort(next.begin(), next.end());
  for (auto [w, id] : next) {
    const std::uint64_t use = g.is_loop(id) ? 2 : 1;
    if (budget) {
      if ((*budget)[id] < use) continue;
      (*budget)[id] -= use;
    }
    prefix.push_back(w);
    extend_paths(g, prefix, steps, budget, out);
    prefix.pop_back();
    if (budget) (*budget)[id] += use;
  }
}

}  // namespace

std::vector<Path> enumerate_equivalent_paths(const Graph& g, const Path& p, std::size_t max_steps) {
  if (p.steps() > max_steps)
    throw CapExceeded("path has " + std::to_string(p.steps()) + " steps; enumeration cap is " +
                      std::to_string(max_steps));
  TransitionCounts counts = transition_counts(g, p);
  std::vector<Path> out;
  std::vector<VertexId> prefix{p.start()};
  extend_paths(g, prefix, p.steps(), &counts.edge, out);
  return out;
}

std::vector<Path> enumerate_paths(const Graph& g, VertexId start, std::size_t steps) {
  if (start >= g.vertex_count()) throw InputError("unknown start vertex");
  std::vector<Path> out;
  std::vector<VertexId> prefix{start};
  extend_paths(g, prefix, steps, nullptr, out);
  return out;
}

Path expand_loops(const Graph& g, const LoopTransform& t, const Path& p) {
  check_admissible(g, p);
  auto vs = p.vertices();
  std::vector<VertexId> expanded{t.vertex_map[vs[0]]};
  for (std::size_t i = 1; i < vs.size(); ++i) {
    const EdgeId e = *g.edge_between(vs[i - 1], vs[i]);
    if (g.is_loop(e)) expanded.push_back(*t.pendant_vertex[e]);
    expanded.push_back(t.vertex_map[vs[i]]);
  }
  return Path(std::move(expanded));
}

}  // namespace rmc
