#include "rmc/errw.hpp"

#include "rmc/errors.hpp"

#include <algorithm>
#include <thread>

namespace rmc {

RandomSource::RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

RandomSource RandomSource::substream(std::uint64_t index) const {
  std::seed_seq seq{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), 0x5eedu};
  return RandomSource(seed_, seq);
}

ErrwState::ErrwState(const Graph& g, const PriorParams& params)
    : current(params.start()),
      weights(params.weights().begin(), params.weights().end()),
      vertex_totals(params.vertex_weights(g)) {}

void ErrwState::traverse(const Graph& g, EdgeId e) {
  const Edge& edge = g.edge(e);
  if (edge.is_loop()) {
    weights[e] += 2.0;
    vertex_totals[edge.u] += 2.0;
  } else {
    weights[e] += 1.0;
    vertex_totals[edge.u] += 1.0;
    vertex_totals[edge.v] += 1.0;
  }
  current = edge.other(current);
  ++step;
}

EdgeId errw_choose_edge(const Graph& g, const ErrwState& state, RandomSource& rng) {
  const auto incident = g.incident(state.current);
  double target = rng.uniform() * state.vertex_totals[state.current];
  for (EdgeId e : incident) {
    target -= state.weights[e];
    if (target < 0.0) return e;
  }
  // Rounding in the running total can leave target a hair above zero.
  return incident.back();
}

Path errw_sample_path(const Graph& g, const PriorParams& params, std::uint64_t steps, RandomSource& rng) {
  ErrwState state(g, params);
  std::vector<VertexId> vertices{state.current};
  vertices.reserve(steps + 1);
  for (std::uint64_t i = 0; i < steps; ++i) {
    state.traverse(g, errw_choose_edge(g, state, rng));
    vertices.push_back(state.current);
  }
  return Path(std::move(vertices));
}

LogValue errw_path_log_prob(const Graph& g, const PriorParams& params, const Path& p) {
  if (p.start() != params.start())
    throw InputError("path starts at " + g.label(p.start()) + " but the walk starts at " + g.label(params.start()));
  check_admissible(g, p);
  const std::vector<double> av = params.vertex_weights(g);
  std::vector<std::uint64_t> edge_inc(g.edge_count(), 0);
  std::vector<std::uint64_t> vertex_inc(g.vertex_count(), 0);

  // Each factor is initial weight + integer reinforcement, exact in quad
  // precision. Summing the logs in sorted order makes the result a function
  // of the factor multisets, which coincide for equivalent paths.
  std::vector<wide_real> numerators;
  std::vector<wide_real> denominators;
  auto vs = p.vertices();
  for (std::size_t i = 1; i < vs.size(); ++i) {
    const EdgeId e = *g.edge_between(vs[i - 1], vs[i]);
    numerators.push_back(wide_real(params[e]) + edge_inc[e]);
    denominators.push_back(wide_real(av[vs[i - 1]]) + vertex_inc[vs[i - 1]]);
    if (g.is_loop(e)) {
      edge_inc[e] += 2;
      vertex_inc[vs[i]] += 2;
    } else {
      edge_inc[e] += 1;
      vertex_inc[vs[i - 1]] += 1;
      vertex_inc[vs[i]] += 1;
    }
  }
  std::sort(numerators.begin(), numerators.end());
  std::sort(denominators.begin(), denominators.end());
  wide_real log_prob = 0;
  for (const wide_real& f : numerators) log_prob += log_wide(f);
  for (const wide_real& f : denominators) log_prob -= log_wide(f);
  return LogValue::from_log(log_prob);
}

std::vector<double> EdgeFrequencySamples::edge_samples(EdgeId e) const {
  std::vector<double> out(walkers);
  for (std::size_t w = 0; w < walkers; ++w) out[w] = frequency(w, e);
  return out;
}

double EdgeFrequencySamples::interval_probability(EdgeId e, double lo, double hi) const {
  std::size_t hits = 0;
  for (std::size_t w = 0; w < walkers; ++w) {
    const double f = frequency(w, e);
    if (f >= lo && f <= hi) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(walkers);
}

namespace {

void run_walker(const Graph& g, const PriorParams& params, std::uint64_t steps, RandomSource rng,
                std::uint64_t* counts) {
  ErrwState state(g, params);
  for (std::uint64_t i = 0; i < steps; ++i) {
    const EdgeId e = errw_choose_edge(g, state, rng);
    state.traverse(g, e);
    counts[e] += g.is_loop(e) ? 2 : 1;
  }
}

}  // namespace

EdgeFrequencySamples posterior_edge_frequency_samples(const Graph& g, const PriorParams& params,
                                                      std::uint64_t steps, std::size_t walkers,
                                                      const RandomSource& rng, unsigned threads) {
  if (steps < 1) throw InputError("posterior sampling needs at least one step");
  if (walkers < 1) throw InputError("posterior sampling needs at least one walker");
  if (params.size() != g.edge_count()) throw InputError("prior does not match graph edges");

  EdgeFrequencySamples out;
  out.steps = steps;
  out.walkers = walkers;
  out.edges = g.edge_count();
  out.counts.assign(walkers * out.edges, 0);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, walkers));
  // Walker w always writes row w, so the result does not depend on threads.
  auto work = [&](std::size_t first) {
    for (std::size_t w = first; w < walkers; w += threads)
      run_walker(g, params, steps, rng.substream(w), &out.counts[w * out.edges]);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  return out;
}

StationaryEstimate estimate_stationary(const Graph& g, const EdgeFrequencySamples& samples) {
  StationaryEstimate out;
  out.steps = samples.steps;
  out.walkers = samples.walkers;
  out.vertices = g.vertex_count();
  out.numerators.assign(out.walkers * out.vertices, 0);
  out.mean.assign(out.vertices, 0.0);
  for (std::size_t w = 0; w < samples.walkers; ++w) {
    std::uint64_t* row = &out.numerators[w * out.vertices];
    for (const Edge& e : g.edges()) {
      row[e.u] += samples.count(w, e.id);
      if (!e.is_loop()) row[e.v] += samples.count(w, e.id);
    }
    for (VertexId v = 0; v < out.vertices; ++v) out.mean[v] += out.walker_estimate(w, v);
  }
  for (double& m : out.mean) m /= static_cast<double>(out.walkers);
  return out;
}

StationaryEstimate estimate_stationary(const Graph& g, const PriorParams& params, std::uint64_t steps,
                                       std::size_t walkers, const RandomSource& rng, unsigned threads) {
  return estimate_stationary(g, posterior_edge_frequency_samples(g, params, steps, walkers, rng, threads));
}

}  // namespace rmc
