#pragma once

#include "rmc/graph.hpp"
#include "rmc/log_value.hpp"
#include "rmc/path_stats.hpp"
#include "rmc/prior_density.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace rmc {

/// Seeded 64-bit Mersenne twister. substream(i) derives an independent
/// generator from (seed, i), so walker i sees the same numbers no matter
/// how walkers are scheduled.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }
  RandomSource substream(std::uint64_t index) const;

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  RandomSource(std::uint64_t seed, std::seed_seq& seq) : seed_(seed), engine_(seq) {}

  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Single-walker state: current vertex, current edge weights and the
/// vertex totals (loops counted once).
struct ErrwState {
  VertexId current = 0;
  std::vector<double> weights;
  std::vector<double> vertex_totals;
  std::uint64_t step = 0;

  ErrwState(const Graph& g, const PriorParams& params);
  /// Crosses e from the current vertex and reinforces it by 1 (2 for a loop).
  void traverse(const Graph& g, EdgeId e);
};

/// Picks an incident edge at state.current with probability proportional
/// to its current weight.
EdgeId errw_choose_edge(const Graph& g, const ErrwState& state, RandomSource& rng);

Path errw_sample_path(const Graph& g, const PriorParams& params, std::uint64_t steps, RandomSource& rng);

/// Probability that the walk started with params follows p, multiplied out
/// step by step. Throws InputError if p does not start at params.start().
LogValue errw_path_log_prob(const Graph& g, const PriorParams& params, const Path& p);

/// Edge counts k_e(Z_n) (loops doubled) of m independent walkers; row w
/// belongs to walker w, which uses rng.substream(w).
struct EdgeFrequencySamples {
  std::uint64_t steps = 0;
  std::size_t walkers = 0;
  std::size_t edges = 0;
  std::vector<std::uint64_t> counts;  // walker-major

  std::uint64_t count(std::size_t walker, EdgeId e) const { return counts[walker * edges + e]; }
  double frequency(std::size_t walker, EdgeId e) const {
    return static_cast<double>(count(walker, e)) / static_cast<double>(steps);
  }
  std::vector<double> edge_samples(EdgeId e) const;
  /// Fraction of walkers with k_e/n in [lo, hi].
  double interval_probability(EdgeId e, double lo, double hi) const;
};

/// Number of worker threads used by the walker fan-out; 0 means
/// hardware concurrency.
EdgeFrequencySamples posterior_edge_frequency_samples(const Graph& g, const PriorParams& params,
                                                      std::uint64_t steps, std::size_t walkers,
                                                      const RandomSource& rng, unsigned threads = 0);

/// nu(v) = (1/2) sum_{e at v} k_e / n per walker. numerators holds the
/// integer sums sum_{e at v} k_e, which add up to exactly 2n for every walker.
struct StationaryEstimate {
  std::uint64_t steps = 0;
  std::size_t walkers = 0;
  std::size_t vertices = 0;
  std::vector<std::uint64_t> numerators;  // walker-major
  std::vector<double> mean;               // average over walkers

  double walker_estimate(std::size_t walker, VertexId v) const {
    return static_cast<double>(numerators[walker * vertices + v]) / (2.0 * static_cast<double>(steps));
  }
};

StationaryEstimate estimate_stationary(const Graph& g, const EdgeFrequencySamples& samples);
StationaryEstimate estimate_stationary(const Graph& g, const PriorParams& params, std::uint64_t steps,
                                       std::size_t walkers, const RandomSource& rng, unsigned threads = 0);

}  // namespace rmc
