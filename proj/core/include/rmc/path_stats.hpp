#pragma once

#include "rmc/graph.hpp"
#include "rmc/log_value.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace rmc {

/// Vertex sequence (pi_0, ..., pi_n). Admissibility is a property relative to
/// a graph and is checked by the functions that take one.
class Path {
 public:
  Path() = default;
  explicit Path(std::vector<VertexId> vertices);

  std::span<const VertexId> vertices() const noexcept { return vertices_; }
  std::size_t steps() const noexcept { return vertices_.size() - 1; }
  VertexId start() const { return vertices_.front(); }
  VertexId end() const { return vertices_.back(); }
  VertexId operator[](std::size_t i) const { return vertices_.at(i); }

  friend bool operator==(const Path&, const Path&) = default;
  friend auto operator<=>(const Path&, const Path&) = default;

 private:
  std::vector<VertexId> vertices_{0};
};

/// Throws PathError naming the first step that is not an edge.
void check_admissible(const Graph& g, const Path& p);

/// Minimal sufficient statistic of a path plus its endpoints.
struct TransitionCounts {
  std::vector<std::uint64_t> edge;        ///< k_e; loops carry twice their traversals
  std::vector<std::uint64_t> departures;  ///< k_v: departures from v among pi_0..pi_{n-1}
  VertexId start = 0;
  VertexId end = 0;
  std::uint64_t steps = 0;

  friend bool operator==(const TransitionCounts&, const TransitionCounts&) = default;
};

TransitionCounts transition_counts(const Graph& g, const Path& p);

/// Departure counts and end vertex recovered from (k_e) and the start vertex.
/// The end is the second odd-degree vertex of the non-loop traversal
/// multigraph (or the start, if there is none), and
///   k_v = (sum_{non-loop e at v} k_e + sum_{loop e at v} k_e + [v=start] - [v=end]) / 2.
struct ReconstructedDepartures {
  std::vector<std::uint64_t> departures;
  VertexId end = 0;
};
ReconstructedDepartures reconstruct_departures(const Graph& g, std::span<const std::uint64_t> edge_counts,
                                               VertexId start);

/// Positive edge weights summing to one.
class SimplexPoint {
 public:
  static constexpr double kTolerance = 1e-12;

  /// Rejects non-positive entries and sums off 1 by more than kTolerance.
  explicit SimplexPoint(std::vector<double> weights);
  /// Divides by the sum first. Only for callers that generate weights.
  static SimplexPoint normalized(std::vector<double> weights);

  std::span<const double> values() const noexcept { return weights_; }
  double operator[](EdgeId e) const { return weights_.at(e); }
  std::size_t size() const noexcept { return weights_.size(); }

  /// x_v = sum of incident x_e (loops once).
  std::vector<double> vertex_weights(const Graph& g) const;

 private:
  std::vector<double> weights_;
};

/// log Q_{v0,x}(pi) evaluated from the sufficient statistic:
///   sum_{non-loop} k_e log x_e + sum_{loop} (k_e/2) log x_e - sum_v k_v log x_v.
LogValue markov_path_log_prob(const Graph& g, const SimplexPoint& x, const Path& p);
LogValue markov_path_log_prob(const Graph& g, const SimplexPoint& x, const TransitionCounts& counts);

inline constexpr std::size_t kDefaultEquivalentPathCap = 12;

/// All admissible paths with the same start, length and (k_e) as p,
/// including p itself, in lexicographic order.
std::vector<Path> enumerate_equivalent_paths(const Graph& g, const Path& p,
                                             std::size_t max_steps = kDefaultEquivalentPathCap);

/// Every admissible path of exactly `steps` steps starting at `start`.
std::vector<Path> enumerate_paths(const Graph& g, VertexId start, std::size_t steps);

/// Maps each loop traversal (v, v) to (v, v'(e), v) on the loop-free graph.
Path expand_loops(const Graph& g, const LoopTransform& t, const Path& p);

}  // namespace rmc
