#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace rmc {

using VertexId = std::size_t;
using EdgeId = std::size_t;

/// Undirected edge; endpoints are stored with u <= v. A loop has u == v.
struct Edge {
  EdgeId id = 0;
  VertexId u = 0;
  VertexId v = 0;

  bool is_loop() const noexcept { return u == v; }
  bool touches(VertexId w) const noexcept { return u == w || v == w; }
  VertexId other(VertexId w) const noexcept { return w == u ? v : u; }
};

/// Finite connected undirected graph with optional loops and no parallel
/// edges. Immutable after construction.
class Graph {
 public:
  /// Builds from labelled vertices and label pairs. Rejects (with distinct
  /// GraphError kinds) empty input, unknown or duplicate labels, parallel
  /// edges and disconnected graphs.
  static Graph build(std::vector<std::string> labels,
                     const std::vector<std::pair<std::string, std::string>>& pairs);

  /// Same checks, with vertices given by index. Labels default to "0", "1", ...
  static Graph from_indices(std::size_t vertex_count,
                            const std::vector<std::pair<VertexId, VertexId>>& pairs,
                            std::vector<std::string> labels = {});

  std::size_t vertex_count() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::size_t loop_count() const noexcept { return loop_count_; }

  /// l = |V| + |E_loop|
  std::size_t l() const noexcept { return vertex_count() + loop_count_; }
  /// m = |E|
  std::size_t m() const noexcept { return edge_count(); }
  /// m - l + 1, the number of independent cycles.
  std::size_t cycle_rank() const noexcept { return m() + 1 - l(); }

  const std::string& label(VertexId v) const { return labels_.at(v); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<VertexId> find_vertex(std::string_view label) const;
  VertexId vertex(std::string_view label) const;  // throws GraphError

  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  bool is_loop(EdgeId e) const { return edges_.at(e).is_loop(); }

  /// Incident edge ids of v; a loop at v is listed once.
  std::span<const EdgeId> incident(VertexId v) const { return adjacency_.at(v); }
  std::optional<EdgeId> edge_between(VertexId a, VertexId b) const;
  std::optional<EdgeId> loop_at(VertexId v) const { return edge_between(v, v); }

  /// "u-v" using vertex labels, lower index first.
  std::string edge_label(EdgeId e) const;
  std::optional<EdgeId> find_edge(std::string_view edge_label) const;

 private:
  Graph() = default;
  static std::uint64_t key(VertexId a, VertexId b) noexcept;

  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> adjacency_;
  std::unordered_map<std::uint64_t, EdgeId> lookup_;
  std::size_t loop_count_ = 0;
};

/// Loops plus a loop-free acyclic spanning subset of the other edges.
struct SpanningTree {
  std::vector<EdgeId> edges;  // sorted
  std::vector<bool> contains;  // indexed by EdgeId

  bool has(EdgeId e) const { return contains.at(e); }
};

struct OrientedEdge {
  EdgeId edge = 0;
  bool forward = true;  // traversed from Edge::u to Edge::v
};

/// Closed walk of distinct non-loop edges.
struct OrientedCycle {
  std::vector<OrientedEdge> steps;
  /// +1 / -1 / 0 per edge of a graph with edge_count edges.
  std::vector<int> signed_incidence(std::size_t edge_count) const;
};

inline constexpr std::size_t kDefaultSpanningTreeCap = 1'000'000;

/// Kirchhoff matrix-tree count of the loop-free skeleton (as a double, since
/// it can be astronomically large).
double count_spanning_trees(const Graph& g);

/// Every spanning tree exactly once, via include/exclude recursion on the
/// non-loop edges. Throws CapExceeded if the Kirchhoff count exceeds cap.
std::vector<SpanningTree> enumerate_spanning_trees(const Graph& g,
                                                   std::size_t cap = kDefaultSpanningTreeCap);

/// Breadth-first tree rooted at vertex 0 (neighbours in edge-id order).
SpanningTree bfs_spanning_tree(const Graph& g);

/// True iff t contains every loop and |V|-1 non-loop edges forming a tree.
bool is_spanning_tree(const Graph& g, const SpanningTree& t);

SpanningTree make_spanning_tree(const Graph& g, std::vector<EdgeId> edges);

/// Fundamental cycles of t: one per non-tree non-loop edge e, in edge-id
/// order. Each cycle traverses e from its lower to its higher vertex index,
/// then returns along the tree path.
std::vector<OrientedCycle> cycle_basis(const Graph& g, const SpanningTree& t);
std::vector<OrientedCycle> cycle_basis(const Graph& g);

/// Result of replacing every loop e at v(e) by a pendant edge g(e) to a
/// fresh vertex v'(e). Edge ids are preserved (g(e) has the id of e) and
/// original vertices keep their ids; new vertices are appended.
struct LoopTransform {
  Graph graph;
  std::vector<EdgeId> edge_map;                      // e -> g(e)
  std::vector<VertexId> vertex_map;                  // v -> v
  std::vector<std::optional<VertexId>> pendant_vertex;  // e -> v'(e) for loops
};

LoopTransform loop_transform(const Graph& g);

namespace graphs {

/// Vertices 1..3 (indices 0..2), edges {1,2},{2,3},{1,3}; with_loops
/// prepends the loops {1},{2},{3}.
Graph triangle(bool with_loops = false);
/// K_n on labels (default "1".."n"); with_loops adds a loop at every vertex.
/// Edge order: (i,j) for i <= j, lexicographic.
Graph complete(std::size_t n, bool with_loops, std::vector<std::string> labels = {});
/// Path 0 - 1 - ... - n (n edges).
Graph line(std::size_t edges);
/// Centre 0 joined to 1..leaves, with a loop at every vertex.
Graph star_with_loops(std::size_t leaves);
Graph cycle(std::size_t n);

}  // namespace graphs

}  // namespace rmc
