#include "rmc/graph.hpp"

#include "rmc/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <unordered_set>

namespace rmc {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

std::uint64_t Graph::key(VertexId a, VertexId b) noexcept {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}

Graph Graph::build(std::vector<std::string> labels,
                   const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::unordered_map<std::string, VertexId> index;
  for (VertexId v = 0; v < labels.size(); ++v) {
    if (!index.emplace(labels[v], v).second)
      throw GraphError(GraphError::Kind::kDuplicateLabel, "duplicate vertex label '" + labels[v] + "'");
  }
  std::vector<std::pair<VertexId, VertexId>> ids;
  ids.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    auto ia = index.find(a);
    auto ib = index.find(b);
    if (ia == index.end() || ib == index.end()) {
      const std::string& bad = ia == index.end() ? a : b;
      throw GraphError(GraphError::Kind::kUnknownLabel,
                       "edge {" + a + "," + b + "} references unknown vertex '" + bad + "'");
    }
    ids.emplace_back(ia->second, ib->second);
  }
  const std::size_t n = labels.size();
  return from_indices(n, ids, std::move(labels));
}

Graph Graph::from_indices(std::size_t vertex_count,
                          const std::vector<std::pair<VertexId, VertexId>>& pairs,
                          std::vector<std::string> labels) {
  if (vertex_count == 0 || pairs.empty())
    throw GraphError(GraphError::Kind::kEmpty, "graph needs at least one vertex and one edge");
  if (labels.empty()) {
    for (std::size_t v = 0; v < vertex_count; ++v) labels.push_back(std::to_string(v));
  }
  if (labels.size() != vertex_count)
    throw InputError("label count does not match vertex count");
  {
    std::unordered_set<std::string> seen;
    for (const auto& s : labels)
      if (!seen.insert(s).second)
        throw GraphError(GraphError::Kind::kDuplicateLabel, "duplicate vertex label '" + s + "'");
  }

  Graph g;
  g.labels_ = std::move(labels);
  g.adjacency_.resize(vertex_count);
  DisjointSets components(vertex_count);
  for (auto [a, b] : pairs) {
    if (a >= vertex_count || b >= vertex_count)
      throw GraphError(GraphError::Kind::kUnknownLabel,
                       "edge {" + std::to_string(a) + "," + std::to_string(b) + "} references an unknown vertex");
    Edge e{g.edges_.size(), std::min(a, b), std::max(a, b)};
    if (!g.lookup_.emplace(key(a, b), e.id).second)
      throw GraphError(GraphError::Kind::kDuplicateEdge,
                       "duplicate edge {" + g.labels_[e.u] + "," + g.labels_[e.v] + "}");
    g.adjacency_[e.u].push_back(e.id);
    if (!e.is_loop()) g.adjacency_[e.v].push_back(e.id);
    else ++g.loop_count_;
    components.unite(e.u, e.v);
    g.edges_.push_back(e);
  }
  for (VertexId v = 1; v < vertex_count; ++v) {
    if (components.find(v) != components.find(0))
      throw GraphError(GraphError::Kind::kDisconnected,
                       "graph is disconnected: vertex '" + g.labels_[v] + "' is unreachable from '" +
                           g.labels_[0] + "'");
  }
  return g;
}

std::optional<VertexId> Graph::find_vertex(std::string_view label) const {
  for (VertexId v = 0; v < labels_.size(); ++v)
    if (labels_[v] == label) return v;
  return std::nullopt;
}

VertexId Graph::vertex(std::string_view label) const {
  if (auto v = find_vertex(label)) return *v;
  throw GraphError(GraphError::Kind::kUnknownLabel, "unknown vertex '" + std::string(label) + "'");
}

std::optional<EdgeId> Graph::edge_between(VertexId a, VertexId b) const {
  auto it = lookup_.find(key(a, b));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::string Graph::edge_label(EdgeId e) const {
  const Edge& edge = edges_.at(e);
  return labels_[edge.u] + "-" + labels_[edge.v];
}

std::optional<EdgeId> Graph::find_edge(std::string_view edge_label) const {
  // Labels may themselves contain '-', so try every split point.
  for (std::size_t pos = edge_label.find('-'); pos != std::string_view::npos;
       pos = edge_label.find('-', pos + 1)) {
    auto a = find_vertex(edge_label.substr(0, pos));
    auto b = find_vertex(edge_label.substr(pos + 1));
    if (a && b) return edge_between(*a, *b);
  }
  return std::nullopt;
}

std::vector<int> OrientedCycle::signed_incidence(std::size_t edge_count) const {
  std::vector<int> row(edge_count, 0);
  for (const auto& s : steps) row.at(s.edge) = s.forward ? 1 : -1;
  return row;
}

double count_spanning_trees(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  if (n == 1) return 1.0;
  Eigen::MatrixXd laplacian = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) continue;
    const auto u = static_cast<Eigen::Index>(e.u);
    const auto v = static_cast<Eigen::Index>(e.v);
    laplacian(u, u) += 1;
    laplacian(v, v) += 1;
    laplacian(u, v) -= 1;
    laplacian(v, u) -= 1;
  }
  const double det = laplacian.bottomRightCorner(n - 1, n - 1).partialPivLu().determinant();
  return std::round(det);
}

namespace {

class TreeEnumerator {
 public:
  explicit TreeEnumerator(const Graph& g) : g_(g) {
    for (const Edge& e : g.edges()) {
      if (e.is_loop()) loops_.push_back(e.id);
      else candidates_.push_back(e.id);
    }
  }

  std::vector<SpanningTree> run() {
    DisjointSets sets(g_.vertex_count());
    recurse(0, sets);
    return std::move(out_);
  }

 private:
  bool connectable(std::size_t from, DisjointSets sets) const {
    std::size_t joins = chosen_.size();
    for (std::size_t i = from; i < candidates_.size(); ++i) {
      const Edge& e = g_.edge(candidates_[i]);
      if (sets.unite(e.u, e.v)) ++joins;
    }
    return joins + 1 == g_.vertex_count();
  }

  void recurse(std::size_t idx, const DisjointSets& sets) {
    if (chosen_.size() + 1 == g_.vertex_count()) {
      std::vector<EdgeId> edges = chosen_;
      edges.insert(edges.end(), loops_.begin(), loops_.end());
      out_.push_back(make_spanning_tree(g_, std::move(edges)));
      return;
    }
    if (idx == candidates_.size()) return;
    const Edge& e = g_.edge(candidates_[idx]);

    // Contract: take e when it joins two components.
    DisjointSets with = sets;
    if (with.unite(e.u, e.v)) {
      chosen_.push_back(e.id);
      recurse(idx + 1, with);
      chosen_.pop_back();
    }
    // Delete: skip e when the rest can still span.
    if (connectable(idx + 1, sets)) recurse(idx + 1, sets);
  }

  const Graph& g_;
  std::vector<EdgeId> loops_;
  std::vector<EdgeId> candidates_;
  std::vector<EdgeId> chosen_;
  std::vector<SpanningTree> out_;
};

}  // namespace

std::vector<SpanningTree> enumerate_spanning_trees(const Graph& g, std::size_t cap) {
  const double count = count_spanning_trees(g);
  if (count > static_cast<double>(cap))
    throw CapExceeded("too many spanning trees (" + std::to_string(count) + " > cap " +
                      std::to_string(cap) + "); determinant must use the cycle-matrix path");
  return TreeEnumerator(g).run();
}

SpanningTree make_spanning_tree(const Graph& g, std::vector<EdgeId> edges) {
  SpanningTree t;
  std::sort(edges.begin(), edges.end());
  t.contains.assign(g.edge_count(), false);
  for (EdgeId e : edges) t.contains.at(e) = true;
  t.edges = std::move(edges);
  return t;
}

SpanningTree bfs_spanning_tree(const Graph& g) {
  std::vector<EdgeId> edges;
  std::vector<bool> seen(g.vertex_count(), false);
  std::queue<VertexId> frontier;
  frontier.push(0);
  seen[0] = true;
  while (!frontier.empty()) {
    VertexId v = frontier.front();
    frontier.pop();
    for (EdgeId id : g.incident(v)) {
      const Edge& e = g.edge(id);
      if (e.is_loop()) continue;
      VertexId w = e.other(v);
      if (seen[w]) continue;
      seen[w] = true;
      edges.push_back(id);
      frontier.push(w);
    }
  }
  for (const Edge& e : g.edges())
    if (e.is_loop()) edges.push_back(e.id);
  return make_spanning_tree(g, std::move(edges));
}

bool is_spanning_tree(const Graph& g, const SpanningTree& t) {
  if (t.contains.size() != g.edge_count()) return false;
  DisjointSets sets(g.vertex_count());
  std::size_t non_loops = 0;
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) {
      if (!t.has(e.id)) return false;
      continue;
    }
    if (!t.has(e.id)) continue;
    if (!sets.unite(e.u, e.v)) return false;
    ++non_loops;
  }
  return non_loops + 1 == g.vertex_count();
}

std::vector<OrientedCycle> cycle_basis(const Graph& g, const SpanningTree& t) {
  if (!is_spanning_tree(g, t)) throw InputError("cycle_basis: not a spanning tree of the graph");

  const std::size_t n = g.vertex_count();
  constexpr EdgeId kNone = static_cast<EdgeId>(-1);
  std::vector<VertexId> parent(n, 0);
  std::vector<EdgeId> parent_edge(n, kNone);
  std::vector<std::size_t> depth(n, 0);
  std::vector<bool> seen(n, false);
  std::queue<VertexId> frontier;
  frontier.push(0);
  seen[0] = true;
  while (!frontier.empty()) {
    VertexId v = frontier.front();
    frontier.pop();
    for (EdgeId id : g.incident(v)) {
      const Edge& e = g.edge(id);
      if (e.is_loop() || !t.has(id)) continue;
      VertexId w = e.other(v);
      if (seen[w]) continue;
      seen[w] = true;
      parent[w] = v;
      parent_edge[w] = id;
      depth[w] = depth[v] + 1;
      frontier.push(w);
    }
  }

  std::vector<OrientedCycle> basis;
  basis.reserve(g.cycle_rank());
  for (const Edge& e : g.edges()) {
    if (e.is_loop() || t.has(e.id)) continue;
    OrientedCycle c;
    c.steps.push_back({e.id, true});

    // Walk v -> lca upwards, and u -> lca upwards (reversed afterwards).
    std::vector<OrientedEdge> down;
    VertexId a = e.v;
    VertexId b = e.u;
    while (a != b) {
      if (depth[a] >= depth[b]) {
        const Edge& pe = g.edge(parent_edge[a]);
        c.steps.push_back({pe.id, pe.u == a});
        a = parent[a];
      } else {
        const Edge& pe = g.edge(parent_edge[b]);
        down.push_back({pe.id, pe.u == parent[b]});
        b = parent[b];
      }
    }
    c.steps.insert(c.steps.end(), down.rbegin(), down.rend());
    basis.push_back(std::move(c));
  }
  return basis;
}

std::vector<OrientedCycle> cycle_basis(const Graph& g) { return cycle_basis(g, bfs_spanning_tree(g)); }

LoopTransform loop_transform(const Graph& g) {
  std::vector<std::string> labels = g.labels();
  std::vector<std::pair<VertexId, VertexId>> pairs;
  std::vector<std::optional<VertexId>> pendant(g.edge_count());
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) {
      const VertexId fresh = labels.size();
      std::string name = g.label(e.u) + "'";
      while (g.find_vertex(name)) name += "'";
      labels.push_back(std::move(name));
      pendant[e.id] = fresh;
      pairs.emplace_back(e.u, fresh);
    } else {
      pairs.emplace_back(e.u, e.v);
    }
  }
  const std::size_t n = labels.size();
  LoopTransform out{Graph::from_indices(n, pairs, std::move(labels)), {}, {}, std::move(pendant)};
  out.edge_map.resize(g.edge_count());
  std::iota(out.edge_map.begin(), out.edge_map.end(), 0);
  out.vertex_map.resize(g.vertex_count());
  std::iota(out.vertex_map.begin(), out.vertex_map.end(), 0);
  return out;
}

namespace graphs {

Graph triangle(bool with_loops) {
  std::vector<std::pair<std::string, std::string>> pairs;
  if (with_loops) pairs = {{"1", "1"}, {"2", "2"}, {"3", "3"}};
  pairs.insert(pairs.end(), {{"1", "2"}, {"2", "3"}, {"1", "3"}});
  return Graph::build({"1", "2", "3"}, pairs);
}

Graph complete(std::size_t n, bool with_loops, std::vector<std::string> labels) {
  if (labels.empty())
    for (std::size_t i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = with_loops ? i : i + 1; j < n; ++j) pairs.emplace_back(i, j);
  return Graph::from_indices(n, pairs, std::move(labels));
}

Graph line(std::size_t edges) {
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (VertexId i = 0; i < edges; ++i) pairs.emplace_back(i, i + 1);
  return Graph::from_indices(edges + 1, pairs);
}

Graph star_with_loops(std::size_t leaves) {
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (VertexId v = 0; v <= leaves; ++v) pairs.emplace_back(v, v);
  for (VertexId v = 1; v <= leaves; ++v) pairs.emplace_back(0, v);
  return Graph::from_indices(leaves + 1, pairs);
}

Graph cycle(std::size_t n) {
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (VertexId i = 0; i < n; ++i) pairs.emplace_back(i, (i + 1) % n);
  return Graph::from_indices(n, pairs);
}

}  // namespace graphs

}  // namespace rmc
