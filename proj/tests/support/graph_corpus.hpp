#pragma once

#include "rmc/graph.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace rmc::test {

struct NamedGraph {
  std::string name;
  Graph graph;
};

/// 50 connected graphs on at most 6 vertices, with and without loops:
/// hand-picked families first, then seeded random graphs. Deterministic
/// across platforms (raw engine output only, no distributions).
inline std::vector<NamedGraph> graph_corpus() {
  std::vector<NamedGraph> out;
  const auto add = [&](std::string name, Graph g) { out.push_back({std::move(name), std::move(g)}); };

  add("loop", Graph::from_indices(1, {{0, 0}}));
  add("edge", graphs::line(1));
  add("edge+loops", Graph::from_indices(2, {{0, 0}, {1, 1}, {0, 1}}));
  add("triangle", graphs::triangle(false));
  add("triangle+loops", graphs::triangle(true));
  for (std::size_t n = 4; n <= 6; ++n) {
    add("K" + std::to_string(n), graphs::complete(n, false));
    add("K" + std::to_string(n) + "+loops", graphs::complete(n, true));
    add("C" + std::to_string(n), graphs::cycle(n));
    add("line" + std::to_string(n - 1), graphs::line(n - 1));
  }
  add("star3+loops", graphs::star_with_loops(3));
  add("star5+loops", graphs::star_with_loops(5));
  add("bowtie", Graph::from_indices(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}}));
  add("diamond", Graph::from_indices(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}}));
  add("K23", Graph::from_indices(5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}}));
  add("wheel5", Graph::from_indices(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5},
                                        {1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5}}));
  add("C4+chord+loop", Graph::from_indices(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {1, 3}, {2, 2}}));
  add("paw", Graph::from_indices(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}}));

  std::mt19937_64 rng(20240917);
  int index = 0;
  while (out.size() < 50) {
    const std::size_t n = 2 + rng() % 5;  // 2..6 vertices
    const bool loops = rng() % 2 == 0;
    std::vector<std::pair<VertexId, VertexId>> pairs;
    std::vector<bool> used(n * n, false);
    const auto put = [&](VertexId a, VertexId b) {
      if (a > b) std::swap(a, b);
      if (used[a * n + b]) return;
      used[a * n + b] = true;
      pairs.emplace_back(a, b);
    };
    for (VertexId v = 1; v < n; ++v) put(static_cast<VertexId>(rng() % v), v);  // random tree
    for (VertexId a = 0; a < n; ++a)
      for (VertexId b = a + 1; b < n; ++b)
        if (rng() % 100 < 40) put(a, b);
    if (loops)
      for (VertexId v = 0; v < n; ++v)
        if (rng() % 100 < 50) put(v, v);
    add("random" + std::to_string(index++), Graph::from_indices(n, pairs));
  }
  return out;
}

}  // namespace rmc::test
