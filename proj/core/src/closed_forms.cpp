#include "rmc/closed_forms.hpp"

#include "rmc/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

namespace rmc::closed_form {

namespace {

constexpr double kLogPi = 1.1447298858494002;  // log(pi)
constexpr double kLog2 = std::numbers::ln2;

void require(bool ok, const char* what) {
  if (!ok) throw InputError(what);
}

}  // namespace

double log_beta_density(double b1, double b2, double p) {
  return std::lgamma(b1 + b2) - std::lgamma(b1) - std::lgamma(b2) + (b1 - 1.0) * std::log(p) +
         (b2 - 1.0) * std::log1p(-p);
}

double log_dirichlet_density(std::span<const double> b, std::span<const double> p) {
  require(b.size() == p.size() && !b.empty(), "dirichlet parameter and point sizes differ");
  double total = 0.0;
  double out = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    total += b[i];
    out += (b[i] - 1.0) * std::log(p[i]) - std::lgamma(b[i]);
  }
  return out + std::lgamma(total);
}

std::vector<double> line_coordinates(std::span<const double> z) {
  std::vector<double> p;
  for (std::size_t i = 0; i + 1 < z.size(); ++i) p.push_back(z[i] / (z[i] + z[i + 1]));
  return p;
}

double line_log_density(std::span<const double> b, std::size_t v0, std::span<const double> p) {
  const std::size_t n = b.size();
  require(n >= 1 && p.size() == n - 1, "line density needs n weights and n-1 coordinates");
  require(v0 <= n, "line start vertex out of range");
  // b[i-1] holds b_i (edge {i-1, i}); p[i-1] holds p_i (the step i -> i-1).
  double out = 0.0;
  for (std::size_t i = 1; i <= n - 1; ++i) {
    const double left = b[i - 1];
    const double right = b[i];
    if (i < v0) out += log_beta_density(left / 2.0, (right + 1.0) / 2.0, p[i - 1]);
    else if (i == v0) out += log_beta_density(left / 2.0, right / 2.0, p[i - 1]);
    else out += log_beta_density((left + 1.0) / 2.0, right / 2.0, p[i - 1]);
  }
  return out;
}

TreeCoordinates tree_coordinates(const Graph& g, const SimplexPoint& x) {
  const std::vector<double> xv = x.vertex_weights(g);
  TreeCoordinates out;
  out.per_vertex.resize(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    for (EdgeId e : g.incident(v)) out.per_vertex[v].push_back(x[e] / xv[v]);
  return out;
}

double tree_with_loops_log_density(const Graph& g, const PriorParams& params, const TreeCoordinates& p) {
  require(g.loop_count() == g.vertex_count() && g.cycle_rank() == 0, "graph is not a tree with loops");
  require(p.per_vertex.size() == g.vertex_count(), "tree coordinates do not match graph");

  constexpr EdgeId kNone = static_cast<EdgeId>(-1);
  std::vector<EdgeId> toward_start(g.vertex_count(), kNone);
  std::vector<bool> seen(g.vertex_count(), false);
  std::queue<VertexId> frontier;
  frontier.push(params.start());
  seen[params.start()] = true;
  while (!frontier.empty()) {
    const VertexId v = frontier.front();
    frontier.pop();
    for (EdgeId e : g.incident(v)) {
      const VertexId w = g.edge(e).other(v);
      if (seen[w]) continue;
      seen[w] = true;
      toward_start[w] = e;
      frontier.push(w);
    }
  }

  double out = 0.0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    std::vector<double> b;
    for (EdgeId e : g.incident(v)) b.push_back(e == toward_start[v] ? (params[e] + 1.0) / 2.0 : params[e] / 2.0);
    out += log_dirichlet_density(b, p.per_vertex[v]);
  }
  return out;
}

double triangle_log_partition(double a, double b, double c) {
  return std::lgamma(a) + std::lgamma(b) + std::lgamma(c) - std::lgamma((a + c) / 2.0) -
         std::lgamma((a + b + 1.0) / 2.0) - std::lgamma((b + c + 1.0) / 2.0) + kLog2 + kLogPi -
         (a + b + c - 2.0) * kLog2;
}

double triangle_log_density(double a, double b, double c, double x, double y, double z) {
  return -triangle_log_partition(a, b, c) + (a - 0.5) * std::log(x) + (b - 0.5) * std::log(y) +
         (c - 0.5) * std::log(z) - (a + c) / 2.0 * std::log(x + z) - (a + b + 1.0) / 2.0 * std::log(x + y) -
         (b + c + 1.0) / 2.0 * std::log(y + z) + 0.5 * std::log(1.0 / x + 1.0 / y + 1.0 / z);
}

double triangle_with_loops_log_partition(const std::array<double, 3>& b, const std::array<double, 3>& c) {
  double out = 0.0;
  for (int i = 0; i < 3; ++i) out += std::lgamma(c[i]) + std::lgamma(b[i] / 2.0);
  out -= std::lgamma((b[0] + c[1] + c[2]) / 2.0);
  out -= std::lgamma((b[1] + c[0] + c[2] + 1.0) / 2.0);
  out -= std::lgamma((b[2] + c[0] + c[1] + 1.0) / 2.0);
  return out + std::log(480.0) + kLogPi - (c[0] + c[1] + c[2]) * kLog2;
}

double triangle_with_loops_log_density(const std::array<double, 3>& b, const std::array<double, 3>& c,
                                       const std::array<double, 3>& y, const std::array<double, 3>& z) {
  double out = -triangle_with_loops_log_partition(b, c);
  for (int i = 0; i < 3; ++i) out += (b[i] / 2.0 - 1.0) * std::log(y[i]) + (c[i] - 1.0) * std::log(z[i]);
  out += 0.5 * std::log(z[0] * z[1] + z[0] * z[2] + z[1] * z[2]);
  out -= (b[0] + c[1] + c[2]) / 2.0 * std::log(y[0] + z[1] + z[2]);
  out -= (b[1] + c[0] + c[2] + 1.0) / 2.0 * std::log(y[1] + z[0] + z[2]);
  out -= (b[2] + c[0] + c[1] + 1.0) / 2.0 * std::log(y[2] + z[0] + z[1]);
  return out;
}

double complete_with_loops_log_partition(std::size_t n, std::span<const double> a) {
  require(n >= 1 && a.size() == n * n, "complete graph parameters must be n x n");
  double out = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double ai = 0.0;
    for (std::size_t j = 0; j < n; ++j) ai += a[i * n + j];
    for (std::size_t j = i; j < n; ++j) {
      out += std::lgamma(a[i * n + j]);
      total += a[i * n + j];
    }
    out -= i == 0 ? std::lgamma(ai / 2.0) : std::lgamma((ai + 1.0) / 2.0);
    out -= std::lgamma((a[i * n + i] + 1.0) / 2.0);
  }
  const double edges = static_cast<double>(n * (n + 1) / 2);
  return out + std::lgamma(edges) + (static_cast<double>(n) - 0.5) * kLogPi -
         (1.0 - 2.0 * static_cast<double>(n) + total) * kLog2;
}

double complete_with_loops_log_density(std::size_t n, std::span<const double> a, std::span<const double> x) {
  require(n >= 1 && x.size() == n * n, "complete graph coordinates must be n x n");
  double out = -complete_with_loops_log_partition(n, a);
  for (std::size_t i = 0; i < n; ++i) {
    double ai = 0.0;
    double xi = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      ai += a[i * n + j];
      xi += x[i * n + j];
    }
    out += (a[i * n + i] / 2.0 - 1.0) * std::log(x[i * n + i]);
    for (std::size_t j = i + 1; j < n; ++j) out += (a[i * n + j] - 0.5) * std::log(x[i * n + j]);
    out -= (i == 0 ? ai / 2.0 : (ai + 1.0) / 2.0) * std::log(xi);
  }

  // Triangles (1,i,j), 2 <= i < j <= n, oriented 1 -> i -> j -> 1, with every
  // edge {p,q} (p<q) oriented p -> q.
  if (n >= 3) {
    const auto d = static_cast<Eigen::Index>((n - 1) * (n - 2) / 2);
    Eigen::MatrixXd cycles = Eigen::MatrixXd::Zero(d, static_cast<Eigen::Index>(n * n));
    Eigen::Index row = 0;
    for (std::size_t i = 1; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j, ++row) {
        cycles(row, static_cast<Eigen::Index>(i)) = 1.0;           // 1 -> i
        cycles(row, static_cast<Eigen::Index>(i * n + j)) = 1.0;   // i -> j
        cycles(row, static_cast<Eigen::Index>(j)) = -1.0;          // j -> 1 against 1 -> j
      }
    }
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n * n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inv(static_cast<Eigen::Index>(i * n + j)) = 1.0 / x[i * n + j];
    const Eigen::MatrixXd an = cycles * inv.asDiagonal() * cycles.transpose();
    out += 0.5 * std::log(an.partialPivLu().determinant());
  }
  return out;
}

namespace {

/// Vertex order along a loop-free path graph, from its lower-index end.
std::vector<VertexId> line_order(const Graph& g) {
  require(g.loop_count() == 0 && g.cycle_rank() == 0, "graph is not a line");
  VertexId end = g.vertex_count();
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    require(g.incident(v).size() <= 2, "graph is not a line");
    if (g.incident(v).size() == 1 && end == g.vertex_count()) end = v;
  }
  std::vector<VertexId> order{end};
  VertexId prev = end;
  VertexId here = end;
  while (order.size() < g.vertex_count()) {
    for (EdgeId e : g.incident(here)) {
      const VertexId w = g.edge(e).other(here);
      if (w != prev) {
        prev = here;
        here = w;
        order.push_back(w);
        break;
      }
    }
  }
  return order;
}

}  // namespace

double specialized_log_density(SpecialKind kind, const Graph& g, const PriorParams& params,
                               std::span<const double> coords) {
  switch (kind) {
    case SpecialKind::kLine: {
      const auto order = line_order(g);
      std::vector<double> b;
      for (std::size_t i = 1; i < order.size(); ++i) b.push_back(params[*g.edge_between(order[i - 1], order[i])]);
      const auto v0 = static_cast<std::size_t>(std::find(order.begin(), order.end(), params.start()) - order.begin());
      return line_log_density(b, v0, coords);
    }
    case SpecialKind::kTreeWithLoops: {
      require(g.loop_count() == g.vertex_count() && g.cycle_rank() == 0, "graph is not a tree with loops");
      TreeCoordinates p;
      std::size_t at = 0;
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        const std::size_t deg = g.incident(v).size();
        require(at + deg <= coords.size(), "too few tree coordinates");
        p.per_vertex.emplace_back(coords.begin() + static_cast<std::ptrdiff_t>(at),
                                  coords.begin() + static_cast<std::ptrdiff_t>(at + deg));
        at += deg;
      }
      require(at == coords.size(), "too many tree coordinates");
      return tree_with_loops_log_density(g, params, p);
    }
    case SpecialKind::kTriangleWithLoops: {
      require(g.vertex_count() == 3 && g.loop_count() == 3 && g.edge_count() == 6, "graph is not a triangle with loops");
      require(coords.size() == g.edge_count(), "coordinates do not match graph edges");
      // Relabel so that the start vertex plays the role of vertex 1.
      std::array<VertexId, 3> order{params.start(), 0, 0};
      std::size_t k = 1;
      for (VertexId v = 0; v < 3; ++v)
        if (v != params.start()) order[k++] = v;
      std::array<double, 3> b{}, c{}, y{}, z{};
      for (int i = 0; i < 3; ++i) {
        const EdgeId loop = *g.loop_at(order[i]);
        const EdgeId opposite = *g.edge_between(order[(i + 1) % 3], order[(i + 2) % 3]);
        b[i] = params[loop];
        y[i] = coords[loop];
        c[i] = params[opposite];
        z[i] = coords[opposite];
      }
      return triangle_with_loops_log_density(b, c, y, z);
    }
    case SpecialKind::kComplete: {
      const std::size_t n = g.vertex_count();
      require(g.loop_count() == n && g.edge_count() == n * (n + 1) / 2, "graph is not complete with loops");
      require(coords.size() == g.edge_count(), "coordinates do not match graph edges");
      std::vector<VertexId> order{params.start()};
      for (VertexId v = 0; v < n; ++v)
        if (v != params.start()) order.push_back(v);
      std::vector<double> a(n * n), x(n * n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          const EdgeId e = *g.edge_between(order[i], order[j]);
          a[i * n + j] = params[e];
          x[i * n + j] = coords[e];
        }
      }
      return complete_with_loops_log_density(n, a, x);
    }
  }
  throw InputError("unknown special graph kind");
}

}  // namespace rmc::closed_form
