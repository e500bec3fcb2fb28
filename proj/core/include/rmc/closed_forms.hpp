#pragma once

// Closed-form prior densities for special graphs. Each is written directly
// in its own coordinates, without going through the cycle basis machinery,
// so it doubles as an independent check on the generic density.

#include "rmc/graph.hpp"
#include "rmc/path_stats.hpp"
#include "rmc/prior_density.hpp"

#include <array>
#include <span>
#include <vector>

namespace rmc::closed_form {

double log_beta_density(double b1, double b2, double p);
/// Dirichlet density with respect to Lebesgue measure on the first d-1
/// coordinates.
double log_dirichlet_density(std::span<const double> b, std::span<const double> p);

// --- line graph 0 - 1 - ... - n ------------------------------------------

/// p_i = z_i / (z_i + z_{i+1}), i = 1..n-1, from edge weights z_1..z_n.
std::vector<double> line_coordinates(std::span<const double> z);

/// Density of p under the prior with edge weights b_1..b_n started at
/// vertex v0 in 0..n: a product of independent beta densities.
double line_log_density(std::span<const double> b, std::size_t v0, std::span<const double> p);

// --- trees with a loop at every vertex ------------------------------------

/// p_e = x_e / x_v for every vertex v and e incident to v, listed per vertex
/// in Graph::incident order.
struct TreeCoordinates {
  std::vector<std::vector<double>> per_vertex;
};

TreeCoordinates tree_coordinates(const Graph& g, const SimplexPoint& x);

/// Product of Dirichlet densities: D[a_e/2, e at v0] at the start and
/// D[(a_{e(v)}+1)/2, a_e/2 otherwise] elsewhere, e(v) being the edge on the
/// way back to v0. Throws InputError unless g is a tree with loops everywhere.
double tree_with_loops_log_density(const Graph& g, const PriorParams& params, const TreeCoordinates& p);

// --- triangle, v0 = vertex 1 ----------------------------------------------

/// Loop-free triangle, weights a on {1,2}, b on {2,3}, c on {1,3} and
/// coordinates x, y, z on the same edges.
double triangle_log_partition(double a, double b, double c);
double triangle_log_density(double a, double b, double c, double x, double y, double z);

/// Triangle with loops: b_i on the loop at i, c_i on the edge opposite i;
/// y_i, z_i the matching coordinates.
double triangle_with_loops_log_partition(const std::array<double, 3>& b, const std::array<double, 3>& c);
double triangle_with_loops_log_density(const std::array<double, 3>& b, const std::array<double, 3>& c,
                                       const std::array<double, 3>& y, const std::array<double, 3>& z);

// --- complete graph with loops, v0 = vertex 1 -----------------------------

/// a and x are symmetric n x n, row-major; the diagonal holds the loops.
double complete_with_loops_log_partition(std::size_t n, std::span<const double> a);
double complete_with_loops_log_density(std::size_t n, std::span<const double> a, std::span<const double> x);

// --- dispatch on a graph --------------------------------------------------

enum class SpecialKind { kLine, kTreeWithLoops, kTriangleWithLoops, kComplete };

/// Evaluates the closed form for `kind` on graph g. coords are the
/// transformed variables for kLine (p_1..p_{n-1} along the line from its
/// lower-index end) and kTreeWithLoops (TreeCoordinates flattened vertex by
/// vertex); for kTriangleWithLoops and kComplete they are x in edge order.
/// Throws InputError when g is not of the requested kind.
double specialized_log_density(SpecialKind kind, const Graph& g, const PriorParams& params,
                               std::span<const double> coords);

}  // namespace rmc::closed_form
