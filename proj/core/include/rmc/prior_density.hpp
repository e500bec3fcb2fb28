#pragma once

#include "rmc/graph.hpp"
#include "rmc/log_value.hpp"
#include "rmc/path_stats.hpp"

#include <Eigen/Core>

#include <span>
#include <vector>

namespace rmc {

/// Starting vertex v0 and positive edge weights (a_e). Parameterizes both
/// prior and posterior of the conjugate family.
class PriorParams {
 public:
  PriorParams(const Graph& g, VertexId start, std::vector<double> weights);
  static PriorParams uniform(const Graph& g, VertexId start, double weight = 1.0);

  VertexId start() const noexcept { return start_; }
  std::span<const double> weights() const noexcept { return weights_; }
  double operator[](EdgeId e) const { return weights_.at(e); }
  std::size_t size() const noexcept { return weights_.size(); }

  /// a_v = sum of incident a_e (loops once).
  std::vector<double> vertex_weights(const Graph& g) const;

  friend bool operator==(const PriorParams&, const PriorParams&) = default;

 private:
  VertexId start_;
  std::vector<double> weights_;
};

/// Symmetric (m-l+1) x (m-l+1) matrix with A_ii = sum_{e in c_i} 1/x_e and
/// A_ij = sum_{e in c_i and c_j} +-1/x_e (+ when the orientations agree).
using CycleMatrix = Eigen::MatrixXd;

CycleMatrix cycle_matrix(const Graph& g, std::span<const OrientedCycle> basis, const SimplexPoint& x);

enum class DetMethod { kMatrix, kSpanningTrees };

/// log det A(x). The matrix route factors A(x) by Cholesky (A is SPD on the
/// open simplex); the spanning-tree route sums prod_{e not in T} 1/x_e over
/// all spanning trees. An empty basis gives log det = 0.
double log_det_cycle_matrix(const Graph& g, const SimplexPoint& x, DetMethod method = DetMethod::kMatrix);
double det_cycle_matrix(const Graph& g, const SimplexPoint& x, DetMethod method = DetMethod::kMatrix);

/// Normalizing constant Z_{v0,a}.
LogValue log_partition(const Graph& g, const PriorParams& params);

/// Smallest coordinate accepted by density evaluation.
inline constexpr double kBoundaryThreshold = 1e-300;

/// The conjugate prior density phi_{v0,a} with respect to the normalized
/// Lebesgue measure on the simplex. Caches Z and the cycle basis so that
/// repeated evaluation is cheap. The graph must outlive the object.
class PriorDensity {
 public:
  PriorDensity(const Graph& g, PriorParams params);

  const Graph& graph() const noexcept { return *graph_; }
  const PriorParams& params() const noexcept { return params_; }
  const LogValue& partition() const noexcept { return log_z_; }

  /// log phi(x) in double precision. Throws DomainError at the boundary.
  double log_density(const SimplexPoint& x) const;
  /// Same value with Z kept at full precision.
  LogValue log_density_exact(const SimplexPoint& x) const;

 private:
  double log_kernel(const SimplexPoint& x) const;

  const Graph* graph_;
  PriorParams params_;
  std::vector<OrientedCycle> basis_;
  std::vector<double> vertex_params_;
  LogValue log_z_;
  double log_z_double_;
};

LogValue log_density(const Graph& g, const PriorParams& params, const SimplexPoint& x);

}  // namespace rmc
