#include "rmc/prior_density.hpp"

#include "rmc/errors.hpp"

#include <Eigen/Cholesky>
#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace rmc {

PriorParams::PriorParams(const Graph& g, VertexId start, std::vector<double> weights)
    : start_(start), weights_(std::move(weights)) {
  if (start_ >= g.vertex_count()) throw InputError("prior start vertex is not in the graph");
  if (weights_.size() != g.edge_count())
    throw InputError("prior has " + std::to_string(weights_.size()) + " weights for " +
                     std::to_string(g.edge_count()) + " edges");
  for (std::size_t e = 0; e < weights_.size(); ++e)
    if (!(weights_[e] > 0.0) || !std::isfinite(weights_[e]))
      throw InputError("prior weight of edge " + g.edge_label(e) + " must be positive");
}

PriorParams PriorParams::uniform(const Graph& g, VertexId start, double weight) {
  return PriorParams(g, start, std::vector<double>(g.edge_count(), weight));
}

std::vector<double> PriorParams::vertex_weights(const Graph& g) const {
  std::vector<double> av(g.vertex_count(), 0.0);
  for (const Edge& e : g.edges()) {
    av[e.u] += weights_[e.id];
    if (!e.is_loop()) av[e.v] += weights_[e.id];
  }
  return av;
}

CycleMatrix cycle_matrix(const Graph& g, std::span<const OrientedCycle> basis, const SimplexPoint& x) {
  const auto d = static_cast<Eigen::Index>(basis.size());
  // A = C diag(1/x) C^T with C the signed cycle-edge incidence matrix.
  Eigen::MatrixXd incidence = Eigen::MatrixXd::Zero(d, static_cast<Eigen::Index>(g.edge_count()));
  for (Eigen::Index i = 0; i < d; ++i)
    for (const auto& step : basis[static_cast<std::size_t>(i)].steps)
      incidence(i, static_cast<Eigen::Index>(step.edge)) = step.forward ? 1.0 : -1.0;
  Eigen::VectorXd inv(static_cast<Eigen::Index>(g.edge_count()));
  for (EdgeId e = 0; e < g.edge_count(); ++e) inv(static_cast<Eigen::Index>(e)) = 1.0 / x[e];
  return incidence * inv.asDiagonal() * incidence.transpose();
}

namespace {

double log_det_by_cholesky(const CycleMatrix& a) {
  if (a.rows() == 0) return 0.0;
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) throw DomainError("cycle matrix is not positive definite");
  const auto& l = llt.matrixLLT();
  double log_det = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) log_det += 2.0 * std::log(l(i, i));
  return log_det;
}

double log_det_by_trees(const Graph& g, const SimplexPoint& x) {
  std::vector<double> terms;
  for (const SpanningTree& t : enumerate_spanning_trees(g)) {
    double term = 0.0;
    for (const Edge& e : g.edges())
      if (!e.is_loop() && !t.has(e.id)) term -= std::log(x[e.id]);
    terms.push_back(term);
  }
  const double hi = *std::max_element(terms.begin(), terms.end());
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - hi);
  return hi + std::log(sum);
}

}  // namespace

double log_det_cycle_matrix(const Graph& g, const SimplexPoint& x, DetMethod method) {
  if (x.size() != g.edge_count()) throw InputError("simplex point does not match graph edges");
  if (method == DetMethod::kSpanningTrees) return log_det_by_trees(g, x);
  const auto basis = cycle_basis(g);
  return log_det_by_cholesky(cycle_matrix(g, basis, x));
}

double det_cycle_matrix(const Graph& g, const SimplexPoint& x, DetMethod method) {
  return std::exp(log_det_cycle_matrix(g, x, method));
}

LogValue log_partition(const Graph& g, const PriorParams& params) {
  if (params.size() != g.edge_count()) throw InputError("prior does not match graph edges");
  const std::vector<double> av = params.vertex_weights(g);
  const auto half = [](double v) { return wide_real(v) / 2; };

  wide_real log_z = 0;
  wide_real weight_sum = 0;
  for (const Edge& e : g.edges()) {
    log_z += lgamma_wide(wide_real(params[e.id]));
    weight_sum += params[e.id];
    if (e.is_loop()) log_z -= lgamma_wide(half(params[e.id]) + wide_real(0.5));
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (v == params.start()) log_z -= lgamma_wide(half(av[v]));
    else log_z -= lgamma_wide(half(av[v]) + wide_real(0.5));
  }
  const wide_real m = g.m();
  const wide_real l = g.l();
  static const wide_real log_pi = log_wide(boost::math::constants::pi<wide_real>());
  static const wide_real log_2 = log_wide(wide_real(2));
  log_z += lgamma_wide(m);  // (m-1)!
  log_z += (l - 1) / 2 * log_pi;
  log_z -= (1 - l + weight_sum) * log_2;
  return LogValue::from_log(log_z);
}

PriorDensity::PriorDensity(const Graph& g, PriorParams params)
    : graph_(&g),
      params_(std::move(params)),
      basis_(cycle_basis(g)),
      vertex_params_(params_.vertex_weights(g)),
      log_z_(log_partition(g, params_)),
      log_z_double_(log_z_.log_double()) {}

double PriorDensity::log_kernel(const SimplexPoint& x) const {
  const Graph& g = *graph_;
  if (x.size() != g.edge_count()) throw InputError("simplex point does not match graph edges");
  for (double xe : x.values())
    if (xe <= kBoundaryThreshold) throw DomainError("density is not evaluated on the simplex boundary");
  const std::vector<double> xv = x.vertex_weights(g);

  double log_phi = 0.0;
  for (const Edge& e : g.edges()) {
    const double a = params_[e.id];
    log_phi += (e.is_loop() ? a / 2.0 - 1.0 : a - 0.5) * std::log(x[e.id]);
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const double power = v == params_.start() ? vertex_params_[v] / 2.0 : (vertex_params_[v] + 1.0) / 2.0;
    log_phi -= power * std::log(xv[v]);
  }
  log_phi += 0.5 * log_det_by_cholesky(cycle_matrix(g, basis_, x));
  return log_phi;
}

double PriorDensity::log_density(const SimplexPoint& x) const { return log_kernel(x) - log_z_double_; }

LogValue PriorDensity::log_density_exact(const SimplexPoint& x) const {
  return LogValue::from_log(wide_real(log_kernel(x)) - log_z_.log());
}

LogValue log_density(const Graph& g, const PriorParams& params, const SimplexPoint& x) {
  return PriorDensity(g, params).log_density_exact(x);
}

}  // namespace rmc
