#pragma once

#include <vector>

#include <Eigen/Dense>

#include "conekit/cone_params.hpp"
#include "conekit/weight.hpp"

namespace conekit {

/// Reference metric with its first and mixed second coordinate derivatives at
/// one point, everything in the holomorphic frame:
///   g(a,b)      = g_{a b~}
///   d[c](a,b)   = g_{a b~, c}
///   dd[c][e](a,b) = g_{a b~, c e~}
struct MetricJet {
    Eigen::MatrixXcd g;
    std::vector<Eigen::MatrixXcd> d;
    std::vector<std::vector<Eigen::MatrixXcd>> dd;
};

/// Product cone model: diag(tau_j^2 |z_j|^(2 tau_j - 2), ..., 1, ...) with the
/// epsilon-smoothed closed form on the cone directions.
Eigen::MatrixXcd eval_model_metric(const ConeParams& params, const DomainSpec& domain,
                                   const Eigen::VectorXcd& z);

/// Full jet of the reference family  base + ddc( a_coef u^tau - c_coef u^tau' ),
/// u = a(z)|z_1|^2 + epsilon, to derivative order `order` (0, 1 or 2).
MetricJet reference_metric_jet(const ConeParams& params, const HermitianWeight& weight,
                               const Eigen::MatrixXcd& base, const Eigen::VectorXcd& z,
                               int order = 2);

/// Metric value only; throws PositivityError when the result is not positive
/// definite (unless check_positivity is cleared).
Eigen::MatrixXcd eval_reference_metric(const ConeParams& params, const HermitianWeight& weight,
                                       const Eigen::MatrixXcd& base, const Eigen::VectorXcd& z,
                                       bool check_positivity = true);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const Eigen::MatrixXcd& h);

inline HermitianWeight scale_line_bundle_metric(const HermitianWeight& w, double factor) {
    return w.scaled(factor);
}

struct ScaleSearchResult {
    double factor = 1.0;
    double min_eig = 0.0;
    int steps = 0;
};

/// Halving search for a line-bundle scale making the reference metric
/// positive definite on every sample point.
ScaleSearchResult positivity_scale_search(const ConeParams& params, const HermitianWeight& weight,
                                          const Eigen::MatrixXcd& base,
                                          const std::vector<Eigen::VectorXcd>& samples,
                                          int max_halvings = 60);

}  // namespace conekit
