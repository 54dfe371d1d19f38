#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "conekit/grid.hpp"

namespace conekit {

/// Which flattening map induces the conical distance: the angle-preserving
/// xi-map z -> |z|^(tau-1) z, or the angle-compressing uniformization
/// z -> z^(1/p) available at tau = 1/p.
enum class DistanceConvention { XiMap, Uniformization };

/// Conical distance on C^n with the first `cone_dirs` coordinates transverse
/// to the divisor and the rest Euclidean.
double d_tau(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y, double tau,
             int cone_dirs = 1, DistanceConvention conv = DistanceConvention::XiMap);

struct SampledFunction {
    std::vector<Eigen::VectorXcd> points;
    Eigen::VectorXd values;
};

struct HolderReport {
    double alpha = 1.0;
    double tau = 1.0;
    double sup_norm = 0.0;
    double seminorm = 0.0;
    double total = 0.0;  // sup_norm + seminorm
    std::size_t argmax_i = 0, argmax_j = 0;
    std::size_t pairs_used = 0;
    bool exhaustive = true;
    bool diverging = false;
};

/// sup over point pairs of |f(x)-f(y)| / d_tau(x,y)^alpha. All pairs when
/// their count fits the budget; otherwise a deterministic subsample that
/// always keeps every pair among the points nearest the divisor plus
/// dyadic-stride pairs through the divisor-distance ordering.
HolderReport holder_seminorm(const SampledFunction& f, double alpha, double tau,
                             std::size_t pair_budget = 20000000, int cone_dirs = 1,
                             DistanceConvention conv = DistanceConvention::XiMap);

/// Refinement divergence flag: the seminorm grew by >= 1.8x.
inline bool holder_diverging(double coarse, double fine) { return fine >= 1.8 * coarse; }

/// Aggregate C^{2,alpha} measurement of a potential against a reference
/// metric grid: sup |phi| + sup of the trace norm of ddc phi, plus the worst
/// frame-component seminorm of ddc phi.
HolderReport c2alpha_norm(const Eigen::VectorXd& phi, const MetricGrid& mg, double alpha,
                          double tau, std::size_t pair_budget = 20000000);

}  // namespace conekit
