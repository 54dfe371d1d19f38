#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "conekit/metric.hpp"

namespace conekit {

/// Reduced solve grids. The circle action in the cone angle (and translation
/// in Im z_2) is divided out except for the full polar grid used by the
/// one-dimensional cross checks.
enum class GridKind {
    Radial1,        // n = 1, phi = phi(rho)
    RadialSmooth,   // n = 2, phi = phi(rho, Re z2), periodic smooth direction
    Polar1,         // n = 1, phi = phi(rho, theta), full angle
};

struct SolveGrid {
    GridKind kind = GridKind::Radial1;
    // radial axis (uniform in t = rho or t = log rho)
    double rho_min = 1e-3, rho_max = 1.0;
    int n_rho = 32;
    bool log_spacing = true;
    // second axis: smooth period/extent or the angle 2*pi
    double extent = 1.0;
    int n_second = 1;
    // periodic smooth direction (the default); local Dirichlet balls clear it
    bool second_periodic = true;

    int complex_dim() const { return kind == GridKind::RadialSmooth ? 2 : 1; }
    int size() const { return n_rho * (kind == GridKind::Radial1 ? 1 : n_second); }
    int ni() const { return n_rho; }
    int nj() const { return kind == GridKind::Radial1 ? 1 : n_second; }
    int index(int i, int j) const { return i * nj() + j; }

    double tcoord(int i) const {
        double lo = log_spacing ? std::log(rho_min) : rho_min;
        double hi = log_spacing ? std::log(rho_max) : rho_max;
        return lo + (hi - lo) * i / (n_rho - 1);
    }
    double tstep() const {
        double lo = log_spacing ? std::log(rho_min) : rho_min;
        double hi = log_spacing ? std::log(rho_max) : rho_max;
        return (hi - lo) / (n_rho - 1);
    }
    double rho(int i) const { return log_spacing ? std::exp(tcoord(i)) : tcoord(i); }
    double second(int j) const {
        double full = kind == GridKind::Polar1 ? 2.0 * M_PI : extent;
        return full * j / std::max(1, nj());
    }
    double second_step() const {
        double full = kind == GridKind::Polar1 ? 2.0 * M_PI : extent;
        return full / std::max(1, nj());
    }

    bool radial_boundary(int i) const { return i == 0 || i == n_rho - 1; }

    /// Embedding of node (i, j) into C^n.
    Eigen::VectorXcd point(int i, int j) const;

    /// Representative coordinate-measure weight of a node (trapezoid at the
    /// radial ends); the overall constant is immaterial.
    double coord_weight(int i, int j) const;

    void validate() const;
};

/// Matrix-valued stencil: Hess(phi)_node = sum_k weight_k phi_{neighbor_k},
/// in the holomorphic frame of the reduced slice.
struct HessStencil {
    struct Entry {
        int node;
        Eigen::MatrixXcd w;
    };
    std::vector<std::vector<Entry>> rows;  // empty on radial boundary nodes
};

HessStencil hessian_stencil(const SolveGrid& grid);

/// Applies the stencil to a field, returning per-node Hessian matrices
/// (identity-sized zero matrices on boundary rows).
std::vector<Eigen::MatrixXcd> apply_hessian(const SolveGrid& grid, const HessStencil& st,
                                            const Eigen::VectorXd& phi);

/// Reference metric data tabulated over a solve grid.
struct MetricGrid {
    SolveGrid grid;
    std::vector<Eigen::MatrixXcd> g, ginv;
    Eigen::VectorXd logdet;
    Eigen::VectorXd vol;  // coord_weight times det g
    int n = 1;
};

MetricGrid build_metric_grid(const ConeParams& params, const HermitianWeight& weight,
                             const Eigen::MatrixXcd& base, const SolveGrid& grid);

/// Same tabulation for an arbitrary pointwise metric (cross checks).
MetricGrid build_metric_grid_custom(
    const SolveGrid& grid, const std::function<Eigen::MatrixXcd(const Eigen::VectorXcd&)>& fn);

/// Laplacian of a scalar field against a pointwise family of inverse
/// matrices: tr(ainv_i H(phi)_i). Boundary rows are zero.
Eigen::VectorXd trace_laplacian(const SolveGrid& grid, const HessStencil& st,
                                const std::vector<Eigen::MatrixXcd>& ainv,
                                const Eigen::VectorXd& phi);

/// Solves tr(ainv_i H(u)_i) + shift u = rhs with u = bc on the radial
/// boundary (Dirichlet) and periodicity in the second axis.
Eigen::VectorXd solve_trace_poisson(const SolveGrid& grid, const HessStencil& st,
                                    const std::vector<Eigen::MatrixXcd>& ainv,
                                    const Eigen::VectorXd& rhs, const Eigen::VectorXd& bc,
                                    double shift = 0.0);

}  // namespace conekit
