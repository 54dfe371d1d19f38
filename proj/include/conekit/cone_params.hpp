#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace conekit {

using Complex = std::complex<double>;

struct InvalidParams : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A point where the cone metric family is singular was requested with
/// epsilon = 0.
struct SingularPointError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A metric evaluation came out non positive definite.
struct PositivityError : std::runtime_error {
    PositivityError(Eigen::VectorXcd where, double min_eig)
        : std::runtime_error("metric not positive definite (min eigenvalue " +
                             std::to_string(min_eig) + ")"),
          point(std::move(where)),
          min_eigenvalue(min_eig) {}
    Eigen::VectorXcd point;
    double min_eigenvalue;
};

/// Scalar parameters of the reference metric family: cone angle fraction tau,
/// correction exponent tau', the two potential coefficients, the smoothing
/// parameter and the Einstein constant.
struct ConeParams {
    double tau = 0.5;
    double tau_prime = 0.75;
    double a_coef = 1.0;
    double c_coef = 0.0;
    double epsilon = 0.0;
    double mu = 0.0;
    /// -1 subtracts the correction potential (the curvature-correcting
    /// choice); +1 adds it, which flips the blow-up direction.
    int correction_sign = -1;

    void validate() const {
        if (c_coef > 0.0) {
            if (!(tau > 0.0 && tau < 1.0)) throw InvalidParams("tau must lie in (0,1)");
            if (!(tau_prime > tau && tau_prime < 1.0))
                throw InvalidParams("tau' must lie in (tau,1)");
        } else {
            // without a correction the family degenerates smoothly at tau = 1
            if (!(tau > 0.0 && tau <= 1.0)) throw InvalidParams("tau must lie in (0,1]");
            if (!(tau_prime >= tau)) throw InvalidParams("tau' must be >= tau");
        }
        if (!(a_coef > 0.0)) throw InvalidParams("a_coef must be positive");
        if (c_coef < 0.0) throw InvalidParams("c_coef must be nonnegative");
        if (epsilon < 0.0) throw InvalidParams("epsilon must be nonnegative");
        if (correction_sign != -1 && correction_sign != 1)
            throw InvalidParams("correction_sign must be -1 or +1");
    }
};

struct ConeAxisSpec {
    double tau = 0.5;        // per-direction cone angle of the model
    double rho_min = 1e-6;
    double rho_max = 1.0;
    int n_rho = 32;
    bool log_spacing = true;
    int n_theta = 1;         // 1 keeps the circle-symmetric reduction
};

struct SmoothAxisSpec {
    double extent = 1.0;     // periodic cell length along Re z_j
    int n = 8;
};

/// Discretized model domain: k cone directions followed by n-k smooth ones.
struct DomainSpec {
    int n = 1;
    std::vector<ConeAxisSpec> cone;
    std::vector<SmoothAxisSpec> smooth;

    int k() const { return int(cone.size()); }

    void validate(double epsilon) const {
        if (n < 1) throw InvalidParams("complex dimension must be >= 1");
        if (cone.empty() || int(cone.size() + smooth.size()) != n)
            throw InvalidParams("axis specs must cover all n directions with k >= 1 cone axes");
        for (const auto& c : cone) {
            if (!(c.tau > 0.0 && c.tau <= 1.0)) throw InvalidParams("cone angle must lie in (0,1]");
            if (c.rho_min < 0.0 || c.rho_max <= c.rho_min)
                throw InvalidParams("need 0 <= rho_min < rho_max");
            if (c.rho_min == 0.0 && epsilon == 0.0)
                throw InvalidParams("rho_min > 0 required when epsilon = 0");
            if (c.n_rho < 4) throw InvalidParams("radial resolution must be >= 4");
            if (c.n_theta < 1) throw InvalidParams("angular resolution must be >= 1");
            if (c.rho_min == 0.0 && c.log_spacing)
                throw InvalidParams("log spacing needs rho_min > 0");
        }
        for (const auto& s : smooth) {
            if (s.n < 4) throw InvalidParams("smooth resolution must be >= 4");
            if (s.extent <= 0) throw InvalidParams("smooth extent must be positive");
        }
    }

    /// Radial sample values for cone axis j.
    std::vector<double> rho_values(int j) const;
    /// All grid points as complex coordinates (theta and smooth layout row-major).
    std::vector<Eigen::VectorXcd> points() const;
};

}  // namespace conekit
