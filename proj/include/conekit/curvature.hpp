#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "conekit/metric.hpp"

namespace conekit {

/// Holomorphic curvature tensor at a point together with the recorded
/// normalized bisectional contractions.
struct CurvatureSample {
    Eigen::VectorXcd point;
    int n = 0;
    std::vector<Complex> R;  // R_{a b~ c d~}, flattened
    double symmetry_defect = 0.0;   // worst relative defect of the pair symmetries
    double condition_number = 1.0;  // cond of g at the point
    bool conditioning_warning = false;
    std::vector<std::pair<std::string, double>> bisectional;

    Complex at(int a, int b, int c, int d) const {
        return R[std::size_t(((a * n + b) * n + c) * n + d)];
    }
};

/// Full tensor from the closed-form metric jet plus exact matrix inversion.
CurvatureSample curvature_at(const ConeParams& params, const HermitianWeight& weight,
                             const Eigen::MatrixXcd& base, const Eigen::VectorXcd& z);

/// R(v, v~, w, w~) / (|v|_g^2 |w|_g^2).
double normalized_bisectional(const CurvatureSample& s, const Eigen::MatrixXcd& g,
                              const Eigen::VectorXcd& v, const Eigen::VectorXcd& w);

struct DegenerateFitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RateFit {
    double exponent = 0.0;
    double log_coefficient = 0.0;
    double residual = 0.0;  // RMS of the log-log regression
    std::vector<double> radii;
    int positive_samples = 0;
    int negative_samples = 0;
};

/// Which contraction the blow-up fit follows: the raw coordinate component
/// R_{11~11~}, or the bisectional value normalized by g-unit vectors.
enum class RateMode { Component, UnitNormalized };

/// Least-squares fit of log|contraction| against log|z_1| along the real ray.
RateFit fit_blowup_rate(const ConeParams& params, const HermitianWeight& weight,
                        const Eigen::MatrixXcd& base, const std::vector<double>& radii,
                        RateMode mode = RateMode::Component);

struct ScanRow {
    double eps, rho;
    std::string tag;
    double value;
};

struct LowerBoundScan {
    std::map<double, double> inf_by_eps;
    std::vector<ScanRow> rows;
    double overall_inf = 0.0;
};

/// Infimum of the normalized bisectional curvature over the domain grid and
/// over the frame pairs plus `random_pairs` seeded unit pairs per point,
/// swept over the epsilon list.
LowerBoundScan uniform_lower_bound_scan(const ConeParams& params, const HermitianWeight& weight,
                                        const Eigen::MatrixXcd& base,
                                        const std::vector<double>& eps_list,
                                        const DomainSpec& domain, unsigned seed = 1,
                                        int random_pairs = 8);

/// |reference - uncorrected|_{g_tau} at a point; decays like |z_1|^(2(tau'-tau)).
double metric_closeness(const ConeParams& params, const HermitianWeight& weight,
                        const Eigen::MatrixXcd& base, const Eigen::VectorXcd& z);

/// Rate fit of the closeness along the real ray.
RateFit closeness_rate(const ConeParams& params, const HermitianWeight& weight,
                       const Eigen::MatrixXcd& base, const std::vector<double>& radii);

/// Worst relative discrepancy between the closed-form metric derivatives and
/// central finite differences of step h.
double finite_difference_check(const ConeParams& params, const HermitianWeight& weight,
                               const Eigen::MatrixXcd& base, const Eigen::VectorXcd& z, double h);

}  // namespace conekit
