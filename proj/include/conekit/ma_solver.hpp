#pragma once

#include <optional>
#include <vector>

#include "conekit/curvature.hpp"
#include "conekit/grid.hpp"

namespace conekit {

/// Everything that pins the reference geometry of a solve.
struct ReferenceFamily {
    ConeParams params;
    HermitianWeight weight = HermitianWeight::unit(1);
    Eigen::MatrixXcd base = Eigen::MatrixXcd::Identity(1, 1);
};

struct SourceTerm {
    Eigen::VectorXd f;
    double norm_const = 0.0;
    bool normalized = false;
    bool mu_coupled = false;
    double normalization_defect = 0.0;
};

/// Shifts f_raw by the constant making int e^f dV = int dV against the
/// metric volume (trapezoidal weights).
SourceTerm build_rhs(const Eigen::VectorXd& f_raw, const MetricGrid& mg);

double normalization_defect(const Eigen::VectorXd& f, const MetricGrid& mg);

struct SolveError : std::runtime_error {
    enum Kind { PositivityUnrecoverable, MaxIterations, LinearSolveFailure };
    SolveError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
    Kind kind;
};

/// The four constants of the laplacian a-priori bound plus bookkeeping.
struct MonitorData {
    double phi_sup = 0.0;
    double lap_phi_sup = 0.0;     // sup Delta_omega phi
    double n_plus_lap_sup = 0.0;  // sup (n + Delta_omega phi)
    double f_inf = 0.0;
    double lap_f_neg_inf = 0.0;  // inf (Delta_omega f)^-, v^- = min(v, 0)
    double curvature_inf = 0.0;  // inf normalized bisectional of the reference
};

struct SolveReport {
    double eps = 0.0;
    int iterations = 0;
    double final_residual = 0.0;
    std::vector<double> residual_history;
    bool converged = false;
    MonitorData monitor;
    double normalization_recheck = 0.0;
    double wall_time_s = 0.0;
};

struct NewtonOptions {
    double tol = 1e-10;
    int max_iterations = 50;
    int max_halvings = 40;
    int curvature_samples = 24;  // radial monitor samples
};

struct NewtonResult {
    Eigen::VectorXd phi;
    SolveReport report;
};

/// Damped Newton iteration on log det(g + Hess phi) - log det g - f (+ mu phi
/// when the source is mu-coupled), Dirichlet phi = 0 on the radial boundary.
NewtonResult newton_solve(const ReferenceFamily& fam, const SolveGrid& grid,
                          const SourceTerm& source, const NewtonOptions& opts = {},
                          const Eigen::VectorXd* warm_start = nullptr);

/// Monitors an accepted iterate.
MonitorData laplacian_monitor(const Eigen::VectorXd& phi, const MetricGrid& mg,
                              const SourceTerm& source, const ReferenceFamily& fam,
                              int curvature_samples = 24);

struct RicciData {
    std::vector<Eigen::MatrixXcd> rho;  // Ricci form components per node
    Eigen::VectorXd trace;              // tr_omega rho
    Eigen::VectorXd potential;          // solved Ricci potential (may be empty)
    double lap_potential_neg_inf = 0.0;
    double growth_ratio = 0.0;  // sup (tr rho)^+ |z1|^(2 tau)
};

/// Ricci form as second differences of -log det g.
RicciData ricci_form(const MetricGrid& mg);

/// Solves the trace equation for the Ricci potential with Dirichlet data 0
/// and records the lower-bound witness of its laplacian.
RicciData ricci_potential(const MetricGrid& mg, double mu, double tau);

struct InequalityReport {
    double min_margin = 0.0;
    int argmin_node = -1;
    double margin_plain_at_shift_argmin = 0.0;
    double margin_shifted_at_shift_argmin = 0.0;
    double max_local_scale = 0.0;
    double grid_h = 0.0;
};

/// Pointwise margin (LHS - RHS) of the laplacian-estimate differential
/// inequality on interior nodes, plus the C2-shifted variant evaluated at the
/// interior minimum of n + Delta phi - C2 phi.
InequalityReport differential_inequality_check(const Eigen::VectorXd& phi, const MetricGrid& mg,
                                               const SourceTerm& source,
                                               const ReferenceFamily& fam, double c2);

struct NonPshError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// sup | log det Hess w - log |z1|^(2 tau - 2) + mu w - H | over interior
/// nodes; H must be pluriharmonic on the grid to tolerance.
double localized_residual(const Eigen::VectorXd& w, const SolveGrid& grid, double mu,
                          const Eigen::VectorXd& H, double tau, double psh_tol = 1e-6);

/// Recovers H = log det Hess w - log |z1|^(2 tau - 2) + mu w and returns its
/// oscillation over the inner half-radius nodes.
std::pair<Eigen::VectorXd, double> recover_pluriharmonic(const Eigen::VectorXd& w,
                                                         const SolveGrid& grid, double mu,
                                                         double tau);

enum class SourceFamily { Fixed, EpsDamped };

struct ContinuationStep {
    double eps = 0.0;
    Eigen::VectorXd phi;
    SolveReport report;
    double cauchy_diff = 0.0;    // sup |phi_k - phi_{k-1}|
    double source_l2_diff = 0.0; // ||e^{f_k} - e^{f_{k-1}}||_{L^2}
};

/// Solves the regularized family over a decreasing epsilon schedule with warm
/// starts, recording Cauchy differences and the monitored constants.
std::vector<ContinuationStep> epsilon_continuation(const ReferenceFamily& fam,
                                                   const SolveGrid& grid,
                                                   const Eigen::VectorXd& f_raw,
                                                   const std::vector<double>& eps_schedule,
                                                   const NewtonOptions& opts = {},
                                                   SourceFamily family = SourceFamily::Fixed);

/// Independent linear route for the one-dimensional equation, where the
/// operator identity log(g + H(phi)) - log g = f is equivalent to the Poisson
/// problem H(phi) = g (e^f - 1).
Eigen::VectorXd poisson_continuation_oracle(const MetricGrid& mg, const SourceTerm& source);

/// Closed-form manufactured pair on a RadialSmooth grid: a separable bump
/// potential and the source it satisfies, with the Hessian taken analytically.
struct Manufactured {
    Eigen::VectorXd phi_star;
    SourceTerm source;
};
Manufactured manufactured_problem(const ReferenceFamily& fam, const SolveGrid& grid,
                                  double amplitude = 1e-2);

}  // namespace conekit
