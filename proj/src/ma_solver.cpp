#include "conekit/ma_solver.hpp"

#include <chrono>
#include <cmath>

namespace conekit {

namespace {

double logdet_hermitian(const Eigen::MatrixXcd& m) {
    Eigen::LLT<Eigen::MatrixXcd> llt(m);
    if (llt.info() != Eigen::Success) return std::numeric_limits<double>::quiet_NaN();
    double s = 0.0;
    for (int i = 0; i < m.rows(); ++i) s += 2.0 * std::log(llt.matrixL()(i, i).real());
    return s;
}

bool positive_definite(const Eigen::MatrixXcd& m) {
    Eigen::LLT<Eigen::MatrixXcd> llt(m);
    return llt.info() == Eigen::Success;
}

/// Interior residual of the solve; NaN marks a positivity failure.
Eigen::VectorXd residual_field(const MetricGrid& mg, const HessStencil& st,
                               const SourceTerm& source, double mu,
                               const Eigen::VectorXd& phi, bool* positive) {
    const SolveGrid& grid = mg.grid;
    std::vector<Eigen::MatrixXcd> H = apply_hessian(grid, st, phi);
    Eigen::VectorXd r = Eigen::VectorXd::Zero(grid.size());
    bool pos = true;
    for (int idx = 0; idx < grid.size(); ++idx) {
        if (st.rows[idx].empty()) {
            r[idx] = phi[idx];  // Dirichlet: phi = 0
            continue;
        }
        double ld = logdet_hermitian(mg.g[idx] + H[idx]);
        if (std::isnan(ld)) {
            pos = false;
            r[idx] = std::numeric_limits<double>::quiet_NaN();
            continue;
        }
        r[idx] = ld - mg.logdet[idx] - source.f[idx];
        if (source.mu_coupled) r[idx] += mu * phi[idx];
    }
    if (positive) *positive = pos;
    return r;
}

}  // namespace

double normalization_defect(const Eigen::VectorXd& f, const MetricGrid& mg) {
    double vol = mg.vol.sum(), mass = 0.0;
    for (int i = 0; i < f.size(); ++i) mass += std::exp(f[i]) * mg.vol[i];
    return std::abs(mass - vol) / vol;
}

SourceTerm build_rhs(const Eigen::VectorXd& f_raw, const MetricGrid& mg) {
    if (f_raw.size() != Eigen::Index(mg.grid.size()))
        throw InvalidParams("source does not live on the metric grid");
    if (f_raw.maxCoeff() > 700.0) throw InvalidParams("source too large: exp overflow");
    double vol = mg.vol.sum(), mass = 0.0;
    for (int i = 0; i < f_raw.size(); ++i) mass += std::exp(f_raw[i]) * mg.vol[i];
    SourceTerm s;
    s.norm_const = std::log(vol / mass);
    s.f = f_raw.array() + s.norm_const;
    s.normalized = true;
    s.normalization_defect = normalization_defect(s.f, mg);
    return s;
}

MonitorData laplacian_monitor(const Eigen::VectorXd& phi, const MetricGrid& mg,
                              const SourceTerm& source, const ReferenceFamily& fam,
                              int curvature_samples) {
    const SolveGrid& grid = mg.grid;
    HessStencil st = hessian_stencil(grid);
    Eigen::VectorXd lap = trace_laplacian(grid, st, mg.ginv, phi);
    MonitorData m;
    m.phi_sup = phi.cwiseAbs().maxCoeff();
    m.f_inf = source.f.minCoeff();
    const int n = mg.n;
    double lap_sup = -1e300;
    for (int idx = 0; idx < grid.size(); ++idx)
        if (!st.rows[idx].empty()) lap_sup = std::max(lap_sup, lap[idx]);
    m.lap_phi_sup = lap_sup;
    m.n_plus_lap_sup = n + lap_sup;

    Eigen::VectorXd lap_f = trace_laplacian(grid, st, mg.ginv, source.f);
    double neg = 0.0;
    for (int idx = 0; idx < grid.size(); ++idx)
        if (!st.rows[idx].empty()) neg = std::min(neg, lap_f[idx]);
    m.lap_f_neg_inf = neg;

    // reference curvature along a radial monitor line
    double cinf = std::numeric_limits<double>::infinity();
    int stride = std::max(1, grid.ni() / std::max(1, curvature_samples));
    for (int i = 1; i + 1 < grid.ni(); i += stride) {
        Eigen::VectorXcd z = grid.point(i, 0);
        CurvatureSample s = curvature_at(fam.params, fam.weight, fam.base, z);
        for (const auto& [tag, val] : s.bisectional) {
            (void)tag;
            cinf = std::min(cinf, val);
        }
    }
    m.curvature_inf = cinf;
    return m;
}

NewtonResult newton_solve(const ReferenceFamily& fam, const SolveGrid& grid,
                          const SourceTerm& source, const NewtonOptions& opts,
                          const Eigen::VectorXd* warm_start) {
    auto t0 = std::chrono::steady_clock::now();
    MetricGrid mg = build_metric_grid(fam.params, fam.weight, fam.base, grid);
    HessStencil st = hessian_stencil(grid);
    const double mu = fam.params.mu;
    if (source.mu_coupled && mu > 0.0) {
        // outer Picard loop for the unstable sign: freeze the mu-term
        Eigen::VectorXd phi =
            warm_start ? *warm_start : Eigen::VectorXd::Zero(grid.size());
        NewtonResult res;
        for (int pic = 0; pic < 60; ++pic) {
            SourceTerm frozen = source;
            frozen.mu_coupled = false;
            frozen.f = source.f - mu * phi;
            res = newton_solve(fam, grid, frozen, opts, &phi);
            double change = (res.phi - phi).cwiseAbs().maxCoeff();
            phi = res.phi;
            if (change < opts.tol * 10) {
                res.report.monitor = laplacian_monitor(phi, mg, source, fam,
                                                       opts.curvature_samples);
                return res;
            }
        }
        throw SolveError(SolveError::MaxIterations, "Picard iteration did not settle");
    }

    Eigen::VectorXd phi = warm_start ? *warm_start : Eigen::VectorXd::Zero(grid.size());
    const double mu_eff = source.mu_coupled ? mu : 0.0;
    bool pos = true;
    Eigen::VectorXd r = residual_field(mg, st, source, mu, phi, &pos);
    if (!pos)
        throw SolveError(SolveError::PositivityUnrecoverable,
                         "initial iterate violates positivity");
    double rnorm = r.cwiseAbs().maxCoeff();

    SolveReport rep;
    rep.eps = fam.params.epsilon;
    rep.residual_history.push_back(rnorm);
    int it = 0;
    while (rnorm > opts.tol) {
        if (++it > opts.max_iterations)
            throw SolveError(SolveError::MaxIterations, "Newton did not converge");
        std::vector<Eigen::MatrixXcd> H = apply_hessian(grid, st, phi);
        std::vector<Eigen::MatrixXcd> ainv(grid.size());
        for (int idx = 0; idx < grid.size(); ++idx)
            ainv[idx] = st.rows[idx].empty() ? mg.ginv[idx]
                                             : (mg.g[idx] + H[idx]).inverse().eval();
        Eigen::VectorXd delta;
        try {
            delta = solve_trace_poisson(grid, st, ainv, -r, Eigen::VectorXd::Zero(grid.size()),
                                        mu_eff);
        } catch (const std::runtime_error& e) {
            throw SolveError(SolveError::LinearSolveFailure, e.what());
        }
        // Dirichlet rows of the system solve phi + delta = 0
        for (int idx = 0; idx < grid.size(); ++idx)
            if (st.rows[idx].empty()) delta[idx] = -phi[idx];

        double step = 1.0;
        bool accepted = false;
        for (int halving = 0; halving <= opts.max_halvings; ++halving, step *= 0.5) {
            Eigen::VectorXd cand = phi + step * delta;
            bool cand_pos = true;
            Eigen::VectorXd rc = residual_field(mg, st, source, mu, cand, &cand_pos);
            if (!cand_pos) continue;
            double rn = rc.cwiseAbs().maxCoeff();
            if (rn < rnorm) {
                phi = std::move(cand);
                r = std::move(rc);
                rnorm = rn;
                rep.residual_history.push_back(rnorm);
                accepted = true;
                break;
            }
        }
        if (!accepted)
            throw SolveError(SolveError::PositivityUnrecoverable,
                             "line search underflow: no positive step decreased the residual");
    }
    rep.iterations = it;
    rep.final_residual = rnorm;
    rep.converged = true;
    rep.monitor = laplacian_monitor(phi, mg, source, fam, opts.curvature_samples);
    if (source.normalized) rep.normalization_recheck = normalization_defect(source.f, mg);
    rep.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {std::move(phi), std::move(rep)};
}

RicciData ricci_form(const MetricGrid& mg) {
    const SolveGrid& grid = mg.grid;
    HessStencil st = hessian_stencil(grid);
    RicciData out;
    out.rho.assign(grid.size(), Eigen::MatrixXcd::Zero(mg.n, mg.n));
    out.trace = Eigen::VectorXd::Zero(grid.size());
    std::vector<Eigen::MatrixXcd> H = apply_hessian(grid, st, -mg.logdet);
    for (int idx = 0; idx < grid.size(); ++idx) {
        if (st.rows[idx].empty()) continue;
        out.rho[idx] = H[idx];
        out.trace[idx] = (mg.ginv[idx] * H[idx]).trace().real();
    }
    return out;
}

RicciData ricci_potential(const MetricGrid& mg, double mu, double tau) {
    const SolveGrid& grid = mg.grid;
    HessStencil st = hessian_stencil(grid);
    RicciData out = ricci_form(mg);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(grid.size());
    for (int idx = 0; idx < grid.size(); ++idx)
        if (!st.rows[idx].empty()) rhs[idx] = out.trace[idx] - mu * mg.n;
    out.potential =
        solve_trace_poisson(grid, st, mg.ginv, rhs, Eigen::VectorXd::Zero(grid.size()));
    double neg = 0.0, growth = 0.0;
    for (int i = 0; i < grid.ni(); ++i)
        for (int j = 0; j < grid.nj(); ++j) {
            int idx = grid.index(i, j);
            if (st.rows[idx].empty()) continue;
            neg = std::min(neg, rhs[idx]);  // Delta f = rhs by construction
            double pos_trace = std::max(0.0, out.trace[idx]);
            growth = std::max(growth, pos_trace * std::pow(grid.rho(i), 2.0 * tau));
        }
    out.lap_potential_neg_inf = neg;
    out.growth_ratio = growth;
    return out;
}

InequalityReport differential_inequality_check(const Eigen::VectorXd& phi, const MetricGrid& mg,
                                               const SourceTerm& source,
                                               const ReferenceFamily& fam, double c2) {
    const SolveGrid& grid = mg.grid;
    const int n = mg.n;
    HessStencil st = hessian_stencil(grid);
    std::vector<Eigen::MatrixXcd> H = apply_hessian(grid, st, phi);

    Eigen::VectorXd lap = trace_laplacian(grid, st, mg.ginv, phi);
    Eigen::VectorXd lap_f = trace_laplacian(grid, st, mg.ginv, source.f);
    Eigen::VectorXd psi(grid.size()), psi2(grid.size());
    std::vector<Eigen::MatrixXcd> ainv(grid.size());
    for (int idx = 0; idx < grid.size(); ++idx) {
        double base2 = n + lap[idx] - c2 * phi[idx];
        if (!(n + lap[idx] > 0.0) || !(base2 > 0.0))
            throw InvalidParams("iterate leaves the positivity cone of the shifted quantity");
        psi[idx] = std::log(n + lap[idx]);
        psi2[idx] = std::log(base2);
        ainv[idx] =
            st.rows[idx].empty() ? mg.ginv[idx] : (mg.g[idx] + H[idx]).inverse().eval();
    }
    Eigen::VectorXd lhs = trace_laplacian(grid, st, ainv, psi);
    Eigen::VectorXd lhs2 = trace_laplacian(grid, st, ainv, psi2);

    InequalityReport rep;
    rep.min_margin = std::numeric_limits<double>::infinity();
    rep.grid_h = std::max(grid.tstep(), grid.kind == GridKind::Radial1 ? 0.0
                                                                       : grid.second_step());
    double shift_min = std::numeric_limits<double>::infinity();
    int shift_argmin = -1;
    auto margin_pair = [&](int idx) {
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> ges(H[idx], mg.g[idx]);
        Eigen::VectorXd lam = ges.eigenvalues();
        Eigen::MatrixXcd V = ges.eigenvectors();  // g-orthonormal columns
        CurvatureSample cs =
            curvature_at(fam.params, fam.weight, fam.base,
                         grid.point(idx / grid.nj(), idx % grid.nj()));
        Eigen::MatrixXd Rab(n, n);
        double rsum_abs = 0.0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                Complex v(0.0);
                for (int i1 = 0; i1 < n; ++i1)
                    for (int i2 = 0; i2 < n; ++i2)
                        for (int i3 = 0; i3 < n; ++i3)
                            for (int i4 = 0; i4 < n; ++i4)
                                v += cs.at(i1, i2, i3, i4) * V(i1, a) * std::conj(V(i2, a)) *
                                     V(i3, b) * std::conj(V(i4, b));
                Rab(a, b) = v.real();
                rsum_abs += std::abs(Rab(a, b));
            }
        double curv = 0.0, inv_sum = 0.0;
        for (int a = 0; a < n; ++a) {
            inv_sum += 1.0 / (1.0 + lam[a]);
            for (int b = 0; b < n; ++b)
                curv += -Rab(a, b) + Rab(a, b) * (1.0 + lam[a]) / (1.0 + lam[b]);
        }
        double rhs = (lap_f[idx] + curv) / (n + lap[idx]);
        double rhs2 = rhs - c2 * n + c2 * inv_sum;
        return std::tuple<double, double, double>(lhs[idx] - rhs, lhs2[idx] - rhs2, rsum_abs);
    };

    const double h = grid.tstep();
    auto fourth_diff = [&](const Eigen::VectorXd& v, int i, int j) {
        double d = std::abs(v[grid.index(i - 2, j)] - 4 * v[grid.index(i - 1, j)] +
                            6 * v[grid.index(i, j)] - 4 * v[grid.index(i + 1, j)] +
                            v[grid.index(i + 2, j)]) /
                   (h * h * h * h);
        if (grid.kind != GridKind::Radial1) {
            int nj = grid.nj();
            auto W = [&](int dj) { return grid.index(i, (j + dj + 2 * nj) % nj); };
            double hx = grid.second_step();
            d += std::abs(v[W(-2)] - 4 * v[W(-1)] + 6 * v[W(0)] - 4 * v[W(1)] + v[W(2)]) /
                 (hx * hx * hx * hx);
        }
        return d;
    };

    for (int i = 2; i + 2 < grid.ni(); ++i)
        for (int j = 0; j < grid.nj(); ++j) {
            int idx = grid.index(i, j);
            auto [m0, m2, rabs] = margin_pair(idx);
            double scale = 1.0 + fourth_diff(phi, i, j) + fourth_diff(source.f, i, j) + rabs;
            rep.max_local_scale = std::max(rep.max_local_scale, scale);
            if (m0 / scale < rep.min_margin) {
                rep.min_margin = m0 / scale;
                rep.argmin_node = idx;
            }
            double shifted = n + lap[idx] - c2 * phi[idx];
            if (shifted < shift_min) {
                shift_min = shifted;
                shift_argmin = idx;
                rep.margin_plain_at_shift_argmin = m0;
                rep.margin_shifted_at_shift_argmin = m2;
            }
        }
    (void)shift_argmin;
    return rep;
}

double localized_residual(const Eigen::VectorXd& w, const SolveGrid& grid, double mu,
                          const Eigen::VectorXd& H, double tau, double psh_tol) {
    HessStencil st = hessian_stencil(grid);
    std::vector<Eigen::MatrixXcd> Hw = apply_hessian(grid, st, w);
    std::vector<Eigen::MatrixXcd> Hh = apply_hessian(grid, st, H);
    double worst = 0.0;
    for (int i = 1; i + 1 < grid.ni(); ++i)
        for (int j = 0; j < grid.nj(); ++j) {
            int idx = grid.index(i, j);
            if (st.rows[idx].empty()) continue;
            double hlap = Hh[idx].cwiseAbs().maxCoeff();
            if (hlap > psh_tol)
                throw InvalidParams("supplied H is not pluriharmonic on the grid");
            if (!positive_definite(Hw[idx]))
                throw NonPshError("w is not strictly plurisubharmonic on the grid");
            double ld = logdet_hermitian(Hw[idx]);
            double target = (2.0 * tau - 2.0) * std::log(grid.rho(i)) - mu * w[idx] + H[idx];
            worst = std::max(worst, std::abs(ld - target));
        }
    return worst;
}

std::pair<Eigen::VectorXd, double> recover_pluriharmonic(const Eigen::VectorXd& w,
                                                         const SolveGrid& grid, double mu,
                                                         double tau) {
    HessStencil st = hessian_stencil(grid);
    std::vector<Eigen::MatrixXcd> Hw = apply_hessian(grid, st, w);
    Eigen::VectorXd H = Eigen::VectorXd::Zero(grid.size());
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int i = 1; i + 1 < grid.ni(); ++i)
        for (int j = 0; j < grid.nj(); ++j) {
            int idx = grid.index(i, j);
            if (st.rows[idx].empty()) continue;
            if (!positive_definite(Hw[idx]))
                throw NonPshError("w is not strictly plurisubharmonic on the grid");
            H[idx] = logdet_hermitian(Hw[idx]) - (2.0 * tau - 2.0) * std::log(grid.rho(i)) +
                     mu * w[idx];
            if (grid.rho(i) <= 0.5 * grid.rho_max) {
                lo = std::min(lo, H[idx]);
                hi = std::max(hi, H[idx]);
            }
        }
    return {H, hi - lo};
}

std::vector<ContinuationStep> epsilon_continuation(const ReferenceFamily& fam,
                                                   const SolveGrid& grid,
                                                   const Eigen::VectorXd& f_raw,
                                                   const std::vector<double>& eps_schedule,
                                                   const NewtonOptions& opts,
                                                   SourceFamily family) {
    for (std::size_t i = 1; i < eps_schedule.size(); ++i)
        if (eps_schedule[i] > eps_schedule[i - 1])
            throw InvalidParams("epsilon schedule must decrease");
    std::vector<ContinuationStep> steps;
    Eigen::VectorXd prev_phi;
    Eigen::VectorXd prev_expf;
    for (double eps : eps_schedule) {
        if (!(eps > 0.0)) throw InvalidParams("epsilon schedule must stay positive");
        ReferenceFamily f_eps = fam;
        f_eps.params.epsilon = eps;
        MetricGrid mg = build_metric_grid(f_eps.params, f_eps.weight, f_eps.base, grid);
        Eigen::VectorXd raw = f_raw;
        if (family == SourceFamily::EpsDamped)
            for (int i = 0; i < grid.ni(); ++i)
                for (int j = 0; j < grid.nj(); ++j) {
                    double s = grid.rho(i) * grid.rho(i);
                    raw[grid.index(i, j)] *= s / (s + eps);
                }
        SourceTerm src = build_rhs(raw, mg);
        ContinuationStep step;
        step.eps = eps;
        try {
            NewtonResult res = newton_solve(f_eps, grid, src, opts,
                                            prev_phi.size() ? &prev_phi : nullptr);
            step.phi = res.phi;
            step.report = res.report;
        } catch (SolveError& e) {
            throw SolveError(e.kind, "eps = " + std::to_string(eps) + ": " + e.what());
        }
        Eigen::VectorXd expf = src.f.array().exp();
        if (prev_phi.size()) {
            step.cauchy_diff = (step.phi - prev_phi).cwiseAbs().maxCoeff();
            double acc = 0.0;
            for (int k = 0; k < expf.size(); ++k) {
                double d = expf[k] - prev_expf[k];
                acc += d * d * mg.vol[k];
            }
            step.source_l2_diff = std::sqrt(acc / mg.vol.sum());
        }
        prev_phi = step.phi;
        prev_expf = expf;
        steps.push_back(std::move(step));
    }
    return steps;
}

Eigen::VectorXd poisson_continuation_oracle(const MetricGrid& mg, const SourceTerm& source) {
    if (mg.n != 1) throw InvalidParams("the linear route exists only in dimension one");
    const SolveGrid& grid = mg.grid;
    HessStencil st = hessian_stencil(grid);
    std::vector<Eigen::MatrixXcd> ident(grid.size(), Eigen::MatrixXcd::Identity(1, 1));
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(grid.size());
    for (int idx = 0; idx < grid.size(); ++idx)
        if (!st.rows[idx].empty())
            rhs[idx] = mg.g[idx](0, 0).real() * (std::exp(source.f[idx]) - 1.0);
    return solve_trace_poisson(grid, st, ident, rhs, Eigen::VectorXd::Zero(grid.size()));
}

Manufactured manufactured_problem(const ReferenceFamily& fam, const SolveGrid& grid,
                                  double amplitude) {
    if (grid.kind != GridKind::RadialSmooth)
        throw InvalidParams("manufactured problems live on the reduced two-dimensional grid");
    MetricGrid mg = build_metric_grid(fam.params, fam.weight, fam.base, grid);
    const double a = grid.rho_min, b = grid.rho_max, L = grid.extent;
    const double k = 2.0 * M_PI / L, c = M_PI / (b - a);
    Manufactured out;
    out.phi_star = Eigen::VectorXd::Zero(grid.size());
    Eigen::VectorXd f = Eigen::VectorXd::Zero(grid.size());
    for (int i = 0; i < grid.ni(); ++i)
        for (int j = 0; j < grid.nj(); ++j) {
            int idx = grid.index(i, j);
            double rho = grid.rho(i), x = grid.second(j);
            double s = c * (rho - a);
            double chi = std::sin(s) * std::sin(s);
            double chi_p = c * std::sin(2.0 * s);
            double chi_pp = 2.0 * c * c * std::cos(2.0 * s);
            double cx = std::cos(k * x), sx = std::sin(k * x);
            out.phi_star[idx] = amplitude * chi * cx;
            double phi_r = amplitude * chi_p * cx;
            double phi_rr = amplitude * chi_pp * cx;
            double phi_x = -amplitude * k * chi * sx;
            double phi_xx = -amplitude * k * k * chi * cx;
            double phi_rx = -amplitude * k * chi_p * sx;
            (void)phi_x;
            Eigen::MatrixXcd H(2, 2);
            H(0, 0) = 0.25 * (phi_rr + phi_r / rho);
            H(1, 1) = 0.25 * phi_xx;
            H(0, 1) = 0.25 * phi_rx;
            H(1, 0) = 0.25 * phi_rx;
            f[idx] = logdet_hermitian(mg.g[idx] + H) - mg.logdet[idx];
            if (std::isnan(f[idx]))
                throw PositivityError(grid.point(i, j), -1.0);
        }
    out.source.f = std::move(f);
    out.source.normalized = false;
    return out;
}

}  // namespace conekit
