#include "conekit/grid.hpp"

#include <cmath>

namespace conekit {

void SolveGrid::validate() const {
    if (n_rho < 4) throw InvalidParams("radial resolution must be >= 4");
    if (!(rho_min > 0.0 && rho_max > rho_min)) throw InvalidParams("need 0 < rho_min < rho_max");
    if (kind != GridKind::Radial1 && n_second < 4)
        throw InvalidParams("second-axis resolution must be >= 4");
    if (kind == GridKind::RadialSmooth && !(extent > 0))
        throw InvalidParams("smooth extent must be positive");
}

Eigen::VectorXcd SolveGrid::point(int i, int j) const {
    switch (kind) {
        case GridKind::Radial1: {
            Eigen::VectorXcd z(1);
            z[0] = rho(i);
            return z;
        }
        case GridKind::RadialSmooth: {
            Eigen::VectorXcd z(2);
            z[0] = rho(i);
            z[1] = second(j);
            return z;
        }
        case GridKind::Polar1: {
            Eigen::VectorXcd z(1);
            z[0] = std::polar(rho(i), second(j));
            return z;
        }
    }
    return {};
}

double SolveGrid::coord_weight(int i, int j) const {
    (void)j;
    double drho = log_spacing ? rho(i) * tstep() : tstep();
    double w = rho(i) * drho;
    if (radial_boundary(i)) w *= 0.5;
    if (kind != GridKind::Radial1) w *= second_step();
    return w;
}

HessStencil hessian_stencil(const SolveGrid& grid) {
    grid.validate();
    HessStencil st;
    st.rows.assign(grid.size(), {});
    const double h = grid.tstep();
    const int nj = grid.nj();
    const int dim = grid.complex_dim();

    const bool wrap = grid.second_periodic || grid.kind == GridKind::Polar1;
    for (int i = 0; i < grid.ni(); ++i) {
        if (grid.radial_boundary(i)) continue;
        for (int j = 0; j < nj; ++j) {
            if (grid.kind != GridKind::Radial1 && !wrap && (j == 0 || j == nj - 1)) continue;
            const double rho = grid.rho(i);
            // phi_t and phi_tt weights in the uniform radial coordinate
            struct W {
                int di, dj;
                double t, tt, x, xx, tx;
            };
            std::vector<W> taps = {
                {-1, 0, -0.5 / h, 1.0 / (h * h), 0, 0, 0},
                {0, 0, 0, -2.0 / (h * h), 0, 0, 0},
                {1, 0, 0.5 / h, 1.0 / (h * h), 0, 0, 0},
            };
            double hx = grid.second_step();
            if (grid.kind != GridKind::Radial1) {
                taps.push_back({0, -1, 0, 0, -0.5 / hx, 1.0 / (hx * hx), 0});
                taps.push_back({0, 0, 0, 0, 0, -2.0 / (hx * hx), 0});
                taps.push_back({0, 1, 0, 0, 0.5 / hx, 1.0 / (hx * hx), 0});
                double c = 1.0 / (4.0 * h * hx);
                taps.push_back({1, 1, 0, 0, 0, 0, c});
                taps.push_back({1, -1, 0, 0, 0, 0, -c});
                taps.push_back({-1, 1, 0, 0, 0, 0, -c});
                taps.push_back({-1, -1, 0, 0, 0, 0, c});
            }
            auto& row = st.rows[grid.index(i, j)];
            for (const auto& tap : taps) {
                // chain rule from the uniform coordinate to rho
                double d_rho = 0, d_rhorho = 0, d_xx = tap.xx, d_rhox = 0;
                if (grid.log_spacing) {
                    d_rho = tap.t / rho;
                    d_rhorho = (tap.tt - tap.t) / (rho * rho);
                    d_rhox = tap.tx / rho;
                } else {
                    d_rho = tap.t;
                    d_rhorho = tap.tt;
                    d_rhox = tap.tx;
                }
                Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(dim, dim);
                switch (grid.kind) {
                    case GridKind::Radial1:
                        w(0, 0) = 0.25 * d_rhorho + 0.25 * d_rho / rho;
                        break;
                    case GridKind::RadialSmooth:
                        w(0, 0) = 0.25 * d_rhorho + 0.25 * d_rho / rho;
                        w(1, 1) = 0.25 * d_xx;
                        w(0, 1) = 0.25 * d_rhox;
                        w(1, 0) = 0.25 * d_rhox;
                        break;
                    case GridKind::Polar1:
                        w(0, 0) = 0.25 * (d_rhorho + d_rho / rho + d_xx / (rho * rho));
                        break;
                }
                if (w.cwiseAbs().maxCoeff() == 0.0) continue;
                int jj = tap.dj == 0 ? j : (j + tap.dj + nj) % nj;
                row.push_back({grid.index(i + tap.di, jj), std::move(w)});
            }
        }
    }
    return st;
}

std::vector<Eigen::MatrixXcd> apply_hessian(const SolveGrid& grid, const HessStencil& st,
                                            const Eigen::VectorXd& phi) {
    const int dim = grid.complex_dim();
    std::vector<Eigen::MatrixXcd> out(grid.size(), Eigen::MatrixXcd::Zero(dim, dim));
    for (int nidx = 0; nidx < grid.size(); ++nidx)
        for (const auto& e : st.rows[nidx]) out[nidx] += e.w * phi[e.node];
    return out;
}

MetricGrid build_metric_grid(const ConeParams& params, const HermitianWeight& weight,
                             const Eigen::MatrixXcd& base, const SolveGrid& grid) {
    grid.validate();
    MetricGrid mg;
    mg.grid = grid;
    mg.n = grid.complex_dim();
    const int sz = grid.size();
    mg.g.resize(sz);
    mg.ginv.resize(sz);
    mg.logdet.resize(sz);
    mg.vol.resize(sz);
    for (int i = 0; i < grid.ni(); ++i)
        for (int j = 0; j < grid.nj(); ++j) {
            int idx = grid.index(i, j);
            Eigen::VectorXcd z = grid.point(i, j);
            Eigen::MatrixXcd g = reference_metric_jet(params, weight, base, z, 0).g;
            double me = min_eigenvalue(g);
            if (!(me > 0.0)) throw PositivityError(z, me);
            mg.g[idx] = g;
            mg.ginv[idx] = g.inverse();
            double det = g.determinant().real();
            mg.logdet[idx] = std::log(det);
            mg.vol[idx] = grid.coord_weight(i, j) * det;
        }
    return mg;
}

MetricGrid build_metric_grid_custom(
    const SolveGrid& grid, const std::function<Eigen::MatrixXcd(const Eigen::VectorXcd&)>& fn) {
    grid.validate();
    MetricGrid mg;
    mg.grid = grid;
    mg.n = grid.complex_dim();
    const int sz = grid.size();
    mg.g.resize(sz);
    mg.ginv.resize(sz);
    mg.logdet.resize(sz);
    mg.vol.resize(sz);
    for (int i = 0; i < grid.ni(); ++i)
        for (int j = 0; j < grid.nj(); ++j) {
            int idx = grid.index(i, j);
            Eigen::MatrixXcd g = fn(grid.point(i, j));
            double me = min_eigenvalue(g);
            if (!(me > 0.0)) throw PositivityError(grid.point(i, j), me);
            mg.g[idx] = g;
            mg.ginv[idx] = g.inverse();
            double det = g.determinant().real();
            mg.logdet[idx] = std::log(det);
            mg.vol[idx] = grid.coord_weight(i, j) * det;
        }
    return mg;
}

Eigen::VectorXd trace_laplacian(const SolveGrid& grid, const HessStencil& st,
                                const std::vector<Eigen::MatrixXcd>& ainv,
                                const Eigen::VectorXd& phi) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(grid.size());
    for (int nidx = 0; nidx < grid.size(); ++nidx)
        for (const auto& e : st.rows[nidx])
            out[nidx] += ((ainv[nidx] * e.w).trace()).real() * phi[e.node];
    return out;
}

Eigen::VectorXd solve_trace_poisson(const SolveGrid& grid, const HessStencil& st,
                                    const std::vector<Eigen::MatrixXcd>& ainv,
                                    const Eigen::VectorXd& rhs, const Eigen::VectorXd& bc,
                                    double shift) {
    const int sz = grid.size();
    std::vector<Eigen::Triplet<double>> trips;
    Eigen::VectorXd b(sz);
    for (int nidx = 0; nidx < sz; ++nidx) {
        if (st.rows[nidx].empty()) {  // Dirichlet row
            trips.emplace_back(nidx, nidx, 1.0);
            b[nidx] = bc[nidx];
            continue;
        }
        for (const auto& e : st.rows[nidx])
            trips.emplace_back(nidx, e.node, ((ainv[nidx] * e.w).trace()).real());
        if (shift != 0.0) trips.emplace_back(nidx, nidx, shift);
        b[nidx] = rhs[nidx];
    }
    Eigen::SparseMatrix<double> A(sz, sz);
    A.setFromTriplets(trips.begin(), trips.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.analyzePattern(A);
    lu.factorize(A);
    if (lu.info() != Eigen::Success) throw std::runtime_error("linear solve failed to factorize");
    Eigen::VectorXd u = lu.solve(b);
    if (lu.info() != Eigen::Success) throw std::runtime_error("linear solve failed");
    return u;
}

}  // namespace conekit
