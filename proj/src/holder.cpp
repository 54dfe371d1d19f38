#include "conekit/holder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace conekit {

namespace {

double wrap_angle(double d) {
    while (d > M_PI) d -= 2.0 * M_PI;
    while (d < -M_PI) d += 2.0 * M_PI;
    return d;
}

}  // namespace

double d_tau(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y, double tau, int cone_dirs,
             DistanceConvention conv) {
    if (!(tau > 0.0 && tau <= 1.0)) throw InvalidParams("d_tau needs tau in (0,1]");
    if (conv == DistanceConvention::Uniformization) {
        double p = 1.0 / tau;
        if (std::abs(p - std::round(p)) > 1e-9)
            throw InvalidParams("uniformization distance needs tau = 1/p");
    }
    double d2 = 0.0;
    for (int j = 0; j < int(x.size()); ++j) {
        if (j < cone_dirs) {
            double r1 = std::abs(x[j]), r2 = std::abs(y[j]);
            double th1 = r1 == 0.0 ? 0.0 : std::arg(x[j]);
            double th2 = r2 == 0.0 ? 0.0 : std::arg(y[j]);
            double s1 = std::pow(r1, tau), s2 = std::pow(r2, tau);
            double dth = wrap_angle(th1 - th2);
            if (conv == DistanceConvention::Uniformization) dth *= tau;
            d2 += s1 * s1 + s2 * s2 - 2.0 * s1 * s2 * std::cos(dth);
        } else {
            d2 += std::norm(x[j] - y[j]);
        }
    }
    return std::sqrt(std::max(0.0, d2));
}

HolderReport holder_seminorm(const SampledFunction& f, double alpha, double tau,
                             std::size_t pair_budget, int cone_dirs, DistanceConvention conv) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidParams("alpha must lie in (0,1]");
    const std::size_t N = f.points.size();
    if (N == 0 || f.values.size() != Eigen::Index(N))
        throw InvalidParams("empty or inconsistent sampled function");
    HolderReport rep;
    rep.alpha = alpha;
    rep.tau = tau;
    rep.sup_norm = f.values.cwiseAbs().maxCoeff();

    auto quotient = [&](std::size_t i, std::size_t j) {
        double d = d_tau(f.points[i], f.points[j], tau, cone_dirs, conv);
        if (d == 0.0) return -1.0;
        return std::abs(f.values[i] - f.values[j]) / std::pow(d, alpha);
    };
    auto consider = [&](std::size_t i, std::size_t j) {
        double q = quotient(i, j);
        ++rep.pairs_used;
        if (q > rep.seminorm) {
            rep.seminorm = q;
            rep.argmax_i = i;
            rep.argmax_j = j;
        }
    };

    if (N * (N - 1) / 2 <= pair_budget) {
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = i + 1; j < N; ++j) consider(i, j);
        rep.exhaustive = true;
    } else {
        rep.exhaustive = false;
        // order by distance to the divisor; keep the near block exhaustive
        std::vector<std::size_t> ord(N);
        std::iota(ord.begin(), ord.end(), 0);
        std::stable_sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) {
            return std::abs(f.points[a][0]) < std::abs(f.points[b][0]);
        });
        std::size_t head = std::min<std::size_t>(N, 256);
        for (std::size_t i = 0; i < head; ++i)
            for (std::size_t j = i + 1; j < head; ++j) consider(ord[i], ord[j]);
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t m = 1; i + m < N; m *= 2) consider(ord[i], ord[i + m]);
    }
    rep.total = rep.sup_norm + rep.seminorm;
    return rep;
}

HolderReport c2alpha_norm(const Eigen::VectorXd& phi, const MetricGrid& mg, double alpha,
                          double tau, std::size_t pair_budget) {
    const SolveGrid& grid = mg.grid;
    if (phi.size() != Eigen::Index(grid.size()))
        throw InvalidParams("potential does not live on the metric grid");
    HessStencil st = hessian_stencil(grid);
    std::vector<Eigen::MatrixXcd> H = apply_hessian(grid, st, phi);

    const int dim = mg.n;
    double sup_phi = 0.0, sup_trace = 0.0;
    std::vector<Eigen::VectorXcd> pts;
    std::vector<Eigen::MatrixXcd> comps;
    for (int i = 0; i < grid.ni(); ++i)
        for (int j = 0; j < grid.nj(); ++j) {
            int idx = grid.index(i, j);
            sup_phi = std::max(sup_phi, std::abs(phi[idx]));
            if (st.rows[idx].empty()) continue;  // boundary: no Hessian
            Eigen::LLT<Eigen::MatrixXcd> llt(mg.g[idx]);
            Eigen::MatrixXcd L = llt.matrixL();
            Eigen::MatrixXcd frame =
                L.triangularView<Eigen::Lower>().solve(Eigen::MatrixXcd(H[idx]));
            frame = L.triangularView<Eigen::Lower>()
                        .solve(Eigen::MatrixXcd(frame.adjoint()))
                        .adjoint();
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(frame, Eigen::EigenvaluesOnly);
            sup_trace = std::max(sup_trace, es.eigenvalues().cwiseAbs().sum());
            pts.push_back(grid.point(i, j));
            comps.push_back(frame);
        }

    HolderReport rep;
    rep.alpha = alpha;
    rep.tau = tau;
    rep.sup_norm = sup_phi + sup_trace;
    for (int a = 0; a < dim; ++a)
        for (int b = a; b < dim; ++b)
            for (int part = 0; part < 2; ++part) {
                SampledFunction f;
                f.points = pts;
                f.values.resize(Eigen::Index(comps.size()));
                for (std::size_t k = 0; k < comps.size(); ++k)
                    f.values[Eigen::Index(k)] =
                        part == 0 ? comps[k](a, b).real() : comps[k](a, b).imag();
                HolderReport sub = holder_seminorm(f, alpha, tau, pair_budget);
                if (sub.seminorm > rep.seminorm) {
                    rep.seminorm = sub.seminorm;
                    rep.argmax_i = sub.argmax_i;
                    rep.argmax_j = sub.argmax_j;
                }
                rep.pairs_used += sub.pairs_used;
                rep.exhaustive = rep.exhaustive && sub.exhaustive;
            }
    rep.total = rep.sup_norm + rep.seminorm;
    return rep;
}

}  // namespace conekit
