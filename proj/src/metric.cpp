#include "conekit/metric.hpp"

#include <cmath>

namespace conekit {

std::vector<double> DomainSpec::rho_values(int j) const {
    const ConeAxisSpec& c = cone.at(j);
    std::vector<double> rho(c.n_rho);
    for (int i = 0; i < c.n_rho; ++i) {
        double s = c.n_rho == 1 ? 0.0 : double(i) / (c.n_rho - 1);
        rho[i] = c.log_spacing ? c.rho_min * std::pow(c.rho_max / c.rho_min, s)
                               : c.rho_min + s * (c.rho_max - c.rho_min);
    }
    return rho;
}

std::vector<Eigen::VectorXcd> DomainSpec::points() const {
    std::vector<Eigen::VectorXcd> pts;
    std::vector<std::vector<Complex>> axes;
    for (int j = 0; j < k(); ++j) {
        std::vector<Complex> vals;
        for (double rho : rho_values(j))
            for (int a = 0; a < cone[j].n_theta; ++a) {
                double th = 2.0 * M_PI * a / cone[j].n_theta;
                vals.push_back(Complex(rho * std::cos(th), rho * std::sin(th)));
            }
        axes.push_back(std::move(vals));
    }
    for (const auto& s : smooth) {
        std::vector<Complex> vals;
        for (int i = 0; i < s.n; ++i) vals.push_back(Complex(s.extent * i / s.n, 0.0));
        axes.push_back(std::move(vals));
    }
    std::vector<int> idx(axes.size(), 0);
    while (true) {
        Eigen::VectorXcd z(n);
        for (std::size_t a = 0; a < axes.size(); ++a) z[a] = axes[a][idx[a]];
        pts.push_back(z);
        int a = int(axes.size()) - 1;
        while (a >= 0 && ++idx[a] == int(axes[a].size())) idx[a--] = 0;
        if (a < 0) break;
    }
    return pts;
}

Eigen::MatrixXcd eval_model_metric(const ConeParams& params, const DomainSpec& domain,
                                   const Eigen::VectorXcd& z) {
    params.validate();
    domain.validate(params.epsilon);
    const double eps = params.epsilon;
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Identity(domain.n, domain.n);
    for (int j = 0; j < domain.k(); ++j) {
        double tau = domain.cone[j].tau;
        double s = std::norm(z[j]);
        if (s == 0.0 && eps == 0.0)
            throw SingularPointError("model metric singular at z_" + std::to_string(j + 1) +
                                     " = 0 with epsilon = 0");
        // ddc (s + eps)^tau = tau (s+eps)^(tau-2) (tau s + eps)
        g(j, j) = tau * std::pow(s + eps, tau - 2.0) * (tau * s + eps);
    }
    return g;
}

namespace {

/// Jet of u = a(z) |z_1|^2 + eps for the slot multisets needed downstream.
Complex u_part(const WeightJet& aj, const Eigen::VectorXcd& z, double eps, JetKey key) {
    std::sort(key.begin(), key.end());
    // split derivatives between a and the |z1|^2 factor
    Complex total(0.0);
    const int m = int(key.size());
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        JetKey on_a, on_b;
        for (int i = 0; i < m; ++i)
            ((mask >> i) & 1u ? on_b : on_a).push_back(key[i]);
        // derivatives of z1 zbar1: order 0: |z1|^2; (1): zbar1; (1~): z1; (1,1~): 1
        Complex bfac(0.0);
        bool ok = true;
        for (const auto& s : on_b)
            if (s.idx != 0) { ok = false; break; }
        if (!ok) continue;
        if (on_b.empty()) bfac = std::norm(z[0]);
        else if (on_b.size() == 1) bfac = on_b[0].bar ? z[0] : std::conj(z[0]);
        else if (on_b.size() == 2 && on_b[0].bar != on_b[1].bar) bfac = 1.0;
        else continue;
        total += aj(on_a) * bfac;
    }
    if (m == 0) total += eps;
    return total;
}

double falling(double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= (x - i);
    return r;
}

}  // namespace

MetricJet reference_metric_jet(const ConeParams& params, const HermitianWeight& weight,
                               const Eigen::MatrixXcd& base, const Eigen::VectorXcd& z,
                               int order) {
    params.validate();
    const int n = int(z.size());
    WeightJet aj = weight.jet(z);
    const double eps = params.epsilon;
    const double u0 = u_part(aj, z, eps, {}).real();
    if (u0 <= 0.0) {
        if (std::norm(z[0]) == 0.0 && eps == 0.0)
            throw SingularPointError("reference metric singular on the divisor with epsilon = 0");
        throw InvalidParams("weight produced a nonpositive |s|^2_h");
    }
    // F(u) = a_coef u^tau + sign c_coef u^tau'; derivatives to order 4
    double F[5];
    for (int kd = 1; kd <= 4; ++kd)
        F[kd] = params.a_coef * falling(params.tau, kd) * std::pow(u0, params.tau - kd) +
                params.correction_sign * params.c_coef * falling(params.tau_prime, kd) *
                    std::pow(u0, params.tau_prime - kd);
    F[0] = 0.0;  // the potential's value itself never enters the metric

    auto pot_deriv = [&](const JetKey& key) -> Complex {
        Complex sum(0.0);
        for_each_partition(key, [&](const std::vector<std::vector<JetSlot>>& blocks) {
            Complex prod = F[blocks.size()];
            for (const auto& b : blocks) {
                if (prod == Complex(0.0)) return;
                prod *= u_part(aj, z, eps, b);
            }
            sum += prod;
        });
        return sum;
    };

    MetricJet out;
    out.g = base;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            out.g(a, b) += pot_deriv({{a, false}, {b, true}});
    if (order >= 1) {
        out.d.assign(n, Eigen::MatrixXcd::Zero(n, n));
        for (int c = 0; c < n; ++c)
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    out.d[c](a, b) = pot_deriv({{a, false}, {b, true}, {c, false}});
    }
    if (order >= 2) {
        out.dd.assign(n, std::vector<Eigen::MatrixXcd>(n, Eigen::MatrixXcd::Zero(n, n)));
        for (int c = 0; c < n; ++c)
            for (int e = 0; e < n; ++e)
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b)
                        out.dd[c][e](a, b) =
                            pot_deriv({{a, false}, {b, true}, {c, false}, {e, true}});
    }
    return out;
}

double min_eigenvalue(const Eigen::MatrixXcd& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

Eigen::MatrixXcd eval_reference_metric(const ConeParams& params, const HermitianWeight& weight,
                                       const Eigen::MatrixXcd& base, const Eigen::VectorXcd& z,
                                       bool check_positivity) {
    Eigen::MatrixXcd g = reference_metric_jet(params, weight, base, z, 0).g;
    if (check_positivity) {
        double me = min_eigenvalue(g);
        if (!(me > 0.0)) throw PositivityError(z, me);
    }
    return g;
}

ScaleSearchResult positivity_scale_search(const ConeParams& params, const HermitianWeight& weight,
                                          const Eigen::MatrixXcd& base,
                                          const std::vector<Eigen::VectorXcd>& samples,
                                          int max_halvings) {
    double factor = 1.0;
    for (int step = 0; step <= max_halvings; ++step, factor *= 0.5) {
        HermitianWeight w = weight.scaled(factor);
        double worst = std::numeric_limits<double>::infinity();
        for (const auto& z : samples)
            worst = std::min(worst, min_eigenvalue(reference_metric_jet(params, w, base, z, 0).g));
        if (worst > 0.0) return {factor, worst, step};
    }
    throw PositivityError(samples.empty() ? Eigen::VectorXcd() : samples.front(),
                          -std::numeric_limits<double>::infinity());
}

}  // namespace conekit
