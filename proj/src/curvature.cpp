#include "conekit/curvature.hpp"

#include <cmath>
#include <random>

namespace conekit {

CurvatureSample curvature_at(const ConeParams& params, const HermitianWeight& weight,
                             const Eigen::MatrixXcd& base, const Eigen::VectorXcd& z) {
    MetricJet jet = reference_metric_jet(params, weight, base, z, 2);
    const int n = int(z.size());
    CurvatureSample s;
    s.point = z;
    s.n = n;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(jet.g, Eigen::EigenvaluesOnly);
    double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
    if (!(lo > 0.0)) throw PositivityError(z, lo);
    s.condition_number = hi / lo;
    s.conditioning_warning = s.condition_number > 1e12;

    Eigen::MatrixXcd ginv = jet.g.inverse();
    s.R.assign(std::size_t(n) * n * n * n, Complex(0.0));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    Complex v = -jet.dd[c][d](a, b);
                    for (int mu = 0; mu < n; ++mu)
                        for (int nu = 0; nu < n; ++nu)
                            v += ginv(nu, mu) * jet.d[c](a, nu) * std::conj(jet.d[d](b, mu));
                    s.R[std::size_t(((a * n + b) * n + c) * n + d)] = v;
                }

    double defect = 0.0, scale = 0.0;
    for (const auto& v : s.R) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) scale = 1.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    Complex r = s.at(a, b, c, d);
                    defect = std::max(defect, std::abs(r - std::conj(s.at(b, a, d, c))) / scale);
                    defect = std::max(defect, std::abs(r - s.at(c, b, a, d)) / scale);
                }
    s.symmetry_defect = defect;

    Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(n);
    e1[0] = 1.0;
    s.bisectional.emplace_back("d1,d1", normalized_bisectional(s, jet.g, e1, e1));
    for (int j = 1; j < n; ++j) {
        Eigen::VectorXcd ej = Eigen::VectorXcd::Zero(n);
        ej[j] = 1.0;
        s.bisectional.emplace_back("d1,d" + std::to_string(j + 1),
                                   normalized_bisectional(s, jet.g, e1, ej));
    }
    return s;
}

double normalized_bisectional(const CurvatureSample& s, const Eigen::MatrixXcd& g,
                              const Eigen::VectorXcd& v, const Eigen::VectorXcd& w) {
    const int n = s.n;
    Complex num(0.0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d)
                    num += s.at(a, b, c, d) * v[a] * std::conj(v[b]) * w[c] * std::conj(w[d]);
    auto norm2 = [&](const Eigen::VectorXcd& x) {
        Complex t(0.0);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) t += g(a, b) * x[a] * std::conj(x[b]);
        return t.real();
    };
    return num.real() / (norm2(v) * norm2(w));
}

RateFit fit_blowup_rate(const ConeParams& params, const HermitianWeight& weight,
                        const Eigen::MatrixXcd& base, const std::vector<double>& radii,
                        RateMode mode) {
    if (radii.size() < 4) throw InvalidParams("rate fit needs at least 4 radii");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (radii[i] <= 0.0) throw InvalidParams("rate fit radii must be positive");
        if (i > 0 && radii[i] >= radii[i - 1])
            throw InvalidParams("rate fit radii must decrease");
    }
    const int n = int(base.rows());
    RateFit fit;
    fit.radii = radii;
    std::vector<double> lx, ly;
    for (double r : radii) {
        Eigen::VectorXcd z = Eigen::VectorXcd::Zero(n);
        z[0] = r;
        CurvatureSample s = curvature_at(params, weight, base, z);
        double val;
        if (mode == RateMode::Component) {
            val = s.at(0, 0, 0, 0).real();
        } else {
            MetricJet j = reference_metric_jet(params, weight, base, z, 0);
            Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(n);
            e1[0] = 1.0;
            val = normalized_bisectional(s, j.g, e1, e1);
        }
        (val > 0 ? fit.positive_samples : fit.negative_samples)++;
        if (std::abs(val) > 1e-12) {
            lx.push_back(std::log(r));
            ly.push_back(std::log(std::abs(val)));
        }
    }
    if (lx.size() < 4)
        throw DegenerateFitError("curvature samples vanish; nothing to fit");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) { mx += lx[i]; my += ly[i]; }
    mx /= lx.size();
    my /= ly.size();
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    fit.exponent = sxy / sxx;
    fit.log_coefficient = my - fit.exponent * mx;
    double ss = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        double e = ly[i] - (fit.log_coefficient + fit.exponent * lx[i]);
        ss += e * e;
    }
    fit.residual = std::sqrt(ss / lx.size());
    return fit;
}

LowerBoundScan uniform_lower_bound_scan(const ConeParams& params, const HermitianWeight& weight,
                                        const Eigen::MatrixXcd& base,
                                        const std::vector<double>& eps_list,
                                        const DomainSpec& domain, unsigned seed,
                                        int random_pairs) {
    const int n = domain.n;
    LowerBoundScan scan;
    scan.overall_inf = std::numeric_limits<double>::infinity();
    for (double eps : eps_list) {
        if (!(eps > 0.0 && eps <= 1.0))
            throw InvalidParams("epsilon sweep values must lie in (0, 1]");
        ConeParams p = params;
        p.epsilon = eps;
        domain.validate(eps);
        std::mt19937 rng(seed);  // same pair draws for every epsilon
        std::normal_distribution<double> gauss(0.0, 1.0);
        double inf = std::numeric_limits<double>::infinity();
        for (const auto& z : domain.points()) {
            CurvatureSample s = curvature_at(p, weight, base, z);
            MetricJet j = reference_metric_jet(p, weight, base, z, 0);
            double rho = std::abs(z[0]);
            for (const auto& [tag, val] : s.bisectional) {
                scan.rows.push_back({eps, rho, tag, val});
                inf = std::min(inf, val);
            }
            for (int k = 0; k < random_pairs; ++k) {
                Eigen::VectorXcd v(n), w(n);
                for (int i = 0; i < n; ++i) {
                    v[i] = Complex(gauss(rng), gauss(rng));
                    w[i] = Complex(gauss(rng), gauss(rng));
                }
                double val = normalized_bisectional(s, j.g, v, w);
                scan.rows.push_back({eps, rho, "rand" + std::to_string(k), val});
                inf = std::min(inf, val);
            }
        }
        scan.inf_by_eps[eps] = inf;
        scan.overall_inf = std::min(scan.overall_inf, inf);
    }
    return scan;
}

double metric_closeness(const ConeParams& params, const HermitianWeight& weight,
                        const Eigen::MatrixXcd& base, const Eigen::VectorXcd& z) {
    ConeParams bare = params;
    bare.c_coef = 0.0;
    Eigen::MatrixXcd g_tau = reference_metric_jet(bare, weight, base, z, 0).g;
    Eigen::MatrixXcd diff = reference_metric_jet(params, weight, base, z, 0).g - g_tau;
    Eigen::MatrixXcd gi = g_tau.inverse();
    return std::sqrt(std::max(0.0, (gi * diff * gi * diff).trace().real()));
}

RateFit closeness_rate(const ConeParams& params, const HermitianWeight& weight,
                       const Eigen::MatrixXcd& base, const std::vector<double>& radii) {
    if (radii.size() < 4) throw InvalidParams("rate fit needs at least 4 radii");
    const int n = int(base.rows());
    RateFit fit;
    fit.radii = radii;
    std::vector<double> lx, ly;
    for (double r : radii) {
        Eigen::VectorXcd z = Eigen::VectorXcd::Zero(n);
        z[0] = r;
        double v = metric_closeness(params, weight, base, z);
        if (v > 0) {
            fit.positive_samples++;
            lx.push_back(std::log(r));
            ly.push_back(std::log(v));
        }
    }
    if (lx.size() < 4) throw DegenerateFitError("closeness vanishes; nothing to fit");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) { mx += lx[i]; my += ly[i]; }
    mx /= lx.size();
    my /= ly.size();
    double sxx = 0, sxy = 0, ss = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    fit.exponent = sxy / sxx;
    fit.log_coefficient = my - fit.exponent * mx;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        double e = ly[i] - (fit.log_coefficient + fit.exponent * lx[i]);
        ss += e * e;
    }
    fit.residual = std::sqrt(ss / lx.size());
    return fit;
}

double finite_difference_check(const ConeParams& params, const HermitianWeight& weight,
                               const Eigen::MatrixXcd& base, const Eigen::VectorXcd& z, double h) {
    const int n = int(z.size());
    MetricJet jet = reference_metric_jet(params, weight, base, z, 2);
    auto g_at = [&](const Eigen::VectorXcd& p) {
        return reference_metric_jet(params, weight, base, p, 0).g;
    };
    auto d_at = [&](const Eigen::VectorXcd& p, int c) {
        return reference_metric_jet(params, weight, base, p, 1).d[c];
    };
    auto shift = [&](int dir, Complex step) {
        Eigen::VectorXcd p = z;
        p[dir] += step;
        return p;
    };
    double worst = 0.0;
    auto track = [&](Complex approx, Complex exact) {
        double scale = std::max(1e-12, std::abs(exact));
        worst = std::max(worst, std::abs(approx - exact) / scale);
    };
    for (int c = 0; c < n; ++c) {
        // holomorphic derivative: (d/dx - i d/dy)/2 of every metric entry
        Eigen::MatrixXcd fd =
            (g_at(shift(c, h)) - g_at(shift(c, -h))) / (4.0 * h) -
            Complex(0, 1) * (g_at(shift(c, Complex(0, h))) - g_at(shift(c, Complex(0, -h)))) /
                (4.0 * h);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) track(fd(a, b), jet.d[c](a, b));
        for (int e = 0; e < n; ++e) {
            Eigen::MatrixXcd fd2 =
                (d_at(shift(e, h), c) - d_at(shift(e, -h), c)) / (4.0 * h) +
                Complex(0, 1) *
                    (d_at(shift(e, Complex(0, h)), c) - d_at(shift(e, Complex(0, -h)), c)) /
                    (4.0 * h);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) track(fd2(a, b), jet.dd[c][e](a, b));
        }
    }
    return worst;
}

}  // namespace conekit
