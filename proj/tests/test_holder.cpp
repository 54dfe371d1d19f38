#include <cmath>
#include <random>

#include "doctest.h"

#include "conekit/holder.hpp"

using namespace conekit;

namespace {

Eigen::VectorXcd pt(Complex z1) {
    Eigen::VectorXcd z(1);
    z[0] = z1;
    return z;
}

SampledFunction cone_disc_samples(double tau, int n_rho, int n_theta,
                                  const std::function<double(Complex)>& f) {
    SampledFunction s;
    for (int i = 1; i <= n_rho; ++i)
        for (int a = 0; a < n_theta; ++a) {
            double rho = double(i) / n_rho;
            Complex z = std::polar(rho, 2.0 * M_PI * a / n_theta);
            s.points.push_back(pt(z));
            s.values.conservativeResize(s.points.size());
            s.values[s.points.size() - 1] = f(z);
        }
    (void)tau;
    return s;
}

}  // namespace

TEST_CASE("conical distance basics") {
    Eigen::VectorXcd x = pt({0.3, 0.4}), y = pt({-0.1, 0.25});
    CHECK(d_tau(x, y, 1.0) == doctest::Approx(std::abs(Complex(0.3, 0.4) - Complex(-0.1, 0.25))));
    CHECK(d_tau(x, x, 0.5) == 0.0);
    // same ray: |sqrt(r1) - sqrt(r2)|
    CHECK(d_tau(pt(0.49), pt(0.09), 0.5) == doctest::Approx(0.7 - 0.3));
    // symmetry
    CHECK(d_tau(x, y, 0.6) == doctest::Approx(d_tau(y, x, 0.6)));
    CHECK_THROWS_AS(d_tau(x, y, 0.37, 1, DistanceConvention::Uniformization), InvalidParams);
}

TEST_CASE("triangle inequality on sampled triples") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (DistanceConvention conv :
         {DistanceConvention::XiMap, DistanceConvention::Uniformization}) {
        double tau = conv == DistanceConvention::Uniformization ? 1.0 / 3.0 : 0.57;
        for (int it = 0; it < 500; ++it) {
            auto rnd = [&]() { return pt(std::polar(U(rng), 2.0 * M_PI * U(rng))); };
            Eigen::VectorXcd a = rnd(), b = rnd(), c = rnd();
            CHECK(d_tau(a, c, tau, 1, conv) <=
                  d_tau(a, b, tau, 1, conv) + d_tau(b, c, tau, 1, conv) + 1e-10);
        }
    }
}

TEST_CASE("xi-map and uniformization distances are equivalent") {
    // the sharp equivalence constant is 1/tau, approached by same-radius
    // pairs of small angular separation; aligned and antipodal pairs stay
    // within a factor of 1/sin(tau pi / 2) <= 2 for tau >= 1/3
    for (double tau : {0.5, 1.0 / 3.0}) {
        double worst = 1.0, worst_axis = 1.0;
        for (int i = 1; i <= 12; ++i)
            for (int a = 0; a < 16; ++a)
                for (int j = 1; j <= 12; ++j)
                    for (int b = 0; b < 16; ++b) {
                        Eigen::VectorXcd x = pt(std::polar(i / 12.0, 2.0 * M_PI * a / 16));
                        Eigen::VectorXcd y = pt(std::polar(j / 12.0, 2.0 * M_PI * b / 16));
                        if ((x - y).norm() == 0.0) continue;
                        double dxi = d_tau(x, y, tau, 1, DistanceConvention::XiMap);
                        double dw = d_tau(x, y, tau, 1, DistanceConvention::Uniformization);
                        worst = std::max(worst, dxi / dw);
                        if (a % 8 == 0 && b % 8 == 0) worst_axis = std::max(worst_axis, dxi / dw);
                        CHECK(dw <= dxi * (1.0 + 1e-12));  // compressing the angle
                    }
        CHECK(worst <= (1.0 / tau) * (1.0 + 1e-9));
        CHECK(worst >= 0.9 / tau);  // the sharp constant really is approached
        CHECK(worst_axis <= 2.0 * (1.0 + 1e-9));
    }
}

TEST_CASE("seminorm basics") {
    SampledFunction c = cone_disc_samples(0.5, 16, 8, [](Complex) { return 3.0; });
    HolderReport rep = holder_seminorm(c, 1.0, 0.5);
    CHECK(rep.seminorm == 0.0);
    CHECK(rep.sup_norm == 3.0);
    CHECK(rep.total == 3.0);

    // exact homogeneity under scaling
    SampledFunction f = cone_disc_samples(0.5, 12, 8, [](Complex z) { return std::abs(z) * std::abs(z); });
    SampledFunction g = f;
    g.values *= -2.5;
    CHECK(holder_seminorm(g, 0.7, 0.5).seminorm ==
          doctest::Approx(2.5 * holder_seminorm(f, 0.7, 0.5).seminorm));
}

TEST_CASE("cone potential is Lipschitz with constant two") {
    double tau = 0.5;
    SampledFunction f = cone_disc_samples(
        tau, 64, 16, [&](Complex z) { return std::pow(std::abs(z), 2 * tau); });
    HolderReport rep = holder_seminorm(f, 1.0, tau);
    CHECK(rep.exhaustive);
    CHECK(rep.seminorm == doctest::Approx(2.0).epsilon(0.05));

    // the maximizing pair sits at the outer rim, aligned
    CHECK(std::abs(std::abs(f.points[rep.argmax_i][0]) - 1.0) < 0.25);
}

TEST_CASE("coordinate function stays Lipschitz in the conical distance") {
    // the xi-map expands distances near the divisor, so Re z1 has a finite
    // seminorm (attained away from the divisor) at every angle fraction
    for (double tau : {0.5, 0.75}) {
        double prev = 0.0;
        for (int res : {24, 48, 96}) {
            SampledFunction f =
                cone_disc_samples(tau, res, 12, [](Complex z) { return z.real(); });
            double s = holder_seminorm(f, 1.0, tau).seminorm;
            if (prev > 0) CHECK_FALSE(holder_diverging(prev, s));
            prev = s;
        }
        CHECK(prev < 2.0 / tau);
    }
}

TEST_CASE("a sub-cone power diverges under refinement toward the divisor") {
    // |z|^0.1 against d_{1/2}: quotient ~ rho^(0.1-0.5) on near pairs, so one
    // decade of refinement grows the seminorm by ~10^0.4
    double tau = 0.5;
    auto f = [](Complex z) { return std::pow(std::abs(z), 0.1); };
    auto seminorm_with_floor = [&](double rho_min) {
        SampledFunction s;
        for (int i = 0; i <= 48; ++i) {
            double rho = rho_min * std::pow(1.0 / rho_min, i / 48.0);
            s.points.push_back(pt(rho));
            s.values.conservativeResize(s.points.size());
            s.values[s.points.size() - 1] = f(rho);
        }
        return holder_seminorm(s, 1.0, tau).seminorm;
    };
    double coarse = seminorm_with_floor(1e-2);
    double fine = seminorm_with_floor(1e-3);
    CHECK(holder_diverging(coarse, fine));
    CHECK(fine / coarse == doctest::Approx(std::pow(10.0, 0.4)).epsilon(0.2));
}

TEST_CASE("seminorm interpolation across alpha on a small-diameter set") {
    // with oscillation <= 1 and diameter <= 1: [f]_a <= [f]_b^(a/b) for a <= b
    SampledFunction f = cone_disc_samples(0.5, 10, 6, [](Complex z) { return 0.4 * z.real(); });
    std::vector<double> alphas = {0.3, 0.5, 0.8, 1.0};
    std::vector<double> semis;
    for (double alpha : alphas) semis.push_back(holder_seminorm(f, alpha, 0.5).seminorm);
    for (std::size_t i = 0; i < alphas.size(); ++i)
        for (std::size_t j = i + 1; j < alphas.size(); ++j)
            CHECK(semis[i] <= std::pow(semis[j], alphas[i] / alphas[j]) + 1e-12);
}

TEST_CASE("subsampled seminorm stays close to exhaustive on big grids") {
    double tau = 0.6;
    SampledFunction f = cone_disc_samples(
        tau, 60, 24, [&](Complex z) { return std::pow(std::abs(z), 2 * tau) + 0.3 * z.real(); });
    HolderReport full = holder_seminorm(f, 1.0, tau);
    REQUIRE(full.exhaustive);
    HolderReport sub = holder_seminorm(f, 1.0, tau, 20000);
    CHECK_FALSE(sub.exhaustive);
    CHECK(sub.seminorm <= full.seminorm * (1 + 1e-12));
    CHECK(sub.seminorm >= 0.8 * full.seminorm);
    // deterministic subsample
    HolderReport sub2 = holder_seminorm(f, 1.0, tau, 20000);
    CHECK(sub.seminorm == sub2.seminorm);
    CHECK(sub.pairs_used == sub2.pairs_used);
}

TEST_CASE("c2alpha aggregate of grid potentials") {
    ConeParams p;
    p.tau = 0.75;
    p.tau_prime = 0.9;
    p.c_coef = 0.0;
    HermitianWeight w = HermitianWeight::unit(1);
    Eigen::MatrixXcd base = Eigen::MatrixXcd::Identity(1, 1);
    SolveGrid grid;
    grid.kind = GridKind::Radial1;
    grid.rho_min = 1e-3;
    grid.rho_max = 1.0;
    grid.n_rho = 64;
    MetricGrid mg = build_metric_grid(p, w, base, grid);

    Eigen::VectorXd zero = Eigen::VectorXd::Zero(grid.size());
    HolderReport rz = c2alpha_norm(zero, mg, 0.5, p.tau);
    CHECK(rz.total == 0.0);

    // phi = |z1|^(2 tau): ddc phi is the model cone form, comparable to the
    // reference metric, so the aggregate stays finite under refinement
    auto phi_cone = [&](const SolveGrid& gr) {
        Eigen::VectorXd v(gr.size());
        for (int i = 0; i < gr.ni(); ++i)
            v[gr.index(i, 0)] = std::pow(gr.rho(i), 2 * p.tau);
        return v;
    };
    HolderReport r1 = c2alpha_norm(phi_cone(grid), mg, 0.5, p.tau);
    CHECK(r1.total > 0.0);
    SolveGrid fine = grid;
    fine.rho_min = grid.rho_min / 10;
    fine.n_rho *= 2;
    MetricGrid mgf = build_metric_grid(p, w, base, fine);
    HolderReport r2 = c2alpha_norm(phi_cone(fine), mgf, 0.5, p.tau);
    CHECK_FALSE(holder_diverging(r1.total, r2.total));

    // phi = |z1|^2: the frame component ~ rho^(2-2tau) has an unbounded
    // Holder quotient once alpha is large enough (2 - 2tau < alpha tau here)
    auto phi_flat = [&](const SolveGrid& gr) {
        Eigen::VectorXd v(gr.size());
        for (int i = 0; i < gr.ni(); ++i) v[gr.index(i, 0)] = gr.rho(i) * gr.rho(i);
        return v;
    };
    HolderReport s1 = c2alpha_norm(phi_flat(grid), mg, 1.0, p.tau);
    HolderReport s2 = c2alpha_norm(phi_flat(fine), mgf, 1.0, p.tau);
    CHECK(holder_diverging(s1.seminorm, s2.seminorm));
}
