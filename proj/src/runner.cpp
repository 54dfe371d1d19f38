#include "conekit/runner.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <thread>

#include "conekit/holder.hpp"
#include "conekit/ma_solver.hpp"
#include "conekit/svg.hpp"
#include "conekit/sym_curvature.hpp"

namespace conekit {

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string run_id_for(const RunConfig& rc) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx",
                  (unsigned long long)fnv1a(rc.command + "\n" + rc.cfg.canonical() + "\n" +
                                            std::to_string(rc.seed)));
    return rc.command + "-" + buf;
}

ConeParams params_from(const Config& c) {
    ConeParams p;
    p.tau = c.number("params", "tau", p.tau);
    p.tau_prime = c.number("params", "tau_prime", p.tau_prime);
    p.a_coef = c.number("params", "a_coef", p.a_coef);
    p.c_coef = c.number("params", "c_coef", p.c_coef);
    p.epsilon = c.number("params", "epsilon", p.epsilon);
    p.mu = c.number("params", "mu", p.mu);
    p.correction_sign = c.integer("params", "correction_sign", p.correction_sign);
    p.validate();
    return p;
}

int dim_from(const Config& c) { return c.integer("domain", "n", c.integer("grid", "n", 1)); }

HermitianWeight weight_from(const Config& c, int n) {
    HermitianWeight w = HermitianWeight::from_name(c.str("weight", "name", "unit"), n,
                                                   c.number("weight", "param", 0.0));
    double scale = c.number("weight", "scale", 1.0);
    return scale == 1.0 ? w : w.scaled(scale);
}

Eigen::MatrixXcd base_from(const Config& c, int n) {
    return c.number("base", "scale", 1.0) * Eigen::MatrixXcd::Identity(n, n);
}

DomainSpec domain_from(const Config& c, double /*eps*/) {
    DomainSpec d;
    d.n = c.integer("domain", "n", 1);
    std::vector<double> angles = c.list("domain", "cone_angles", {0.5});
    for (double tau : angles) {
        ConeAxisSpec ax;
        ax.tau = tau;
        ax.rho_min = c.number("domain", "rho_min", 1e-6);
        ax.rho_max = c.number("domain", "rho_max", 1.0);
        ax.n_rho = c.integer("domain", "radial_points", 32);
        ax.log_spacing = c.str("domain", "radial_spacing", "log") == "log";
        ax.n_theta = c.integer("domain", "theta_points", 1);
        d.cone.push_back(ax);
    }
    for (int j = int(d.cone.size()); j < d.n; ++j) {
        SmoothAxisSpec s;
        s.extent = c.number("domain", "smooth_extent", 1.0);
        s.n = c.integer("domain", "smooth_points", 4);
        d.smooth.push_back(s);
    }
    return d;
}

SolveGrid grid_from(const Config& c) {
    SolveGrid g;
    std::string kind = c.str("grid", "kind", "radial-smooth");
    if (kind == "radial") g.kind = GridKind::Radial1;
    else if (kind == "radial-smooth") g.kind = GridKind::RadialSmooth;
    else if (kind == "polar") g.kind = GridKind::Polar1;
    else throw ConfigError("unknown grid kind '" + kind + "'");
    g.rho_min = c.number("grid", "rho_min", 0.05);
    g.rho_max = c.number("grid", "rho_max", 0.95);
    g.n_rho = c.integer("grid", "radial_points", 32);
    g.log_spacing = c.str("grid", "radial_spacing", "linear") == "log";
    g.extent = c.number("grid", "extent", 1.0);
    g.n_second = c.integer("grid", "second_points", g.kind == GridKind::Radial1 ? 1 : 16);
    g.second_periodic = c.boolean("grid", "second_periodic", true);
    g.validate();
    return g;
}

Eigen::VectorXd source_field(const Config& c, const SolveGrid& g) {
    std::string name = c.str("source", "name", "zero");
    double amp = c.number("source", "amplitude", 0.2);
    Eigen::VectorXd f = Eigen::VectorXd::Zero(g.size());
    if (name == "zero") return f;
    if (name == "const") return Eigen::VectorXd::Constant(g.size(), amp);
    if (name == "bump_wave") {
        double center = c.number("source", "center", 0.5);
        double width = c.number("source", "width", 0.12);
        double waves = c.number("source", "waves", 1.0);
        for (int i = 0; i < g.ni(); ++i)
            for (int j = 0; j < g.nj(); ++j) {
                double rho = g.rho(i), x = g.second(j);
                double bump = std::exp(-(rho - center) * (rho - center) / (2 * width * width));
                double osc = g.kind == GridKind::Radial1
                                 ? 1.0
                                 : std::cos(2.0 * M_PI * waves * x /
                                            (g.kind == GridKind::Polar1 ? 2 * M_PI : g.extent));
                f[g.index(i, j)] = amp * bump * osc;
            }
        return f;
    }
    throw ConfigError("unknown source '" + name + "'");
}

Json monitor_json(const MonitorData& m) {
    Json j;
    j["phi_sup"] = m.phi_sup;
    j["lap_phi_sup"] = m.lap_phi_sup;
    j["n_plus_lap_sup"] = m.n_plus_lap_sup;
    j["f_inf"] = m.f_inf;
    j["lap_f_neg_inf"] = m.lap_f_neg_inf;
    j["curvature_inf"] = m.curvature_inf;
    return j;
}

Json solve_report_json(const SolveReport& r, bool seeded) {
    Json j;
    j["eps"] = r.eps;
    j["iterations"] = r.iterations;
    j["final_residual"] = r.final_residual;
    j["converged"] = r.converged;
    j["monitor"] = monitor_json(r.monitor);
    j["normalization_recheck"] = r.normalization_recheck;
    j["residual_history"] = r.residual_history;
    if (seeded) j["wall_time_s"] = nullptr;
    else j["wall_time_s"] = r.wall_time_s;
    return j;
}

Json ratefit_json(const RateFit& f) {
    Json j;
    j["exponent"] = f.exponent;
    j["log_coefficient"] = f.log_coefficient;
    j["coefficient"] = std::exp(f.log_coefficient);
    j["residual"] = f.residual;
    j["radii"] = f.radii;
    j["positive_samples"] = f.positive_samples;
    j["negative_samples"] = f.negative_samples;
    return j;
}

std::vector<double> radii_from(const Config& c) {
    std::vector<double> radii = c.list("rate_fit", "radii", {});
    if (!radii.empty()) return radii;
    double rmax = c.number("rate_fit", "radii_max", 1e-1);
    double rmin = c.number("rate_fit", "radii_min", 1e-3);
    int per_decade = c.integer("rate_fit", "radii_per_decade", 4);
    int steps = std::max(4, int(std::round(std::log10(rmax / rmin) * per_decade)));
    for (int i = 0; i <= steps; ++i)
        radii.push_back(rmax * std::pow(rmin / rmax, double(i) / steps));
    return radii;
}

std::string artifact(const RunConfig& rc, const std::string& name) {
    return (std::filesystem::path(rc.out_dir) / name).string();
}

RunOutcome cmd_metric(const RunConfig& rc) {
    ConeParams p = params_from(rc.cfg);
    DomainSpec d = domain_from(rc.cfg, p.epsilon);
    d.validate(p.epsilon);
    HermitianWeight w = weight_from(rc.cfg, d.n);
    Eigen::MatrixXcd base = base_from(rc.cfg, d.n);
    bool model_only = rc.cfg.boolean("metric", "model_only", false);
    auto pts = d.points();
    const int n = d.n;
    Eigen::VectorXd flat(Eigen::Index(pts.size()) * 2 * n * n);
    double min_eig = 1e300, max_cond = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        Eigen::MatrixXcd g = model_only ? eval_model_metric(p, d, pts[k])
                                        : eval_reference_metric(p, w, base, pts[k]);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g, Eigen::EigenvaluesOnly);
        min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
        max_cond = std::max(max_cond, es.eigenvalues().maxCoeff() /
                                          std::max(1e-300, es.eigenvalues().minCoeff()));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                flat[Eigen::Index((k * n + a) * n + b) * 2] = g(a, b).real();
                flat[Eigen::Index((k * n + a) * n + b) * 2 + 1] = g(a, b).imag();
            }
    }
    RunOutcome out;
    std::string bin = artifact(rc, "metric.bin");
    write_grid_binary(bin, flat, int(pts.size()), 2 * n * n);
    out.artifacts.push_back(bin);
    if (rc.emit_csv || pts.size() <= 4096) {
        std::vector<std::vector<double>> rows;
        std::vector<std::string> header;
        for (int a = 0; a < n; ++a) header.push_back("z" + std::to_string(a + 1) + "_re");
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                header.push_back("g" + std::to_string(a + 1) + std::to_string(b + 1) + "_re");
                header.push_back("g" + std::to_string(a + 1) + std::to_string(b + 1) + "_im");
            }
        for (std::size_t k = 0; k < pts.size(); ++k) {
            std::vector<double> row;
            for (int a = 0; a < n; ++a) row.push_back(pts[k][a].real());
            for (int e = 0; e < 2 * n * n; ++e) row.push_back(flat[Eigen::Index(k) * 2 * n * n + e]);
            rows.push_back(std::move(row));
        }
        std::string csv = artifact(rc, "metric.csv");
        write_csv(csv, header, rows);
        out.artifacts.push_back(csv);
    }
    out.report["results"] = {{"points", pts.size()},
                             {"n", n},
                             {"min_eigenvalue", min_eig},
                             {"max_condition", max_cond}};
    return out;
}

RunOutcome cmd_symbolic_verify(const RunConfig& rc) {
    int order = rc.cfg.integer("symbolic", "order", 3);
    int sign = rc.cfg.integer("symbolic", "sign", -1);
    CurvatureExpansion ce = sym_curvature_1111(sign, order);
    RunOutcome out;
    Json r;
    r["cancellation_coefficient"] = ce.worst_coefficient.str();
    r["cancellation_exact"] = ce.cancellation_exact;
    r["worst_exponent"] = ce.worst_exponent.str();
    r["leading_coefficient"] = ce.leading_factored;
    r["leading_exponent"] = ce.leading_exponent.str();
    r["leading_positive"] = ce.leading_positive;
    r["leading_is_minimal"] = ce.leading_is_minimal;
    r["terms"] = ce.normalized.size();
    out.report["results"] = r;
    bool sign_ok = sign < 0 ? ce.leading_positive : !ce.leading_positive;
    out.exit_code = (ce.cancellation_exact && ce.leading_is_minimal && sign_ok) ? 0 : 2;
    return out;
}

RunOutcome cmd_curvature_scan(const RunConfig& rc) {
    ConeParams p = params_from(rc.cfg);
    DomainSpec d = domain_from(rc.cfg, p.epsilon);
    HermitianWeight w = weight_from(rc.cfg, d.n);
    Eigen::MatrixXcd base = base_from(rc.cfg, d.n);
    std::vector<double> eps = rc.cfg.list("sweep", "eps_list", {std::max(p.epsilon, 1e-3)});
    int pairs = rc.cfg.integer("scan", "random_pairs", 8);
    LowerBoundScan scan = uniform_lower_bound_scan(p, w, base, eps, d, rc.seed, pairs);
    RunOutcome out;
    Json infs = Json::object();
    for (auto& [e, v] : scan.inf_by_eps) {
        char key[32];
        std::snprintf(key, sizeof key, "%.6g", e);
        infs[key] = v;
    }
    out.report["results"] = {{"inf_by_eps", infs}, {"overall_inf", scan.overall_inf}};
    if (rc.emit_csv) {
        std::vector<std::vector<double>> rows;
        for (const auto& r : scan.rows)
            rows.push_back({r.eps, r.rho, double(fnv1a(r.tag) % 1000), r.value});
        std::string csv = artifact(rc, "curvature_scan.csv");
        std::ofstream raw(csv);
        raw << "eps,rho,tag,normalized_value\n";
        char buf[48];
        for (const auto& r : scan.rows) {
            std::snprintf(buf, sizeof buf, "%.17g", r.value);
            raw << r.eps << "," << r.rho << "," << r.tag << "," << buf << "\n";
        }
        out.artifacts.push_back(csv);
    }
    return out;
}

RunOutcome cmd_rate_fit(const RunConfig& rc) {
    ConeParams p = params_from(rc.cfg);
    int n = dim_from(rc.cfg);
    HermitianWeight w = weight_from(rc.cfg, n);
    Eigen::MatrixXcd base = base_from(rc.cfg, n);
    std::vector<double> radii = radii_from(rc.cfg);
    std::string mode = rc.cfg.str("rate_fit", "mode", "component");
    RateFit fit;
    if (mode == "component") fit = fit_blowup_rate(p, w, base, radii, RateMode::Component);
    else if (mode == "unit") fit = fit_blowup_rate(p, w, base, radii, RateMode::UnitNormalized);
    else if (mode == "closeness") fit = closeness_rate(p, w, base, radii);
    else throw ConfigError("unknown rate_fit mode '" + mode + "'");
    RunOutcome out;
    out.report["results"] = ratefit_json(fit);
    if (rc.emit_svg) {
        SvgSeries s;
        s.label = mode;
        for (double r : radii) {
            Eigen::VectorXcd z = Eigen::VectorXcd::Zero(n);
            z[0] = r;
            double v;
            if (mode == "closeness") v = metric_closeness(p, w, base, z);
            else {
                CurvatureSample cs = curvature_at(p, w, base, z);
                if (mode == "component") v = cs.at(0, 0, 0, 0).real();
                else {
                    MetricJet jm = reference_metric_jet(p, w, base, z, 0);
                    Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(n);
                    e1[0] = 1.0;
                    v = normalized_bisectional(cs, jm.g, e1, e1);
                }
            }
            s.x.push_back(r);
            s.y.push_back(std::abs(v));
        }
        std::string svg = artifact(rc, "rate_fit.svg");
        write_svg_plot(svg, "blow-up rate (" + mode + ")", {s});
        out.artifacts.push_back(svg);
    }
    if (rc.cfg.has("rate_fit", "expected_exponent")) {
        double expe = rc.cfg.number_req("rate_fit", "expected_exponent");
        double tol = rc.cfg.number("rate_fit", "rel_tol", 0.05);
        bool ok = std::abs(fit.exponent - expe) <= tol * std::abs(expe);
        out.report["results"]["expected_exponent"] = expe;
        out.report["results"]["within_tolerance"] = ok;
        if (!ok) out.exit_code = 2;
    }
    return out;
}

RunOutcome cmd_holder(const RunConfig& rc) {
    ConeParams p = params_from(rc.cfg);
    double alpha = rc.cfg.number("holder", "alpha", 1.0);
    int res = rc.cfg.integer("holder", "resolution", 64);
    int angles = rc.cfg.integer("holder", "angles", 16);
    std::size_t budget = std::size_t(rc.cfg.number("holder", "pair_budget", 2e7));
    std::string fn = rc.cfg.str("holder", "function", "cone_potential");
    double power = rc.cfg.number("holder", "power", 2.0 * p.tau);
    auto value = [&](Complex z) {
        if (fn == "cone_potential") return std::pow(std::abs(z), 2.0 * p.tau);
        if (fn == "coordinate") return z.real();
        if (fn == "abs_power") return std::pow(std::abs(z), power);
        throw ConfigError("unknown holder function '" + fn + "'");
    };
    auto sample = [&](double rho_min, int n_rho) {
        SampledFunction f;
        for (int i = 1; i <= n_rho; ++i)
            for (int a = 0; a < angles; ++a) {
                double rho = rho_min + (1.0 - rho_min) * i / n_rho;
                Complex z = std::polar(rho, 2.0 * M_PI * a / angles);
                Eigen::VectorXcd zz(1);
                zz[0] = z;
                f.points.push_back(zz);
                f.values.conservativeResize(f.points.size());
                f.values[f.points.size() - 1] = value(z);
            }
        return f;
    };
    double rho_min = rc.cfg.number("holder", "rho_min", 0.0);
    SampledFunction samples = sample(rho_min, res);
    HolderReport rep = holder_seminorm(samples, alpha, p.tau, budget);
    bool diverging = false;
    if (rc.cfg.boolean("holder", "probe_refinement", false)) {
        HolderReport fine = holder_seminorm(sample(rho_min / 10.0, 2 * res), alpha, p.tau, budget);
        diverging = holder_diverging(rep.seminorm, fine.seminorm);
    }
    RunOutcome out;
    auto point_json = [&](std::size_t k) {
        return Json{samples.points[k][0].real(), samples.points[k][0].imag()};
    };
    out.report["results"] = {{"alpha", rep.alpha},
                             {"tau", rep.tau},
                             {"sup", rep.sup_norm},
                             {"seminorm", rep.seminorm},
                             {"total", rep.total},
                             {"argmax_pair", {point_json(rep.argmax_i), point_json(rep.argmax_j)}},
                             {"pairs_used", rep.pairs_used},
                             {"exhaustive", rep.exhaustive},
                             {"diverging", diverging}};
    return out;
}

RunOutcome cmd_solve(const RunConfig& rc) {
    ConeParams p = params_from(rc.cfg);
    SolveGrid grid = grid_from(rc.cfg);
    int n = grid.complex_dim();
    ReferenceFamily fam{p, weight_from(rc.cfg, n), base_from(rc.cfg, n)};
    MetricGrid mg = build_metric_grid(p, fam.weight, fam.base, grid);
    Eigen::VectorXd f_raw = source_field(rc.cfg, grid);
    SourceTerm src;
    if (rc.cfg.boolean("source", "normalize", true)) src = build_rhs(f_raw, mg);
    else src.f = f_raw;
    src.mu_coupled = rc.cfg.boolean("source", "mu_coupled", false);
    NewtonOptions opts;
    opts.tol = rc.cfg.number("solve", "tol", 1e-10);
    opts.max_iterations = rc.cfg.integer("solve", "max_iterations", 50);
    NewtonResult res = newton_solve(fam, grid, src, opts);
    RunOutcome out;
    out.report["solve_report"] = solve_report_json(res.report, rc.seeded);
    std::string bin = artifact(rc, "phi.bin");
    write_grid_binary(bin, res.phi, grid.ni(), grid.nj());
    out.artifacts.push_back(bin);
    if (rc.emit_csv) {
        HessStencil st = hessian_stencil(grid);
        Eigen::VectorXd lap = trace_laplacian(grid, st, mg.ginv, res.phi);
        std::vector<std::vector<double>> rows;
        for (int i = 0; i < grid.ni(); ++i)
            for (int j = 0; j < grid.nj(); ++j) {
                int idx = grid.index(i, j);
                rows.push_back({grid.rho(i), grid.second(j), res.phi[idx], lap[idx],
                                res.report.final_residual});
            }
        std::string csv = artifact(rc, "solve.csv");
        write_csv(csv, {"rho", "x", "phi", "lap_phi", "residual"}, rows);
        out.artifacts.push_back(csv);
    }
    return out;
}

RunOutcome cmd_sweep(const RunConfig& rc) {
    std::string kind = rc.cfg.str("sweep", "kind", "continuation");
    ConeParams p = params_from(rc.cfg);
    RunOutcome out;
    if (kind == "continuation") {
        SolveGrid grid = grid_from(rc.cfg);
        int n = grid.complex_dim();
        ReferenceFamily fam{p, weight_from(rc.cfg, n), base_from(rc.cfg, n)};
        Eigen::VectorXd f_raw = source_field(rc.cfg, grid);
        std::vector<double> eps = rc.cfg.list("sweep", "eps_list", {1e-1, 1e-2, 1e-3, 1e-4});
        NewtonOptions opts;
        opts.tol = rc.cfg.number("solve", "tol", 1e-10);
        SourceFamily family = rc.cfg.str("sweep", "source_family", "fixed") == "eps_damped"
                                  ? SourceFamily::EpsDamped
                                  : SourceFamily::Fixed;
        auto steps = epsilon_continuation(fam, grid, f_raw, eps, opts, family);
        Json jsteps = Json::array();
        double lap_min = 1e300, lap_max = -1e300;
        SvgSeries cauchy;
        cauchy.label = "cauchy diff";
        for (const auto& s : steps) {
            Json js;
            js["eps"] = s.eps;
            js["cauchy_diff"] = s.cauchy_diff;
            js["source_l2_diff"] = s.source_l2_diff;
            js["report"] = solve_report_json(s.report, rc.seeded);
            jsteps.push_back(js);
            lap_min = std::min(lap_min, s.report.monitor.n_plus_lap_sup);
            lap_max = std::max(lap_max, s.report.monitor.n_plus_lap_sup);
            if (s.cauchy_diff > 0) {
                cauchy.x.push_back(s.eps);
                cauchy.y.push_back(s.cauchy_diff);
            }
        }
        out.report["steps"] = jsteps;
        out.report["results"] = {{"lap_spread", lap_max / lap_min}};
        double max_spread = rc.cfg.number("sweep", "max_lap_spread", 0.0);
        if (max_spread > 0 && lap_max / lap_min > max_spread) out.exit_code = 2;
        if (rc.emit_svg) {
            std::string svg = artifact(rc, "cauchy.svg");
            write_svg_plot(svg, "Cauchy differences across the schedule", {cauchy});
            out.artifacts.push_back(svg);
        }
        return out;
    }
    if (kind != "curvature-ab") throw ConfigError("unknown sweep kind '" + kind + "'");

    DomainSpec d = domain_from(rc.cfg, p.epsilon);
    HermitianWeight w = weight_from(rc.cfg, d.n);
    Eigen::MatrixXcd base = base_from(rc.cfg, d.n);
    std::vector<double> eps = rc.cfg.list("sweep", "eps_list", {1e-1, 1e-2, 1e-3, 1e-4});
    ConeParams naive = p;
    naive.c_coef = 0.0;
    int pairs = rc.cfg.integer("scan", "random_pairs", 8);
    LowerBoundScan good, bare;
    if (rc.workers >= 2) {
        std::exception_ptr err;
        std::thread tg([&] {
            try { good = uniform_lower_bound_scan(p, w, base, eps, d, rc.seed, pairs); }
            catch (...) { err = std::current_exception(); }
        });
        bare = uniform_lower_bound_scan(naive, w, base, eps, d, rc.seed, pairs);
        tg.join();
        if (err) std::rethrow_exception(err);
    } else {
        good = uniform_lower_bound_scan(p, w, base, eps, d, rc.seed, pairs);
        bare = uniform_lower_bound_scan(naive, w, base, eps, d, rc.seed, pairs);
    }
    auto spread = [](const LowerBoundScan& s) {
        double lo = 1e300, hi = 0.0;
        for (auto& [e, v] : s.inf_by_eps) {
            (void)e;
            lo = std::min(lo, std::abs(v));
            hi = std::max(hi, std::abs(v));
        }
        return hi / std::max(lo, 1e-300);
    };
    auto drop = [](const LowerBoundScan& s) {
        // ratio between the infimum at the smallest and largest epsilon
        double first = s.inf_by_eps.rbegin()->second;  // largest eps
        double last = s.inf_by_eps.begin()->second;    // smallest eps
        return std::abs(last) / std::max(std::abs(first), 1e-300);
    };
    Json ginf = Json::object(), binf = Json::object();
    for (auto& [e, v] : good.inf_by_eps) {
        char key[32];
        std::snprintf(key, sizeof key, "%.6g", e);
        ginf[key] = v;
    }
    for (auto& [e, v] : bare.inf_by_eps) {
        char key[32];
        std::snprintf(key, sizeof key, "%.6g", e);
        binf[key] = v;
    }
    double gspread = spread(good), bdrop = drop(bare);
    out.report["results"] = {{"good_inf_by_eps", ginf},
                             {"naive_inf_by_eps", binf},
                             {"good_spread", gspread},
                             {"naive_drop", bdrop}};
    double max_good_spread = rc.cfg.number("sweep", "max_good_spread", 2.0);
    double min_naive_drop = rc.cfg.number("sweep", "min_naive_drop", 10.0);
    if (gspread > max_good_spread || bdrop < min_naive_drop) out.exit_code = 2;
    if (rc.emit_svg) {
        SvgSeries sg, sb;
        sg.label = "corrected";
        sb.label = "uncorrected";
        sb.color = "#c23b22";
        for (auto& [e, v] : good.inf_by_eps) {
            sg.x.push_back(e);
            sg.y.push_back(std::abs(v));
        }
        for (auto& [e, v] : bare.inf_by_eps) {
            sb.x.push_back(e);
            sb.y.push_back(std::abs(v));
        }
        std::string svg = artifact(rc, "lower_bound_ab.svg");
        write_svg_plot(svg, "curvature infimum magnitude vs epsilon", {sg, sb});
        out.artifacts.push_back(svg);
    }
    return out;
}

RunOutcome cmd_report(const RunConfig& rc) {
    RunOutcome out;
    out.report = report_merge(rc.merge_paths);
    return out;
}

}  // namespace

RunOutcome run_command(const RunConfig& rc) {
    auto t0 = std::chrono::steady_clock::now();
    std::filesystem::create_directories(rc.out_dir);
    RunOutcome out;
    if (rc.command == "metric") out = cmd_metric(rc);
    else if (rc.command == "symbolic-verify") out = cmd_symbolic_verify(rc);
    else if (rc.command == "curvature-scan") out = cmd_curvature_scan(rc);
    else if (rc.command == "rate-fit") out = cmd_rate_fit(rc);
    else if (rc.command == "holder") out = cmd_holder(rc);
    else if (rc.command == "solve") out = cmd_solve(rc);
    else if (rc.command == "sweep") out = cmd_sweep(rc);
    else if (rc.command == "report") out = cmd_report(rc);
    else throw ConfigError("unknown command '" + rc.command + "'");

    if (rc.command != "report") {
        out.report["schema"] = 1;
        out.report["run_id"] = run_id_for(rc);
        out.report["command"] = rc.command;
        if (rc.seeded) {
            out.report["seed"] = rc.seed;
            out.report["wall_time_s"] = nullptr;
        } else {
            out.report["wall_time_s"] =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }
        out.report["passed"] = (out.exit_code == 0);
    } else {
        out.report["schema"] = 1;
    }
    std::string path = artifact(rc, rc.command == "report" ? "combined.json" : "report.json");
    write_report(out.report, path);
    out.artifacts.push_back(path);
    return out;
}

int run_from_text(const std::string& command, const std::string& config_text,
                  const std::string& out_dir, unsigned seed) {
    RunConfig rc;
    rc.command = command;
    rc.cfg = Config::parse(config_text);
    rc.out_dir = out_dir;
    if (seed != 0) {
        rc.seed = seed;
        rc.seeded = true;
    }
    return run_command(rc).exit_code;
}

}  // namespace conekit
