#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "conekit/curvature.hpp"
#include "conekit/holder.hpp"
#include "conekit/runner.hpp"
#include "conekit/sym_curvature.hpp"

namespace py = pybind11;
using namespace conekit;

namespace {

ConeParams params_from_dict(const py::dict& d) {
    ConeParams p;
    auto get = [&](const char* k, double fallback) {
        return d.contains(k) ? d[k].cast<double>() : fallback;
    };
    p.tau = get("tau", p.tau);
    p.tau_prime = get("tau_prime", p.tau_prime);
    p.a_coef = get("a_coef", p.a_coef);
    p.c_coef = get("c_coef", p.c_coef);
    p.epsilon = get("epsilon", p.epsilon);
    p.mu = get("mu", p.mu);
    p.correction_sign = int(get("correction_sign", p.correction_sign));
    p.validate();
    return p;
}

Eigen::VectorXcd point_from(const std::vector<Complex>& z) {
    Eigen::VectorXcd v(Eigen::Index(z.size()));
    for (std::size_t i = 0; i < z.size(); ++i) v[Eigen::Index(i)] = z[i];
    return v;
}

std::vector<std::vector<Complex>> matrix_out(const Eigen::MatrixXcd& m) {
    std::vector<std::vector<Complex>> out(m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out[i].push_back(m(i, j));
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "edge-cone reference metrics, curvature expansions and the regularized "
              "Monge-Ampere solver";

    m.def("symbolic_verify",
          [](int sign, int order) {
              CurvatureExpansion ce = sym_curvature_1111(sign, order);
              py::dict out;
              out["cancellation_coefficient"] = ce.worst_coefficient.str();
              out["cancellation_exact"] = ce.cancellation_exact;
              out["worst_exponent"] = ce.worst_exponent.str();
              out["leading_coefficient"] = ce.leading_factored;
              out["leading_exponent"] = ce.leading_exponent.str();
              out["leading_positive"] = ce.leading_positive;
              out["terms"] = ce.normalized.size();
              return out;
          },
          py::arg("sign") = -1, py::arg("order") = 3);

    m.def("model_metric",
          [](const std::vector<double>& taus, const std::vector<Complex>& z, double eps) {
              ConeParams p;
              p.epsilon = eps;
              DomainSpec d;
              d.n = int(z.size());
              for (double tau : taus)
                  d.cone.push_back({tau, eps > 0 ? 0.0 : 1e-9, 1.0, 4, false, 1});
              for (int j = int(taus.size()); j < d.n; ++j) d.smooth.push_back({1.0, 4});
              return matrix_out(eval_model_metric(p, d, point_from(z)));
          },
          py::arg("taus"), py::arg("z"), py::arg("eps") = 0.0);

    m.def("reference_metric",
          [](const py::dict& params, const std::vector<Complex>& z, const std::string& weight,
             double base_scale) {
              ConeParams p = params_from_dict(params);
              int n = int(z.size());
              HermitianWeight w = HermitianWeight::from_name(weight, n);
              Eigen::MatrixXcd base = base_scale * Eigen::MatrixXcd::Identity(n, n);
              return matrix_out(eval_reference_metric(p, w, base, point_from(z)));
          },
          py::arg("params"), py::arg("z"), py::arg("weight") = "unit",
          py::arg("base_scale") = 1.0);

    m.def("curvature_component",
          [](const py::dict& params, const std::vector<Complex>& z, const std::string& weight,
             double base_scale) {
              ConeParams p = params_from_dict(params);
              int n = int(z.size());
              HermitianWeight w = HermitianWeight::from_name(weight, n);
              Eigen::MatrixXcd base = base_scale * Eigen::MatrixXcd::Identity(n, n);
              return curvature_at(p, w, base, point_from(z)).at(0, 0, 0, 0).real();
          },
          py::arg("params"), py::arg("z"), py::arg("weight") = "unit",
          py::arg("base_scale") = 1.0);

    m.def("bisectional",
          [](const py::dict& params, const std::vector<Complex>& z, const std::string& weight,
             double base_scale) {
              ConeParams p = params_from_dict(params);
              int n = int(z.size());
              HermitianWeight w = HermitianWeight::from_name(weight, n);
              Eigen::MatrixXcd base = base_scale * Eigen::MatrixXcd::Identity(n, n);
              CurvatureSample s = curvature_at(p, w, base, point_from(z));
              MetricJet j = reference_metric_jet(p, w, base, point_from(z), 0);
              Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(n);
              e1[0] = 1.0;
              return normalized_bisectional(s, j.g, e1, e1);
          },
          py::arg("params"), py::arg("z"), py::arg("weight") = "unit",
          py::arg("base_scale") = 1.0);

    m.def("fit_blowup_exponent",
          [](const py::dict& params, const std::vector<double>& radii, const std::string& mode,
             const std::string& weight, double base_scale, int n) {
              ConeParams p = params_from_dict(params);
              HermitianWeight w = HermitianWeight::from_name(weight, n);
              Eigen::MatrixXcd base = base_scale * Eigen::MatrixXcd::Identity(n, n);
              RateFit fit;
              if (mode == "component") fit = fit_blowup_rate(p, w, base, radii, RateMode::Component);
              else if (mode == "unit")
                  fit = fit_blowup_rate(p, w, base, radii, RateMode::UnitNormalized);
              else if (mode == "closeness") fit = closeness_rate(p, w, base, radii);
              else throw std::invalid_argument("mode must be component|unit|closeness");
              py::dict out;
              out["exponent"] = fit.exponent;
              out["log_coefficient"] = fit.log_coefficient;
              out["residual"] = fit.residual;
              out["positive_samples"] = fit.positive_samples;
              out["negative_samples"] = fit.negative_samples;
              return out;
          },
          py::arg("params"), py::arg("radii"), py::arg("mode") = "component",
          py::arg("weight") = "unit", py::arg("base_scale") = 1.0, py::arg("n") = 1);

    m.def("d_tau",
          [](const std::vector<Complex>& x, const std::vector<Complex>& y, double tau,
             const std::string& convention) {
              DistanceConvention conv = convention == "uniformization"
                                            ? DistanceConvention::Uniformization
                                            : DistanceConvention::XiMap;
              return d_tau(point_from(x), point_from(y), tau, 1, conv);
          },
          py::arg("x"), py::arg("y"), py::arg("tau"), py::arg("convention") = "xi");

    m.def("holder_seminorm",
          [](const std::vector<std::vector<Complex>>& points, const std::vector<double>& values,
             double alpha, double tau) {
              SampledFunction f;
              for (const auto& p : points) f.points.push_back(point_from(p));
              f.values = Eigen::Map<const Eigen::VectorXd>(values.data(),
                                                           Eigen::Index(values.size()));
              HolderReport rep = holder_seminorm(f, alpha, tau);
              py::dict out;
              out["alpha"] = rep.alpha;
              out["tau"] = rep.tau;
              out["sup"] = rep.sup_norm;
              out["seminorm"] = rep.seminorm;
              out["total"] = rep.total;
              out["exhaustive"] = rep.exhaustive;
              return out;
          },
          py::arg("points"), py::arg("values"), py::arg("alpha"), py::arg("tau"));

    m.def("run", &run_from_text, py::arg("command"), py::arg("config_text"),
          py::arg("out_dir"), py::arg("seed") = 0,
          "run a batch command from configuration text; returns the exit status");
}
