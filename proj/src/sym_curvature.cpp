#include "conekit/sym_curvature.hpp"

#include <cmath>

namespace conekit {

CurvatureExpansion sym_curvature_1111(int correction_sign, int order) {
    CurvatureExpansion ce;
    auto& ch = ce.chain;
    ch.potential = sym_potential(correction_sign);
    SymExpr g = sym_specialize_ones(sym_ddbar(ch.potential, Idx::one, Idx::one));
    ch.metric_11 = sym_adapted_evaluate(g);
    ch.d1 = sym_adapted_evaluate(sym_specialize_ones(sym_d(g, Slot{Idx::one, false})));
    ch.d1b = sym_adapted_evaluate(sym_specialize_ones(sym_d(g, Slot{Idx::one, true})));
    ch.dd = sym_adapted_evaluate(
        sym_specialize_ones(sym_d(sym_d(g, Slot{Idx::one, false}), Slot{Idx::one, true})));
    ch.inverse_11 = sym_inverse_11(ch.metric_11, order);

    SymExpr raw = (-ch.dd) + ch.inverse_11 * ch.d1 * ch.d1b;
    ce.normalized = raw.shifted(ExpForm{4, -4, 0});

    ce.worst_exponent = ExpForm{0, -2, 0};
    ce.leading_exponent = ExpForm{0, -4, 2};
    ce.worst_coefficient = sym_coefficient_at(ce.normalized, ce.worst_exponent);
    ce.leading_coefficient = sym_coefficient_at(ce.normalized, ce.leading_exponent);
    ce.cancellation_exact = ce.worst_coefficient.is_zero();
    ce.leading_factored = ce.leading_coefficient.factored_str();
    ce.leading_positive = ce.leading_coefficient.positive_on_cone_region();

    ce.leading_is_minimal = true;
    for (const auto& t : ce.normalized.terms()) {
        ExpForm e = t.total_exponent();
        if (e == ce.leading_exponent || e == ce.worst_exponent) continue;
        if (!form_dominates(e, ce.leading_exponent)) ce.leading_is_minimal = false;
    }
    return ce;
}

double sym_curvature_eval(const CurvatureExpansion& ce, double t, double tp, double rho) {
    double s = 0;
    for (const auto& term : ce.normalized.terms()) {
        if (!term.tag.empty()) continue;  // weights identically 1
        s += term.coeff.eval(t, tp) * std::pow(rho, term.total_exponent().eval(t, tp));
    }
    return s;
}

}  // namespace conekit
