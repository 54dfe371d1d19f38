#pragma once

#include <string>

#include "conekit/sym_expr.hpp"

namespace conekit {

/// The symbolic derivation chain for the reference family
/// g_{11~} = dd~( K|z|^2t + sign*M|z|^2t' ), everything evaluated at an
/// adapted base point and specialised to the cone index.
struct CurvatureChain {
    SymExpr potential;
    SymExpr metric_11;        // adapted g_{11~} minus the base-metric symbol
    SymExpr d1, d1b;          // adapted g_{11~,1}, g_{11~,1~}
    SymExpr dd;               // adapted g_{11~,11~}
    SymExpr inverse_11;       // series for g^{11~}
};

/// Expansion of R_{11~11~} v^1 v~^1 w^1 w~^1 for unit v = w = d/dz1, with the
/// unit-vector contraction carried as the exponent shift 2*(2-2t).
struct CurvatureExpansion {
    CurvatureChain chain;
    SymExpr normalized;
    ExpForm worst_exponent;    // {0,-2,0}: the would-be |z|^(-2t) blow-up
    ExpForm leading_exponent;  // {0,-4,2}: |z|^(2t'-4t)
    TauPoly worst_coefficient;
    TauPoly leading_coefficient;
    std::string leading_factored;
    bool cancellation_exact = false;
    bool leading_positive = false;
    bool leading_is_minimal = false;  // no other exponent form undercuts it
};

/// Runs the full symbolic pipeline. `correction_sign` = -1 is the curvature
/// correcting potential; +1 is the sign-flipped variant whose curvature blows
/// down. `order` is the inverse-series truncation depth.
CurvatureExpansion sym_curvature_1111(int correction_sign = -1, int order = 3);

/// Normalized bisectional contraction as a plain series in |z1| at numeric
/// parameters, for use as the oracle against the floating-point engine. The
/// weights are treated as identically 1 (every derivative factor vanishes).
double sym_curvature_eval(const CurvatureExpansion& ce, double t, double tp, double rho);

}  // namespace conekit
