#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "conekit/tau_poly.hpp"

namespace conekit {

/// Coordinate indices of the symbolic expansion. `one` is the cone direction
/// z1, `two` a literal smooth direction, the rest free indices that appear in
/// the general displays together with their delta_{1,idx} constraints.
enum class Idx : uint8_t { one = 0, two, a, b, g, d };

std::string idx_name(Idx i);

/// One holomorphic (bar = false) or antiholomorphic (bar = true) derivative slot.
struct Slot {
    Idx idx;
    bool bar = false;
    auto operator<=>(const Slot&) const = default;
};

/// A formal derivative of one of the weight powers K = a^t, M = a^t'.
/// An empty derivative list is the bare symbol (= 1 at an adapted point).
struct WeightFactor {
    enum Sym : uint8_t { K = 0, M = 1 };
    Sym sym = K;
    std::vector<Slot> derivs;
    auto operator<=>(const WeightFactor&) const = default;
    std::string str() const;
};

/// Product of weight-derivative factors riding along a term as a bounded symbol.
using WeightTag = std::vector<WeightFactor>;

/// Exponent of |z1|: c0 + ct*t + ctp*t' with integer coefficients.
struct ExpForm {
    int c0 = 0, ct = 0, ctp = 0;
    auto operator<=>(const ExpForm&) const = default;
    ExpForm operator+(const ExpForm& o) const { return {c0 + o.c0, ct + o.ct, ctp + o.ctp}; }
    ExpForm operator-(const ExpForm& o) const { return {c0 - o.c0, ct - o.ct, ctp - o.ctp}; }
    bool is_zero() const { return c0 == 0 && ct == 0 && ctp == 0; }
    double eval(double t, double tp) const { return c0 + ct * t + ctp * tp; }
    std::string str() const;
};

/// Dominance of exponent forms over the open parameter region 0 < t < t' < 1:
/// a >= b everywhere, with strict inequality somewhere.
bool form_dominates(const ExpForm& a, const ExpForm& b);

/// One monomial c(t,t') * |z1|^p * z1^q * conj(z1)^r * deltas * tag.
/// Canonical form keeps q*r = 0 (paired powers fold into |z1|^2).
struct SymTerm {
    TauPoly coeff;
    ExpForm p;
    int q = 0, r = 0;
    std::vector<Idx> deltas;  // sorted unique; factors delta_{1,idx}
    WeightTag tag;

    /// Exponent of the term's absolute value along a ray.
    ExpForm total_exponent() const { return {p.c0 + q + r, p.ct, p.ctp}; }
    bool operator==(const SymTerm&) const = default;
    std::string str() const;
};

class SymExpr {
public:
    SymExpr() = default;
    explicit SymExpr(std::vector<SymTerm> terms) { assign(std::move(terms)); }

    const std::vector<SymTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    friend SymExpr operator+(const SymExpr& a, const SymExpr& b);
    friend SymExpr operator-(const SymExpr& a, const SymExpr& b);
    friend SymExpr operator*(const SymExpr& a, const SymExpr& b);
    SymExpr operator-() const;
    SymExpr scaled(const TauPoly& c) const;
    SymExpr shifted(const ExpForm& dp) const;  // multiply by |z1|^dp

    friend bool operator==(const SymExpr& a, const SymExpr& b) { return a.terms_ == b.terms_; }

    std::string str() const;  // one canonical term per line

private:
    void assign(std::vector<SymTerm> terms);
    std::vector<SymTerm> terms_;
};

/// K*|z1|^2t + sign*M*|z1|^2t' (sign = -1 is the curvature-correcting choice).
SymExpr sym_potential(int correction_sign = -1);

/// Formal Wirtinger derivative by a single slot.
SymExpr sym_d(const SymExpr& e, Slot s);

/// Mixed second derivative d_hol d_antihol.
SymExpr sym_ddbar(const SymExpr& e, Idx hol, Idx antihol);

/// Adapted-point evaluation: bare K,M -> 1; first derivatives and
/// unmixed second derivatives of K,M vanish; everything else is kept
/// as a bounded symbol.
SymExpr sym_adapted_evaluate(const SymExpr& e);

/// Substitute every free index by the cone index 1 (deltas collapse to 1).
SymExpr sym_specialize_ones(const SymExpr& e);

/// Substitute t' = t in coefficients and exponents.
SymExpr sym_substitute_tp_equals_t(const SymExpr& e);

/// Rename every M factor to K (used by degeneration checks).
SymExpr sym_rename_m_to_k(const SymExpr& e);

struct DominationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Geometric-series expansion of 1/g_{11~} about the dominant t^2|z1|^(2t-2)
/// term, truncated after `order` correction factors.
SymExpr sym_inverse_11(const SymExpr& metric_11, int order);

/// Tag-free coefficient at a given total exponent form. Throws when a tagged
/// or unpaired (q != r before folding) term sits at that exact form.
TauPoly sym_coefficient_at(const SymExpr& e, const ExpForm& total);

/// Numeric substitution along the ray z1 = rho > 0. Weight-derivative factors
/// are looked up by their canonical name (e.g. "K[1,1~]"); bare "K"/"M" too.
double sym_eval_numeric(const SymExpr& e, double t, double tp, double rho,
                        const std::map<std::string, double>& weight_values = {});

}  // namespace conekit
