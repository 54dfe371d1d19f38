#include "conekit/sym_expr.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace conekit {

std::string idx_name(Idx i) {
    switch (i) {
        case Idx::one: return "1";
        case Idx::two: return "2";
        case Idx::a: return "a";
        case Idx::b: return "b";
        case Idx::g: return "g";
        case Idx::d: return "d";
    }
    return "?";
}

std::string WeightFactor::str() const {
    std::string s = (sym == K) ? "K" : "M";
    if (derivs.empty()) return s;
    s += "[";
    for (std::size_t i = 0; i < derivs.size(); ++i) {
        if (i) s += ",";
        s += idx_name(derivs[i].idx);
        if (derivs[i].bar) s += "~";
    }
    s += "]";
    return s;
}

std::string ExpForm::str() const {
    std::ostringstream os;
    bool any = false;
    auto emit = [&](int c, const char* var) {
        if (c == 0) return;
        if (any) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        int a = std::abs(c);
        if (var[0] == '\0') os << a;
        else {
            if (a != 1) os << a << "*";
            os << var;
        }
        any = true;
    };
    emit(c0, "");
    emit(ct, "t");
    emit(ctp, "t'");
    if (!any) os << "0";
    return os.str();
}

bool form_dominates(const ExpForm& a, const ExpForm& b) {
    ExpForm d = a - b;
    if (d.is_zero()) return false;
    // affine in (t,t'); the closed region is the triangle with vertices
    // (0,0), (0,1), (1,1)
    double v1 = d.eval(0, 0), v2 = d.eval(0, 1), v3 = d.eval(1, 1);
    if (v1 < 0 || v2 < 0 || v3 < 0) return false;
    return d.eval(0.25, 0.75) > 0;
}

std::string SymTerm::str() const {
    std::ostringstream os;
    bool paren = coeff.coeffs().size() > 1;
    os << (paren ? "(" : "") << coeff.str() << (paren ? ")" : "");
    os << " * |z|^(" << p.str() << ") * z^" << q << " * zbar^" << r << " * ";
    bool any = false;
    for (Idx dl : deltas) {
        if (any) os << "*";
        os << "d1(" << idx_name(dl) << ")";
        any = true;
    }
    for (const auto& f : tag) {
        if (any) os << "*";
        os << f.str();
        any = true;
    }
    if (!any) os << "1";
    return os.str();
}

namespace {

using TermKey = std::tuple<ExpForm, int, int, std::vector<Idx>, WeightTag>;

TermKey key_of(const SymTerm& t) { return {t.p, t.q, t.r, t.deltas, t.tag}; }

void fold_pairs(SymTerm& t) {
    int m = std::min(t.q, t.r);
    if (m > 0) {
        t.q -= m;
        t.r -= m;
        t.p.c0 += 2 * m;
    }
    std::sort(t.deltas.begin(), t.deltas.end());
    t.deltas.erase(std::unique(t.deltas.begin(), t.deltas.end()), t.deltas.end());
    // deltas force the index to 1; drop the trivial delta_{11}
    t.deltas.erase(std::remove(t.deltas.begin(), t.deltas.end(), Idx::one), t.deltas.end());
    for (auto& f : t.tag) std::sort(f.derivs.begin(), f.derivs.end());
    std::sort(t.tag.begin(), t.tag.end());
}

}  // namespace

void SymExpr::assign(std::vector<SymTerm> terms) {
    std::map<TermKey, TauPoly> acc;
    for (auto& t : terms) {
        if (t.coeff.is_zero()) continue;
        fold_pairs(t);
        acc[key_of(t)] += t.coeff;
    }
    terms_.clear();
    for (auto& [k, c] : acc) {
        if (c.is_zero()) continue;
        SymTerm t;
        t.coeff = c;
        t.p = std::get<0>(k);
        t.q = std::get<1>(k);
        t.r = std::get<2>(k);
        t.deltas = std::get<3>(k);
        t.tag = std::get<4>(k);
        terms_.push_back(std::move(t));
    }
}

SymExpr operator+(const SymExpr& a, const SymExpr& b) {
    std::vector<SymTerm> all = a.terms_;
    all.insert(all.end(), b.terms_.begin(), b.terms_.end());
    return SymExpr(std::move(all));
}

SymExpr operator-(const SymExpr& a, const SymExpr& b) { return a + (-b); }

SymExpr SymExpr::operator-() const {
    std::vector<SymTerm> all = terms_;
    for (auto& t : all) t.coeff = -t.coeff;
    return SymExpr(std::move(all));
}

SymExpr operator*(const SymExpr& a, const SymExpr& b) {
    std::vector<SymTerm> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& ta : a.terms_)
        for (const auto& tb : b.terms_) {
            SymTerm t;
            t.coeff = ta.coeff * tb.coeff;
            t.p = ta.p + tb.p;
            t.q = ta.q + tb.q;
            t.r = ta.r + tb.r;
            t.deltas = ta.deltas;
            t.deltas.insert(t.deltas.end(), tb.deltas.begin(), tb.deltas.end());
            t.tag = ta.tag;
            t.tag.insert(t.tag.end(), tb.tag.begin(), tb.tag.end());
            out.push_back(std::move(t));
        }
    return SymExpr(std::move(out));
}

SymExpr SymExpr::scaled(const TauPoly& c) const {
    std::vector<SymTerm> all = terms_;
    for (auto& t : all) t.coeff = t.coeff * c;
    return SymExpr(std::move(all));
}

SymExpr SymExpr::shifted(const ExpForm& dp) const {
    std::vector<SymTerm> all = terms_;
    for (auto& t : all) t.p = t.p + dp;
    return SymExpr(std::move(all));
}

std::string SymExpr::str() const {
    std::ostringstream os;
    for (const auto& t : terms_) os << t.str() << "\n";
    return os.str();
}

SymExpr sym_potential(int correction_sign) {
    SymTerm k;
    k.coeff = TauPoly::constant(1);
    k.p = {0, 2, 0};
    k.tag = {WeightFactor{WeightFactor::K, {}}};
    SymTerm m;
    m.coeff = TauPoly::constant(Rational(correction_sign));
    m.p = {0, 0, 2};
    m.tag = {WeightFactor{WeightFactor::M, {}}};
    return SymExpr({k, m});
}

SymExpr sym_d(const SymExpr& e, Slot s) {
    std::vector<SymTerm> out;
    for (const auto& t : e.terms()) {
        // product rule over the weight factors
        for (std::size_t j = 0; j < t.tag.size(); ++j) {
            SymTerm n = t;
            n.tag[j].derivs.push_back(s);
            if (n.tag[j].derivs.size() > 4)
                throw std::domain_error("weight derivative of order > 4 requested");
            out.push_back(std::move(n));
        }
        const bool formal = (s.idx != Idx::one && s.idx != Idx::two);
        const bool cone = (s.idx != Idx::two);  // z1-dependence only
        if (!cone) continue;
        if (!t.p.is_zero()) {  // d |z|^p -> (p/2)|z|^(p-2) * (zbar or z)
            SymTerm n = t;
            TauPoly half_p = TauPoly::monomial(0, 0, Rational(t.p.c0, 2)) +
                             TauPoly::monomial(1, 0, Rational(t.p.ct, 2)) +
                             TauPoly::monomial(0, 1, Rational(t.p.ctp, 2));
            n.coeff = t.coeff * half_p;
            n.p.c0 -= 2;
            if (s.bar) n.q += 1;
            else n.r += 1;
            if (formal) n.deltas.push_back(s.idx);
            out.push_back(std::move(n));
        }
        if (!s.bar && t.q > 0) {
            SymTerm n = t;
            n.coeff = t.coeff.scaled(Rational(t.q));
            n.q -= 1;
            if (formal) n.deltas.push_back(s.idx);
            out.push_back(std::move(n));
        }
        if (s.bar && t.r > 0) {
            SymTerm n = t;
            n.coeff = t.coeff.scaled(Rational(t.r));
            n.r -= 1;
            if (formal) n.deltas.push_back(s.idx);
            out.push_back(std::move(n));
        }
    }
    return SymExpr(std::move(out));
}

SymExpr sym_ddbar(const SymExpr& e, Idx hol, Idx antihol) {
    return sym_d(sym_d(e, Slot{hol, false}), Slot{antihol, true});
}

SymExpr sym_adapted_evaluate(const SymExpr& e) {
    std::vector<SymTerm> out;
    for (const auto& t : e.terms()) {
        SymTerm n = t;
        n.tag.clear();
        bool dead = false;
        for (const auto& f : t.tag) {
            if (f.derivs.empty()) continue;  // K = M = 1 at the base point
            if (f.derivs.size() == 1) { dead = true; break; }
            if (f.derivs.size() == 2 && f.derivs[0].bar == f.derivs[1].bar) {
                dead = true;  // unmixed second derivatives vanish
                break;
            }
            n.tag.push_back(f);
        }
        if (!dead) out.push_back(std::move(n));
    }
    return SymExpr(std::move(out));
}

SymExpr sym_specialize_ones(const SymExpr& e) {
    std::vector<SymTerm> out;
    for (const auto& t : e.terms()) {
        SymTerm n = t;
        n.deltas.clear();  // every delta_{1,idx} becomes delta_{11} = 1
        for (auto& f : n.tag)
            for (auto& s : f.derivs)
                if (s.idx != Idx::two) s.idx = Idx::one;
        out.push_back(std::move(n));
    }
    return SymExpr(std::move(out));
}

SymExpr sym_substitute_tp_equals_t(const SymExpr& e) {
    std::vector<SymTerm> out;
    for (const auto& t : e.terms()) {
        SymTerm n = t;
        n.p = {t.p.c0, t.p.ct + t.p.ctp, 0};
        TauPoly c;
        for (const auto& [k, v] : t.coeff.coeffs())
            c += TauPoly::monomial(k.first + k.second, 0, v);
        n.coeff = c;
        out.push_back(std::move(n));
    }
    return SymExpr(std::move(out));
}

SymExpr sym_rename_m_to_k(const SymExpr& e) {
    std::vector<SymTerm> out;
    for (const auto& t : e.terms()) {
        SymTerm n = t;
        for (auto& f : n.tag) f.sym = WeightFactor::K;
        out.push_back(std::move(n));
    }
    return SymExpr(std::move(out));
}

SymExpr sym_inverse_11(const SymExpr& metric_11, int order) {
    const ExpForm dom_p{-2, 2, 0};
    const TauPoly dom_c = TauPoly::monomial(2, 0, 1);
    bool found = false;
    std::vector<SymTerm> rest;
    for (const auto& t : metric_11.terms()) {
        if (t.p == dom_p && t.q == 0 && t.r == 0 && t.deltas.empty() && t.tag.empty()) {
            if (t.coeff != dom_c)
                throw DominationError("dominant cone coefficient is not t^2");
            found = true;
            continue;
        }
        rest.push_back(t);
    }
    if (!found) throw DominationError("metric lacks the t^2|z|^(2t-2) cone term");
    for (const auto& t : rest)
        if (!form_dominates(t.total_exponent(), {-2, 2, 0}))
            throw DominationError("correction term " + t.str() +
                                  " is not dominated on 0<t<t'<1");
    // x = rest / (t^2 |z|^(2t-2));  1/g = L * sum_k (-x)^k,  L = t^-2 |z|^(2-2t)
    std::vector<SymTerm> xs = rest;
    for (auto& t : xs) {
        t.coeff = t.coeff.shifted_t(-2);
        t.p.c0 += 2;
        t.p.ct -= 2;
    }
    SymExpr x{std::move(xs)};
    SymExpr sum({SymTerm{TauPoly::constant(1), {0, 0, 0}, 0, 0, {}, {}}});
    SymExpr acc = sum;
    for (int k = 1; k <= order; ++k) {
        acc = acc * (-x);
        sum = sum + acc;
    }
    std::vector<SymTerm> res = sum.terms();
    for (auto& t : res) {
        t.coeff = t.coeff.shifted_t(-2);
        t.p.c0 += 2;
        t.p.ct -= 2;
    }
    return SymExpr(std::move(res));
}

TauPoly sym_coefficient_at(const SymExpr& e, const ExpForm& total) {
    TauPoly c;
    for (const auto& t : e.terms()) {
        if (t.total_exponent() != total) continue;
        if (!t.tag.empty())
            throw std::logic_error("tagged term at extracted exponent: " + t.str());
        if (t.q != t.r)
            throw std::logic_error("phase-carrying term at extracted exponent: " + t.str());
        c += t.coeff;
    }
    return c;
}

double sym_eval_numeric(const SymExpr& e, double t, double tp, double rho,
                        const std::map<std::string, double>& weight_values) {
    if (rho <= 0) throw std::domain_error("sym_eval_numeric needs rho > 0");
    double s = 0;
    for (const auto& term : e.terms()) {
        double v = term.coeff.eval(t, tp) * std::pow(rho, term.total_exponent().eval(t, tp));
        for (const auto& f : term.tag) {
            auto it = weight_values.find(f.str());
            if (it == weight_values.end())
                throw std::out_of_range("no numeric value supplied for weight factor " + f.str());
            v *= it->second;
        }
        s += v;
    }
    return s;
}

}  // namespace conekit
