#include "conekit/tau_poly.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace conekit {

TauPoly TauPoly::constant(const Rational& c) { return monomial(0, 0, c); }

TauPoly TauPoly::monomial(int deg_t, int deg_tp, const Rational& c) {
    TauPoly p;
    if (!c.is_zero()) p.c_[{deg_t, deg_tp}] = c;
    return p;
}

bool TauPoly::is_constant() const {
    return c_.empty() || (c_.size() == 1 && c_.begin()->first == Key{0, 0});
}

Rational TauPoly::constant_value() const {
    if (c_.empty()) return Rational(0);
    return c_.begin()->second;
}

void TauPoly::prune() {
    for (auto it = c_.begin(); it != c_.end();) {
        if (it->second.is_zero()) it = c_.erase(it);
        else ++it;
    }
}

TauPoly operator+(const TauPoly& a, const TauPoly& b) {
    TauPoly r = a;
    for (const auto& [k, v] : b.c_) {
        auto it = r.c_.find(k);
        if (it == r.c_.end()) r.c_[k] = v;
        else it->second += v;
    }
    r.prune();
    return r;
}

TauPoly operator-(const TauPoly& a, const TauPoly& b) { return a + (-b); }

TauPoly TauPoly::operator-() const {
    TauPoly r = *this;
    for (auto& [k, v] : r.c_) v = -v;
    return r;
}

TauPoly operator*(const TauPoly& a, const TauPoly& b) {
    TauPoly r;
    for (const auto& [ka, va] : a.c_)
        for (const auto& [kb, vb] : b.c_) {
            TauPoly::Key k{ka.first + kb.first, ka.second + kb.second};
            auto it = r.c_.find(k);
            if (it == r.c_.end()) r.c_[k] = va * vb;
            else it->second += va * vb;
        }
    r.prune();
    return r;
}

TauPoly TauPoly::scaled(const Rational& c) const {
    TauPoly r;
    if (c.is_zero()) return r;
    for (const auto& [k, v] : c_) r.c_[k] = v * c;
    return r;
}

TauPoly TauPoly::shifted_t(int k) const {
    TauPoly r;
    for (const auto& [key, v] : c_) r.c_[{key.first + k, key.second}] = v;
    return r;
}

double TauPoly::eval(double t, double tp) const {
    double s = 0;
    for (const auto& [k, v] : c_)
        s += v.value() * std::pow(t, k.first) * std::pow(tp, k.second);
    return s;
}

Rational TauPoly::eval_exact(const Rational& t, const Rational& tp) const {
    auto ipow = [](Rational base, int e) {
        if (e < 0) { base = Rational(1) / base; e = -e; }
        Rational r(1);
        for (int i = 0; i < e; ++i) r *= base;
        return r;
    };
    Rational s(0);
    for (const auto& [k, v] : c_) s += v * ipow(t, k.first) * ipow(tp, k.second);
    return s;
}

std::optional<TauPoly> TauPoly::divided_by(const TauPoly& d) const {
    if (d.is_zero()) return std::nullopt;
    // Long division treating both as polynomials in t' with Laurent-t
    // coefficients; divisors used here ((t'-t), t', t^k) keep it exact.
    auto lead = [](const TauPoly& p) {
        // highest t'-degree, then highest t-degree
        TauPoly::Key best{INT32_MIN, INT32_MIN};
        Rational c(0);
        for (const auto& [k, v] : p.c_) {
            if (k.second > best.second || (k.second == best.second && k.first > best.first)) {
                best = k;
                c = v;
            }
        }
        return std::make_pair(best, c);
    };
    TauPoly rem = *this, quot;
    auto [dk, dc] = lead(d);
    int guard = 0;
    while (!rem.is_zero()) {
        if (++guard > 10000) return std::nullopt;
        auto [rk, rc] = lead(rem);
        if (rk.second < dk.second) return std::nullopt;
        TauPoly q = TauPoly::monomial(rk.first - dk.first, rk.second - dk.second, rc / dc);
        quot += q;
        rem = rem - q * d;
    }
    return quot;
}

std::string TauPoly::factored_str() const {
    if (is_zero()) return "0";
    TauPoly p = *this;
    int pow_tp = 0, pow_tpmt = 0, pow_t = 0;
    const TauPoly tp_f = TauPoly::tp();
    const TauPoly diff = TauPoly::tp() - TauPoly::t();
    // normalize away any pure t-power first
    int min_t = 0;
    bool first = true;
    for (const auto& [k, v] : p.c_) {
        (void)v;
        min_t = first ? k.first : std::min(min_t, k.first);
        first = false;
    }
    if (min_t != 0) { p = p.shifted_t(-min_t); pow_t = min_t; }
    while (true) {
        auto q = p.divided_by(tp_f);
        if (!q) break;
        p = *q;
        ++pow_tp;
    }
    while (true) {
        auto q = p.divided_by(diff);
        if (!q) break;
        p = *q;
        ++pow_tpmt;
    }
    if (!p.is_constant()) return str();
    Rational c = p.constant_value();
    std::ostringstream os;
    bool need_star = false;
    if (c != Rational(1) || (pow_tp == 0 && pow_tpmt == 0 && pow_t == 0)) {
        os << c.str();
        need_star = true;
    }
    auto emit = [&](const std::string& sym, int e) {
        if (e == 0) return;
        if (need_star) os << "*";
        os << sym;
        if (e != 1) os << "^" << e;
        need_star = true;
    };
    emit("t", pow_t);
    emit("t'", pow_tp);
    emit("(t'-t)", pow_tpmt);
    return os.str();
}

bool TauPoly::positive_on_cone_region() const {
    if (is_zero()) return false;
    TauPoly p = *this;
    int min_t = 0;
    bool first = true;
    for (const auto& [k, v] : p.c_) {
        (void)v;
        min_t = first ? k.first : std::min(min_t, k.first);
        first = false;
    }
    if (min_t != 0) p = p.shifted_t(-min_t);  // t^k > 0 on the region
    const TauPoly tp_f = TauPoly::tp();
    const TauPoly diff = TauPoly::tp() - TauPoly::t();
    while (auto q = p.divided_by(tp_f)) p = *q;
    while (auto q = p.divided_by(diff)) p = *q;
    if (!p.is_constant()) return false;  // no sign conclusion from factoring
    return !p.constant_value().is_zero() && !p.constant_value().is_negative();
}

std::string TauPoly::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool lead = true;
    for (const auto& [k, v] : c_) {
        Rational a = v;
        if (lead) {
            if (a.is_negative()) { os << "-"; a = -a; }
        } else {
            os << (a.is_negative() ? " - " : " + ");
            if (a.is_negative()) a = -a;
        }
        bool has_vars = (k.first != 0 || k.second != 0);
        if (a != Rational(1) || !has_vars) os << a.str();
        bool star = (a != Rational(1)) && has_vars;
        if (k.first != 0) {
            if (star) os << "*";
            os << "t";
            if (k.first != 1) os << "^" << k.first;
            star = true;
        }
        if (k.second != 0) {
            if (star) os << "*";
            os << "t'";
            if (k.second != 1) os << "^" << k.second;
        }
        lead = false;
    }
    return os.str();
}

}  // namespace conekit
