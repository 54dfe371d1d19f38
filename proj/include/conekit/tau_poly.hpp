#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "conekit/rational.hpp"

namespace conekit {

/// Polynomial in the cone-angle fraction t and the correction exponent t'
/// with exact rational coefficients. Laurent in t (negative t-powers appear
/// in the inverse-metric expansion); plain polynomial in t'.
///
/// Printing convention: t' is spelled "t'".
class TauPoly {
public:
    using Key = std::pair<int, int>;  // (deg_t, deg_tp)

    TauPoly() = default;
    static TauPoly constant(const Rational& c);
    static TauPoly monomial(int deg_t, int deg_tp, const Rational& c);
    static TauPoly t() { return monomial(1, 0, 1); }
    static TauPoly tp() { return monomial(0, 1, 1); }

    bool is_zero() const { return c_.empty(); }
    bool is_constant() const;
    Rational constant_value() const;  // requires is_constant()

    friend TauPoly operator+(const TauPoly& a, const TauPoly& b);
    friend TauPoly operator-(const TauPoly& a, const TauPoly& b);
    friend TauPoly operator*(const TauPoly& a, const TauPoly& b);
    TauPoly operator-() const;
    TauPoly& operator+=(const TauPoly& o) { *this = *this + o; return *this; }
    TauPoly& operator*=(const TauPoly& o) { *this = *this * o; return *this; }
    TauPoly scaled(const Rational& c) const;
    TauPoly shifted_t(int k) const;  // multiply by t^k (k may be negative)

    friend bool operator==(const TauPoly& a, const TauPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const TauPoly& a, const TauPoly& b) { return !(a == b); }
    friend bool operator<(const TauPoly& a, const TauPoly& b) { return a.c_ < b.c_; }

    double eval(double t, double tp) const;
    Rational eval_exact(const Rational& t, const Rational& tp) const;

    /// Exact division; nullopt when the divisor does not divide evenly.
    std::optional<TauPoly> divided_by(const TauPoly& d) const;

    /// Attempts to write the polynomial as c * t^a * t'^b * (t'-t)^m and
    /// returns the printable factored form ("t'^2*(t'-t)^2"); falls back to
    /// the expanded form when no such factorization exists.
    std::string factored_str() const;

    /// True when the polynomial is positive at every point of the open
    /// region 0 < t < t' < 1 (decided via the factored form).
    bool positive_on_cone_region() const;

    std::string str() const;

    const std::map<Key, Rational>& coeffs() const { return c_; }

private:
    void prune();
    std::map<Key, Rational> c_;
};

}  // namespace conekit
