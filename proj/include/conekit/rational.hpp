#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace conekit {

/// Exact rational number on 64-bit integers. Throws on overflow instead of
/// wrapping; the expansions handled here keep numerators tiny, so an overflow
/// means a logic error upstream.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    long long num() const { return num_; }
    long long den() const { return den_; }
    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(checked((__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_),
                        checked((__int128)a.den_ * b.den_));
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return a + Rational(-b.num_, b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(checked((__int128)a.num_ * b.num_), checked((__int128)a.den_ * b.den_));
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        return Rational(checked((__int128)a.num_ * b.den_), checked((__int128)a.den_ * b.num_));
    }
    Rational operator-() const { return Rational(-num_, den_); }
    Rational& operator+=(const Rational& o) { *this = *this + o; return *this; }
    Rational& operator-=(const Rational& o) { *this = *this - o; return *this; }
    Rational& operator*=(const Rational& o) { *this = *this * o; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
    }

    double value() const { return double(num_) / double(den_); }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    static long long checked(__int128 v) {
        if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("rational overflow");
        return (long long)v;
    }
    void normalize() {
        if (den_ == 0) throw std::domain_error("rational with zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    long long num_;
    long long den_;
};

}  // namespace conekit
