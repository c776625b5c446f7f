#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace wtf {

using BigInt = boost::multiprecision::cpp_int;

class PreconditionError : public std::runtime_error {
public:
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

/// Exact dyadic rational num / 2^exp. Canonical form has odd numerator,
/// or num == 0 with exp == 0.
class DyadicRational {
public:
    DyadicRational() : num_(0), exp_(0) {}
    DyadicRational(BigInt num, int exp) : num_(std::move(num)), exp_(exp) { normalize(); }
    static DyadicRational integer(long long v) { return DyadicRational(BigInt(v), 0); }

    const BigInt& num() const { return num_; }
    int exp() const { return exp_; }
    bool is_zero() const { return num_ == 0; }

    DyadicRational operator-() const { return DyadicRational(-num_, exp_); }

    friend DyadicRational operator+(const DyadicRational& x, const DyadicRational& y) {
        int e = std::max(x.exp_, y.exp_);
        return DyadicRational((x.num_ << (e - x.exp_)) + (y.num_ << (e - y.exp_)), e);
    }
    friend DyadicRational operator-(const DyadicRational& x, const DyadicRational& y) {
        return x + (-y);
    }
    friend DyadicRational operator*(const DyadicRational& x, const DyadicRational& y) {
        return DyadicRational(x.num_ * y.num_, x.exp_ + y.exp_);
    }

    /// value * 2^t
    DyadicRational mul_pow2(int t) const { return DyadicRational(num_, exp_ - t); }

    int sign() const { return num_ == 0 ? 0 : (num_ > 0 ? 1 : -1); }

    friend int compare(const DyadicRational& x, const DyadicRational& y) {
        return (x - y).sign();
    }
    friend bool operator==(const DyadicRational& x, const DyadicRational& y) { return compare(x, y) == 0; }
    friend bool operator!=(const DyadicRational& x, const DyadicRational& y) { return compare(x, y) != 0; }
    friend bool operator<(const DyadicRational& x, const DyadicRational& y) { return compare(x, y) < 0; }
    friend bool operator<=(const DyadicRational& x, const DyadicRational& y) { return compare(x, y) <= 0; }
    friend bool operator>(const DyadicRational& x, const DyadicRational& y) { return compare(x, y) > 0; }
    friend bool operator>=(const DyadicRational& x, const DyadicRational& y) { return compare(x, y) >= 0; }

    double to_double() const { return std::ldexp(num_.convert_to<double>(), -exp_); }

    std::string str() const;

private:
    void normalize() {
        if (num_ == 0) { exp_ = 0; return; }
        while ((num_ & 1) == 0) { num_ >>= 1; --exp_; }
    }

    BigInt num_;
    int exp_;
};

/// Exact element (a + b*sqrt(2)) / 2^m of the ring generated by dyadic
/// rationals and sqrt(2). Closed under +, -, *; sign is exactly decidable.
/// Canonical form has a, b not both even (or a == b == 0 with m == 0).
class QuadExt {
public:
    QuadExt() : a_(0), b_(0), m_(0) {}
    QuadExt(BigInt a, BigInt b, int m) : a_(std::move(a)), b_(std::move(b)), m_(m) { normalize(); }
    static QuadExt integer(long long v) { return QuadExt(BigInt(v), BigInt(0), 0); }
    static QuadExt sqrt2() { return QuadExt(BigInt(0), BigInt(1), 0); }
    static QuadExt dyadic(const DyadicRational& d) { return QuadExt(d.num(), BigInt(0), d.exp()); }
    /// 2^(k/2); exact for any integer k (odd k contributes a sqrt(2) factor).
    static QuadExt pow2_half(int k) {
        if (k % 2 == 0) return QuadExt(BigInt(1), BigInt(0), -k / 2);
        return QuadExt(BigInt(0), BigInt(1), -(k - 1) / 2);  // sqrt(2) * 2^{(k-1)/2}
    }

    const BigInt& a() const { return a_; }
    const BigInt& b() const { return b_; }
    int m() const { return m_; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    /// Exact value as a dyadic rational; requires b == 0.
    DyadicRational to_dyadic() const {
        if (b_ != 0) throw PreconditionError("QuadExt: not a dyadic rational");
        return DyadicRational(a_, m_);
    }

    QuadExt operator-() const { return QuadExt(-a_, -b_, m_); }

    friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
        int m = std::max(x.m_, y.m_);
        return QuadExt((x.a_ << (m - x.m_)) + (y.a_ << (m - y.m_)),
                       (x.b_ << (m - x.m_)) + (y.b_ << (m - y.m_)), m);
    }
    friend QuadExt operator-(const QuadExt& x, const QuadExt& y) { return x + (-y); }
    friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
        return QuadExt(x.a_ * y.a_ + 2 * (x.b_ * y.b_), x.a_ * y.b_ + x.b_ * y.a_, x.m_ + y.m_);
    }

    QuadExt& operator+=(const QuadExt& y) { *this = *this + y; return *this; }
    QuadExt& operator-=(const QuadExt& y) { *this = *this - y; return *this; }
    QuadExt& operator*=(const QuadExt& y) { *this = *this * y; return *this; }

    /// value * 2^t
    QuadExt mul_pow2(int t) const { return QuadExt(a_, b_, m_ - t); }
    QuadExt square() const { return *this * *this; }

    /// Exact sign: compares a^2 against 2 b^2 when the terms disagree.
    int sign() const {
        int sa = a_ == 0 ? 0 : (a_ > 0 ? 1 : -1);
        int sb = b_ == 0 ? 0 : (b_ > 0 ? 1 : -1);
        if (sa == 0 && sb == 0) return 0;
        if (sa >= 0 && sb >= 0) return 1;
        if (sa <= 0 && sb <= 0) return -1;
        // mixed signs: |a| vs sqrt(2)|b|, i.e. a^2 vs 2 b^2 (never equal for nonzero)
        BigInt a2 = a_ * a_, b22 = 2 * b_ * b_;
        if (sa > 0) return a2 > b22 ? 1 : -1;
        return a2 < b22 ? 1 : -1;
    }

    QuadExt abs() const { return sign() >= 0 ? *this : -*this; }

    friend int compare(const QuadExt& x, const QuadExt& y) { return (x - y).sign(); }
    friend bool operator==(const QuadExt& x, const QuadExt& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.m_ == y.m_;  // canonical forms
    }
    friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }
    friend bool operator<(const QuadExt& x, const QuadExt& y) { return compare(x, y) < 0; }
    friend bool operator<=(const QuadExt& x, const QuadExt& y) { return compare(x, y) <= 0; }
    friend bool operator>(const QuadExt& x, const QuadExt& y) { return compare(x, y) > 0; }
    friend bool operator>=(const QuadExt& x, const QuadExt& y) { return compare(x, y) >= 0; }

    double to_double() const {
        return std::ldexp(a_.convert_to<double>() + b_.convert_to<double>() * std::sqrt(2.0), -m_);
    }

    std::string str() const;

private:
    void normalize() {
        if (a_ == 0 && b_ == 0) { m_ = 0; return; }
        while ((a_ & 1) == 0 && (b_ & 1) == 0) { a_ >>= 1; b_ >>= 1; --m_; }
    }

    BigInt a_, b_;
    int m_;
};

inline QuadExt max(const QuadExt& x, const QuadExt& y) { return x < y ? y : x; }
inline QuadExt min(const QuadExt& x, const QuadExt& y) { return x < y ? x : y; }

}  // namespace wtf
