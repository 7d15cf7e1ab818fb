#pragma once

#include <map>
#include <vector>

#include "sjf/rational.hpp"

namespace sjf {

/// Truncated formal power series over Q; coefficients index 0..J.
class FormalSeries {
public:
    FormalSeries() : c_(1) {}
    explicit FormalSeries(int order) : c_(static_cast<size_t>(order) + 1) {}
    explicit FormalSeries(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {}

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const Rational& operator[](int i) const { return c_[static_cast<size_t>(i)]; }
    Rational& operator[](int i) { return c_[static_cast<size_t>(i)]; }
    const std::vector<Rational>& coeffs() const { return c_; }

    FormalSeries truncate(int order) const;
    FormalSeries operator+(const FormalSeries& o) const;
    FormalSeries operator-(const FormalSeries& o) const;
    FormalSeries operator*(const FormalSeries& o) const;
    // Reciprocal of a series with constant term 1, to the same order.
    FormalSeries reciprocal() const;

    friend bool operator==(const FormalSeries& a, const FormalSeries& b) {
        return a.c_ == b.c_;
    }

    std::string str() const;

private:
    std::vector<Rational> c_;
};

/// Polynomial in one variable over Q (dense, no truncation).
class RatPoly {
public:
    RatPoly() : c_{Rational(0)} {}
    explicit RatPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    static RatPoly one() { return RatPoly({Rational(1)}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    Rational coeff(int i) const {
        return i < static_cast<int>(c_.size()) ? c_[static_cast<size_t>(i)] : Rational(0);
    }
    const std::vector<Rational>& coeffs() const { return c_; }

    RatPoly operator*(const RatPoly& o) const;
    RatPoly operator+(const RatPoly& o) const;

    friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.c_ == b.c_; }

    FormalSeries as_series(int order) const;
    std::string str() const;

private:
    void trim();
    std::vector<Rational> c_;
};

/// num/den with den(0) = 1; expands to a truncated series.
struct RatFunction {
    RatPoly num = RatPoly::one();
    RatPoly den = RatPoly::one();

    RatFunction operator*(const RatFunction& o) const {
        return {num * o.num, den * o.den};
    }
    FormalSeries expand(int order) const {
        return (num.as_series(order) * den.as_series(order).reciprocal()).truncate(order);
    }
    std::string str() const { return num.str() + " / " + den.str(); }
};

/// Exact evaluation of sums  sum_q c_q * e(q)  with rational phases q
/// (mod 1), when the sum is Galois-stable and hence rational. Throws if the
/// accumulated phases are not stable under (Z/N)^*.
class RootOfUnitySum {
public:
    void add(const Rational& phase, const Rational& coeff);
    Rational reduce_to_rational() const;
    bool empty() const { return terms_.empty(); }

private:
    std::map<Rational, Rational> terms_;  // phase in [0,1) -> coefficient
};

// Ramanujan sum c_N(a) = sum over primitive Nth roots zeta of zeta^a.
Int ramanujan_sum(const Int& N, const Int& a);
Int euler_phi(const Int& n);
Int moebius(const Int& n);

}  // namespace sjf
