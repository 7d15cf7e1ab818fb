#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sjf {

using Int = mpz_class;

/// Exact rational number over GMP, always kept in lowest terms with
/// positive denominator.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {}
    Rational(int n) : q_(n) {}
    Rational(const Int& n) : q_(n) {}
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }
    Rational(const Int& num, const Int& den) : q_(num, den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        q_.canonicalize();
    }
    Rational(long num, long den) : Rational(Int(num), Int(den)) {}

    // Accepts "p/q", "p", optional leading '-'.
    static Rational parse(const std::string& s);

    Int num() const { return q_.get_num(); }
    Int den() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    bool is_zero() const { return q_ == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

    Rational inverse() const {
        if (is_zero()) throw std::domain_error("Rational: inverse of zero");
        return Rational(mpq_class(1 / q_));
    }

    Rational abs() const { return Rational(mpq_class(::abs(q_))); }

    // Largest integer <= value.
    Int floor() const;

    // p-adic valuation; throws on zero (infinite valuation).
    long v_p(const Int& p) const;

    double to_double() const { return q_.get_d(); }

    // Canonical "p/q" (or "p" for integers); used for file formats and
    // canonical byte keys.
    std::string str() const;

    Rational pow(long e) const;

private:
    mpq_class q_;
};

// Valuation of a nonzero integer.
long int_v_p(const Int& n, const Int& p);

Int int_gcd(const Int& a, const Int& b);
Int int_lcm(const Int& a, const Int& b);

// Floor/mod with positive remainder.
Int int_fdiv(const Int& a, const Int& b);
Int int_fmod(const Int& a, const Int& b);

// Extended gcd: g = ax + by.
void ext_gcd(const Int& a, const Int& b, Int& g, Int& x, Int& y);

}  // namespace sjf
