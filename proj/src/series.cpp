#include "sjf/series.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace sjf {

FormalSeries FormalSeries::truncate(int order) const {
    FormalSeries r(order);
    int m = std::min(order, this->order());
    for (int i = 0; i <= m; ++i) r[i] = (*this)[i];
    return r;
}

FormalSeries FormalSeries::operator+(const FormalSeries& o) const {
    int m = std::min(order(), o.order());
    FormalSeries r(m);
    for (int i = 0; i <= m; ++i) r[i] = (*this)[i] + o[i];
    return r;
}

FormalSeries FormalSeries::operator-(const FormalSeries& o) const {
    int m = std::min(order(), o.order());
    FormalSeries r(m);
    for (int i = 0; i <= m; ++i) r[i] = (*this)[i] - o[i];
    return r;
}

FormalSeries FormalSeries::operator*(const FormalSeries& o) const {
    int m = std::min(order(), o.order());
    FormalSeries r(m);
    for (int i = 0; i <= m; ++i) {
        if ((*this)[i].is_zero()) continue;
        for (int j = 0; i + j <= m; ++j) r[i + j] += (*this)[i] * o[j];
    }
    return r;
}

FormalSeries FormalSeries::reciprocal() const {
    if ((*this)[0] != Rational(1))
        throw std::domain_error("FormalSeries::reciprocal: constant term must be 1");
    int J = order();
    FormalSeries r(J);
    r[0] = Rational(1);
    for (int n = 1; n <= J; ++n) {
        Rational s;
        for (int i = 1; i <= n; ++i) s += (*this)[i] * r[n - i];
        r[n] = -s;
    }
    return r;
}

std::string FormalSeries::str() const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i <= order(); ++i) {
        if ((*this)[i].is_zero()) continue;
        if (!first) os << " + ";
        os << (*this)[i].str();
        if (i > 0) os << "*X^" << i;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

void RatPoly::trim() {
    while (c_.size() > 1 && c_.back().is_zero()) c_.pop_back();
}

RatPoly RatPoly::operator*(const RatPoly& o) const {
    std::vector<Rational> r(c_.size() + o.c_.size() - 1);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    }
    return RatPoly(std::move(r));
}

RatPoly RatPoly::operator+(const RatPoly& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < c_.size()) r[i] += c_[i];
        if (i < o.c_.size()) r[i] += o.c_[i];
    }
    return RatPoly(std::move(r));
}

FormalSeries RatPoly::as_series(int order) const {
    FormalSeries s(order);
    for (int i = 0; i <= order && i <= degree(); ++i) s[i] = c_[static_cast<size_t>(i)];
    return s;
}

std::string RatPoly::str() const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i <= degree(); ++i) {
        const Rational& c = c_[static_cast<size_t>(i)];
        if (c.is_zero() && degree() > 0) continue;
        if (!first) os << " + ";
        os << c.str();
        if (i > 0) os << "*X^" << i;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

void RootOfUnitySum::add(const Rational& phase, const Rational& coeff) {
    if (coeff.is_zero()) return;
    Rational p = phase - Rational(phase.floor());
    auto it = terms_.find(p);
    if (it == terms_.end())
        terms_.emplace(p, coeff);
    else {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Int euler_phi(const Int& n) {
    Int m = n, result = n;
    for (Int p = 2; p * p <= m;) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
        p += (p == 2) ? 1 : 2;
    }
    if (m > 1) result -= result / m;
    return result;
}

Int moebius(const Int& n) {
    Int m = n;
    int factors = 0;
    for (Int p = 2; p * p <= m;) {
        if (m % p == 0) {
            m /= p;
            if (m % p == 0) return 0;
            ++factors;
        }
        p += (p == 2) ? 1 : 2;
    }
    if (m > 1) ++factors;
    return (factors % 2 == 0) ? 1 : -1;
}

Int ramanujan_sum(const Int& N, const Int& a) {
    Int g = int_gcd(int_fmod(a, N), N);
    if (g == 0) g = N;
    Int Ng = N / g;
    Int mu = moebius(Ng);
    if (mu == 0) return 0;
    return mu * (euler_phi(N) / euler_phi(Ng));
}

Rational RootOfUnitySum::reduce_to_rational() const {
    if (terms_.empty()) return Rational(0);
    // Common denominator of all phases.
    Int N(1);
    for (const auto& [p, c] : terms_) N = int_lcm(N, p.den());
    if (N == 1) {
        Rational s;
        for (const auto& [p, c] : terms_) s += c;
        return s;
    }
    // Galois stability: for each t in (Z/N)^*, the map  a -> t*a (mod N)
    // must permute the terms with matching coefficients.
    std::map<Int, Rational> by_res;
    for (const auto& [p, c] : terms_) {
        Int a = int_fmod(p.num() * (N / p.den()), N);
        by_res[a] += c;
    }
    for (Int t = 2; t < N; ++t) {
        if (int_gcd(t, N) != 1) continue;
        for (const auto& [a, c] : by_res) {
            Int ta = int_fmod(t * a, N);
            auto it = by_res.find(ta);
            Rational other = (it == by_res.end()) ? Rational(0) : it->second;
            if (other != c)
                throw std::domain_error(
                    "RootOfUnitySum: sum is not Galois-stable, cannot be rational");
        }
    }
    // Rational value = sum of coefficients times averaged root of unity,
    // i.e. c_N(a) / phi(N) per term class -- but since the sum is Galois
    // stable it equals its Galois average exactly.
    Rational phiN(euler_phi(N));
    Rational s;
    for (const auto& [a, c] : by_res) s += c * Rational(ramanujan_sum(N, a)) / phiN;
    return s;
}

}  // namespace sjf
