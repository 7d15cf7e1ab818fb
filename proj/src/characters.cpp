#include "sjf/characters.hpp"

#include <stdexcept>

namespace sjf {

int kronecker_symbol(const Int& a, const Int& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

CharacterModN CharacterModN::trivial(const Int& N) {
    if (N <= 0) throw std::invalid_argument("CharacterModN: modulus must be positive");
    CharacterModN c;
    c.N_ = N;
    long n = N.get_si();
    c.values_.assign(static_cast<size_t>(n), 0);
    for (long a = 0; a < n; ++a)
        if (int_gcd(Int(a), N) == 1) c.values_[static_cast<size_t>(a)] = 1;
    return c;
}

CharacterModN CharacterModN::kronecker(const Int& D) {
    if (D == 0) throw std::invalid_argument("kronecker character: D = 0");
    CharacterModN c;
    c.N_ = ::abs(D);
    long n = c.N_.get_si();
    c.values_.assign(static_cast<size_t>(n == 0 ? 1 : n), 0);
    if (n == 0) n = 1;
    for (long a = 0; a < n; ++a)
        c.values_[static_cast<size_t>(a)] = kronecker_symbol(D, Int(a));
    return c;
}

CharacterModN CharacterModN::from_table(const Int& N, std::vector<int> values) {
    CharacterModN c;
    c.N_ = N;
    c.values_ = std::move(values);
    if (c.values_.size() != static_cast<size_t>(N.get_si()))
        throw std::invalid_argument("CharacterModN: table size mismatch");
    if (!c.is_multiplicative())
        throw std::invalid_argument("CharacterModN: table not multiplicative");
    return c;
}

int CharacterModN::operator()(const Int& a) const {
    Int r = int_fmod(a, N_);
    return values_[static_cast<size_t>(r.get_si())];
}

int CharacterModN::eval_rational(const Rational& x) const {
    int num = (*this)(x.num());
    int den = (*this)(x.den());
    if (den == 0)
        throw std::domain_error("CharacterModN: denominator not prime to modulus");
    return num * den;  // den in {-1, 1}
}

bool CharacterModN::is_trivial() const {
    for (size_t a = 0; a < values_.size(); ++a)
        if (int_gcd(Int(static_cast<long>(a)), N_) == 1 && values_[a] != 1)
            return false;
    return true;
}

CharacterModN CharacterModN::squared() const {
    CharacterModN c = *this;
    for (auto& v : c.values_) v = v * v;
    return c;
}

CharacterModN CharacterModN::times(const CharacterModN& other) const {
    Int M = int_lcm(N_, other.N_);
    long m = M.get_si();
    std::vector<int> vals(static_cast<size_t>(m), 0);
    for (long a = 0; a < m; ++a)
        vals[static_cast<size_t>(a)] = (*this)(Int(a)) * other(Int(a));
    CharacterModN c;
    c.N_ = M;
    c.values_ = std::move(vals);
    return c;
}

bool CharacterModN::is_multiplicative() const {
    long n = N_.get_si();
    for (long a = 0; a < n; ++a) {
        bool ua = int_gcd(Int(a), N_) == 1;
        if (!ua && values_[static_cast<size_t>(a)] != 0) return false;
        for (long b = a; b < n; ++b) {
            bool ub = int_gcd(Int(b), N_) == 1;
            if (!ua || !ub) continue;
            long ab = (a * b) % n;
            if (values_[static_cast<size_t>(ab)] !=
                values_[static_cast<size_t>(a)] * values_[static_cast<size_t>(b)])
                return false;
        }
    }
    return true;
}

Int fundamental_discriminant(const Int& d) {
    if (d == 0) throw std::invalid_argument("fundamental_discriminant(0)");
    // strip square factors
    Int m = d;
    Int core(1);
    for (const auto& [p, e] : factorize(::abs(m))) {
        if (e % 2) core *= p;
    }
    if (d < 0) core = -core;
    Int r = int_fmod(core, Int(4));
    if (r == 1) return core;
    return 4 * core;
}

std::vector<std::pair<Int, int>> factorize(const Int& n) {
    std::vector<std::pair<Int, int>> out;
    Int m = ::abs(n);
    if (m <= 1) return out;
    for (Int p = 2; p * p <= m;) {
        if (m % p == 0) {
            int e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
        p += (p == 2) ? 1 : 2;
    }
    if (m > 1) out.emplace_back(m, 1);
    return out;
}

CharacterModN psi_S_character(const SymMatrix& S) {
    int l = S.dim();
    Rational det2S = S.mat().scaled(Rational(2)).det();
    if (!det2S.is_integer())
        throw std::invalid_argument("psi_S: 2S must be integral");
    Int d = det2S.num();
    if (l % 4 == 2) d = -d;  // (-1)^{l/4} twist for l even reads (-1)^{l/2} on det
    Int D = fundamental_discriminant(d);
    if (D == 1) return CharacterModN::trivial(Int(1));
    return CharacterModN::kronecker(D);
}

}  // namespace sjf
