#include "sjf/rational.hpp"

namespace sjf {

Rational Rational::parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    return Rational(num, den);
}

Int Rational::floor() const {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return q;
}

long Rational::v_p(const Int& p) const {
    if (is_zero()) throw std::domain_error("v_p(0): infinite valuation");
    if (p <= 1) throw std::domain_error("v_p: p must be > 1");
    return int_v_p(num(), p) - int_v_p(den(), p);
}

std::string Rational::str() const {
    if (is_integer()) return num().get_str();
    return num().get_str() + "/" + den().get_str();
}

Rational Rational::pow(long e) const {
    if (e == 0) return Rational(1);
    Rational base = e > 0 ? *this : inverse();
    long n = e > 0 ? e : -e;
    Rational acc(1);
    while (n > 0) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

long int_v_p(const Int& n, const Int& p) {
    if (n == 0) throw std::domain_error("int_v_p(0)");
    Int rem;
    return static_cast<long>(
        mpz_remove(rem.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

Int int_gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Int int_lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

Int int_fdiv(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Int int_fmod(const Int& a, const Int& b) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

void ext_gcd(const Int& a, const Int& b, Int& g, Int& x, Int& y) {
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(),
               b.get_mpz_t());
}

}  // namespace sjf
