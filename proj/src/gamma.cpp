#include "sjf/gamma.hpp"

#include <cmath>
#include <stdexcept>

namespace sjf {

namespace {

// Lanczos, g = 7, n = 9.
const double kLanczos[9] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

bool near_nonpositive_integer(cplx s) {
    if (s.real() > 0.4) return false;
    double r = std::round(s.real());
    return std::abs(s.real() - r) < 1e-12 && std::abs(s.imag()) < 1e-12 && r <= 0.0;
}

}  // namespace

cplx cgamma(cplx s) {
    if (near_nonpositive_integer(s))
        throw std::domain_error("cgamma: pole at nonpositive integer");
    if (s.real() < 0.5) {
        // reflection: Gamma(s) = pi / (sin(pi s) Gamma(1-s))
        return M_PI / (std::sin(M_PI * s) * cgamma(1.0 - s));
    }
    cplx z = s - 1.0;
    cplx x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
    cplx t = z + 7.5;
    return std::sqrt(2 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

cplx gamma_n(int n, cplx s) {
    if (n < 1) throw std::invalid_argument("gamma_n: n >= 1");
    cplx prod = std::pow(M_PI, n * (n - 1) / 4.0);
    for (int j = 0; j < n; ++j) prod *= cgamma(s - j / 2.0);
    return prod;
}

cplx gamma_case(cplx s, const Rational& h, int n) {
    if (h < Rational(0)) throw std::invalid_argument("gamma_case: h >= 0 required");
    double hd = h.to_double();
    Rational half_n(n, 2L);
    bool h_int = h.is_integer();
    auto floor_rat = [](const Rational& x) { return x.floor().get_si(); };

    if (h_int) {
        if (h < half_n) {
            // Gamma_{2h+1}(s + h/2) prod_{i=h+1}^{[n/2]} Gamma(2s - i)
            long hh = h.num().get_si();
            cplx v = gamma_n(static_cast<int>(2 * hh + 1), s + hd / 2);
            for (long i = hh + 1; i <= n / 2; ++i)
                v *= cgamma(2.0 * s - static_cast<double>(i));
            return v;
        }
        if (n % 2 == 0) {
            // Gamma(s + h/2 - [(2h+n)/4]) Gamma_n(s + h/2)
            long br = floor_rat((h * Rational(2) + Rational(n)) / Rational(4));
            return cgamma(s + hd / 2 - static_cast<double>(br)) * gamma_n(n, s + hd / 2);
        }
        return gamma_n(n, s + hd / 2);  // n odd, h > n/2
    }
    // h not integral
    if (h <= half_n) {
        // Gamma_{2h+1}(s + h/2) prod_{i=[h]+1}^{[(n-1)/2]} Gamma(2s - i - 1/2)
        Rational twoh1 = h * Rational(2) + Rational(1);
        cplx v = gamma_n(static_cast<int>(twoh1.num().get_si()), s + hd / 2);
        for (long i = floor_rat(h) + 1; i <= (n - 1) / 2; ++i)
            v *= cgamma(2.0 * s - static_cast<double>(i) - 0.5);
        return v;
    }
    if (n % 2 == 1) {
        // Gamma(s + (h-1)/2 - [(2h+n-2)/4]) Gamma_n(s + h/2)
        long br = floor_rat((h * Rational(2) + Rational(n - 2)) / Rational(4));
        return cgamma(s + (hd - 1) / 2 - static_cast<double>(br)) *
               gamma_n(n, s + hd / 2);
    }
    // n even, h > n/2 non-integral (the table's remaining case)
    return gamma_n(n, s + hd / 2);
}

cplx G_kn(cplx s, const Rational& k, int n) { return gamma_case(s, k.abs(), n); }

cplx hurwitz_zeta(cplx s, double a) {
    if (std::abs(s - cplx(1.0)) < 1e-14)
        throw std::domain_error("hurwitz_zeta: pole at s = 1");
    const int M = 24;
    const double B[10] = {1.0 / 6,      -1.0 / 30,     1.0 / 42,   -1.0 / 30,
                          5.0 / 66,     -691.0 / 2730, 7.0 / 6,    -3617.0 / 510,
                          43867.0 / 798, -174611.0 / 330};
    cplx sum = 0.0;
    for (int k = 0; k < M; ++k) sum += std::pow(cplx(k + a), -s);
    double Ma = M + a;
    sum += std::pow(cplx(Ma), 1.0 - s) / (s - 1.0);
    sum += 0.5 * std::pow(cplx(Ma), -s);
    // Euler-Maclaurin correction terms.
    cplx poch = s;  // (s)_{2j-1} built incrementally
    double fact = 2.0;  // (2j)!
    cplx powMa = std::pow(cplx(Ma), -s - 1.0);
    for (int j = 1; j <= 10; ++j) {
        sum += B[j - 1] / fact * poch * powMa;
        // update for next j: multiply pochhammer by (s+2j-1)(s+2j)
        poch *= (s + static_cast<double>(2 * j - 1)) * (s + static_cast<double>(2 * j));
        fact *= (2 * j + 1) * (2 * j + 2);
        powMa *= 1.0 / (Ma * Ma);
    }
    return sum;
}

cplx dirichlet_L(cplx s, const CharacterModN& chi) {
    long N = chi.modulus().get_si();
    if (N == 1) return hurwitz_zeta(s, 1.0);
    cplx sum = 0.0;
    for (long a = 1; a <= N; ++a) {
        int v = chi(Int(a));
        if (v == 0) continue;
        sum += static_cast<double>(v) * hurwitz_zeta(s, static_cast<double>(a) / N);
    }
    return std::pow(cplx(static_cast<double>(N)), -s) * sum;
}

cplx dirichlet_L_c(cplx s, const CharacterModN& chi, const Int& c) {
    cplx L = dirichlet_L(s, chi);
    for (const auto& [q, e] : factorize(c)) {
        double qd = q.get_d();
        L *= (1.0 - static_cast<double>(chi(q)) * std::pow(cplx(qd), -s));
    }
    return L;
}

cplx lambda_norm(cplx s, const CharacterModN& chi, int n, bool k_integral,
                 const Int& c) {
    if (k_integral) {
        cplx v = dirichlet_L_c(2.0 * s, chi, c);
        CharacterModN chi2 = chi.squared();
        for (int i = 1; i <= n / 2; ++i)
            v *= dirichlet_L_c(4.0 * s - 2.0 * i, chi2, c);
        return v;
    }
    cplx v = 1.0;
    CharacterModN chi2 = chi.squared();
    for (int i = 1; i <= (n + 1) / 2; ++i)
        v *= dirichlet_L_c(4.0 * s - 2.0 * i + 1.0, chi2, c);
    return v;
}

PoleSets pole_sets(const Rational& k, int n) {
    PoleSets out;
    if (k.is_integer()) {
        // {j/2 : [(n+3)/2] <= j <= n+1-m}
        long lo = (n + 3) / 2;
        Rational hi = Rational(n + 1) - k;
        for (long j = lo; Rational(j) <= hi; ++j) out.S1.push_back(Rational(j, 2L));
    } else {
        // {(2j+1)/4 : 1+[n/2] <= j <= n + 1/2 - m}
        long lo = 1 + n / 2;
        Rational hi = Rational(n) + Rational(1, 2) - k;
        for (long j = lo; Rational(j) <= hi; ++j)
            out.S1.push_back(Rational(2 * j + 1, 4L));
    }
    for (long j = 0; j <= n / 2; ++j) out.S2.push_back(Rational(j, 2L));
    return out;
}

cplx kernel_constant(cplx s, int k, const SymMatrix& S, int n, int l) {
    double det2S = S.mat().scaled(Rational(2)).det().to_double();
    cplx sign = std::exp(cplx(0, M_PI) * (n * (l + k / 2.0)));
    cplx two_pow =
        std::exp(std::log(2.0) * (n * (n + 3) / 2.0 - 4.0 * s - n * static_cast<double>(k)));
    double pi_pow = std::pow(M_PI, n * (n + 1) / 2.0);
    cplx num = gamma_n(n, s + static_cast<double>(k) - l / 2.0 - (n + 1) / 2.0);
    cplx den = gamma_n(n, s + static_cast<double>(k) - l / 2.0);
    return std::pow(det2S, -n) * sign * two_pow * pi_pow * num / den;
}

}  // namespace sjf
