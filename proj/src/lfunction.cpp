#include "sjf/lfunction.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace sjf {

LocalFactor::LocalFactor(Int prime, int bound, RatPoly q)
    : p(std::move(prime)), degree_bound(bound), poly(std::move(q)) {
    if (poly.coeff(0) != Rational(1))
        throw std::invalid_argument("LocalFactor: constant term must be 1");
    if (poly.degree() > degree_bound)
        throw std::invalid_argument("LocalFactor: degree exceeds bound");
}

bool LocalFactor::is_palindromic() const {
    int d = degree_bound;
    for (int i = 0; i <= d; ++i)
        if (poly.coeff(i) != poly.coeff(d - i)) return false;
    return true;
}

LocalFactor euler_factor_good(const Int& p, const std::vector<Rational>& mu) {
    RatPoly acc = RatPoly::one();
    for (const auto& m : mu) {
        if (m.is_zero()) throw std::domain_error("euler_factor_good: zero Satake parameter");
        acc = acc * RatPoly({Rational(1), -m});
        acc = acc * RatPoly({Rational(1), -m.inverse()});
    }
    return LocalFactor(p, 2 * static_cast<int>(mu.size()), acc);
}

std::vector<cplx> euler_factor_good_c(const std::vector<cplx>& mu) {
    std::vector<cplx> acc{1.0};
    auto mul_lin = [&acc](cplx root) {
        std::vector<cplx> next(acc.size() + 1, 0.0);
        for (size_t i = 0; i < acc.size(); ++i) {
            next[i] += acc[i];
            next[i + 1] -= root * acc[i];
        }
        acc = std::move(next);
    };
    for (cplx m : mu) {
        if (m == cplx(0))
            throw std::domain_error("euler_factor_good: zero Satake parameter");
        mul_lin(m);
        mul_lin(1.0 / m);
    }
    return acc;
}

RatFunction frak_L_factor(const CharacterModN& chi, const Int& p, int n, int l,
                          const RatFunction& G_p) {
    if (chi(p) == 0 && !chi.is_trivial())
        throw std::domain_error("frak_L_factor: p divides the conductor");
    int chi2 = chi(p) * chi(p);
    RatPoly den = RatPoly::one();
    for (int i = 1; i <= n; ++i) {
        long shift = 2 * n - 2 * i + (l % 2 ? 1 : 0);
        // factor (1 - chi^2(p) p^{-shift} X^2)
        std::vector<Rational> f(3);
        f[0] = Rational(1);
        f[2] = -Rational(chi2) * Rational(Int(1), Int(p)).pow(shift);
        den = den * RatPoly(f);
    }
    RatFunction out;
    out.num = G_p.num;
    out.den = G_p.den * den;
    return out;
}

bool is_regular_at(const SymMatrix& S, const Int& p) {
    Rational det2S = S.mat().scaled(Rational(2)).det();
    long v = det2S.v_p(p);
    int l = S.dim();
    if (l % 2 == 0) return v == 0;
    return v == (p == 2 ? 1 : 0);
}

RatFunction siegel_series_regular(const SymMatrix& S, const CharacterModN& chi,
                                  const Int& p) {
    if (!is_regular_at(S, p))
        throw std::domain_error(
            "siegel_series_regular: S not regular at p (non-regular g_S unsupported)");
    int l = S.dim();
    int c = chi(p), c2 = c * c;
    RatPoly num({Rational(1), -Rational(c)});
    for (int i = 1; i <= l / 2; ++i) {
        // (1 - chi^2(p) p^{2i} Y^2)
        std::vector<Rational> f(3);
        f[0] = Rational(1);
        f[2] = -Rational(c2) * Rational(p).pow(2 * i);
        num = num * RatPoly(f);
    }
    RatFunction out;
    out.num = num;
    return out;
}

RatFunction G_p_ratio(const SymMatrix& S, const CharacterModN& chi, const Int& p,
                      int n, int l) {
    (void)chi;
    (void)n;
    if (S.dim() != l) throw std::invalid_argument("G_p_ratio: l mismatch");
    if (!is_regular_at(S, p))
        throw std::domain_error("G_p_ratio: non-regular S unsupported");
    return RatFunction{};  // g_S = 1 identically for regular S
}

SatakeSolution satake_solve_and_predict(double lambda_p, const Int& p) {
    double pd = p.get_d();
    double c = lambda_p * std::pow(pd, -1.5) / 2.0;
    cplx disc = cplx(c * c - 1.0);
    cplx mu = c + std::sqrt(disc);
    double four_c2 = 4 * c * c;
    SatakeSolution out;
    out.mu = mu;
    out.lambda_p = lambda_p;
    out.predicted_lambda_p2 = std::pow(pd, 3) * (four_c2 - 1.0 - 1.0 / pd);
    // h3 - p^{-1} h1 with h_j the complete homogeneous sums in mu, mu^{-1}
    double h1 = 2 * c, h3 = 8 * c * c * c - 4 * c;
    out.predicted_lambda_p3 = std::pow(pd, 4.5) * (h3 - h1 / pd);
    return out;
}

TwistedLProduct twisted_L_assemble(const std::map<Int, LocalFactor>& factors,
                                   const CharacterModN& chi, const CharacterModN& psi,
                                   const Int& c, const Int& x_removed) {
    TwistedLProduct out;
    for (const auto& [p, lf] : factors) {
        if (x_removed % p == 0 && x_removed != 0) continue;  // remove p | x
        bool p_divides_c = (c % p == 0);
        int twist = p_divides_c ? chi(p) : chi(p) * psi(p);
        // substitute X -> twist * X into the factor
        std::vector<Rational> coeffs;
        for (int i = 0; i <= lf.poly.degree(); ++i)
            coeffs.push_back(lf.poly.coeff(i) * Rational(twist).pow(i));
        out.factors.emplace(p, LocalFactor(p, lf.degree_bound, RatPoly(coeffs)));
    }
    return out;
}

std::vector<Rational> TwistedLProduct::dirichlet_coefficients(int M) const {
    std::vector<Rational> a(static_cast<size_t>(M) + 1);
    a[1] = Rational(1);
    for (const auto& [p, lf] : factors) {
        long pl = p.get_si();
        int max_j = 0;
        long pw = 1;
        while (pw <= M) {
            pw *= pl;
            ++max_j;
        }
        FormalSeries rec = lf.reciprocal_series(max_j);
        std::vector<Rational> next(static_cast<size_t>(M) + 1);
        for (long m = 1; m <= M; ++m) {
            if (a[static_cast<size_t>(m)].is_zero()) continue;
            long q = 1;
            for (int j = 0; j <= max_j && m * q <= M; ++j, q *= pl)
                next[static_cast<size_t>(m * q)] += a[static_cast<size_t>(m)] * rec[j];
        }
        a = std::move(next);
    }
    return a;
}

SigmaExponents exponents(int k, int l, int n, int sigma) {
    SigmaExponents out;
    out.admissible = true;
    out.violated.clear();
    Rational kk(k), ll(l), ss(sigma), nn(n);
    Rational half_l = ll / Rational(2);
    Rational mid = Rational(2 * n + 1) / Rational(2);
    // (1) 2n+1 - (k - l/2) <= sigma - l/2 <= k - l/2
    if (!(Rational(2 * n + 1) - (kk - half_l) <= ss - half_l &&
          ss - half_l <= kk - half_l)) {
        out.admissible = false;
        out.violated = "condition (1)";
    }
    // (2) |sigma - l/2 - (2n+1)/2| + (2n+1)/2 - (k - l/2) in 2Z
    Rational dev = (ss - half_l - mid).abs();
    Rational parity = dev + mid - (kk - half_l);
    if (out.admissible && !((parity / Rational(2)).is_integer())) {
        out.admissible = false;
        out.violated = "condition (2)";
    }
    // (3) k > l/2 + n(1 + k - l/2 - |sigma - l/2 - (2n+1)/2| - (2n+1)/2)
    if (out.admissible &&
        !(kk > half_l + nn * (Rational(1) + kk - half_l - dev - mid))) {
        out.admissible = false;
        out.violated = "condition (3)";
    }
    // e: two-branch display
    bool even_case =
        ((ss * Rational(2) - ll) / Rational(2)).is_integer() &&
        ss >= Rational(2 * n) + half_l;
    out.e = even_case ? Rational(n * n + n) - ss + half_l : Rational(n * n);
    out.e_sigma = nn * (kk - ll + ss) - out.e;  // d = 1
    return out;
}

EisExponents eis_exponents(int k, int l, int n, int mu,
                           const EisExclusionFlags& flags) {
    EisExponents out;
    out.admissible = true;
    out.violated.clear();
    Rational kk(k), ll(l), mm(mu), nn(n);
    Rational half_l = ll / Rational(2);
    Rational mid = Rational(n + 1) / Rational(2);
    // (1) n+1 - (k - l/2) <= mu - l/2 <= k - l/2
    if (!(Rational(n + 1) - (kk - half_l) <= mm - half_l && mm - half_l <= kk - half_l)) {
        out.admissible = false;
        out.violated = "condition (1)";
    }
    // (2) |mu - l/2 - (n+1)/2| + (n+1)/2 - k + l/2 in 2Z
    Rational dev = (mm - half_l - mid).abs();
    if (out.admissible && !(((dev + mid - kk + half_l) / Rational(2)).is_integer())) {
        out.admissible = false;
        out.violated = "condition (2)";
    }
    // exclusions
    if (out.admissible && flags.chi_sq_trivial &&
        mm == Rational(n + 2) / Rational(2) + half_l) {
        out.admissible = false;
        out.violated = "exclusion (1)";
    }
    if (out.admissible && flags.chi_psiS_trivial && flags.level_trivial &&
        mm == half_l) {
        out.admissible = false;
        out.violated = "exclusion (2)";
    }
    if (out.admissible && flags.chi_sq_trivial && flags.level_trivial &&
        Rational(0) < mm - half_l && mm - half_l <= nn / Rational(2)) {
        out.admissible = false;
        out.violated = "exclusion (3)";
    }
    // r: three-branch display
    if (flags.chi_sq_trivial && mm == Rational(n + 2) / Rational(2) + half_l) {
        out.r = nn * (kk - mm + Rational(2)) / Rational(2);
    } else if (n == 1 && flags.chi_psiS_trivial && mm == Rational(2) + half_l) {
        out.r = kk / Rational(2) - ll / Rational(4);
    } else {
        out.r = (nn / Rational(2)) * (kk - half_l - dev - mid);
    }
    // e and beta
    bool even_case = ((mm * Rational(2) - ll + nn) / Rational(2)).is_integer() &&
                     mm >= nn + half_l;
    out.e = even_case
                ? Rational(((n + 1) * (n + 1)) / 4) - mm + half_l
                : Rational((n * n) / 4);
    out.beta = (nn / Rational(2)) * (kk - ll + mm) - out.e;  // d = 1
    return out;
}

bool m_plus_check(const SymMatrix& S, const Int& p) {
    if (!S.is_positive_definite())
        throw std::invalid_argument("m_plus_check: S must be positive definite");
    int l = S.dim();
    RatMatrix twoS = S.mat().scaled(Rational(2));
    if (!twoS.is_integral())
        throw std::invalid_argument("m_plus_check: 2S must be integral");

    // (a) maximality: no nonzero x in (Z/p)^l with 2Sx = 0 mod p and
    //     v_p(S[x]) >= 2.
    long pl = p.get_si();
    std::vector<long> x(static_cast<size_t>(l), 0);
    std::function<bool(int)> search = [&](int pos) -> bool {
        if (pos == l) {
            bool all_zero = true;
            for (long xi : x)
                if (xi) all_zero = false;
            if (all_zero) return false;
            RatMatrix xv(l, 1);
            for (int i = 0; i < l; ++i) xv(i, 0) = Rational(x[static_cast<size_t>(i)]);
            RatMatrix tx = twoS * xv;
            for (int i = 0; i < l; ++i)
                if (!(tx(i, 0) / Rational(p)).is_integer()) return false;
            Rational q = S.mat().quad(xv)(0, 0);
            return q.v_p(p) >= 2;  // overlattice found
        }
        for (long v = 0; v < pl; ++v) {
            x[static_cast<size_t>(pos)] = v;
            if (search(pos + 1)) return true;
        }
        return false;
    };
    if (search(0)) return false;  // not maximal

    // (b) L' = L: no nonzero p-adic class c in (2S)^{-1}Z^l / Z^l with
    //     v_p(S[c]) >= -1.
    RatMatrix inv2S = twoS.inverse();
    Int D = twoS.det().abs().num();
    long Dl = D.get_si();
    std::set<std::string> seen;
    std::vector<long> u(static_cast<size_t>(l), 0);
    bool violated = false;
    std::function<void(int)> classes = [&](int pos) {
        if (violated) return;
        if (pos == l) {
            RatMatrix uv(l, 1);
            for (int i = 0; i < l; ++i) uv(i, 0) = Rational(u[static_cast<size_t>(i)]);
            RatMatrix cvec = inv2S * uv;
            // reduce mod Z^l
            bool p_nontrivial = false;
            RatMatrix cc(l, 1);
            for (int i = 0; i < l; ++i) {
                cc(i, 0) = cvec(i, 0) - Rational(cvec(i, 0).floor());
                if (!cc(i, 0).is_zero() && int_fmod(cc(i, 0).den(), p) == 0)
                    p_nontrivial = true;
            }
            if (!p_nontrivial) return;
            if (!seen.insert(cc.str()).second) return;
            Rational q = S.mat().quad(cc)(0, 0);
            if (q.is_zero() || q.v_p(p) >= -1) violated = true;
            return;
        }
        for (long v = 0; v < Dl; ++v) {
            u[static_cast<size_t>(pos)] = v;
            classes(pos + 1);
        }
    };
    classes(0);
    return !violated;
}

cplx gauss_integral(const CMat& S, const CMat& R, const CMat& A, cplx a) {
    int l = S.rows(), n = A.rows();
    if (R.rows() != n || R.cols() != l)
        throw std::invalid_argument("gauss_integral: R must be n x l");
    if (a.real() <= 0)
        throw std::domain_error("gauss_integral: Re(a) > 0 required");
    if (A.real_part().symmetric_min_eigenvalue() <= 0)
        throw std::domain_error("gauss_integral: Re(A) must be positive definite");
    cplx detA = A.det();
    cplx detS = S.det();
    CMat Sinv = S.inverse();
    // S^{-1}[R^T] = R S^{-1} R^T, an n x n matrix
    CMat q = R * Sinv * R.transpose();
    cplx tr = (q * A).trace();
    return std::pow(detA, -l / 2.0) * std::pow(M_PI / a, n * l / 2.0) *
           std::pow(detS, -n / 2.0) * std::exp(a / 4.0 * tr);
}

}  // namespace sjf
