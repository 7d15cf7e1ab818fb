#include "sjf/jacobi_group.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "sjf/tolerances.hpp"

namespace sjf {

cplx e2pi(cplx x) { return std::exp(cplx(0, 2 * M_PI) * x); }

bool is_symplectic(const RatMatrix& g) {
    int m = g.rows();
    if (m != g.cols() || m % 2) return false;
    int n = m / 2;
    RatMatrix J(m, m);
    for (int i = 0; i < n; ++i) {
        J(i, n + i) = Rational(-1);
        J(n + i, i) = Rational(1);
    }
    return g.transpose() * J * g == J;
}

JacobiElement::JacobiElement(RatMatrix lambda, RatMatrix mu, RatMatrix kappa,
                             RatMatrix g, bool check)
    : lambda_(std::move(lambda)),
      mu_(std::move(mu)),
      kappa_(std::move(kappa)),
      g_(std::move(g)) {
    n_ = g_.rows() / 2;
    l_ = lambda_.rows();
    if (check) {
        if (lambda_.cols() != n_ || mu_.rows() != l_ || mu_.cols() != n_ ||
            kappa_.rows() != l_ || kappa_.cols() != l_)
            throw std::invalid_argument("JacobiElement: shape mismatch");
        if (!kappa_.is_symmetric())
            throw std::invalid_argument("JacobiElement: kappa not symmetric");
        if (!is_symplectic(g_))
            throw std::invalid_argument("JacobiElement: g not symplectic");
    }
}

JacobiElement JacobiElement::identity(int n, int l) {
    return JacobiElement(RatMatrix(l, n), RatMatrix(l, n), RatMatrix(l, l),
                         RatMatrix::identity(2 * n), false);
}

JacobiElement JacobiElement::from_symplectic(const RatMatrix& g, int l) {
    int n = g.rows() / 2;
    return JacobiElement(RatMatrix(l, n), RatMatrix(l, n), RatMatrix(l, l), g);
}

JacobiElement JacobiElement::heisenberg(const RatMatrix& lambda, const RatMatrix& mu,
                                        const RatMatrix& kappa) {
    return JacobiElement(lambda, mu, kappa, RatMatrix::identity(2 * lambda.cols()));
}

std::string JacobiElement::str() const {
    std::ostringstream os;
    os << "(" << lambda_.str() << "," << mu_.str() << "," << kappa_.str() << ")"
       << g_.str();
    return os.str();
}

JacobiElement compose(const JacobiElement& x, const JacobiElement& y) {
    if (x.degree() != y.degree() || x.index_size() != y.index_size())
        throw std::invalid_argument("compose: dimension mismatch");
    // (lt mt) = (lambda' mu') g^{-1} = (l' d^T - m' c^T,  m' a^T - l' b^T)
    RatMatrix lt = y.lambda() * x.d().transpose() - y.mu() * x.c().transpose();
    RatMatrix mt = y.mu() * x.a().transpose() - y.lambda() * x.b().transpose();
    RatMatrix lam = x.lambda() + lt;
    RatMatrix mu = x.mu() + mt;
    RatMatrix kap = x.kappa() + y.kappa() + x.lambda() * mt.transpose() +
                    mt * x.lambda().transpose() + lt * mt.transpose() -
                    y.lambda() * y.mu().transpose();
    return JacobiElement(lam, mu, kap, x.g() * y.g());
}

JacobiElement inverse(const JacobiElement& a) {
    int n = a.degree(), l = a.index_size();
    // a = h * (1_H g) with h = (lambda, mu, kappa);
    // a^{-1} = (1_H g^{-1}) * h^{-1},
    // h^{-1} = (-lambda, -mu, -kappa + lambda mu^T + mu lambda^T).
    RatMatrix kinv = -a.kappa() + a.lambda() * a.mu().transpose() +
                     a.mu() * a.lambda().transpose();
    JacobiElement hinv(-a.lambda(), -a.mu(), kinv, RatMatrix::identity(2 * n), false);
    JacobiElement ginv = JacobiElement::from_symplectic(a.g().inverse(), l);
    return compose(ginv, hinv);
}

RatMatrix embed_symplectic(const JacobiElement& a) {
    int n = a.degree(), l = a.index_size();
    int m = l + n;
    RatMatrix h(2 * m, 2 * m);
    // [[1_l, lam, kappa - mu lam^T, mu], [0, 1_n, mu^T, 0],
    //  [0, 0, 1_l, 0], [0, 0, -lam^T, 1_n]]
    h.set_block(0, 0, RatMatrix::identity(l));
    h.set_block(0, l, a.lambda());
    h.set_block(0, m, a.kappa() - a.mu() * a.lambda().transpose());
    h.set_block(0, m + l, a.mu());
    h.set_block(l, l, RatMatrix::identity(n));
    h.set_block(l, m, a.mu().transpose());
    h.set_block(m, m, RatMatrix::identity(l));
    h.set_block(m + l, m, -a.lambda().transpose());
    h.set_block(m + l, m + l, RatMatrix::identity(n));

    RatMatrix s(2 * m, 2 * m);
    s.set_block(0, 0, RatMatrix::identity(l));
    s.set_block(l, l, a.a());
    s.set_block(l, m + l, a.b());
    s.set_block(m, m, RatMatrix::identity(l));
    s.set_block(m + l, l, a.c());
    s.set_block(m + l, m + l, a.d());
    return h * s;
}

JacobiElement epsilon_conjugate(const JacobiElement& a) {
    int n = a.degree();
    RatMatrix g = a.g();
    RatMatrix eg(2 * n, 2 * n);
    // eps g eps negates the off-diagonal blocks.
    eg.set_block(0, 0, a.a());
    eg.set_block(0, n, -a.b());
    eg.set_block(n, 0, -a.c());
    eg.set_block(n, n, a.d());
    return JacobiElement(a.lambda(), -a.mu(), -a.kappa(), eg);
}

JacobiPoint JacobiPoint::base_point(int n, int l) {
    JacobiPoint z;
    z.tau = CMat::identity(n).scaled(cplx(0, 1));
    z.w = CMat(l, n);
    return z;
}

bool point_in_domain(const JacobiPoint& z) {
    return z.tau.imag_part().symmetric_min_eigenvalue() > tol::eps_pd;
}

JacobiPoint act(const JacobiElement& a, const JacobiPoint& z) {
    if (!point_in_domain(z))
        throw std::domain_error("act: Im(tau) not positive definite");
    CMat c = CMat::from_rational(a.c());
    CMat d = CMat::from_rational(a.d());
    CMat A = CMat::from_rational(a.a());
    CMat B = CMat::from_rational(a.b());
    CMat lam = c * z.tau + d;  // lambda(g, tau)
    if (std::abs(lam.det()) < tol::min_jdet)
        throw std::domain_error("act: c tau + d numerically singular");
    CMat lam_inv = lam.inverse();
    CMat gtau = (A * z.tau + B) * lam_inv;
    CMat L = CMat::from_rational(a.lambda());
    CMat M = CMat::from_rational(a.mu());
    JacobiPoint r;
    r.tau = gtau;
    r.w = z.w * lam_inv + L * gtau + M;
    return r;
}

bool index_is_integral(const SymMatrix& S, const Rational& level_b) {
    // tr(S y) in b*Z for y over the generating set {E_ii, E_ij + E_ji}.
    int l = S.dim();
    for (int i = 0; i < l; ++i)
        if (!(S(i, i) / level_b).is_integer()) return false;
    for (int i = 0; i < l; ++i)
        for (int j = i + 1; j < l; ++j)
            if (!((S(i, j) + S(j, i)) / level_b).is_integer()) return false;
    return true;
}

cplx j_factor(const JacobiElement& a, const JacobiPoint& z) {
    CMat c = CMat::from_rational(a.c());
    CMat d = CMat::from_rational(a.d());
    return (c * z.tau + d).det();
}

cplx factor_j(const JacobiElement& a, const JacobiPoint& z, const WeightIndex& wi) {
    if (!point_in_domain(z))
        throw std::domain_error("factor_j: Im(tau) not positive definite");
    CMat c = CMat::from_rational(a.c());
    CMat d = CMat::from_rational(a.d());
    CMat A = CMat::from_rational(a.a());
    CMat B = CMat::from_rational(a.b());
    CMat S = CMat::from_rational(wi.S.mat());
    CMat lam_g = c * z.tau + d;
    cplx j = lam_g.det();
    if (std::abs(j) < tol::min_jdet)
        throw std::domain_error("factor_j: c tau + d numerically singular");
    CMat lam_inv = lam_g.inverse();
    CMat gtau = (A * z.tau + B) * lam_inv;
    CMat L = CMat::from_rational(a.lambda());
    CMat K = CMat::from_rational(a.kappa());

    // J_S = e(-tr(S kappa) + tr(S[w] lam^{-1} c) - 2 tr(lam^T S w lam^{-1})
    //        - tr(S[lambda] g tau))
    cplx t1 = -(S * K).trace();
    cplx t2 = (S.quad(z.w) * lam_inv * c).trace();
    cplx t3 = -2.0 * (L.transpose() * S * z.w * lam_inv).trace();
    cplx t4 = -(S.quad(L) * gtau).trace();
    cplx js = e2pi(t1 + t2 + t3 + t4);
    return std::pow(j, wi.k) * js;
}

cplx factor_j_log(const JacobiElement& a, const JacobiPoint& z,
                  const WeightIndex& wi) {
    if (!point_in_domain(z))
        throw std::domain_error("factor_j_log: Im(tau) not positive definite");
    CMat c = CMat::from_rational(a.c());
    CMat d = CMat::from_rational(a.d());
    CMat A = CMat::from_rational(a.a());
    CMat B = CMat::from_rational(a.b());
    CMat S = CMat::from_rational(wi.S.mat());
    CMat lam_g = c * z.tau + d;
    cplx j = lam_g.det();
    if (std::abs(j) < tol::min_jdet)
        throw std::domain_error("factor_j_log: c tau + d numerically singular");
    CMat lam_inv = lam_g.inverse();
    CMat gtau = (A * z.tau + B) * lam_inv;
    CMat L = CMat::from_rational(a.lambda());
    CMat K = CMat::from_rational(a.kappa());
    cplx t1 = -(S * K).trace();
    cplx t2 = (S.quad(z.w) * lam_inv * c).trace();
    cplx t3 = -2.0 * (L.transpose() * S * z.w * lam_inv).trace();
    cplx t4 = -(S.quad(L) * gtau).trace();
    return static_cast<double>(wi.k) * std::log(j) +
           cplx(0, 2 * M_PI) * (t1 + t2 + t3 + t4);
}

PointFunction slash(const PointFunction& f, const JacobiElement& a,
                    const WeightIndex& wi) {
    return [f, a, wi](const JacobiPoint& z) -> cplx {
        cplx J = factor_j(a, z, wi);
        return f(act(a, z)) / J;
    };
}

JacobiPoint omega_r(const JacobiPoint& z, int r) {
    if (r <= 0 || r > z.degree()) throw std::invalid_argument("omega_r: bad r");
    JacobiPoint p;
    p.tau = z.tau.block(0, 0, r, r);
    p.w = z.w.block(0, 0, z.index_size(), r);
    return p;
}

bool in_parabolic(const JacobiElement& x, int r) {
    int n = x.degree();
    if (r < 0 || r > n) throw std::invalid_argument("in_parabolic: bad r");
    auto zero_block = [](const RatMatrix& m, int i0, int j0, int h, int w) {
        return h == 0 || w == 0 || m.block(i0, j0, h, w).is_zero();
    };
    const RatMatrix a = x.a(), c = x.c(), d = x.d();
    // a = [[a1, 0], [a3, a4]], c = [[c1, 0], [0, 0]], d = [[d1, d2], [0, d4]]
    if (!zero_block(a, 0, r, r, n - r)) return false;
    if (!zero_block(c, 0, r, r, n - r)) return false;
    if (!zero_block(c, r, 0, n - r, r)) return false;
    if (!zero_block(c, r, r, n - r, n - r)) return false;
    if (!zero_block(d, r, 0, n - r, r)) return false;
    // Heisenberg lambda-part: (lambda_1, 0)
    if (!zero_block(x.lambda(), 0, r, x.index_size(), n - r)) return false;
    return true;
}

JacobiElement pi_r(const JacobiElement& x, int r) {
    if (!in_parabolic(x, r)) throw std::domain_error("pi_r: element not in P^{n,r}");
    int n = x.degree(), l = x.index_size();
    RatMatrix g(2 * r, 2 * r);
    g.set_block(0, 0, x.a().block(0, 0, r, r));
    g.set_block(0, r, x.b().block(0, 0, r, r));
    g.set_block(r, 0, x.c().block(0, 0, r, r));
    g.set_block(r, r, x.d().block(0, 0, r, r));
    (void)n;
    return JacobiElement(x.lambda().block(0, 0, l, r), x.mu().block(0, 0, l, r),
                         x.kappa(), g);
}

Rational lambda_r(const JacobiElement& x, int r) {
    int n = x.degree();
    if (!in_parabolic(x, r)) throw std::domain_error("lambda_r: element not in P^{n,r}");
    if (r == n) return Rational(1);
    return x.d().block(r, r, n - r, n - r).det();
}

JacobiElement iota_A(const JacobiElement& x, const JacobiElement& y) {
    if (x.index_size() != y.index_size())
        throw std::invalid_argument("iota_A: index size mismatch");
    int m = x.degree(), n = y.degree(), l = x.index_size();
    RatMatrix g(2 * (m + n), 2 * (m + n));
    g.set_block(0, 0, x.a());
    g.set_block(0, m + n, x.b());
    g.set_block(m + n, 0, x.c());
    g.set_block(m + n, m + n, x.d());
    g.set_block(m, m, y.a());
    g.set_block(m, m + n + m, y.b());
    g.set_block(m + n + m, m, y.c());
    g.set_block(m + n + m, m + n + m, y.d());
    return JacobiElement(RatMatrix::hcat(x.lambda(), y.lambda()),
                         RatMatrix::hcat(x.mu(), y.mu()), x.kappa() + y.kappa(), g);
    (void)l;
}

JacobiElement tau_r_element(int m, int n, int r, int l) {
    if (r < 0 || r > n || n > m) throw std::invalid_argument("tau_r: need 0<=r<=n<=m");
    int N = m + n;
    RatMatrix e_r(m, n);
    for (int i = 0; i < r; ++i) e_r(i, i) = Rational(1);
    RatMatrix f(N, N);
    f.set_block(0, m, e_r);
    f.set_block(m, 0, e_r.transpose());
    RatMatrix g(2 * N, 2 * N);
    g.set_block(0, 0, RatMatrix::identity(N));
    g.set_block(N, 0, f);
    g.set_block(N, N, RatMatrix::identity(N));
    return JacobiElement::from_symplectic(g, l);
}

JacobiElement eta_r_element(int r, int l) {
    RatMatrix g(2 * r, 2 * r);
    g.set_block(0, r, -RatMatrix::identity(r));
    g.set_block(r, 0, RatMatrix::identity(r));
    return JacobiElement::from_symplectic(g, l);
}

JacobiPoint diag_point(const JacobiPoint& z1, const JacobiPoint& z2) {
    JacobiPoint z;
    z.tau = CMat::diag_concat(z1.tau, z2.tau);
    z.w = CMat::hcat(z1.w, z2.w);
    return z;
}

cplx diag_factor_formula(const JacobiPoint& z1, const JacobiPoint& z2, int r,
                         const WeightIndex& wi) {
    CMat t1 = z1.tau.block(0, 0, r, r);
    CMat t2 = z2.tau.block(0, 0, r, r);
    CMat w1 = z1.w.block(0, 0, z1.index_size(), r);
    CMat w2 = z2.w.block(0, 0, z2.index_size(), r);
    CMat S = CMat::from_rational(wi.S.mat());
    CMat t2inv = t2.inverse();
    CMat X = w2 * t2inv - w1;
    CMat M = (t2inv - t1).inverse();
    cplx expo = e2pi(-(S.quad(X) * M).trace());
    JacobiPoint oz2 = omega_r(z2, r);
    cplx Jeta = factor_j(eta_r_element(r, wi.index_size()), oz2, wi);
    cplx dpow = std::pow((t1 - t2inv).det(), wi.k);
    return expo * Jeta * dpow;
}

Rational RandomJacobi::quarter_int() {
    std::uniform_int_distribution<int> d(-8, 8);
    return Rational(d(rng), 4L);
}

RatMatrix RandomJacobi::symplectic(int n, int max_factors) {
    std::uniform_int_distribution<int> nf(1, max_factors);
    std::uniform_int_distribution<int> kind(0, 2);
    std::uniform_int_distribution<int> small(-2, 2);
    RatMatrix g = RatMatrix::identity(2 * n);
    int f = nf(rng);
    for (int t = 0; t < f; ++t) {
        RatMatrix h(2 * n, 2 * n);
        switch (kind(rng)) {
            case 0: {  // translation [[1, b], [0, 1]], b symmetric integral
                RatMatrix b(n, n);
                for (int i = 0; i < n; ++i)
                    for (int j = i; j < n; ++j) {
                        Rational v(small(rng));
                        b(i, j) = v;
                        b(j, i) = v;
                    }
                h = RatMatrix::identity(2 * n);
                h.set_block(0, n, b);
                break;
            }
            case 1: {  // diag[u, u^{-T}], unipotent u
                RatMatrix u = RatMatrix::identity(n);
                if (n > 1) {
                    std::uniform_int_distribution<int> pick(0, n - 1);
                    int i = pick(rng), j = pick(rng);
                    if (i != j) u(i, j) = Rational(small(rng));
                }
                h.set_block(0, 0, u);
                h.set_block(n, n, u.inverse().transpose());
                break;
            }
            default: {  // inversion [[0, -1], [1, 0]]
                h.set_block(0, n, -RatMatrix::identity(n));
                h.set_block(n, 0, RatMatrix::identity(n));
                break;
            }
        }
        g = g * h;
    }
    return g;
}

JacobiElement RandomJacobi::element(int n, int l, int max_factors) {
    RatMatrix lam(l, n), mu(l, n), kap(l, l);
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < n; ++j) {
            lam(i, j) = quarter_int();
            mu(i, j) = quarter_int();
        }
    for (int i = 0; i < l; ++i)
        for (int j = i; j < l; ++j) {
            Rational v = quarter_int();
            kap(i, j) = v;
            kap(j, i) = v;
        }
    return JacobiElement(lam, mu, kap, symplectic(n, max_factors));
}

JacobiElement RandomJacobi::heisenberg_only(int n, int l) {
    JacobiElement e = element(n, l, 1);
    return JacobiElement::heisenberg(e.lambda(), e.mu(), e.kappa());
}

JacobiElement RandomJacobi::parabolic(int n, int r, int l, int max_factors) {
    // Products of parabolic generators: symmetric translations, block
    // lower-triangular GL levis, and the r-block inversion.
    std::uniform_int_distribution<int> nf(1, max_factors);
    std::uniform_int_distribution<int> kind(0, 2);
    std::uniform_int_distribution<int> small(-2, 2);
    RatMatrix g = RatMatrix::identity(2 * n);
    int f = nf(rng);
    for (int t = 0; t < f; ++t) {
        RatMatrix h = RatMatrix::identity(2 * n);
        switch (kind(rng)) {
            case 0: {
                RatMatrix b(n, n);
                for (int i = 0; i < n; ++i)
                    for (int j = i; j < n; ++j) {
                        Rational v(small(rng));
                        b(i, j) = v;
                        b(j, i) = v;
                    }
                h.set_block(0, n, b);
                break;
            }
            case 1: {  // levi diag[u, u^{-T}] with u block lower triangular
                RatMatrix u = RatMatrix::identity(n);
                if (n > 1) {
                    std::uniform_int_distribution<int> pi(0, n - 1);
                    int i = pi(rng), j = pi(rng);
                    // keep u[0:r, r:n] = 0
                    if (i != j && !(i < r && j >= r)) u(i, j) = Rational(small(rng));
                }
                h.set_block(0, 0, u);
                h.set_block(n, n, u.inverse().transpose());
                break;
            }
            default: {  // r-block inversion
                RatMatrix w = RatMatrix::identity(2 * n);
                for (int i = 0; i < r; ++i) {
                    w(i, i) = Rational(0);
                    w(n + i, n + i) = Rational(0);
                    w(i, n + i) = Rational(-1);
                    w(n + i, i) = Rational(1);
                }
                h = w;
                break;
            }
        }
        g = g * h;
    }
    RatMatrix lam(l, n), mu(l, n), kap(l, l);
    for (int i = 0; i < l; ++i) {
        for (int j = 0; j < r; ++j) lam(i, j) = quarter_int();
        for (int j = 0; j < n; ++j) mu(i, j) = quarter_int();
    }
    for (int i = 0; i < l; ++i)
        for (int j = i; j < l; ++j) {
            Rational v = quarter_int();
            kap(i, j) = v;
            kap(j, i) = v;
        }
    return JacobiElement(lam, mu, kap, g);
}

JacobiPoint RandomJacobi::point(int n, int l) {
    std::uniform_real_distribution<double> re(-0.8, 0.8);
    std::uniform_real_distribution<double> im(0.8, 2.2);
    std::uniform_real_distribution<double> wrange(-0.5, 0.5);
    JacobiPoint z;
    z.tau = CMat(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            cplx v = i == j ? cplx(re(rng), im(rng))
                            : cplx(0.3 * re(rng), 0.2 * wrange(rng));
            z.tau(i, j) = v;
            z.tau(j, i) = v;
        }
    }
    // Make Im(tau) diagonally dominant, hence positive definite.
    for (int i = 0; i < n; ++i) z.tau(i, i) += cplx(0, 1.2 * n);
    z.w = CMat(l, n);
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < n; ++j) z.w(i, j) = cplx(wrange(rng), wrange(rng));
    return z;
}

}  // namespace sjf
