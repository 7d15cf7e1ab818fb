#pragma once

#include <functional>
#include <random>

#include "sjf/matrix.hpp"

namespace sjf {

// e(x) = exp(2 pi i x)
cplx e2pi(cplx x);

/// Element (lambda, mu, kappa) g of the Jacobi group of degree n and index
/// size l over Q. The symplectic part g is 2n x 2n with g^T J g = J exactly.
class JacobiElement {
public:
    JacobiElement() = default;
    JacobiElement(RatMatrix lambda, RatMatrix mu, RatMatrix kappa, RatMatrix g,
                  bool check = true);

    static JacobiElement identity(int n, int l);
    // Pure symplectic element 1_H * g.
    static JacobiElement from_symplectic(const RatMatrix& g, int l);
    // Pure Heisenberg element (lambda, mu, kappa) 1_{2n}.
    static JacobiElement heisenberg(const RatMatrix& lambda, const RatMatrix& mu,
                                    const RatMatrix& kappa);

    int degree() const { return n_; }
    int index_size() const { return l_; }

    const RatMatrix& lambda() const { return lambda_; }
    const RatMatrix& mu() const { return mu_; }
    const RatMatrix& kappa() const { return kappa_; }
    const RatMatrix& g() const { return g_; }

    RatMatrix a() const { return g_.block(0, 0, n_, n_); }
    RatMatrix b() const { return g_.block(0, n_, n_, n_); }
    RatMatrix c() const { return g_.block(n_, 0, n_, n_); }
    RatMatrix d() const { return g_.block(n_, n_, n_, n_); }

    bool is_heisenberg_trivial() const {
        return lambda_.is_zero() && mu_.is_zero() && kappa_.is_zero();
    }

    friend bool operator==(const JacobiElement& x, const JacobiElement& y) {
        return x.lambda_ == y.lambda_ && x.mu_ == y.mu_ && x.kappa_ == y.kappa_ &&
               x.g_ == y.g_;
    }

    std::string str() const;

private:
    int n_ = 0, l_ = 0;
    RatMatrix lambda_, mu_, kappa_, g_;
};

bool is_symplectic(const RatMatrix& g);

JacobiElement compose(const JacobiElement& a, const JacobiElement& b);
JacobiElement inverse(const JacobiElement& a);

// Embedding into Sp_{l+n}, size 2(l+n).
RatMatrix embed_symplectic(const JacobiElement& a);

// (lambda, mu, kappa) g -> (lambda, -mu, -kappa) eps g eps, eps = diag[1, -1].
JacobiElement epsilon_conjugate(const JacobiElement& a);

/// Point z = (tau, w) of H_{n,l}: tau in the Siegel half-space H_n,
/// w an l x n complex matrix.
struct JacobiPoint {
    CMat tau;  // n x n symmetric, Im positive definite
    CMat w;    // l x n

    int degree() const { return tau.rows(); }
    int index_size() const { return w.rows(); }

    static JacobiPoint base_point(int n, int l);  // (i 1_n, 0)
};

// Check Im(tau) positive definite with margin tol::eps_pd.
bool point_in_domain(const JacobiPoint& z);

JacobiPoint act(const JacobiElement& a, const JacobiPoint& z);

/// Weight, index and level data of a space of Siegel-Jacobi forms.
struct WeightIndex {
    int k = 0;                     // parallel weight
    SymMatrix S;                   // positive definite l x l index
    Rational level_b = Rational(1);  // fractional ideal b of Q (positive rational)
    Int level_N = 1;               // c = N Z

    int index_size() const { return S.dim(); }
};

// Integrality of the index: tr(S y) integral (up to level_b) on a generating
// set of integer symmetric y. Diagonal y_ii and y_ij + y_ji generate.
bool index_is_integral(const SymMatrix& S, const Rational& level_b);

// j(g, tau) = det(c tau + d)
cplx j_factor(const JacobiElement& a, const JacobiPoint& z);

// Full factor of automorphy J_{k,S}(a, z).
cplx factor_j(const JacobiElement& a, const JacobiPoint& z, const WeightIndex& wi);

// log J_{k,S}(a, z) (some branch); safe when |J| over/underflows a double.
cplx factor_j_log(const JacobiElement& a, const JacobiPoint& z,
                  const WeightIndex& wi);

using PointFunction = std::function<cplx(const JacobiPoint&)>;

// (f |_{k,S} a)(z) = J_{k,S}(a, z)^{-1} f(a z)
PointFunction slash(const PointFunction& f, const JacobiElement& a,
                    const WeightIndex& wi);

// ---- Parabolic maps (0 < r <= n) ----

// omega_r: upper-left r x r corner of tau, first r columns of w.
JacobiPoint omega_r(const JacobiPoint& z, int r);

bool in_parabolic(const JacobiElement& a, int r);

// pi_r: extract the degree-r Jacobi element from a in P^{n,r}.
JacobiElement pi_r(const JacobiElement& a, int r);

// lambda^n_{r,l}(a) = det(d_4) (and 1 for r = n).
Rational lambda_r(const JacobiElement& a, int r);

// ---- Doubling maps ----

// iota_A: G^{m,l} x G^{n,l} -> G^{m+n,l}.
JacobiElement iota_A(const JacobiElement& a, const JacobiElement& b);

// tau_r element of degree m+n (1_H tau_r), 0 <= r <= n <= m.
JacobiElement tau_r_element(int m, int n, int r, int l);

// eta_r = 1_H [[0, -1_r], [1_r, 0]] of degree r.
JacobiElement eta_r_element(int r, int l);

// diag[z1, z2] in H_{m+n,l}.
JacobiPoint diag_point(const JacobiPoint& z1, const JacobiPoint& z2);

// Closed form for J_{k,S}(tau_r, diag[z1,z2]):
//   e(-tr(S[w2' tau2'^{-1} - w1'] (tau2'^{-1} - tau1')^{-1}))
//     * J_{k,S}(eta_r, omega_r(z2)) * det(omega_r(tau1) - omega_r(tau2)^{-1})^k
// with primes denoting omega_r-projections.
cplx diag_factor_formula(const JacobiPoint& z1, const JacobiPoint& z2, int r,
                         const WeightIndex& wi);

// ---- Random elements for property tests ----

struct RandomJacobi {
    std::mt19937_64 rng;
    explicit RandomJacobi(uint64_t seed) : rng(seed) {}

    // Products of <= max_factors elementary symplectic generators.
    RatMatrix symplectic(int n, int max_factors = 6);
    // Heisenberg entries in (1/4)Z intersect [-2, 2].
    JacobiElement element(int n, int l, int max_factors = 6);
    JacobiElement heisenberg_only(int n, int l);
    // Element of P^{n,r} (with Heisenberg part of the parabolic shape).
    JacobiElement parabolic(int n, int r, int l, int max_factors = 6);
    JacobiPoint point(int n, int l);
    Rational quarter_int();
};

}  // namespace sjf
