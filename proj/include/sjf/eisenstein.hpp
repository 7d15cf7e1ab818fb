#pragma once

#include <vector>

#include "sjf/characters.hpp"
#include "sjf/hecke.hpp"
#include "sjf/jacobi_group.hpp"

namespace sjf {

/// Parameters of a degree-1 Siegel-type Jacobi Eisenstein series.
struct EisensteinSpec {
    int k = 4;
    SymMatrix S = SymMatrix::scalar(1, Rational(1));  // l <= 2
    Int N = 1;
    CharacterModN chi = CharacterModN::trivial(Int(1));
    cplx s;        // defaults to k/2 when unset (set_s_default)
    int B_cd = 200;
    int B_lam = 0;  // 0 = adaptive (theta sums complete to machine precision)

    void set_s_default() { s = cplx(k / 2.0, 0.0); }
    bool convergence_ok(int r = 0) const {
        return 2 * s.real() > 1 + r + S.dim() + 1;
    }
};

// Coset representatives of P cap Gamma0(N) \ Gamma0(N) for degree 1: pairs
// (c, d), N | c, gcd(c, d) = 1, normalized by sign (c > 0, or c = 0, d = 1),
// max(|c|, |d|) <= B. Deterministic completion via extended gcd, minimal
// |a| (ties -> smaller a).
std::vector<std::pair<long, long>> siegel_cosets_deg1(const Int& N, int B);
RatMatrix complete_coset(long c, long d);

// Theta_{S, Z^l}(tau, w) = sum_{x in Z^l} e(S[x] tau + 2 x^T S w); l <= 2.
// B_lam = 0 sums adaptively to machine precision.
cplx theta_SL(const SymMatrix& S, cplx tau, const CMat& w, int B_lam);

// log of the same (peak-scaled internally); real part -inf when the sum
// vanishes. Safe for arguments where the value itself overflows a double.
cplx theta_SL_log(const SymMatrix& S, cplx tau, const CMat& w, int B_lam);

// Standard genus-1 theta: Theta_0(tau) = sum_x e(x^2 tau / 2).
cplx theta0(cplx tau);

struct EisResult {
    cplx value;
    double error_proxy;  // |E_B - E_{B/2}|
};

// Truncated coset-sum evaluation of the Siegel-type series; the d-window of
// each c-row is centered at -c Re(tau) so that the truncation commutes with
// the translation and inversion generators at Re(tau) = 0.
EisResult eval_E(const EisensteinSpec& spec, const JacobiPoint& z, int jobs = 1);

// log E with a relative B-vs-B/2 error proxy; usable at points where E
// itself exceeds the double range (deep Heisenberg transforms).
cplx eval_E_log(const EisensteinSpec& spec, const JacobiPoint& z, int jobs = 1,
                double* rel_proxy = nullptr);

// Evaluator of E|T = sum_alpha psi(det a_alpha)^{-1} J(alpha,.)^{-1} E(alpha .)
// assembled in log scale, so that individual E(alpha z) values may overflow
// while the slashed sum stays finite.
PointFunction slashed_E_sum(const EisensteinSpec& spec, const CosetSet& T,
                            const CharacterModN& psi, int jobs = 1);

struct ThetaSplitResult {
    cplx lhs;
    cplx rhs;
    double rel_gap;
};

// Per-summand identity of the Eisenstein theta-split (l = 1): the weight-k
// summand against the (k - 1/2)-weight symplectic summand times the
// theta slash, with h(gamma, tau) = Theta_0(gamma tau) / Theta_0(tau).
ThetaSplitResult summand_theta_split(const RatMatrix& gamma, const JacobiPoint& z,
                                     const EisensteinSpec& spec);

// Words in the generators of the split-compatible congruence subgroup of
// Gamma^theta used by the theta-split tests.
RatMatrix random_theta_group_element(std::mt19937_64& rng, int factors = 6);

// Klingen-type series, structural constructor for degree n = 1: the sum of
// the displayed summands over an explicit list of parabolic cosets. For
// r = n = 1 the coset list is {identity} and the series degenerates to the
// inducing form.
cplx klingen_eval_deg1(const PointFunction& f, int r,
                       const std::vector<JacobiElement>& cosets,
                       const EisensteinSpec& spec, const JacobiPoint& z);

struct EulerVerifyReport {
    double lambda_p;
    double residual_p;
    cplx mu;
    double predicted_lambda_p2;
    double measured_lambda_p2;
    double residual_p2;
    double rel_gap;
    std::vector<double> ladder_B;
    std::vector<double> ladder_residual;
    bool eigen_ok;
    bool gap_ok;
    bool ladder_ok;
};

// End-to-end Euler-product verification for E_{k,S=(1)} of level 1:
// extract lambda(p), solve for the Satake parameter, predict lambda(p^2),
// re-measure via the xi = p^2 coset set, and run a B-doubling ladder.
EulerVerifyReport hecke_euler_verify(int k, const Int& p, int B, int jobs = 1,
                                     double eigen_tol = 1e-4);

}  // namespace sjf
