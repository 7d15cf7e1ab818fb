#pragma once

#include <map>
#include <optional>
#include <string>

#include "sjf/characters.hpp"
#include "sjf/matrix.hpp"
#include "sjf/series.hpp"

namespace sjf {

/// Local Euler factor: polynomial in X = N(p)^{-s} with constant term 1.
struct LocalFactor {
    Int p;
    int degree_bound;  // 2n at good primes, n at bad ones
    RatPoly poly;

    LocalFactor(Int prime, int bound, RatPoly q);
    FormalSeries reciprocal_series(int order) const {
        return poly.as_series(order).reciprocal();
    }
    bool is_palindromic() const;
};

// L_p(X) = prod_i (1 - mu_i X)(1 - mu_i^{-1} X), exact for rational Satake
// parameters.
LocalFactor euler_factor_good(const Int& p, const std::vector<Rational>& mu);

// Same with complex parameters; returns plain coefficients.
std::vector<cplx> euler_factor_good_c(const std::vector<cplx>& mu);

// frak_L_p(chi, s) as a rational function in X = p^{-s}:
// G_p * prod_{i=1}^{n} (1 - chi^2(p) p^{-(2s+2n-2i)})^{-1}        (l even)
// G_p * prod_{i=1}^{n} (1 - chi^2(p) p^{-(2s+2n-2i+1)})^{-1}      (l odd).
RatFunction frak_L_factor(const CharacterModN& chi, const Int& p, int n, int l,
                          const RatFunction& G_p);

// Regularity of S at p: det(2S) is a p-unit (l even) or twice a p-unit
// times p-units (l odd, p = 2 carries the single factor 2).
bool is_regular_at(const SymMatrix& S, const Int& p);

// alpha_S(s, chi) = (1 - chi(p) p^{-s}) prod_{i=1}^{[l/2]} (1 - chi^2(p) p^{-(2s-2i)})
// for regular S; polynomial in Y = p^{-s}.
RatFunction siegel_series_regular(const SymMatrix& S, const CharacterModN& chi,
                                  const Int& p);

// g_S(s+n+l/2, chi) / g_S(s+l/2, chi); identically 1 in the regular case,
// error otherwise (non-regular Siegel series are out of scope).
RatFunction G_p_ratio(const SymMatrix& S, const CharacterModN& chi, const Int& p,
                      int n, int l);

/// Satake solve for n = l = 1: mu + mu^{-1} = lambda(p) p^{-3/2}, and the
/// resulting prediction lambda(p^2) = p^3 (mu^2 + 1 + mu^{-2} - p^{-1}).
struct SatakeSolution {
    cplx mu;
    double lambda_p;
    double predicted_lambda_p2;
    double predicted_lambda_p3;
};
SatakeSolution satake_solve_and_predict(double lambda_p, const Int& p);

/// Twisted global Euler product L_{psi,x}: chi*psi twist away from c, chi
/// alone at p | c, primes dividing x removed.
struct TwistedLProduct {
    std::map<Int, LocalFactor> factors;
    // Dirichlet series coefficients a_1..a_M of the product of the
    // reciprocal local factors (signed by the character twists).
    std::vector<Rational> dirichlet_coefficients(int M) const;
};
TwistedLProduct twisted_L_assemble(const std::map<Int, LocalFactor>& factors,
                                   const CharacterModN& chi, const CharacterModN& psi,
                                   const Int& c, const Int& x_removed);

/// Exponent bookkeeping of the algebraicity theorem.
struct SigmaExponents {
    bool admissible;
    std::string violated;  // named condition when inadmissible
    Rational e;
    Rational e_sigma;
};
SigmaExponents exponents(int k, int l, int n, int sigma);

struct EisExponents {
    bool admissible;
    std::string violated;
    Rational r;
    Rational beta;
    Rational e;
};
struct EisExclusionFlags {
    bool chi_sq_trivial = false;     // chi^2 psi_i^2 = 1 occurs
    bool chi_psiS_trivial = false;   // chi psi_S psi_i = 1 occurs
    bool level_trivial = true;       // c = o
};
EisExponents eis_exponents(int k, int l, int n, int mu,
                           const EisExclusionFlags& flags = {});

// Condition M_p^+: Z_p^l maximal w.r.t. 2S and L' = L, by exact valuation
// arithmetic over coset representatives.
bool m_plus_check(const SymMatrix& S, const Int& p);

// Gauss integral closed form:
// int exp(a tr(-S[X]A + R X A)) dX
//   = (det A)^{-l/2} (pi/a)^{nl/2} (det S)^{-n/2} exp(a/4 tr(S^{-1}[R^T] A)),
// S real positive definite l x l, R real n x l, A complex symmetric n x n
// with positive definite real part, Re(a) > 0. Principal branches of the
// det powers.
cplx gauss_integral(const CMat& S, const CMat& R, const CMat& A, cplx a);

}  // namespace sjf
