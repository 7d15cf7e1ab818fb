#pragma once

#include <vector>

#include "sjf/characters.hpp"
#include "sjf/matrix.hpp"

namespace sjf {

// Complex Gamma via Lanczos approximation (relative error ~1e-13 in the
// right half plane; reflection formula elsewhere). Throws on poles.
cplx cgamma(cplx s);

// Gamma_n(s) = pi^{n(n-1)/4} prod_{j=0}^{n-1} Gamma(s - j/2).
cplx gamma_n(int n, cplx s);

// The six-case gamma(s, h) table attached to weight h >= 0 (possibly
// half-integral) in degree n.
cplx gamma_case(cplx s, const Rational& h, int n);

// G_{k,n}(s) = gamma(s, |k|) for one archimedean place (d = 1).
cplx G_kn(cplx s, const Rational& k, int n);

// Hurwitz zeta for Re(s) > 1 - 2*terms, 0 < a <= 1 (Euler-Maclaurin).
cplx hurwitz_zeta(cplx s, double a);

// Dirichlet L(s, chi) by Hurwitz decomposition.
cplx dirichlet_L(cplx s, const CharacterModN& chi);

// L_c(s, chi) = prod_{q | c} (1 - chi(q) q^{-s}) L(s, chi).
cplx dirichlet_L_c(cplx s, const CharacterModN& chi, const Int& c);

// Lambda^n_{k,c}(s, chi), with the branch chosen by whether the weight is
// integral; the modulus c is passed explicitly.
cplx lambda_norm(cplx s, const CharacterModN& chi, int n, bool k_integral,
                 const Int& c);

struct PoleSets {
    std::vector<Rational> S1;
    std::vector<Rational> S2;
};

// Possible-pole sets S^(1)_k, S^(2)_k for weight k (integral or not) in
// degree n; m = min_v k_v = k for parallel weight.
PoleSets pole_sets(const Rational& k, int n);

// Reproducing-kernel constant c~_{S,k}(s) for one archimedean place.
cplx kernel_constant(cplx s, int k, const SymMatrix& S, int n, int l);

}  // namespace sjf
