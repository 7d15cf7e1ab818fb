#pragma once

#include <map>
#include <string>
#include <vector>

#include "sjf/characters.hpp"
#include "sjf/fourier.hpp"
#include "sjf/jacobi_group.hpp"

namespace sjf {

// ---- GL_n coset machinery ----

// Smith normal form diagonal (elementary divisors) of a nonsingular
// integral matrix.
std::vector<Int> smith_divisors(const RatMatrix& m);

// Complete, duplicate-free list of column-style Hermite normal forms d with
// E d inside E xi E (same elementary divisors), E = GL_n(Z).
std::vector<RatMatrix> gl_coset_reps(const RatMatrix& xi);

// ---- Left-coset canonicalization for D = C x| D[level], degree n = 1 ----
// level = q means the Iwahori-type symplectic part {c == 0 mod q};
// level = 1 is the maximal group SL_2(Z).

bool in_group_D(const JacobiElement& a, const Int& level);
JacobiElement coset_canonical_rep(const JacobiElement& a, const Int& level);
std::string coset_key(const JacobiElement& a, const Int& level);

/// A set of left-coset representatives of a Hecke double coset, with
/// canonical byte keys certifying pairwise disjointness.
struct CosetSet {
    std::string source;
    Int level = 1;  // q of the defining group D
    std::vector<JacobiElement> reps;
    std::vector<std::string> canonical_keys;

    size_t size() const { return reps.size(); }
    bool keys_distinct() const;
    bool contains_key(const std::string& key) const;
};

// Representatives of D diag[xi~, xi] D per the upper-triangular
// decomposition (d, b, mu), valid for the Iwahori-type group (level with
// full support on det xi). Any degree n.
CosetSet iwahori_coset_reps(const RatMatrix& xi, int l, const Int& level);

// Degree-1 representatives for xi = (p^a): Iwahori branch via the explicit
// (d, b, mu) list when p | level, and the full maximal-level double coset
// (computed by exact closure) when level = 1.
CosetSet jacobi_coset_reps_deg1(const Int& p, int a, int l, const Int& level);

// Mixed-level structural enumeration: left cosets of D[level_left] sigma
// D[level_right], degree 1 (exposed for the U_{q,psi} operators; not used
// by the acceptance suite).
CosetSet mixed_coset_reps_deg1(const Int& p, int a, int l, const Int& level_left,
                               const Int& level_right);

// ---- Operators ----

// Pointwise f|T = sum_alpha psi(det a_alpha)^{-1} J(alpha, z)^{-1} f(alpha z).
PointFunction apply_T_point(const PointFunction& f, const CosetSet& T,
                            const WeightIndex& wi, const CharacterModN& psi);

// Exact action on degree-1 expansions by key reindexing; the returned
// truncation is the range on which every contributing source key lies
// within the input truncation.
FourierExpansion apply_T_expansion(const FourierExpansion& f, const CosetSet& T,
                                   const WeightIndex& wi, const CharacterModN& psi);

// True iff every product of representatives of T1 and T2 lies in the
// declared product family.
bool bad_closure_check(const CosetSet& T1, const CosetSet& T2,
                       const CosetSet& product_family);

// ---- Satake map ----

/// Monomial in t_1..t_n with rational coefficient.
struct SatakeMonomial {
    Rational coeff;
    std::vector<int> exps;
};

// omega_0(E d) = prod_i (q^{-i} t_i)^{e_i} for d upper triangular with
// diagonal q^{e_1}, ..., q^{e_n}. Throws on non-prime-power diagonal.
SatakeMonomial satake_omega(const RatMatrix& d, const Int& q);

// omega of a double coset: sum of the monomials over its representatives
// (collected by exponent vector).
std::map<std::vector<int>, Rational> satake_omega_sum(const CosetSet& T,
                                                      const Int& q);

// ---- Eigenvalue extraction ----

struct EigenvalueResult {
    cplx lambda;      // componentwise median of the ratios
    double residual;  // max relative deviation from lambda
    bool is_eigenfunction(double tol) const { return residual < tol; }
};

EigenvalueResult eigenvalue_extract(const PointFunction& f, const PointFunction& Tf,
                                    const std::vector<JacobiPoint>& points);

}  // namespace sjf
