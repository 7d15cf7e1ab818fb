#pragma once

#include <map>
#include <vector>

#include "sjf/fourier.hpp"

namespace sjf {

/// Jacobi theta series data: quadratic form matrix A (positive definite,
/// the series is "of index A/2"), a full-rank lattice L in M_{l,n}(Q) given
/// by a basis acting on vec-coordinates, and a characteristic h.
struct ThetaSpec {
    SymMatrix A;        // l x l, positive definite (e.g. 2S)
    int n = 1;
    RatMatrix lattice;  // (l n) x (l n) basis, columns = generators (vec by columns)
    RatMatrix h;        // l x n characteristic

    // L = scale * M_{l,n}(Z).
    static ThetaSpec scaled_standard(const SymMatrix& A, int n, const Rational& scale,
                                     const RatMatrix& h);
};

// Theta_{A,L,h}(tau,w) = sum_{x in L} e(tr(A (1/2 (x+h) tau (x+h)^T + (x+h) w^T)))
// as a truncated Fourier expansion: keys t = A[x+h]/2, r = A (x+h),
// all tr(t) <= T. Every key satisfies r^T A^{-1} r = 2 t.
FourierExpansion theta_characteristic(const ThetaSpec& spec, const Rational& T);

/// Lattice data for the theta decomposition attached to an index S.
struct ThetaLattices {
    RatMatrix A;                  // A S A^T = diag[s_1..s_l]
    std::vector<Rational> s;      // the diagonal values
    RatMatrix lambda1;            // basis of A M_{l,n}(o)   (vec coords)
    RatMatrix lambda2;            // basis of 2 diag(s_i^-1) M_{l,n}(o)
    bool contained = false;       // lambda2 inside lambda1?
    Int rescale = 1;              // least c >= 1 with c*lambda2 inside lambda1
    Int paper_index = 0;          // [lambda1 : lambda2] when contained

    // Working normalization, arbitrated by the round-trip property:
    // summation lattice M_{l,n}(Z) and characteristics (2S)^{-1}M/M.
    std::vector<RatMatrix> characteristics;  // l x n reps, entries in [0,1)
};

ThetaLattices build_lattices(const SymMatrix& S, int n);

/// Components of the theta decomposition f = sum_h f_h Theta_{2S, Lambda, h}.
struct ThetaComponents {
    int n = 1, l = 1;
    SymMatrix S;                        // index of the assembled form
    int twice_weight_total = 0;         // weight of the assembled form (x2)
    std::vector<RatMatrix> reps;        // characteristics
    std::vector<FourierExpansion> comp; // f_h, weight (x2) = total - l

    const FourierExpansion& component(const RatMatrix& h) const;
};

// Split an expansion into theta components. Requires every key to satisfy
// 4t - r^T S^{-1} r >= 0 (positive semidefinite).
ThetaComponents decompose(const FourierExpansion& f);

// Empty (all-zero) component set for the given data.
ThetaComponents zero_components(int n, const SymMatrix& S, int twice_weight_total,
                                const Rational& trunc);

// sum_h f_h * Theta_{2S, Lambda, h}, truncated at T.
FourierExpansion assemble(const ThetaComponents& c, const Rational& T);

// True iff every component is supported on positive definite t2 only.
bool property_A_check(const ThetaComponents& c);

}  // namespace sjf
