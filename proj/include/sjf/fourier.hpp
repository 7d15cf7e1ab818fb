#pragma once

#include <map>
#include <string>

#include "sjf/jacobi_group.hpp"
#include "sjf/matrix.hpp"

namespace sjf {

/// Fourier key (t, r): t an n x n symmetric rational matrix, r an l x n
/// rational matrix. Ordered by a normalized byte encoding so that maps of
/// keys are canonical.
struct FourierKey {
    RatMatrix t;
    RatMatrix r;

    std::string encode() const;
    friend bool operator<(const FourierKey& a, const FourierKey& b) {
        return a.encode() < b.encode();
    }
    friend bool operator==(const FourierKey& a, const FourierKey& b) {
        return a.t == b.t && a.r == b.r;
    }
};

/// Truncated Fourier expansion sum c(t,r) e(tr(t tau)) e(tr(r^T w)).
/// Weight is stored doubled so that half-integral weights (theta
/// components) fit in the same type.
class FourierExpansion {
public:
    FourierExpansion() = default;
    FourierExpansion(int n, int l, int twice_weight, SymMatrix S, Rational trunc,
                     Int denom_t = 1, Int denom_r = 1, Rational level_b = Rational(1),
                     Int level_N = 1);

    // The constant expansion "1" (single key (0,0) -> 1, weight 0, index 0).
    static FourierExpansion one(int n, int l, Rational trunc);

    int degree() const { return n_; }
    int index_size() const { return l_; }
    int twice_weight() const { return twice_k_; }
    const SymMatrix& index() const { return S_; }
    const Rational& trunc() const { return trunc_; }
    const Int& denom_t() const { return denom_t_; }
    const Int& denom_r() const { return denom_r_; }
    const Rational& level_b() const { return level_b_; }
    const Int& level_N() const { return level_N_; }

    const std::map<FourierKey, Rational>& coeffs() const { return c_; }
    size_t size() const { return c_.size(); }

    // Adds v to the coefficient at (t, r); validates shape, psd-ness and
    // denominators; drops the key if the result is zero.
    void add_coeff(const RatMatrix& t, const RatMatrix& r, const Rational& v);
    Rational coeff(const RatMatrix& t, const RatMatrix& r) const;

    FourierExpansion operator+(const FourierExpansion& o) const;
    FourierExpansion scaled(const Rational& c) const;
    // Cauchy product; indices and weights add, truncation is the minimum.
    FourierExpansion operator*(const FourierExpansion& o) const;

    // Same expansion with the denominators tightened to the keys present.
    FourierExpansion with_minimal_denominators() const;

    friend bool operator==(const FourierExpansion& a, const FourierExpansion& b);

    struct EvalResult {
        cplx value;
        double tail_estimate;  // heuristic geometric tail bound
    };
    EvalResult evaluate(const JacobiPoint& z) const;

private:
    void check_compatible(const FourierExpansion& o, bool for_product) const;

    int n_ = 1, l_ = 1;
    int twice_k_ = 0;
    SymMatrix S_;
    Rational trunc_;
    Int denom_t_ = 1, denom_r_ = 1;
    Rational level_b_ = Rational(1);
    Int level_N_ = 1;
    std::map<FourierKey, Rational> c_;
};

// Cusp-support predicate: [[S, r], [r^T, t]] positive definite, exact.
bool is_cusp_support(const RatMatrix& t, const RatMatrix& r, const SymMatrix& S);

// Petersson weight Delta_{S,k}(z) = det(y)^k exp(-4 pi tr(v^T S v y^{-1})),
// tau = x + iy, w = u + iv.
double petersson_weight(const JacobiPoint& z, const WeightIndex& wi);

}  // namespace sjf
