#include "sjf/fourier.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sjf {

std::string FourierKey::encode() const {
    std::ostringstream os;
    os << "t" << t.str() << "r" << r.str();
    return os.str();
}

FourierExpansion::FourierExpansion(int n, int l, int twice_weight, SymMatrix S,
                                   Rational trunc, Int denom_t, Int denom_r,
                                   Rational level_b, Int level_N)
    : n_(n),
      l_(l),
      twice_k_(twice_weight),
      S_(std::move(S)),
      trunc_(std::move(trunc)),
      denom_t_(std::move(denom_t)),
      denom_r_(std::move(denom_r)),
      level_b_(std::move(level_b)),
      level_N_(std::move(level_N)) {
    if (S_.dim() != l_) throw std::invalid_argument("FourierExpansion: index size");
    if (denom_t_ <= 0 || denom_r_ <= 0)
        throw std::invalid_argument("FourierExpansion: denominators must be positive");
}

FourierExpansion FourierExpansion::one(int n, int l, Rational trunc) {
    FourierExpansion f(n, l, 0, SymMatrix(RatMatrix(l, l)), std::move(trunc));
    f.add_coeff(RatMatrix(n, n), RatMatrix(l, n), Rational(1));
    return f;
}

void FourierExpansion::add_coeff(const RatMatrix& t, const RatMatrix& r,
                                 const Rational& v) {
    if (t.rows() != n_ || t.cols() != n_ || r.rows() != l_ || r.cols() != n_)
        throw std::invalid_argument("add_coeff: key shape mismatch");
    if (!t.is_symmetric()) throw std::invalid_argument("add_coeff: t not symmetric");
    if (!t.is_positive_semidefinite())
        throw std::invalid_argument("add_coeff: t not positive semidefinite");
    if (t.trace() > trunc_) throw std::invalid_argument("add_coeff: beyond truncation");
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (!(t(i, j) * Rational(denom_t_)).is_integer())
                throw std::invalid_argument("add_coeff: t violates lattice denominator");
    for (int i = 0; i < l_; ++i)
        for (int j = 0; j < n_; ++j)
            if (!(r(i, j) * Rational(denom_r_)).is_integer())
                throw std::invalid_argument("add_coeff: r violates lattice denominator");
    if (v.is_zero()) return;
    FourierKey key{t, r};
    auto it = c_.find(key);
    if (it == c_.end())
        c_.emplace(std::move(key), v);
    else {
        it->second += v;
        if (it->second.is_zero()) c_.erase(it);
    }
}

Rational FourierExpansion::coeff(const RatMatrix& t, const RatMatrix& r) const {
    auto it = c_.find(FourierKey{t, r});
    return it == c_.end() ? Rational(0) : it->second;
}

void FourierExpansion::check_compatible(const FourierExpansion& o,
                                        bool for_product) const {
    if (n_ != o.n_ || l_ != o.l_)
        throw std::invalid_argument("expansion: degree/index-size mismatch");
    if (!for_product) {
        if (twice_k_ != o.twice_k_ || !(S_.mat() == o.S_.mat()))
            throw std::invalid_argument("expansion: weight/index mismatch in add");
    }
}

FourierExpansion FourierExpansion::operator+(const FourierExpansion& o) const {
    check_compatible(o, false);
    Rational T = std::min(trunc_, o.trunc_);
    FourierExpansion r(n_, l_, twice_k_, S_, T, int_lcm(denom_t_, o.denom_t_),
                       int_lcm(denom_r_, o.denom_r_), level_b_, level_N_);
    for (const auto& [k, v] : c_)
        if (k.t.trace() <= T) r.add_coeff(k.t, k.r, v);
    for (const auto& [k, v] : o.c_)
        if (k.t.trace() <= T) r.add_coeff(k.t, k.r, v);
    return r;
}

FourierExpansion FourierExpansion::scaled(const Rational& s) const {
    FourierExpansion r(n_, l_, twice_k_, S_, trunc_, denom_t_, denom_r_, level_b_,
                       level_N_);
    if (s.is_zero()) return r;
    for (const auto& [k, v] : c_) r.add_coeff(k.t, k.r, v * s);
    return r;
}

FourierExpansion FourierExpansion::operator*(const FourierExpansion& o) const {
    check_compatible(o, true);
    Rational T = std::min(trunc_, o.trunc_);
    FourierExpansion r(n_, l_, twice_k_ + o.twice_k_,
                       SymMatrix(S_.mat() + o.S_.mat()), T,
                       int_lcm(denom_t_, o.denom_t_), int_lcm(denom_r_, o.denom_r_),
                       level_b_, level_N_);
    for (const auto& [ka, va] : c_)
        for (const auto& [kb, vb] : o.c_) {
            RatMatrix t = ka.t + kb.t;
            if (t.trace() > T) continue;
            r.add_coeff(t, ka.r + kb.r, va * vb);
        }
    return r;
}

FourierExpansion FourierExpansion::with_minimal_denominators() const {
    Int dt(1), dr(1);
    for (const auto& [k, v] : c_) {
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) dt = int_lcm(dt, k.t(i, j).den());
        for (int i = 0; i < l_; ++i)
            for (int j = 0; j < n_; ++j) dr = int_lcm(dr, k.r(i, j).den());
    }
    FourierExpansion out(n_, l_, twice_k_, S_, trunc_, dt, dr, level_b_, level_N_);
    for (const auto& [k, v] : c_) out.add_coeff(k.t, k.r, v);
    return out;
}

bool operator==(const FourierExpansion& a, const FourierExpansion& b) {
    return a.n_ == b.n_ && a.l_ == b.l_ && a.twice_k_ == b.twice_k_ &&
           a.S_.mat() == b.S_.mat() && a.trunc_ == b.trunc_ && a.c_ == b.c_;
}

FourierExpansion::EvalResult FourierExpansion::evaluate(const JacobiPoint& z) const {
    if (!point_in_domain(z))
        throw std::domain_error("evaluate: Im(tau) not positive definite");
    cplx s = 0;
    for (const auto& [k, v] : c_) {
        CMat t = CMat::from_rational(k.t);
        CMat r = CMat::from_rational(k.r);
        cplx ex = (t * z.tau).trace() + (r.transpose() * z.w).trace();
        s += v.to_double() * e2pi(ex);
    }
    double lam_min = z.tau.imag_part().symmetric_min_eigenvalue();
    double T = trunc_.to_double();
    EvalResult res;
    res.value = s;
    res.tail_estimate = std::exp(-2 * M_PI * lam_min * T);
    return res;
}

bool is_cusp_support(const RatMatrix& t, const RatMatrix& r, const SymMatrix& S) {
    int l = S.dim(), n = t.rows();
    if (t.cols() != n || r.rows() != l || r.cols() != n)
        throw std::invalid_argument("is_cusp_support: shape mismatch");
    RatMatrix block(l + n, l + n);
    block.set_block(0, 0, S.mat());
    block.set_block(0, l, r);
    block.set_block(l, 0, r.transpose());
    block.set_block(l, l, t);
    return block.is_positive_definite();
}

double petersson_weight(const JacobiPoint& z, const WeightIndex& wi) {
    if (!point_in_domain(z))
        throw std::domain_error("petersson_weight: Im(tau) not positive definite");
    CMat y = z.tau.imag_part();
    CMat v = z.w.imag_part();
    CMat S = CMat::from_rational(wi.S.mat());
    double dety = y.det().real();
    double quad = (v.transpose() * S * v * y.inverse()).trace().real();
    return std::pow(dety, wi.k) * std::exp(-4 * M_PI * quad);
}

}  // namespace sjf
