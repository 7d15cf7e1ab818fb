#include "sjf/theta.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace sjf {

namespace {

RatMatrix unvec(const std::vector<Rational>& v, int l, int n) {
    RatMatrix m(l, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < l; ++i) m(i, j) = v[static_cast<size_t>(j) * l + i];
    return m;
}

std::vector<Rational> vec(const RatMatrix& m) {
    std::vector<Rational> v;
    v.reserve(static_cast<size_t>(m.rows()) * m.cols());
    for (int j = 0; j < m.cols(); ++j)
        for (int i = 0; i < m.rows(); ++i) v.push_back(m(i, j));
    return v;
}

// Entrywise fractional part (reduction mod M_{l,n}(Z)).
RatMatrix frac_part(const RatMatrix& m) {
    RatMatrix r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            r(i, j) = m(i, j) - Rational(m(i, j).floor());
    return r;
}

}  // namespace

ThetaSpec ThetaSpec::scaled_standard(const SymMatrix& A, int n, const Rational& scale,
                                     const RatMatrix& h) {
    ThetaSpec s;
    s.A = A;
    s.n = n;
    int ln = A.dim() * n;
    s.lattice = RatMatrix::identity(ln).scaled(scale);
    s.h = h;
    return s;
}

FourierExpansion theta_characteristic(const ThetaSpec& spec, const Rational& T) {
    int l = spec.A.dim(), n = spec.n;
    int ln = l * n;
    if (spec.lattice.rows() != ln || spec.lattice.cols() != ln)
        throw std::invalid_argument("theta_characteristic: lattice basis shape");
    if (spec.lattice.det().is_zero())
        throw std::invalid_argument("theta_characteristic: lattice not full rank");
    if (!spec.A.is_positive_definite())
        throw std::invalid_argument("theta_characteristic: A not positive definite");

    // Keys over y = unvec(B x) + h, x integral, with tr(A[y]) <= 2T.
    // Bound the integer box via the smallest eigenvalue of the Gram form
    // Q = B^T (I_n kron A) B in doubles, then filter exactly.
    RatMatrix kron(ln, ln);
    for (int blk = 0; blk < n; ++blk)
        kron.set_block(blk * l, blk * l, spec.A.mat());
    RatMatrix Q = spec.lattice.transpose() * kron * spec.lattice;
    double lam_min = CMat::from_rational(Q).symmetric_min_eigenvalue();
    if (lam_min <= 0) throw std::logic_error("theta_characteristic: Gram not pd");
    Rational bound = T * Rational(2);
    // center: y = B x + h = 0  =>  x0 = -B^{-1} vec(h)
    RatMatrix Binv = spec.lattice.inverse();
    std::vector<Rational> hv = vec(spec.h);
    std::vector<double> x0(static_cast<size_t>(ln), 0.0);
    for (int i = 0; i < ln; ++i) {
        Rational s;
        for (int j = 0; j < ln; ++j) s += Binv(i, j) * hv[static_cast<size_t>(j)];
        x0[static_cast<size_t>(i)] = -s.to_double();
    }
    double radius = std::sqrt(std::max(0.0, bound.to_double()) / lam_min) + 1e-9;

    // First pass: collect keys and their denominators.
    std::vector<std::pair<RatMatrix, RatMatrix>> keys;  // (t, r)
    std::vector<long> idx(static_cast<size_t>(ln));
    std::vector<std::pair<long, long>> ranges(static_cast<size_t>(ln));
    for (int i = 0; i < ln; ++i)
        ranges[static_cast<size_t>(i)] = {
            static_cast<long>(std::floor(x0[static_cast<size_t>(i)] - radius)),
            static_cast<long>(std::ceil(x0[static_cast<size_t>(i)] + radius))};

    Int dt(1), dr(1);
    std::function<void(int)> rec = [&](int pos) {
        if (pos == ln) {
            std::vector<Rational> xv(static_cast<size_t>(ln));
            for (int i = 0; i < ln; ++i) xv[static_cast<size_t>(i)] = Rational(idx[static_cast<size_t>(i)]);
            // y = B x + h
            std::vector<Rational> yv(static_cast<size_t>(ln));
            for (int i = 0; i < ln; ++i) {
                Rational s = hv[static_cast<size_t>(i)];
                for (int j = 0; j < ln; ++j)
                    s += spec.lattice(i, j) * xv[static_cast<size_t>(j)];
                yv[static_cast<size_t>(i)] = s;
            }
            RatMatrix y = unvec(yv, l, n);
            RatMatrix t = spec.A.mat().quad(y).scaled(Rational(1, 2));
            if (t.trace() > T) return;
            RatMatrix r = spec.A.mat() * y;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) dt = int_lcm(dt, t(i, j).den());
            for (int i = 0; i < l; ++i)
                for (int j = 0; j < n; ++j) dr = int_lcm(dr, r(i, j).den());
            keys.emplace_back(std::move(t), std::move(r));
            return;
        }
        for (long v = ranges[static_cast<size_t>(pos)].first;
             v <= ranges[static_cast<size_t>(pos)].second; ++v) {
            idx[static_cast<size_t>(pos)] = v;
            rec(pos + 1);
        }
    };
    rec(0);

    FourierExpansion f(n, l, l, SymMatrix(spec.A.mat().scaled(Rational(1, 2))), T,
                       dt, dr);
    for (auto& [t, r] : keys) f.add_coeff(t, r, Rational(1));
    return f;
}

ThetaLattices build_lattices(const SymMatrix& S, int n) {
    if (!S.is_positive_definite())
        throw std::invalid_argument("build_lattices: S not positive definite");
    int l = S.dim();
    ThetaLattices out;

    // Congruence diagonalization A S A^T = diag (positive definite S, so the
    // pivot is always nonzero).
    RatMatrix A = RatMatrix::identity(l);
    RatMatrix M = S.mat();
    for (int k = 0; k < l; ++k) {
        Rational piv = M(k, k);
        for (int i = k + 1; i < l; ++i) {
            if (M(i, k).is_zero()) continue;
            Rational f = M(i, k) / piv;
            // row_i -= f row_k and col_i -= f col_k (congruence)
            for (int j = 0; j < l; ++j) M(i, j) -= f * M(k, j);
            for (int j = 0; j < l; ++j) M(j, i) -= f * M(j, k);
            for (int j = 0; j < l; ++j) A(i, j) -= f * A(k, j);
        }
    }
    out.A = A;
    for (int i = 0; i < l; ++i) out.s.push_back(M(i, i));

    int ln = l * n;
    RatMatrix kronA(ln, ln), kronD(ln, ln);
    RatMatrix D2(l, l);
    for (int i = 0; i < l; ++i) D2(i, i) = Rational(2) / out.s[static_cast<size_t>(i)];
    for (int blk = 0; blk < n; ++blk) {
        kronA.set_block(blk * l, blk * l, A);
        kronD.set_block(blk * l, blk * l, D2);
    }
    out.lambda1 = kronA;
    out.lambda2 = kronD;
    RatMatrix rel = kronA.inverse() * kronD;  // lambda2 in lambda1-coords
    out.contained = rel.is_integral();
    Int c(1);
    for (int i = 0; i < ln; ++i)
        for (int j = 0; j < ln; ++j) c = int_lcm(c, rel(i, j).den());
    out.rescale = c;
    if (out.contained) {
        Rational d = rel.det().abs();
        out.paper_index = d.num();  // d is a positive integer here
    }

    // Working characteristics: (2S)^{-1} M_{l,n}(Z) / M_{l,n}(Z).
    RatMatrix twoS_inv = S.mat().scaled(Rational(2)).inverse();
    Int Ddet = (S.mat().scaled(Rational(2))).det().abs().num();  // 2S is integral for
    // admissible indices; if not, still a valid modulus via numerator
    Rational ddet = (S.mat().scaled(Rational(2))).det().abs();
    Int modulus = ddet.num();
    (void)Ddet;
    std::set<std::string> seen;
    std::vector<long> u(static_cast<size_t>(ln), 0);
    long D = modulus.get_si();
    std::function<void(int)> rec = [&](int pos) {
        if (pos == ln) {
            RatMatrix um = unvec(std::vector<Rational>(u.begin(), u.end()), l, n);
            RatMatrix h = frac_part(twoS_inv * um);
            std::string key = h.str();
            if (seen.insert(key).second) out.characteristics.push_back(h);
            return;
        }
        for (long v = 0; v < D; ++v) {
            u[static_cast<size_t>(pos)] = v;
            rec(pos + 1);
        }
    };
    rec(0);
    return out;
}

const FourierExpansion& ThetaComponents::component(const RatMatrix& h) const {
    for (size_t i = 0; i < reps.size(); ++i)
        if (reps[i] == h) return comp[i];
    throw std::invalid_argument("ThetaComponents: unknown characteristic");
}

ThetaComponents zero_components(int n, const SymMatrix& S, int twice_weight_total,
                                const Rational& trunc) {
    ThetaComponents out;
    out.n = n;
    out.l = S.dim();
    out.S = S;
    out.twice_weight_total = twice_weight_total;
    ThetaLattices lat = build_lattices(S, n);
    // Component key denominators: t2 lives on (1/(4 det-ish)) lattice; use
    // 4 * numerator of det(2S) * denominators of S as a safe common choice.
    Int dt = 4 * (S.mat().scaled(Rational(2))).det().abs().num();
    for (int i = 0; i < S.dim(); ++i)
        for (int j = 0; j < S.dim(); ++j) dt = int_lcm(dt, S.mat()(i, j).den());
    for (const auto& h : lat.characteristics) {
        out.reps.push_back(h);
        out.comp.emplace_back(n, S.dim(), twice_weight_total - S.dim(),
                              SymMatrix(RatMatrix(S.dim(), S.dim())), trunc, dt,
                              Int(1));
    }
    return out;
}

ThetaComponents decompose(const FourierExpansion& f) {
    const SymMatrix& S = f.index();
    if (!S.is_positive_definite())
        throw std::invalid_argument("decompose: index not positive definite");
    int n = f.degree(), l = f.index_size();
    ThetaComponents out = zero_components(n, S, f.twice_weight(), f.trunc());
    RatMatrix Sinv = S.mat().inverse();
    for (const auto& [key, v] : f.coeffs()) {
        // y = (1/2) S^{-1} r ; characteristic h = frac(y) ; t2 = t - S[y].
        RatMatrix y = Sinv * key.r.scaled(Rational(1, 2));
        RatMatrix h = frac_part(y);
        RatMatrix t2 = key.t - S.mat().quad(y);
        if (!t2.is_positive_semidefinite())
            throw std::domain_error(
                "decompose: key violates the support inequality 4t >= r S^{-1} r^T");
        bool found = false;
        for (size_t i = 0; i < out.reps.size(); ++i) {
            if (out.reps[i] == h) {
                // Every key (t2 + S[y], 2Sy), y in h + Z-lattice, determines
                // the same component coefficient; set it once and insist the
                // siblings agree.
                Rational existing = out.comp[i].coeff(t2, RatMatrix(l, n));
                if (existing.is_zero())
                    out.comp[i].add_coeff(t2, RatMatrix(l, n), v);
                else if (existing != v)
                    throw std::domain_error(
                        "decompose: inconsistent sibling coefficients (input is "
                        "not an index-S invariant expansion)");
                found = true;
                break;
            }
        }
        if (!found)
            throw std::domain_error(
                "decompose: ambiguous characteristic (lattice misconfiguration)");
    }
    return out;
}

FourierExpansion assemble(const ThetaComponents& c, const Rational& T) {
    FourierExpansion acc(c.n, c.l, c.twice_weight_total, c.S, T);
    bool any = false;
    Int dt(1), dr(1);
    std::vector<FourierExpansion> parts;
    for (size_t i = 0; i < c.reps.size(); ++i) {
        if (c.comp[i].twice_weight() != c.twice_weight_total - c.l)
            throw std::invalid_argument("assemble: component weight mismatch");
        if (c.comp[i].size() == 0) continue;
        ThetaSpec spec = ThetaSpec::scaled_standard(
            SymMatrix(c.S.mat().scaled(Rational(2))), c.n, Rational(1), c.reps[i]);
        FourierExpansion theta = theta_characteristic(spec, T);
        FourierExpansion prod = c.comp[i] * theta;
        parts.push_back(prod);
        dt = int_lcm(dt, prod.denom_t());
        dr = int_lcm(dr, prod.denom_r());
        any = true;
    }
    if (!any) return FourierExpansion(c.n, c.l, c.twice_weight_total, c.S, T);
    FourierExpansion sum(c.n, c.l, c.twice_weight_total, c.S, T, dt, dr);
    for (const auto& p : parts)
        for (const auto& [k, v] : p.coeffs()) sum.add_coeff(k.t, k.r, v);
    return sum.with_minimal_denominators();
}

bool property_A_check(const ThetaComponents& c) {
    for (const auto& f : c.comp)
        for (const auto& [k, v] : f.coeffs())
            if (!k.t.is_positive_definite()) return false;
    return true;
}

}  // namespace sjf
