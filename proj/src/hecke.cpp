#include "sjf/hecke.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <set>
#include <stdexcept>

#include "sjf/series.hpp"

namespace sjf {

namespace {

RatMatrix to_integral(const RatMatrix& m) {
    if (!m.is_integral()) throw std::invalid_argument("expected integral matrix");
    return m;
}

// ---- 2x2 integer row-HNF with an SL2(Z) transform ----
// Returns H = U M with U in SL2(Z); H is either the positive HNF
// [[a,b],[0,d]] (a,d > 0, 0 <= b < d) or diag(-1,1) times it when the
// GL-transform has determinant -1.
struct HnfResult {
    RatMatrix H;  // 2x2 rational (integral here)
    RatMatrix U;  // in SL2(Z)
};

HnfResult sl2_row_hnf(const RatMatrix& M) {
    Int a = M(0, 0).num(), c = M(1, 0).num();
    RatMatrix U = RatMatrix::identity(2);
    int detU = 1;
    if (c != 0) {
        Int g, x, y;
        ext_gcd(a, c, g, x, y);
        // [[x, y], [-c/g, a/g]] has determinant 1
        RatMatrix u(2, 2, {Rational(x), Rational(y), Rational(Int(-c / g)),
                           Rational(Int(a / g))});
        U = u * U;
    } else if (a < 0) {
        // ensure positive pivot via -I (det +1)
        U = RatMatrix(2, 2, {Rational(-1), Rational(0), Rational(0), Rational(-1)}) * U;
    }
    RatMatrix H = U * M;
    // sign of the lower-right
    if (H(1, 1) < Rational(0)) {
        RatMatrix s(2, 2, {Rational(1), Rational(0), Rational(0), Rational(-1)});
        U = s * U;
        H = s * H;
        detU = -detU;
    }
    if (H(0, 0) < Rational(0)) {
        RatMatrix s(2, 2, {Rational(-1), Rational(0), Rational(0), Rational(1)});
        U = s * U;
        H = s * H;
        detU = -detU;
    }
    // reduce b mod d
    Int b = H(0, 1).num(), d = H(1, 1).num();
    Int t = int_fdiv(b, d);
    if (t != 0) {
        RatMatrix s = RatMatrix::identity(2);
        s(0, 1) = Rational(Int(-t));
        U = s * U;
        H = s * H;
    }
    if (detU == -1) {
        RatMatrix s(2, 2, {Rational(-1), Rational(0), Rational(0), Rational(1)});
        U = s * U;
        H = s * H;
    }
    return {H, U};
}

// canonical representative of the projective class of (c, d) mod q
std::pair<Int, Int> p1_canonical(const Int& c, const Int& d, const Int& q) {
    Int cc = int_fmod(c, q), dd = int_fmod(d, q);
    std::pair<Int, Int> best(q, q);
    for (Int u = 1; u < q; ++u) {
        if (int_gcd(u, q) != 1) continue;
        std::pair<Int, Int> cand(int_fmod(u * cc, q), int_fmod(u * dd, q));
        if (cand < best) best = cand;
    }
    if (q == 1) return {0, 0};
    return best;
}

// small SL2(Z) matrix with bottom row congruent to (c, d) mod q
RatMatrix p1_lift(const Int& c, const Int& d, const Int& q) {
    Int cs = c, ds = d;
    if (cs == 0 && ds == 0) {
        cs = 0;
        ds = 1;
    }
    for (Int k = 0;; ++k) {
        Int dtry = ds + k * q;
        if (int_gcd(cs, dtry) == 1) {
            ds = dtry;
            break;
        }
        dtry = ds - k * q;
        if (int_gcd(cs, dtry) == 1) {
            ds = dtry;
            break;
        }
    }
    Int g, x, y;
    ext_gcd(cs, ds, g, x, y);  // x cs + y ds = 1
    return RatMatrix(2, 2,
                     {Rational(y), Rational(Int(-x)), Rational(cs), Rational(ds)});
}

JacobiElement heisenberg_reduce(const JacobiElement& a) {
    int n = a.degree(), l = a.index_size();
    // lambda -> [0,1)
    RatMatrix lam0(l, n);
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < n; ++j) lam0(i, j) = -Rational(a.lambda()(i, j).floor());
    JacobiElement r = compose(
        JacobiElement(lam0, RatMatrix(l, n), RatMatrix(l, l),
                      RatMatrix::identity(2 * n), false),
        a);
    // mu -> [0,1)
    RatMatrix mu0(l, n);
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < n; ++j) mu0(i, j) = -Rational(r.mu()(i, j).floor());
    r = compose(JacobiElement(RatMatrix(l, n), mu0, RatMatrix(l, l),
                              RatMatrix::identity(2 * n), false),
                r);
    // kappa -> [0,1), keeping symmetry
    RatMatrix kap0(l, l);
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) kap0(i, j) = -Rational(r.kappa()(i, j).floor());
    r = compose(JacobiElement(RatMatrix(l, n), RatMatrix(l, n), kap0,
                              RatMatrix::identity(2 * n), false),
                r);
    return r;
}

}  // namespace

std::vector<Int> smith_divisors(const RatMatrix& m0) {
    RatMatrix m = to_integral(m0);
    int n = m.rows();
    std::vector<Int> out;
    // standard reduction
    auto entry = [&m](int i, int j) { return m(i, j).num(); };
    for (int k = 0; k < n; ++k) {
        // find pivot: nonzero entry of minimal absolute value in the block
        while (true) {
            int pi = -1, pj = -1;
            Int best;
            for (int i = k; i < n; ++i)
                for (int j = k; j < n; ++j) {
                    Int v = ::abs(entry(i, j));
                    if (v != 0 && (pi < 0 || v < best)) {
                        best = v;
                        pi = i;
                        pj = j;
                    }
                }
            if (pi < 0) throw std::invalid_argument("smith_divisors: singular matrix");
            // move pivot to (k, k)
            if (pi != k)
                for (int j = 0; j < n; ++j) std::swap(m(pi, j), m(k, j));
            if (pj != k)
                for (int i = 0; i < n; ++i) std::swap(m(i, pj), m(i, k));
            bool clean = true;
            Int piv = entry(k, k);
            for (int i = k + 1; i < n; ++i) {
                Int q = int_fdiv(entry(i, k), piv);
                if (q != 0)
                    for (int j = 0; j < n; ++j) m(i, j) -= Rational(q) * m(k, j);
                if (entry(i, k) != 0) clean = false;
            }
            for (int j = k + 1; j < n; ++j) {
                Int q = int_fdiv(entry(k, j), piv);
                if (q != 0)
                    for (int i = 0; i < n; ++i) m(i, j) -= Rational(q) * m(i, k);
                if (entry(k, j) != 0) clean = false;
            }
            if (clean) break;
        }
    }
    for (int k = 0; k < n; ++k) out.push_back(::abs(m(k, k).num()));
    // divisibility chain
    for (size_t i = 0; i + 1 < out.size(); ++i)
        for (size_t j = i + 1; j < out.size(); ++j) {
            Int g = int_gcd(out[i], out[j]);
            Int lc = out[i] * out[j] / g;
            out[i] = g;
            out[j] = lc;
        }
    return out;
}

std::vector<RatMatrix> gl_coset_reps(const RatMatrix& xi0) {
    RatMatrix xi = to_integral(xi0);
    int n = xi.rows();
    Rational det = xi.det();
    if (det.is_zero()) throw std::invalid_argument("gl_coset_reps: singular xi");
    Int D = det.abs().num();
    std::vector<Int> target = smith_divisors(xi);

    // enumerate positive divisor tuples with product D
    std::vector<Int> divisors;
    for (Int d = 1; d <= D; ++d)
        if (D % d == 0) divisors.push_back(d);

    std::vector<RatMatrix> out;
    std::vector<Int> diag(static_cast<size_t>(n));
    std::function<void(int, Int)> rec_diag = [&](int pos, Int remaining) {
        if (pos == n) {
            if (remaining != 1) return;
            // enumerate the above-diagonal entries, column j mod diag[j]
            RatMatrix H(n, n);
            for (int i = 0; i < n; ++i) H(i, i) = Rational(diag[static_cast<size_t>(i)]);
            std::vector<std::pair<int, int>> slots;
            for (int j = 1; j < n; ++j)
                for (int i = 0; i < j; ++i) slots.emplace_back(i, j);
            std::function<void(size_t)> rec_off = [&](size_t si) {
                if (si == slots.size()) {
                    if (smith_divisors(H) == target) out.push_back(H);
                    return;
                }
                auto [i, j] = slots[si];
                for (Int b = 0; b < diag[static_cast<size_t>(j)]; ++b) {
                    H(i, j) = Rational(b);
                    rec_off(si + 1);
                }
                H(slots[si].first, slots[si].second) = Rational(0);
            };
            rec_off(0);
            return;
        }
        for (const Int& d : divisors) {
            if (remaining % d != 0) continue;
            diag[static_cast<size_t>(pos)] = d;
            rec_diag(pos + 1, remaining / d);
        }
    };
    rec_diag(0, D);
    return out;
}

bool in_group_D(const JacobiElement& a, const Int& level) {
    if (!a.lambda().is_integral() || !a.mu().is_integral() || !a.kappa().is_integral())
        return false;
    const RatMatrix& g = a.g();
    if (!g.is_integral()) return false;
    int n = a.degree();
    RatMatrix c = a.c();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!(c(i, j) / Rational(level)).is_integer()) return false;
    return true;
}

JacobiElement coset_canonical_rep(const JacobiElement& a, const Int& level) {
    if (a.degree() != 1)
        throw std::invalid_argument("coset_canonical_rep: degree 1 only");
    // clear denominators of g
    const RatMatrix& g = a.g();
    Int q(1);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) q = int_lcm(q, g(i, j).den());
    RatMatrix M = g.scaled(Rational(q));
    HnfResult hnf = sl2_row_hnf(M);
    RatMatrix u0 = hnf.U;
    if (level > 1) {
        // Gamma_0(level)-coset tag of U^{-1} via its bottom row
        RatMatrix Uinv = hnf.U.inverse();
        auto tag = p1_canonical(Uinv(1, 0).num(), Uinv(1, 1).num(), level);
        RatMatrix w = p1_lift(tag.first, tag.second, level);
        u0 = w * hnf.U;  // in Gamma_0(level)
    }
    JacobiElement moved =
        compose(JacobiElement::from_symplectic(u0, a.index_size()), a);
    return heisenberg_reduce(moved);
}

std::string coset_key(const JacobiElement& a, const Int& level) {
    return coset_canonical_rep(a, level).str();
}

bool CosetSet::keys_distinct() const {
    std::set<std::string> s(canonical_keys.begin(), canonical_keys.end());
    return s.size() == canonical_keys.size();
}

bool CosetSet::contains_key(const std::string& key) const {
    return std::find(canonical_keys.begin(), canonical_keys.end(), key) !=
           canonical_keys.end();
}

CosetSet iwahori_coset_reps(const RatMatrix& xi, int l, const Int& level) {
    int n = xi.rows();
    CosetSet out;
    out.level = level;
    out.source = "D diag[xi~, xi] D, xi = " + xi.str() + ", level " + level.get_str();
    for (const RatMatrix& d : gl_coset_reps(xi)) {
        Int detd = d.det().abs().num();
        RatMatrix dinv = d.inverse();
        RatMatrix dtinv = d.transpose().inverse();

        // b over Sym_n(Z) / d^T Sym_n(Z) d
        std::vector<RatMatrix> bs;
        {
            Int index = Int(1);
            for (int i = 0; i < n + 1; ++i) index *= detd;
            Int box = detd * detd;
            std::vector<std::pair<int, int>> slots;
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) slots.emplace_back(i, j);
            RatMatrix b(n, n);
            std::function<bool(size_t)> rec = [&](size_t si) -> bool {
                if (static_cast<Int>(bs.size()) == index) return true;
                if (si == slots.size()) {
                    for (const RatMatrix& prev : bs) {
                        RatMatrix diff = dtinv * (b - prev) * dinv;
                        if (diff.is_integral()) return false;
                    }
                    bs.push_back(b);
                    return static_cast<Int>(bs.size()) == index;
                }
                auto [i, j] = slots[si];
                for (Int v = 0; v < box; ++v) {
                    b(i, j) = Rational(v);
                    b(j, i) = Rational(v);
                    if (rec(si + 1)) return true;
                }
                b(slots[si].first, slots[si].second) = Rational(0);
                b(slots[si].second, slots[si].first) = Rational(0);
                return false;
            };
            rec(0);
        }

        // mu over M_{l,n}(Z) d^{-1} / M_{l,n}(Z)
        std::vector<RatMatrix> mus;
        {
            Int index = Int(1);
            for (int i = 0; i < l; ++i) index *= detd;
            RatMatrix m(l, n);
            std::vector<std::pair<int, int>> slots;
            for (int i = 0; i < l; ++i)
                for (int j = 0; j < n; ++j) slots.emplace_back(i, j);
            std::function<bool(size_t)> rec = [&](size_t si) -> bool {
                if (static_cast<Int>(mus.size()) == index) return true;
                if (si == slots.size()) {
                    RatMatrix mu = m * dinv;
                    for (const RatMatrix& prev : mus) {
                        if ((mu - prev) .is_integral()) return false;
                    }
                    mus.push_back(mu);
                    return static_cast<Int>(mus.size()) == index;
                }
                for (Int v = 0; v < detd; ++v) {
                    m(slots[si].first, slots[si].second) = Rational(v);
                    if (rec(si + 1)) return true;
                }
                m(slots[si].first, slots[si].second) = Rational(0);
                return false;
            };
            rec(0);
        }

        for (const RatMatrix& b : bs)
            for (const RatMatrix& mu : mus) {
                RatMatrix gsym(2 * n, 2 * n);
                gsym.set_block(0, 0, dtinv);
                gsym.set_block(0, n, dtinv * b);
                gsym.set_block(n, n, d);
                JacobiElement rep =
                    compose(JacobiElement::heisenberg(RatMatrix(l, n), mu,
                                                      RatMatrix(l, l)),
                            JacobiElement::from_symplectic(gsym, l));
                out.reps.push_back(rep);
                out.canonical_keys.push_back(n == 1 ? coset_key(rep, level)
                                                    : rep.str());
            }
    }
    return out;
}

namespace {

// Exact closure of the left cosets of D sigma D under right multiplication
// by generators of D (degree 1).
CosetSet closure_coset_reps(const JacobiElement& sigma, int l, const Int& level,
                            const Int& canon_level, const std::string& label) {
    std::vector<JacobiElement> gens;
    RatMatrix T = RatMatrix::identity(2);
    T(0, 1) = Rational(1);
    RatMatrix Tl = RatMatrix::identity(2);
    Tl(1, 0) = Rational(level);
    gens.push_back(JacobiElement::from_symplectic(T, l));
    gens.push_back(JacobiElement::from_symplectic(T.inverse(), l));
    gens.push_back(JacobiElement::from_symplectic(Tl, l));
    gens.push_back(JacobiElement::from_symplectic(Tl.inverse(), l));
    if (level == 1) {
        RatMatrix W(2, 2);
        W(0, 1) = Rational(-1);
        W(1, 0) = Rational(1);
        gens.push_back(JacobiElement::from_symplectic(W, l));
        gens.push_back(JacobiElement::from_symplectic(W.inverse(), l));
    } else {
        // small-entry members of Gamma_0(level) to ensure full closure
        long B = 12;
        long lv = level.get_si();
        for (long c = -3 * lv; c <= 3 * lv; c += lv)
            for (long a = -B; a <= B; ++a)
                for (long d = -B; d <= B; ++d) {
                    long bc = a * d - 1;
                    if (c == 0) continue;
                    if (bc % c) continue;
                    long b = bc / c;
                    if (std::abs(b) > B) continue;
                    RatMatrix m(2, 2, {Rational(a), Rational(b), Rational(c),
                                       Rational(d)});
                    gens.push_back(JacobiElement::from_symplectic(m, l));
                }
        gens.push_back(JacobiElement::from_symplectic(
            RatMatrix(2, 2, {Rational(-1), Rational(0), Rational(0), Rational(-1)}),
            l));
    }
    for (int i = 0; i < l; ++i) {
        RatMatrix e(l, 1);
        e(i, 0) = Rational(1);
        gens.push_back(JacobiElement::heisenberg(e, RatMatrix(l, 1), RatMatrix(l, l)));
        gens.push_back(JacobiElement::heisenberg(-e, RatMatrix(l, 1), RatMatrix(l, l)));
        gens.push_back(JacobiElement::heisenberg(RatMatrix(l, 1), e, RatMatrix(l, l)));
        gens.push_back(JacobiElement::heisenberg(RatMatrix(l, 1), -e, RatMatrix(l, l)));
    }
    for (int i = 0; i < l; ++i)
        for (int j = i; j < l; ++j) {
            RatMatrix k(l, l);
            k(i, j) = Rational(1);
            k(j, i) = Rational(1);
            gens.push_back(
                JacobiElement::heisenberg(RatMatrix(l, 1), RatMatrix(l, 1), k));
        }

    CosetSet out;
    out.level = canon_level;
    out.source = label;
    std::map<std::string, JacobiElement> seen;
    std::deque<JacobiElement> queue;
    JacobiElement start = coset_canonical_rep(sigma, canon_level);
    seen.emplace(start.str(), start);
    queue.push_back(start);
    while (!queue.empty()) {
        JacobiElement cur = queue.front();
        queue.pop_front();
        for (const JacobiElement& g : gens) {
            JacobiElement next = coset_canonical_rep(compose(cur, g), canon_level);
            std::string key = next.str();
            if (seen.emplace(key, next).second) queue.push_back(next);
        }
    }
    for (const auto& [key, rep] : seen) {
        out.reps.push_back(rep);
        out.canonical_keys.push_back(key);
    }
    return out;
}

}  // namespace

CosetSet jacobi_coset_reps_deg1(const Int& p, int a, int l, const Int& level_N) {
    Int xi = 1;
    for (int i = 0; i < a; ++i) xi *= p;
    if (level_N % p == 0) {
        RatMatrix x(1, 1, {Rational(xi)});
        return iwahori_coset_reps(x, l, level_N);
    }
    if (level_N != 1)
        throw std::invalid_argument(
            "jacobi_coset_reps_deg1: level must be 1 or divisible by p");
    RatMatrix sig(2, 2);
    sig(0, 0) = Rational(Int(1), xi);
    sig(1, 1) = Rational(xi);
    JacobiElement sigma = JacobiElement::from_symplectic(sig, l);
    return closure_coset_reps(sigma, l, Int(1), Int(1),
                              "D diag[1/" + xi.get_str() + ", " + xi.get_str() +
                                  "] D, maximal level");
}

CosetSet mixed_coset_reps_deg1(const Int& p, int a, int l, const Int& level_left,
                               const Int& level_right) {
    Int xi = 1;
    for (int i = 0; i < a; ++i) xi *= p;
    RatMatrix sig(2, 2);
    sig(0, 0) = Rational(Int(1), xi);
    sig(1, 1) = Rational(xi);
    JacobiElement sigma = JacobiElement::from_symplectic(sig, l);
    return closure_coset_reps(sigma, l, level_right, level_left,
                              "D[" + level_left.get_str() + "] diag[1/" +
                                  xi.get_str() + ", " + xi.get_str() + "] D[" +
                                  level_right.get_str() + "]");
}

PointFunction apply_T_point(const PointFunction& f, const CosetSet& T,
                            const WeightIndex& wi, const CharacterModN& psi) {
    if (!psi.parity_matches(wi.k))
        throw std::domain_error("apply_T: character parity mismatch");
    return [f, &T, wi, psi](const JacobiPoint& z) -> cplx {
        cplx acc = 0;
        for (const auto& rep : T.reps) {
            int n = rep.degree();
            Rational deta = rep.g().block(0, 0, n, n).det();
            double weight = psi.eval_rational(deta);  // real character: inverse = self
            acc += weight * f(act(rep, z)) / factor_j(rep, z, wi);
        }
        return acc;
    };
}

FourierExpansion apply_T_expansion(const FourierExpansion& f, const CosetSet& T,
                                   const WeightIndex& wi, const CharacterModN& psi) {
    if (f.degree() != 1)
        throw std::invalid_argument("apply_T_expansion: degree 1 only");
    if (!psi.parity_matches(wi.k))
        throw std::domain_error("apply_T: character parity mismatch");
    int l = f.index_size();
    const RatMatrix& S = wi.S.mat();

    // Output truncation: a target t'' is reliable when, for every rep
    // (u, lambda), its source key lies within the input truncation. With
    // the index-S support bound |r|_2 <= 2 sqrt(smax t) on sources,
    //   t_src <= (sqrt(t''/u^2 + S[lambda] + smax |lambda|^2) + |lambda| sqrt(smax))^2,
    // so per rep the reliable range is
    //   t'' <= u^2 ((sqrt(T) - |lambda| sqrt(smax))^2 - S[lambda] - smax |lambda|^2).
    double Td = f.trunc().to_double();
    double smax = S.trace().to_double();
    double t_reliable = Td;
    for (const auto& rep : T.reps) {
        if (!rep.c().is_zero())
            throw std::invalid_argument("apply_T_expansion: reps must be triangular");
        double u = rep.g()(0, 0).to_double();
        double lam2 = 0, Slam_quad = S.quad(rep.lambda())(0, 0).to_double();
        for (int i = 0; i < l; ++i) {
            double x = rep.lambda()(i, 0).to_double();
            lam2 += x * x;
        }
        double root = std::sqrt(std::max(0.0, Td)) - std::sqrt(lam2 * smax);
        double cap = u * u * (std::max(0.0, root * root) - Slam_quad - smax * lam2);
        t_reliable = std::min(t_reliable, cap);
    }
    Rational T_out(static_cast<long>(std::max(0.0, std::floor(t_reliable))));

    std::map<FourierKey, RootOfUnitySum> acc;
    Int denom_t(1), denom_r(1);
    for (const auto& rep : T.reps) {
        Rational u = rep.g()(0, 0);
        Rational v = rep.g()(0, 1);
        Rational u_povk = u.pow(wi.k);
        int n = rep.degree();
        Rational deta = rep.g().block(0, 0, n, n).det();
        Rational weight = Rational(psi.eval_rational(deta)) * u_povk;
        const RatMatrix& lam = rep.lambda();
        const RatMatrix& mu = rep.mu();
        RatMatrix Slam2 = (S * lam).scaled(Rational(2));
        Rational Slam = S.quad(lam)(0, 0);
        Rational kappa_tr = (S * rep.kappa()).trace();
        for (const auto& [key, c] : f.coeffs()) {
            Rational t = key.t(0, 0);
            Rational rl = (key.r.transpose() * lam)(0, 0);
            Rational t2 = (t + rl + Slam) * u * u;
            RatMatrix r2 = (key.r + Slam2).scaled(u);
            if (t2 > T_out) continue;
            Rational phase = t2 * (v / u) + (key.r.transpose() * mu)(0, 0) + kappa_tr;
            RatMatrix tmat(1, 1, {t2});
            acc[FourierKey{tmat, r2}].add(phase, c * weight);
            denom_t = int_lcm(denom_t, t2.den());
            for (int i = 0; i < l; ++i) denom_r = int_lcm(denom_r, r2(i, 0).den());
        }
    }
    FourierExpansion out(1, l, f.twice_weight(), f.index(), T_out, denom_t, denom_r,
                         f.level_b(), f.level_N());
    for (auto& [key, sum] : acc) {
        Rational val = sum.reduce_to_rational();
        if (!val.is_zero()) out.add_coeff(key.t, key.r, val);
    }
    return out;
}

bool bad_closure_check(const CosetSet& T1, const CosetSet& T2,
                       const CosetSet& product_family) {
    for (const auto& a : T1.reps)
        for (const auto& b : T2.reps) {
            std::string key = coset_key(compose(a, b), product_family.level);
            if (!product_family.contains_key(key)) return false;
        }
    return true;
}

SatakeMonomial satake_omega(const RatMatrix& d, const Int& q) {
    int n = d.rows();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!d(j, i).is_zero())
                throw std::invalid_argument("satake_omega: d must be upper triangular");
    SatakeMonomial m;
    m.coeff = Rational(1);
    for (int i = 0; i < n; ++i) {
        Rational di = d(i, i).abs();
        if (di.is_zero()) throw std::invalid_argument("satake_omega: singular d");
        long e = 0;
        Rational v = di;
        while (v != Rational(1)) {
            if (v.is_integer() && (v / Rational(q)).is_integer()) {
                v /= Rational(q);
                ++e;
            } else if (!v.is_integer() && (v * Rational(q)).den() < v.den()) {
                v *= Rational(q);
                --e;
            } else {
                throw std::domain_error("satake_omega: diagonal not a power of q");
            }
        }
        m.exps.push_back(static_cast<int>(e));
        m.coeff *= Rational(Int(1), q).pow(static_cast<long>(i + 1) * e);
    }
    return m;
}

std::map<std::vector<int>, Rational> satake_omega_sum(const CosetSet& T,
                                                      const Int& q) {
    std::map<std::vector<int>, Rational> out;
    for (const auto& rep : T.reps) {
        int n = rep.degree();
        RatMatrix d = rep.g().block(n, n, n, n);
        SatakeMonomial m = satake_omega(d, q);
        out[m.exps] += m.coeff;
    }
    return out;
}

EigenvalueResult eigenvalue_extract(const PointFunction& f, const PointFunction& Tf,
                                    const std::vector<JacobiPoint>& points) {
    std::vector<cplx> ratios;
    for (const auto& z : points) {
        cplx fz = f(z);
        if (std::abs(fz) < 1e-12) continue;
        ratios.push_back(Tf(z) / fz);
    }
    if (ratios.empty())
        throw std::domain_error("eigenvalue_extract: f vanishes at all probe points");
    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        size_t m = v.size() / 2;
        return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
    };
    std::vector<double> re, im;
    for (cplx r : ratios) {
        re.push_back(r.real());
        im.push_back(r.imag());
    }
    EigenvalueResult out;
    out.lambda = cplx(median(re), median(im));
    out.residual = 0;
    for (cplx r : ratios)
        out.residual =
            std::max(out.residual, std::abs(r - out.lambda) / std::abs(out.lambda));
    return out;
}

}  // namespace sjf
