#include "sjf/eisenstein.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "sjf/lfunction.hpp"

namespace sjf {

namespace {

long iround(double x) { return static_cast<long>(std::llround(x)); }

// adaptive lattice range so that dropped terms are below exp(-46)
double range_radius(double quad_coeff) {
    return std::sqrt(46.0 / (2.0 * M_PI * quad_coeff)) + 1.0;
}

// Log-scale accumulator: value = acc * exp(scale). Terms are added by their
// complex logarithm, so magnitudes far outside the double range are fine.
class ScaledSum {
public:
    void add_log(cplx log_term) {
        double lr = log_term.real();
        if (std::isinf(lr) && lr < 0) return;  // zero term
        if (empty_) {
            scale_ = lr;
            acc_ = std::exp(cplx(0.0, log_term.imag()));
            empty_ = false;
            return;
        }
        if (lr > scale_ + 40.0) {
            acc_ = acc_ * std::exp(scale_ - lr) +
                   std::exp(cplx(0.0, log_term.imag()));
            scale_ = lr;
        } else {
            acc_ += std::exp(cplx(lr - scale_, log_term.imag()));
        }
        // keep the mantissa in a sane range
        double m = std::abs(acc_);
        if (m > 1e120 || (m != 0.0 && m < 1e-120)) {
            scale_ += std::log(m);
            acc_ /= m;
        }
    }
    bool empty() const { return empty_; }
    cplx log_value() const {
        if (empty_ || acc_ == cplx(0.0))
            return cplx(-std::numeric_limits<double>::infinity(), 0.0);
        return cplx(scale_, 0.0) + std::log(acc_);
    }
    cplx value() const { return empty_ ? cplx(0.0) : acc_ * std::exp(scale_); }

private:
    cplx acc_{0.0};
    double scale_ = 0.0;
    bool empty_ = true;
};

}  // namespace

std::vector<std::pair<long, long>> siegel_cosets_deg1(const Int& N, int B) {
    std::vector<std::pair<long, long>> out;
    out.emplace_back(0, 1);
    long n = N.get_si();
    for (long c = n; c <= B; c += n)
        for (long d = -B; d <= B; ++d)
            if (int_gcd(Int(c), Int(d)) == 1) out.emplace_back(c, d);
    return out;
}

RatMatrix complete_coset(long c, long d) {
    if (c == 0) {
        if (d != 1 && d != -1)
            throw std::invalid_argument("complete_coset: (0, d) needs d = +-1");
        return d == 1 ? RatMatrix::identity(2)
                      : RatMatrix(2, 2, {Rational(-1), Rational(0), Rational(0),
                                         Rational(-1)});
    }
    Int g, x, y;
    ext_gcd(Int(c), Int(d), g, x, y);
    if (g != 1) throw std::invalid_argument("complete_coset: gcd(c, d) != 1");
    // a = y, b = -x solves a d - b c = 1; minimize |a| over a + t c.
    Int a = y, cc = ::abs(Int(c));
    Int r = int_fmod(a, cc);  // in [0, |c|)
    // map into (-|c|/2, |c|/2], ties -> the smaller (negative) value
    if (2 * r > cc)
        r -= cc;
    else if (2 * r == cc)
        r = -r;
    a = r;
    Int b = (a * Int(d) - 1) / Int(c);
    return RatMatrix(2, 2, {Rational(a), Rational(b), Rational(c), Rational(d)});
}

namespace {

// 2 pi i times the quadratic exponent of the theta term.
inline cplx theta_term_arg_1d(double s11, cplx tau, cplx w0, double x) {
    return cplx(0, 2 * M_PI) * (s11 * x * x * tau + 2.0 * s11 * x * w0);
}

}  // namespace

cplx theta_SL_log(const SymMatrix& S, cplx tau, const CMat& w, int B_lam) {
    int l = S.dim();
    double y = tau.imag();
    if (y <= 0) throw std::domain_error("theta_SL: Im tau <= 0");
    if (l == 1) {
        double s11 = S(0, 0).to_double();
        cplx w0 = w(0, 0);
        double center = -w0.imag() / y;
        double R = range_radius(s11 * y);
        long lo = iround(center - R), hi = iround(center + R);
        if (B_lam > 0) {
            lo = std::max(lo, -static_cast<long>(B_lam));
            hi = std::min(hi, static_cast<long>(B_lam));
        }
        if (lo > hi) return cplx(-std::numeric_limits<double>::infinity(), 0.0);
        long c0 = std::min(hi, std::max(lo, iround(center)));
        double M = theta_term_arg_1d(s11, tau, w0, static_cast<double>(c0)).real();
        // centered two-sided recurrence on the peak-scaled terms:
        // t(x+1) = t(x) * C D^x with log C = 2 pi i s11 (tau + 2 w),
        // log D = 4 pi i s11 tau; the anchor ratios are assembled in
        // argument space so that C, D^{c0} never over/underflow separately.
        cplx logD = cplx(0, 4 * M_PI) * s11 * tau;
        cplx logC = cplx(0, 2 * M_PI) * s11 * (tau + 2.0 * w0);
        cplx D = std::exp(logD);
        cplx t0 = std::exp(theta_term_arg_1d(s11, tau, w0,
                                             static_cast<double>(c0)) -
                           M);
        cplx acc = 0;
        {
            cplx t = t0;
            cplx up = std::exp(logC + static_cast<double>(c0) * logD);
            for (long x = c0; x <= hi; ++x) {
                acc += t;
                t *= up;
                up *= D;
            }
        }
        {
            // downward: t(x-1) = t(x) * exp(-(log C + (x-1) log D))
            cplx t = t0;
            cplx dn_inv = std::exp(-(logC + static_cast<double>(c0 - 1) * logD));
            for (long x = c0 - 1; x >= lo; --x) {
                t *= dn_inv;
                dn_inv *= D;  // -(x-1) log D steps toward -(x-2) log D
                acc += t;
            }
        }
        if (acc == cplx(0.0))
            return cplx(-std::numeric_limits<double>::infinity(), 0.0);
        return M + std::log(acc);
    }
    if (l == 2) {
        double lam_min = CMat::from_rational(S.mat()).symmetric_min_eigenvalue();
        double c1 = -w(0, 0).imag() / y, c2 = -w(1, 0).imag() / y;
        double R = range_radius(lam_min * y);
        long lo1 = iround(c1 - R), hi1 = iround(c1 + R);
        long lo2 = iround(c2 - R), hi2 = iround(c2 + R);
        if (B_lam > 0) {
            lo1 = std::max(lo1, -static_cast<long>(B_lam));
            hi1 = std::min(hi1, static_cast<long>(B_lam));
            lo2 = std::max(lo2, -static_cast<long>(B_lam));
            hi2 = std::min(hi2, static_cast<long>(B_lam));
        }
        double s11 = S(0, 0).to_double(), s12 = S(0, 1).to_double(),
               s22 = S(1, 1).to_double();
        auto arg = [&](double x1, double x2) {
            cplx q = (s11 * x1 * x1 + 2 * s12 * x1 * x2 + s22 * x2 * x2) * tau;
            cplx lin = 2.0 * (x1 * (s11 * w(0, 0) + s12 * w(1, 0)) +
                              x2 * (s12 * w(0, 0) + s22 * w(1, 0)));
            return cplx(0, 2 * M_PI) * (q + lin);
        };
        double M = arg(std::clamp(static_cast<double>(iround(c1)),
                                  static_cast<double>(lo1),
                                  static_cast<double>(hi1)),
                       std::clamp(static_cast<double>(iround(c2)),
                                  static_cast<double>(lo2),
                                  static_cast<double>(hi2)))
                       .real();
        cplx acc = 0;
        for (long x1 = lo1; x1 <= hi1; ++x1)
            for (long x2 = lo2; x2 <= hi2; ++x2) {
                cplx a = arg(static_cast<double>(x1), static_cast<double>(x2)) - M;
                if (a.real() < -60.0) continue;
                acc += std::exp(a);
            }
        if (acc == cplx(0.0))
            return cplx(-std::numeric_limits<double>::infinity(), 0.0);
        return M + std::log(acc);
    }
    throw std::invalid_argument("theta_SL: l <= 2 only");
}

cplx theta_SL(const SymMatrix& S, cplx tau, const CMat& w, int B_lam) {
    cplx lg = theta_SL_log(S, tau, w, B_lam);
    if (std::isinf(lg.real()) && lg.real() < 0) return cplx(0.0);
    return std::exp(lg);
}

cplx theta0(cplx tau) {
    CMat w0(1, 1);
    return theta_SL(SymMatrix::scalar(1, Rational(1, 2)), tau, w0, 0);
}

cplx eval_E_log(const EisensteinSpec& spec, const JacobiPoint& z, int jobs,
                double* rel_proxy) {
    if (!spec.convergence_ok())
        throw std::domain_error("eval_E: Re(2s) must exceed n + r + l + 1");
    if (!point_in_domain(z)) throw std::domain_error("eval_E: point not in domain");
    if (!spec.chi.parity_matches(spec.k))
        throw std::domain_error("eval_E: chi(-1) != (-1)^k");
    cplx tau = z.tau(0, 0);
    double x0 = tau.real(), y0 = tau.imag();
    CMat Sc = CMat::from_rational(spec.S.mat());
    cplx Sw = (z.w.transpose() * Sc * z.w)(0, 0);  // S[w], scalar for n = 1
    int B = spec.B_cd;
    long n = spec.N.get_si();
    cplx spow = spec.s - spec.k / 2.0;

    // per-row log-terms, gathered in a fixed order for determinism
    std::vector<long> cs;
    for (long c = n; c <= B; c += n) cs.push_back(c);
    struct Term {
        cplx log;
        bool in_half;
    };
    std::vector<std::vector<Term>> rows(cs.size());

    auto work = [&](size_t begin, size_t end) {
        for (size_t ci = begin; ci < end; ++ci) {
            long c = cs[ci];
            long dc = iround(-c * x0);
            auto& out = rows[ci];
            for (long off = -B; off <= B; ++off) {
                long d = dc + off;
                if (int_gcd(Int(c), Int(d)) != 1) continue;
                int chifac = spec.chi(Int(d));
                if (chifac == 0) continue;
                RatMatrix g = complete_coset(c, d);
                cplx j = static_cast<double>(c) * tau + static_cast<double>(d);
                cplx jinv = 1.0 / j;
                cplx tprime = (g(0, 0).to_double() * tau + g(0, 1).to_double()) * jinv;
                CMat wprime = z.w.scaled(jinv);
                cplx lg = -static_cast<double>(spec.k) * std::log(j) +
                          spow * std::log(y0 / std::norm(j)) +
                          cplx(0, 2 * M_PI) * (-Sw * static_cast<double>(c) * jinv) +
                          theta_SL_log(spec.S, tprime, wprime, spec.B_lam);
                if (chifac < 0) lg += cplx(0.0, M_PI);
                out.push_back({lg, 2 * c <= B && 2 * std::abs(off) <= B});
            }
        }
    };
    int threads = std::max(1, jobs);
    if (threads == 1 || cs.size() < 8) {
        work(0, cs.size());
    } else {
        std::vector<std::thread> pool;
        size_t chunk = (cs.size() + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            size_t b = std::min(cs.size(), static_cast<size_t>(t) * chunk);
            size_t e = std::min(cs.size(), b + chunk);
            if (b < e) pool.emplace_back(work, b, e);
        }
        for (auto& th : pool) th.join();
    }

    ScaledSum full, half;
    // row c = 0: identity coset
    cplx row0 = spow * std::log(y0) + theta_SL_log(spec.S, tau, z.w, spec.B_lam);
    full.add_log(row0);
    half.add_log(row0);
    for (const auto& row : rows)
        for (const auto& t : row) {
            full.add_log(t.log);
            if (t.in_half) half.add_log(t.log);
        }
    cplx lg = full.log_value();
    if (rel_proxy) {
        cplx diff = half.log_value() - lg;
        *rel_proxy = std::abs(1.0 - std::exp(diff));
    }
    return lg;
}

EisResult eval_E(const EisensteinSpec& spec, const JacobiPoint& z, int jobs) {
    double rel = 0;
    cplx lg = eval_E_log(spec, z, jobs, &rel);
    cplx value = std::isinf(lg.real()) && lg.real() < 0 ? cplx(0.0) : std::exp(lg);
    return {value, std::abs(value) * rel};
}

PointFunction slashed_E_sum(const EisensteinSpec& spec, const CosetSet& T,
                            const CharacterModN& psi, int jobs) {
    if (!psi.parity_matches(spec.k))
        throw std::domain_error("slashed_E_sum: character parity mismatch");
    WeightIndex wi;
    wi.k = spec.k;
    wi.S = spec.S;
    return [spec, &T, psi, wi, jobs](const JacobiPoint& z) -> cplx {
        ScaledSum acc;
        for (const auto& rep : T.reps) {
            int n = rep.degree();
            Rational deta = rep.g().block(0, 0, n, n).det();
            int weight = psi.eval_rational(deta);
            if (weight == 0) continue;
            cplx lg = eval_E_log(spec, act(rep, z), jobs) -
                      factor_j_log(rep, z, wi);
            if (weight < 0) lg += cplx(0.0, M_PI);
            acc.add_log(lg);
        }
        return acc.value();
    };
}

ThetaSplitResult summand_theta_split(const RatMatrix& gamma, const JacobiPoint& z,
                                     const EisensteinSpec& spec) {
    if (spec.S.dim() != 1)
        throw std::invalid_argument("summand_theta_split: l = 1 only");
    cplx tau = z.tau(0, 0);
    double c = gamma(1, 0).to_double(), d = gamma(1, 1).to_double();
    cplx j = c * tau + d;
    cplx tprime = (gamma(0, 0).to_double() * tau + gamma(0, 1).to_double()) / j;
    CMat wprime = z.w.scaled(1.0 / j);
    cplx theta_here = theta_SL(spec.S, tprime, wprime, spec.B_lam);
    if (std::abs(theta_here) < 1e-12)
        throw std::domain_error("summand_theta_split: theta vanishes at probe point");
    double s11 = spec.S(0, 0).to_double();
    cplx Sw = s11 * z.w(0, 0) * z.w(0, 0);
    cplx efac = e2pi(-Sw * c / j);
    cplx delta_pow = std::pow(tau.imag() / std::norm(j), spec.s - spec.k / 2.0);
    double chifac = spec.chi(Int(static_cast<long>(d)));
    CharacterModN psiS = psi_S_character(spec.S);
    double phifac = chifac * psiS(Int(static_cast<long>(d)));

    cplx lhs = chifac * std::pow(j, -spec.k) * delta_pow * efac * theta_here;
    cplx h = theta0(tprime) / theta0(tau);
    cplx rhs = phifac * std::pow(j, -spec.k) * std::sqrt(j) * delta_pow / h * efac *
               theta_here;
    ThetaSplitResult out;
    out.lhs = lhs;
    out.rhs = rhs;
    out.rel_gap = std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-30});
    return out;
}

RatMatrix random_theta_group_element(std::mt19937_64& rng, int factors) {
    // Words in T^2 and the lower translation by 2 (the free part of the
    // theta group {b, c even}), restricted to the split-compatible part:
    // the standard theta multiplier equals psi_S(d) (cd + d)^{1/2} exactly
    // when d == 1 mod 4 and the Kronecker symbol (c/d) is 1, which is the
    // explicit form of the deep-subgroup condition under which the
    // per-summand rewriting applies.
    RatMatrix T2 = RatMatrix::identity(2);
    T2(0, 1) = Rational(2);
    RatMatrix V2 = RatMatrix::identity(2);
    V2(1, 0) = Rational(2);
    std::uniform_int_distribution<int> pick(0, 3);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        RatMatrix g = RatMatrix::identity(2);
        for (int i = 0; i < factors; ++i) {
            switch (pick(rng)) {
                case 0: g = g * T2; break;
                case 1: g = g * T2.inverse(); break;
                case 2: g = g * V2; break;
                default: g = g * V2.inverse(); break;
            }
        }
        Int c = g(1, 0).num(), d = g(1, 1).num();
        if (int_fmod(d, Int(4)) != 1) continue;
        if (c != 0 && kronecker_symbol(c, d) != 1) continue;
        return g;
    }
    throw std::runtime_error("random_theta_group_element: sampling failed");
}

cplx klingen_eval_deg1(const PointFunction& f, int r,
                       const std::vector<JacobiElement>& cosets,
                       const EisensteinSpec& spec, const JacobiPoint& z) {
    if (!spec.convergence_ok(r))
        throw std::domain_error("klingen_eval: convergence bound violated");
    WeightIndex wi;
    wi.k = spec.k;
    wi.S = spec.S;
    cplx acc = 0;
    for (const auto& gamma : cosets) {
        JacobiPoint gz = act(gamma, z);
        JacobiPoint oz = omega_r(gz, r);
        double dfull = gz.tau.imag_part().det().real();
        double dproj = oz.tau.imag_part().det().real();
        int n = gamma.degree();
        double chifac = spec.chi(gamma.d().block(n - 1, n - 1, 1, 1)(0, 0).num());
        acc += chifac * std::pow(dfull / dproj, spec.s - spec.k / 2.0) * f(oz) /
               factor_j(gamma, z, wi);
    }
    return acc;
}

EulerVerifyReport hecke_euler_verify(int k, const Int& p, int B, int jobs,
                                     double eigen_tol) {
    if (k < 6 || k % 2)
        throw std::invalid_argument("hecke_euler_verify: k >= 6 even required");
    EisensteinSpec spec;
    spec.k = k;
    spec.S = SymMatrix::scalar(1, Rational(1));
    spec.N = 1;
    spec.chi = CharacterModN::trivial(Int(1));
    spec.set_s_default();
    spec.B_cd = B;

    WeightIndex wi;
    wi.k = k;
    wi.S = spec.S;
    CharacterModN triv = CharacterModN::trivial(Int(1));

    auto E_at = [&](int bound) {
        EisensteinSpec sp = spec;
        sp.B_cd = bound;
        return [sp, jobs](const JacobiPoint& z) { return eval_E(sp, z, jobs).value; };
    };

    std::vector<JacobiPoint> pts;
    const double taus[5][2] = {
        {0.0, 2.0}, {0.25, 2.2}, {-0.4, 2.5}, {0.15, 1.8}, {0.05, 2.8}};
    for (auto& td : taus) {
        JacobiPoint z;
        z.tau = CMat(1, 1);
        z.tau(0, 0) = cplx(td[0], td[1]);
        z.w = CMat(1, 1);
        z.w(0, 0) = cplx(0.10, 0.07);
        pts.push_back(z);
    }

    CosetSet Tp = jacobi_coset_reps_deg1(p, 1, 1, Int(1));
    CosetSet Tp2 = jacobi_coset_reps_deg1(p, 2, 1, Int(1));

    EulerVerifyReport rep;
    PointFunction E = E_at(B);
    EigenvalueResult e1 = eigenvalue_extract(E, slashed_E_sum(spec, Tp, triv, jobs), pts);
    rep.lambda_p = e1.lambda.real();
    rep.residual_p = e1.residual;
    rep.eigen_ok = e1.residual < eigen_tol;

    SatakeSolution sol = satake_solve_and_predict(rep.lambda_p, p);
    rep.mu = sol.mu;
    rep.predicted_lambda_p2 = sol.predicted_lambda_p2;

    EigenvalueResult e2 =
        eigenvalue_extract(E, slashed_E_sum(spec, Tp2, triv, jobs), pts);
    rep.measured_lambda_p2 = e2.lambda.real();
    rep.residual_p2 = e2.residual;
    rep.rel_gap = std::abs(rep.measured_lambda_p2 - rep.predicted_lambda_p2) /
                  std::abs(rep.predicted_lambda_p2);
    rep.gap_ok = rep.rel_gap < 1e-3;

    for (int bound : {B / 2, B, 2 * B}) {
        EisensteinSpec spb = spec;
        spb.B_cd = bound;
        PointFunction Eb = E_at(bound);
        EigenvalueResult eb =
            eigenvalue_extract(Eb, slashed_E_sum(spb, Tp, triv, jobs), pts);
        rep.ladder_B.push_back(bound);
        rep.ladder_residual.push_back(eb.residual);
    }
    rep.ladder_ok = rep.ladder_residual.size() == 3 &&
                    rep.ladder_residual[0] > rep.ladder_residual[1] &&
                    rep.ladder_residual[1] > rep.ladder_residual[2];
    return rep;
}

}  // namespace sjf
