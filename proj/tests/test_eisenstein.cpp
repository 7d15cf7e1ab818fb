#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sjf/eisenstein.hpp"

using namespace sjf;

namespace {

double rel(cplx a, cplx b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-30});
}

}  // namespace

TEST_CASE("siegel cosets: base example, determinism, density") {
    auto cs = siegel_cosets_deg1(Int(1), 1);
    REQUIRE(cs.size() == 4);
    CHECK(cs[0] == std::make_pair(0L, 1L));
    std::set<std::pair<long, long>> got(cs.begin(), cs.end());
    std::set<std::pair<long, long>> want = {{0, 1}, {1, 0}, {1, 1}, {1, -1}};
    CHECK(got == want);

    // (c,d) = (0,1) completes to the identity
    CHECK(complete_coset(0, 1) == RatMatrix::identity(2));

    // completions are determinant-1 with the declared bottom row
    std::mt19937_64 rng(5);
    for (auto [c, d] : siegel_cosets_deg1(Int(1), 9)) {
        RatMatrix g = complete_coset(c, d);
        CHECK(g.det() == Rational(1));
        CHECK(g(1, 0) == Rational(c));
        CHECK(g(1, 1) == Rational(d));
    }

    // density: sign-normalized coprime pairs approach (1/2)(6/pi^2)(2B)^2
    // (the unnormalized pair count is the spec's (6/pi^2)(2B)^2)
    int B = 50;
    auto big = siegel_cosets_deg1(Int(1), B);
    double expect = 0.5 * (6.0 / (M_PI * M_PI)) * (2.0 * B) * (2.0 * B);
    CHECK(std::abs(static_cast<double>(big.size()) - expect) < 0.2 * expect);

    // level 2: c even only
    for (auto [c, d] : siegel_cosets_deg1(Int(2), 8)) CHECK(c % 2 == 0);
}

TEST_CASE("theta_SL against brute force and theta0 special value") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> re(-0.7, 0.7), im(0.4, 1.5);
    for (int t = 0; t < 10; ++t) {
        cplx tau(re(rng), im(rng));
        CMat w(1, 1);
        w(0, 0) = cplx(0.3 * re(rng), 0.3 * re(rng));
        SymMatrix S = SymMatrix::scalar(1, Rational(1 + (t % 2)));
        cplx fast = theta_SL(S, tau, w, 0);
        cplx brute = 0;
        double s11 = S(0, 0).to_double();
        for (long x = -60; x <= 60; ++x)
            brute += e2pi(s11 * static_cast<double>(x * x) * tau +
                          2.0 * s11 * static_cast<double>(x) * w(0, 0));
        CHECK(rel(fast, brute) < 1e-12);
    }

    // l=2 brute force
    SymMatrix S2(RatMatrix(2, 2, {Rational(1), Rational(0), Rational(0), Rational(2)}));
    cplx tau(0.3, 0.9);
    CMat w2(2, 1);
    w2(0, 0) = cplx(0.1, 0.05);
    w2(1, 0) = cplx(-0.2, 0.1);
    cplx fast2 = theta_SL(S2, tau, w2, 0);
    cplx brute2 = 0;
    for (long x1 = -40; x1 <= 40; ++x1)
        for (long x2 = -40; x2 <= 40; ++x2) {
            double q = 1.0 * x1 * x1 + 2.0 * x2 * x2;
            cplx lin = 2.0 * (1.0 * x1 * w2(0, 0) + 2.0 * x2 * w2(1, 0));
            brute2 += e2pi(q * tau + lin);
        }
    CHECK(rel(fast2, brute2) < 1e-12);

    // Theta_0(i) = pi^{1/4} / Gamma(3/4)
    cplx v = theta0(cplx(0, 1));
    double expect = std::pow(M_PI, 0.25) / 1.2254167024651776451;
    CHECK(std::abs(v - expect) < 1e-12);
}

TEST_CASE("eval_E: constant-term limit and self-convergence") {
    EisensteinSpec spec;
    spec.k = 4;
    spec.set_s_default();
    spec.B_cd = 100;

    // Im tau large: E -> 1
    JacobiPoint z10 = JacobiPoint::base_point(1, 1);
    z10.tau(0, 0) = cplx(0, 10.0);
    EisResult r10 = eval_E(spec, z10);
    CHECK(std::abs(r10.value - 1.0) < 1e-3);

    // k=4, z=(2i, 0): bounds B=100, 200 agree to 1e-6
    JacobiPoint z2 = JacobiPoint::base_point(1, 1);
    z2.tau(0, 0) = cplx(0, 2.0);
    EisResult a = eval_E(spec, z2);
    spec.B_cd = 200;
    EisResult b = eval_E(spec, z2, 2);
    CHECK(std::abs(a.value - b.value) < 1e-6);
    CHECK(b.error_proxy < 1e-6);

    // l = 2 smoke: E -> 1 at large Im
    EisensteinSpec spec2;
    spec2.k = 6;
    spec2.S = SymMatrix(RatMatrix(2, 2, {Rational(1), Rational(0), Rational(0),
                                         Rational(1)}));
    spec2.set_s_default();
    spec2.B_cd = 60;
    JacobiPoint zl2;
    zl2.tau = CMat(1, 1);
    zl2.tau(0, 0) = cplx(0, 8.0);
    zl2.w = CMat(2, 1);
    EisResult rl2 = eval_E(spec2, zl2);
    CHECK(std::abs(rl2.value - 1.0) < 1e-2);

    // convergence precondition: k = 2 at s = k/2 violates Re(2s) > 3
    EisensteinSpec bad;
    bad.k = 2;
    bad.set_s_default();
    CHECK_THROWS_AS(eval_E(bad, z2), std::domain_error);
}

TEST_CASE("eval_E numeric modularity at the generators") {
    EisensteinSpec spec;
    spec.k = 4;
    spec.set_s_default();
    spec.B_cd = 100;
    WeightIndex wi;
    wi.k = spec.k;
    wi.S = spec.S;

    JacobiPoint z = JacobiPoint::base_point(1, 1);
    z.tau(0, 0) = cplx(0.0, 1.9);
    z.w(0, 0) = cplx(0.15, 0.1);
    cplx Ez = eval_E(spec, z, 2).value;

    RatMatrix T = RatMatrix::identity(2);
    T(0, 1) = Rational(1);
    RatMatrix W(2, 2);
    W(0, 1) = Rational(-1);
    W(1, 0) = Rational(1);
    RatMatrix one(1, 1, {Rational(1)});
    RatMatrix zero(1, 1);
    std::vector<JacobiElement> gens = {
        JacobiElement::from_symplectic(T, 1), JacobiElement::from_symplectic(W, 1),
        JacobiElement::heisenberg(one, zero, zero),
        JacobiElement::heisenberg(zero, one, zero),
        JacobiElement::heisenberg(zero, zero, one)};
    for (const auto& g : gens) {
        cplx lhs = eval_E(spec, act(g, z), 2).value / factor_j(g, z, wi);
        CHECK(rel(lhs, Ez) < 1e-7);
    }
}

TEST_CASE("summand theta split") {
    EisensteinSpec spec;
    spec.k = 6;
    spec.set_s_default();

    JacobiPoint z = JacobiPoint::base_point(1, 1);
    z.tau(0, 0) = cplx(0.3, 1.4);
    z.w(0, 0) = cplx(0.2, 0.1);

    // gamma = identity: lhs = rhs = delta^{s-k/2} Theta
    ThetaSplitResult rid = summand_theta_split(RatMatrix::identity(2), z, spec);
    CHECK(rid.rel_gap < 1e-14);
    cplx expect = theta_SL(spec.S, z.tau(0, 0), z.w, 0);
    CHECK(rel(rid.lhs, expect) < 1e-13);  // s = k/2 so the delta power is 1

    // gamma = translation by 2: h = 1 and both sides equal by periodicity
    RatMatrix T2 = RatMatrix::identity(2);
    T2(0, 1) = Rational(2);
    ThetaSplitResult rt = summand_theta_split(T2, z, spec);
    CHECK(rt.rel_gap < 1e-13);

    // random gamma from the split-compatible theta subgroup, 10 x 10
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> re(-0.6, 0.6), im(0.8, 2.0);
    for (int i = 0; i < 10; ++i) {
        RatMatrix g = random_theta_group_element(rng, 5);
        for (int j = 0; j < 10; ++j) {
            JacobiPoint p = JacobiPoint::base_point(1, 1);
            p.tau(0, 0) = cplx(re(rng), im(rng));
            p.w(0, 0) = cplx(0.4 * re(rng), 0.3 * re(rng));
            ThetaSplitResult r = summand_theta_split(g, p, spec);
            CHECK(r.rel_gap < 1e-7);
        }
    }
}

TEST_CASE("klingen constructor degenerates to the inducing form at r = n") {
    EisensteinSpec spec;
    spec.k = 8;
    spec.set_s_default();
    PointFunction f = [](const JacobiPoint& p) {
        return e2pi(p.tau(0, 0)) + 0.25 * e2pi(2.0 * p.tau(0, 0) + p.w(0, 0));
    };
    std::vector<JacobiElement> cosets = {JacobiElement::identity(1, 1)};
    RandomJacobi rj(3);
    for (int t = 0; t < 5; ++t) {
        JacobiPoint z = rj.point(1, 1);
        CHECK(rel(klingen_eval_deg1(f, 1, cosets, spec, z), f(z)) < 1e-12);
    }
}

TEST_CASE("apply_T representative independence against the Eisenstein series") {
    // with a genuinely modular evaluator, arbitrary D-twists of the
    // representatives leave f|T unchanged
    EisensteinSpec spec;
    spec.k = 6;
    spec.set_s_default();
    spec.B_cd = 100;
    WeightIndex wi;
    wi.k = 6;
    wi.S = spec.S;
    CharacterModN triv = CharacterModN::trivial(Int(1));
    PointFunction E = [&spec](const JacobiPoint& z) { return eval_E(spec, z, 2).value; };

    CosetSet op = jacobi_coset_reps_deg1(Int(2), 1, 1, Int(1));
    CosetSet twisted = op;
    std::mt19937_64 rng(11);
    RandomJacobi rj(12);
    RatMatrix W(2, 2);
    W(0, 1) = Rational(-1);
    W(1, 0) = Rational(1);
    for (size_t i = 0; i < twisted.reps.size(); ++i) {
        JacobiElement d = JacobiElement::from_symplectic(W, 1);  // includes inversion
        if (i % 2) {
            RatMatrix T = RatMatrix::identity(2);
            T(0, 1) = Rational(1 + static_cast<long>(i % 3));
            d = compose(d, JacobiElement::from_symplectic(T, 1));
        }
        twisted.reps[i] = compose(d, twisted.reps[i]);
    }
    PointFunction a = apply_T_point(E, op, wi, triv);
    PointFunction b = apply_T_point(E, twisted, wi, triv);
    JacobiPoint z = JacobiPoint::base_point(1, 1);
    z.tau(0, 0) = cplx(0.0, 2.1);
    z.w(0, 0) = cplx(0.1, 0.05);
    cplx va = a(z), vb = b(z);
    CHECK(rel(va, vb) < 1e-7);
}

TEST_CASE("euler verification smoke run (reduced bound)" * doctest::timeout(600)) {
    EulerVerifyReport rep = hecke_euler_verify(6, Int(2), 80, 4, 1e-3);
    CHECK(rep.residual_p < 1e-3);
    // mu should be near p^{k-3/2} = 2^{4.5}
    CHECK(std::abs(std::abs(rep.mu) - std::pow(2.0, 4.5)) < 0.5);
    CHECK(rep.rel_gap < 5e-3);
}
