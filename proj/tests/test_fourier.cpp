#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sjf/expansion_io.hpp"
#include "sjf/fourier.hpp"

using namespace sjf;

namespace {

RatMatrix m1(const Rational& v) { return RatMatrix(1, 1, {v}); }

FourierExpansion qseries(std::initializer_list<Rational> coeffs, Rational T) {
    FourierExpansion f(1, 1, 0, SymMatrix(RatMatrix(1, 1)), T);
    int i = 0;
    for (const auto& c : coeffs) {
        f.add_coeff(m1(Rational(i)), m1(Rational(0)), c);
        ++i;
    }
    return f;
}

}  // namespace

TEST_CASE("cusp support predicate") {
    SymMatrix S = SymMatrix::scalar(1, Rational(1));
    CHECK_FALSE(is_cusp_support(m1(Rational(1)), m1(Rational(1)), S));  // det 0
    CHECK(is_cusp_support(m1(Rational(2)), m1(Rational(1)), S));        // det 1
    CHECK_FALSE(is_cusp_support(m1(Rational(0)), m1(Rational(0)), S));  // semidefinite
}

TEST_CASE("cusp support implies t positive definite") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> d(-3, 3);
    SymMatrix S = SymMatrix::scalar(2, Rational(1));
    int hits = 0;
    for (int t = 0; t < 500; ++t) {
        RatMatrix tt(1, 1, {Rational(d(rng) + 4)});
        RatMatrix r(2, 1, {Rational(d(rng)), Rational(d(rng))});
        if (is_cusp_support(tt, r, S)) {
            CHECK(tt.is_positive_definite());
            ++hits;
        }
    }
    CHECK(hits > 0);
}

TEST_CASE("expansion arithmetic: unit, convolution, single terms") {
    Rational T(10);
    FourierExpansion f = qseries({Rational(1), Rational(3), Rational(-2)}, T);
    FourierExpansion one = FourierExpansion::one(1, 1, T);
    CHECK(f * one == f);
    CHECK(one * f == f);

    // (sum a_t q^t)(sum b_t q^t) matches 1-variable convolution
    FourierExpansion g = qseries({Rational(2), Rational(0), Rational(5)}, T);
    FourierExpansion prod = f * g;
    // coefficients: a = [1,3,-2], b = [2,0,5]; conv = [2,6,1,15,-10]
    std::vector<Rational> expect = {Rational(2), Rational(6), Rational(1),
                                    Rational(15), Rational(-10)};
    for (int i = 0; i < 5; ++i)
        CHECK(prod.coeff(m1(Rational(i)), m1(Rational(0))) == expect[static_cast<size_t>(i)]);

    // two single-term expansions: keys and exponents add
    FourierExpansion s1(1, 1, 4, SymMatrix::scalar(1, Rational(1)), T);
    s1.add_coeff(m1(Rational(2)), m1(Rational(1)), Rational(7));
    FourierExpansion s2(1, 1, 6, SymMatrix::scalar(1, Rational(2)), T);
    s2.add_coeff(m1(Rational(3)), m1(Rational(-1)), Rational(1, 2));
    FourierExpansion p = s1 * s2;
    CHECK(p.twice_weight() == 10);
    CHECK(p.index().mat() == m1(Rational(3)));
    CHECK(p.coeff(m1(Rational(5)), m1(Rational(0))) == Rational(7, 2));
}

TEST_CASE("expansion multiply commutative and associative up to truncation") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<long> d(-4, 4);
    Rational T(8);
    for (int trial = 0; trial < 20; ++trial) {
        auto rnd = [&] {
            FourierExpansion f(1, 1, 0, SymMatrix(RatMatrix(1, 1)), T);
            for (int i = 0; i < 5; ++i) {
                long t = (d(rng) + 4) % 5;
                f.add_coeff(m1(Rational(t)), m1(Rational(d(rng))), Rational(d(rng)));
            }
            return f;
        };
        FourierExpansion a = rnd(), b = rnd(), c = rnd();
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
    }
}

TEST_CASE("evaluate: empty, single key, linearity, translation") {
    Rational T(10);
    FourierExpansion empty(1, 1, 0, SymMatrix(RatMatrix(1, 1)), T);
    JacobiPoint z = JacobiPoint::base_point(1, 1);
    CHECK(std::abs(empty.evaluate(z).value) == 0.0);

    FourierExpansion single(1, 1, 0, SymMatrix(RatMatrix(1, 1)), T);
    single.add_coeff(m1(Rational(1)), m1(Rational(0)), Rational(3));
    cplx v = single.evaluate(z).value;
    CHECK(std::abs(v - 3.0 * std::exp(-2 * M_PI)) < 1e-15);

    // linearity
    FourierExpansion f = qseries({Rational(1), Rational(2)}, T);
    FourierExpansion g = qseries({Rational(0), Rational(5), Rational(1)}, T);
    cplx sum = (f + g).evaluate(z).value;
    CHECK(std::abs(sum - (f.evaluate(z).value + g.evaluate(z).value)) < 1e-14);

    // translation equivariance: value at (tau + b) equals sum with e(t b) twists
    FourierExpansion h = qseries({Rational(1), Rational(-4), Rational(2)}, T);
    JacobiPoint zb = z;
    zb.tau(0, 0) += 1.0;  // integer shift: e(t) = 1 for integral t
    CHECK(std::abs(h.evaluate(zb).value - h.evaluate(z).value) < 1e-14);
}

TEST_CASE("petersson weight") {
    WeightIndex wi;
    wi.k = 3;
    wi.S = SymMatrix::scalar(1, Rational(1));

    // w real: Delta = det(y)^k
    JacobiPoint z;
    z.tau = CMat(1, 1);
    z.tau(0, 0) = cplx(0.3, 2.0);
    z.w = CMat(1, 1);
    z.w(0, 0) = 0.7;
    CHECK(std::abs(petersson_weight(z, wi) - std::pow(2.0, 3)) < 1e-12);

    // n=l=1, S=1, tau=i, w=i: Delta = e^{-4 pi}
    JacobiPoint zi = JacobiPoint::base_point(1, 1);
    zi.w(0, 0) = cplx(0, 1);
    wi.k = 5;
    CHECK(std::abs(petersson_weight(zi, wi) - std::exp(-4 * M_PI)) < 1e-15);
}

TEST_CASE("expansion JSON round trip is byte identical") {
    FourierExpansion f(1, 2, 13, SymMatrix(RatMatrix(2, 2,
                      {Rational(1), Rational(1, 2), Rational(1, 2), Rational(1)})),
                      Rational(6), 4, 2, Rational(1), 1);
    f.add_coeff(RatMatrix(1, 1, {Rational(1, 4)}),
                RatMatrix(2, 1, {Rational(1, 2), Rational(0)}), Rational(-3, 7));
    f.add_coeff(RatMatrix(1, 1, {Rational(2)}),
                RatMatrix(2, 1, {Rational(1), Rational(1)}), Rational(5));
    std::string text = expansion_to_json(f);
    FourierExpansion g = expansion_from_json(text);
    CHECK(g == f);
    CHECK(expansion_to_json(g) == text);
    CHECK(text.find("expansion/v1") != std::string::npos);
}
