#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sjf/matrix.hpp"
#include "sjf/rational.hpp"
#include "sjf/series.hpp"

using namespace sjf;

namespace {

Rational rand_rat(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-40, 40);
    std::uniform_int_distribution<long> den(1, 12);
    return Rational(num(rng), den(rng));
}

RatMatrix rand_mat(std::mt19937_64& rng, int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = rand_rat(rng);
    return m;
}

}  // namespace

TEST_CASE("rational basics") {
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(3, 8).v_p(2) == -3);
    CHECK(Rational(12).v_p(2) == 2);
    CHECK_THROWS_AS(Rational(0).inverse(), std::domain_error);
    CHECK_THROWS_AS(Rational(0).v_p(2), std::domain_error);
    CHECK(Rational::parse("-3/6") == Rational(-1, 2));
    CHECK(Rational(-7, -14).str() == "1/2");
    CHECK(Rational(5, 3).floor() == 1);
    CHECK(Rational(-5, 3).floor() == -2);
    CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
}

TEST_CASE("field axioms on random rationals") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 300; ++t) {
        Rational a = rand_rat(rng), b = rand_rat(rng), c = rand_rat(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        if (!a.is_zero()) CHECK(a * a.inverse() == Rational(1));
    }
}

TEST_CASE("matrix S[x] and det examples") {
    RatMatrix S(1, 1, {Rational(1)});
    RatMatrix x(1, 1, {Rational(3)});
    CHECK(S.quad(x)(0, 0) == Rational(9));

    CHECK(RatMatrix::identity(4).det() == Rational(1));

    RatMatrix S2(2, 2, {Rational(2), Rational(1), Rational(1), Rational(2)});
    RatMatrix v(2, 1, {Rational(1), Rational(1)});
    CHECK(S2.quad(v)(0, 0) == Rational(6));
    CHECK(S2.quad(v).is_symmetric());
}

TEST_CASE("matrix inverse and det multiplicativity") {
    std::mt19937_64 rng(23);
    int done = 0;
    while (done < 40) {
        int n = 1 + static_cast<int>(rng() % 4);
        RatMatrix A = rand_mat(rng, n), B = rand_mat(rng, n);
        if (A.det().is_zero() || B.det().is_zero()) continue;
        CHECK(A * A.inverse() == RatMatrix::identity(n));
        CHECK((A * B).det() == A.det() * B.det());
        ++done;
    }
    RatMatrix sing(2, 2, {Rational(1), Rational(2), Rational(2), Rational(4)});
    CHECK_THROWS_AS(sing.inverse(), std::domain_error);
}

TEST_CASE("positive definiteness by exact minors") {
    RatMatrix good(2, 2, {Rational(2), Rational(1), Rational(1), Rational(2)});
    CHECK(good.is_positive_definite());
    RatMatrix semi(2, 2, {Rational(1), Rational(1), Rational(1), Rational(1)});
    CHECK_FALSE(semi.is_positive_definite());
    CHECK(semi.is_positive_semidefinite());
    RatMatrix neg(2, 2, {Rational(1), Rational(2), Rational(2), Rational(1)});
    CHECK_FALSE(neg.is_positive_semidefinite());
}

TEST_CASE("series examples") {
    // reciprocal(1 - X) to order 3
    FormalSeries f(3);
    f[0] = Rational(1);
    f[1] = Rational(-1);
    FormalSeries r = f.reciprocal();
    for (int i = 0; i <= 3; ++i) CHECK(r[i] == Rational(1));

    // (1 - 2X)(1 - X/2) = 1 - 5/2 X + X^2
    FormalSeries a(2), b(2);
    a[0] = Rational(1);
    a[1] = Rational(-2);
    b[0] = Rational(1);
    b[1] = Rational(-1, 2);
    FormalSeries prod = a * b;
    CHECK(prod[0] == Rational(1));
    CHECK(prod[1] == Rational(-5, 2));
    CHECK(prod[2] == Rational(1));

    FormalSeries g(5);
    g[0] = Rational(1);
    g[5] = Rational(1);
    FormalSeries tr = g.truncate(3);
    CHECK(tr.order() == 3);
    CHECK(tr[0] == Rational(1));
    CHECK(tr[1] == Rational(0));

    FormalSeries bad(2);
    bad[0] = Rational(2);
    CHECK_THROWS_AS(bad.reciprocal(), std::domain_error);
}

TEST_CASE("series reciprocal is a two-sided inverse up to truncation") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 200; ++t) {
        int J = 1 + static_cast<int>(rng() % 8);
        FormalSeries f(J);
        f[0] = Rational(1);
        for (int i = 1; i <= J; ++i) f[i] = rand_rat(rng);
        FormalSeries g = f.reciprocal();
        FormalSeries left = f * g, right = g * f;
        for (int i = 0; i <= J; ++i) {
            CHECK(left[i] == (i == 0 ? Rational(1) : Rational(0)));
            CHECK(right[i] == (i == 0 ? Rational(1) : Rational(0)));
        }
    }
}

TEST_CASE("root of unity reduction") {
    // sum over all p-th roots: 1 + e(1/3) + e(2/3) = 0
    RootOfUnitySum s;
    s.add(Rational(0), Rational(1));
    s.add(Rational(1, 3), Rational(1));
    s.add(Rational(2, 3), Rational(1));
    CHECK(s.reduce_to_rational() == Rational(0));

    // e(1/4) + e(3/4) = 0
    RootOfUnitySum s2;
    s2.add(Rational(1, 4), Rational(2));
    s2.add(Rational(3, 4), Rational(2));
    CHECK(s2.reduce_to_rational() == Rational(0));

    // e(1/2) = -1
    RootOfUnitySum s3;
    s3.add(Rational(1, 2), Rational(5));
    CHECK(s3.reduce_to_rational() == Rational(-5));

    // a lone primitive cube root is not rational
    RootOfUnitySum s4;
    s4.add(Rational(1, 3), Rational(1));
    CHECK_THROWS_AS(s4.reduce_to_rational(), std::domain_error);

    CHECK(euler_phi(Int(12)) == 4);
    CHECK(moebius(Int(30)) == -1);
    CHECK(moebius(Int(12)) == 0);
    CHECK(ramanujan_sum(Int(9), Int(3)) == -3);
}
