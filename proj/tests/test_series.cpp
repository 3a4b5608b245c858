#include <gtest/gtest.h>

#include <random>

#include "eulerprod/series.hpp"

using namespace eulerprod;

namespace {

TruncatedSeries<Rational> poly(int depth, std::vector<long> coeffs) {
    std::vector<Rational> c;
    c.reserve(coeffs.size());
    for (long v : coeffs) c.emplace_back(v);
    return TruncatedSeries<Rational>::from_coeffs(depth, std::move(c));
}

TruncatedSeries<Rational> random_series(std::mt19937_64& rng, int depth, bool unit_constant) {
    std::uniform_int_distribution<long> num(-6, 6);
    std::uniform_int_distribution<long> den(1, 4);
    TruncatedSeries<Rational> s(depth, Rational(unit_constant ? 1 : 0));
    for (int k = 1; k <= depth; ++k) {
        Rational q(num(rng), den(rng));
        q.canonicalize();
        s.set_coeff(k, q);
    }
    return s;
}

TEST(Series, MulMatchesHandExpansion) {
    // (1+2z)(1-z)^2 = 1 - 3z^2 + 2z^3
    auto a = poly(3, {1, 2});
    auto b = poly(3, {1, -1});
    auto prod = series_mul(series_mul(a, b), b);
    EXPECT_EQ(prod, poly(3, {1, 0, -3, 2}));

    EXPECT_EQ(series_mul(poly(1, {1, 1}), poly(1, {1})), poly(1, {1, 1}));
    EXPECT_EQ(series_mul(poly(2, {1, 1}), poly(2, {1, -1})), poly(2, {1, 0, -1}));
}

TEST(Series, MulTruncatesToShallowerOperand) {
    auto a = poly(5, {1, 1, 1, 1, 1, 1});
    auto b = poly(2, {1, 1});
    EXPECT_EQ(series_mul(a, b).depth(), 2);
}

TEST(Series, LogOfOnePlus2z) {
    auto q = poly(6, {1, 2});
    auto l = series_log(q);
    EXPECT_EQ(l.coeff(0), Rational(0));
    EXPECT_EQ(l.coeff(1), Rational(2));
    EXPECT_EQ(l.coeff(2), Rational(-2));
    EXPECT_EQ(l.coeff(3), Rational(8, 3));
    EXPECT_EQ(l.coeff(4), Rational(-4));
    EXPECT_EQ(l.coeff(5), Rational(32, 5));
    EXPECT_EQ(l.coeff(6), Rational(-32, 3));
}

TEST(Series, LogEdgeCases) {
    auto one = poly(4, {1});
    auto l = series_log(one);
    EXPECT_EQ(series_order(l), std::nullopt);

    // log(1-z) = -z - z^2/2 - z^3/3 - z^4/4
    auto l2 = series_log(poly(4, {1, -1}));
    EXPECT_EQ(l2.coeff(1), Rational(-1));
    EXPECT_EQ(l2.coeff(2), Rational(-1, 2));
    EXPECT_EQ(l2.coeff(3), Rational(-1, 3));
    EXPECT_EQ(l2.coeff(4), Rational(-1, 4));

    EXPECT_THROW(series_log(poly(3, {2, 1})), ValidationError);
}

TEST(Series, ExpEdgeCases) {
    auto zero = TruncatedSeries<Rational>(5, Rational(0));
    EXPECT_EQ(series_exp(zero), poly(5, {1}));

    EXPECT_EQ(series_exp(series_log(poly(6, {1, 2}))), poly(6, {1, 2}));

    // exp(-log(1-z)) = geometric series
    auto l = series_log(poly(3, {1, -1}));
    TruncatedSeries<Rational> neg(3, Rational(0));
    for (int k = 1; k <= 3; ++k) neg.set_coeff(k, -l.coeff(k));
    EXPECT_EQ(series_exp(neg), poly(3, {1, 1, 1, 1}));

    EXPECT_THROW(series_exp(poly(3, {1, 1})), ValidationError);
}

TEST(Series, Order) {
    TruncatedSeries<Rational> f(8, Rational(0));
    f.set_coeff(2, Rational(3));
    f.set_coeff(5, Rational(-1));
    EXPECT_EQ(series_order(f), 2);

    TruncatedSeries<Rational> z(8, Rational(0));
    EXPECT_EQ(series_order(z), std::nullopt);

    EXPECT_EQ(series_order(series_log(poly(4, {1, 2}))), 1);
}

TEST(Series, MulIsAssociativeAndCommutative) {
    std::mt19937_64 rng(20240811);
    for (int trial = 0; trial < 50; ++trial) {
        auto a = random_series(rng, 10, true);
        auto b = random_series(rng, 10, true);
        auto c = random_series(rng, 10, true);
        EXPECT_EQ(series_mul(series_mul(a, b), c), series_mul(a, series_mul(b, c)));
        EXPECT_EQ(series_mul(a, b), series_mul(b, a));
    }
}

TEST(Series, LogExpRoundTrip) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        auto q = random_series(rng, 12, true);
        EXPECT_EQ(series_exp(series_log(q)), q);
        auto l = random_series(rng, 12, false);
        EXPECT_EQ(series_log(series_exp(l)), l);
    }
}

TEST(Series, LogIsHomomorphism) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        auto a = random_series(rng, 12, true);
        auto b = random_series(rng, 12, true);
        EXPECT_EQ(series_log(series_mul(a, b)), series_add(series_log(a), series_log(b)));
    }
}

TEST(Series, InverseAndCompose) {
    // 1/(1-z) = 1 + z + z^2 + ...
    EXPECT_EQ(series_inverse(poly(5, {1, -1})), poly(5, {1, 1, 1, 1, 1, 1}));
    auto f = poly(6, {1, 1});
    auto g = compose_zk(f, 3);
    EXPECT_EQ(g, poly(6, {1, 0, 0, 1}));
}

TEST(Series, GaussianCoefficients) {
    using G = GaussianRational;
    TruncatedSeries<G> q(3, G(1));
    q.set_coeff(2, G(Rational(1), Rational(1)));
    q.set_coeff(3, G(-1));
    auto l = series_log(q);
    EXPECT_EQ(l.coeff(1), G(0));
    EXPECT_EQ(l.coeff(2), G(Rational(1), Rational(1)));
    EXPECT_EQ(l.coeff(3), G(-1));
}

}  // namespace
