#include <gtest/gtest.h>

#include <functional>
#include <map>

#include "eulerprod/combinatorics.hpp"
#include "eulerprod/series.hpp"

using namespace eulerprod;

namespace {

TEST(Combinatorics, Moebius) {
    EXPECT_EQ(moebius(1), 1);
    EXPECT_EQ(moebius(4), 0);
    EXPECT_EQ(moebius(6), 1);
    EXPECT_EQ(moebius(2), -1);
    EXPECT_EQ(moebius(30), -1);
    EXPECT_EQ(moebius(12), 0);
    EXPECT_THROW(moebius(0), ValidationError);
}

TEST(Combinatorics, Multinomial) {
    EXPECT_EQ(multinomial(2, {1, 1}), 2);
    EXPECT_EQ(multinomial(4, {2, 2}), 6);
    EXPECT_EQ(multinomial(3, {3}), 1);
    EXPECT_EQ(multinomial(12, {3, 3, 3, 3}), Integer(369600));
    EXPECT_THROW(multinomial(5, {2, 2}), ValidationError);
}

TEST(Combinatorics, LogCoeffPinnedValues) {
    EXPECT_EQ(log_coeff({1, 1}), 1);
    EXPECT_EQ(log_coeff({1}), 1);
    EXPECT_EQ(log_coeff({2}), 0);
    EXPECT_EQ(log_coeff({3}), 0);
    EXPECT_EQ(log_coeff({2, 0}), 0);  // trailing zeros normalize away
    EXPECT_EQ(log_coeff({2, 1}), 1);  // gcd 1: binom(3,2)/3
    EXPECT_EQ(log_coeff({2, 2}), 1);
}

TEST(Combinatorics, OrbitCountPinnedValues) {
    EXPECT_EQ(orbit_count({1, 1}), 1);
    EXPECT_EQ(orbit_count({2}), 0);
    EXPECT_EQ(orbit_count({2, 1}), 1);
    EXPECT_EQ(orbit_count({2, 2}), 1);
    EXPECT_THROW(orbit_count({13}), ResourceLimitError);
}

// enumerate all compositions with at most `parts` entries and weight <= `maxw`
void for_each_composition(unsigned long maxw, std::size_t parts,
                          const std::function<void(const Composition&)>& f) {
    Composition cur(parts, 0);
    std::function<void(std::size_t, unsigned long)> rec = [&](std::size_t idx, unsigned long left) {
        if (idx == parts) {
            if (composition_weight(cur) > 0) f(cur);
            return;
        }
        for (unsigned long v = 0; v <= left; ++v) {
            cur[idx] = v;
            rec(idx + 1, left - v);
        }
        cur[idx] = 0;
    };
    rec(0, maxw);
}

TEST(Combinatorics, ClosedFormMatchesOrbitOracleExhaustively) {
    // |n| <= 8, at most 4 parts: the closed formula and the brute-force
    // orbit count must agree everywhere.
    int cases = 0;
    for_each_composition(8, 4, [&](const Composition& n) {
        ASSERT_EQ(log_coeff(n), orbit_count(n)) << "composition weight " << composition_weight(n);
        ++cases;
    });
    EXPECT_GT(cases, 400);
}

TEST(Combinatorics, GcdOneClosedForm) {
    for_each_composition(8, 3, [&](const Composition& n) {
        if (composition_gcd(n) != 1) return;
        unsigned long w = composition_weight(n);
        EXPECT_EQ(log_coeff(n) * Integer(w), multinomial(w, n));
    });
}

// Exact bivariate polynomials of bounded total degree, coefficient map
// keyed by (i, j). Fixed-purpose expansion for the series identity check.
using Bivar = std::map<std::pair<int, int>, Rational>;

Bivar bivar_mul(const Bivar& a, const Bivar& b, int maxdeg) {
    Bivar out;
    for (const auto& [ka, va] : a)
        for (const auto& [kb, vb] : b) {
            int i = ka.first + kb.first, j = ka.second + kb.second;
            if (i + j > maxdeg) continue;
            out[{i, j}] += va * vb;
        }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

// -log(1 - m) = sum_k m^k / k truncated at total degree maxdeg
Bivar neg_log_one_minus(const Bivar& m, int maxdeg) {
    Bivar out, power = {{{0, 0}, Rational(1)}};
    for (int k = 1; k <= maxdeg; ++k) {
        power = bivar_mul(power, m, maxdeg);
        if (power.empty()) break;
        for (const auto& [key, v] : power) out[key] += v / Rational(k);
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

TEST(Combinatorics, TwoVariableLogFactorization) {
    // -log(1-x-y) = -sum_n c_n log(1 - x^{n_0} y^{n_1}) up to total degree 6
    const int D = 6;
    Bivar xy = {{{1, 0}, Rational(1)}, {{0, 1}, Rational(1)}};
    Bivar lhs = neg_log_one_minus(xy, D);

    Bivar rhs;
    for (int i = 0; i <= D; ++i)
        for (int j = 0; j <= D - i; ++j) {
            if (i + j == 0) continue;
            Integer c = log_coeff(Composition{static_cast<unsigned long>(i),
                                              static_cast<unsigned long>(j)});
            if (c == 0) continue;
            Bivar mono = {{{i, j}, Rational(1)}};
            for (const auto& [key, v] : neg_log_one_minus(mono, D))
                rhs[key] += Rational(c) * v;
        }
    for (auto it = rhs.begin(); it != rhs.end();)
        it = it->second == 0 ? rhs.erase(it) : std::next(it);

    EXPECT_EQ(lhs, rhs);
}

}  // namespace
