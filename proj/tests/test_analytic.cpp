#include <gtest/gtest.h>

#include "eulerprod/analytic.hpp"
#include "eulerprod/frob_analytic.hpp"

using namespace eulerprod;

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

GPoly gp(std::vector<long> v) {
    GPoly p;
    for (long x : v) p.emplace_back(Rational(x));
    return p;
}

EulerFactorSpec poly_spec(std::vector<long> coeffs) {
    return EulerFactorSpec::make(FactorKind::Polynomial, gp(std::move(coeffs)), {});
}

DirichletCharacter chi4() {
    DirichletCharacter chi;
    chi.modulus = 4;
    chi.values = {{0, 0}, {1, 0}, {0, 0}, {-1, 0}};
    chi.principal = false;
    return chi;
}

TEST(Zeta, SpecialValues) {
    auto z2 = zeta_eval({2.0, 0.0});
    EXPECT_NEAR(z2.value.real(), kPi * kPi / 6.0, 1e-10);
    EXPECT_NEAR(z2.value.imag(), 0.0, 1e-12);
    EXPECT_LT(z2.abs_err, 1e-10);

    auto zh = zeta_eval({0.5, 0.0});
    EXPECT_NEAR(zh.value.real(), -1.4603545088095868129, 1e-10);

    EXPECT_TRUE(zeta_eval({1.0, 0.0}).pole);
    EXPECT_THROW(zeta_eval({-0.5, 0.0}), UnsupportedRegionError);
    EXPECT_THROW(zeta_eval({2.0, 60.0}), UnsupportedRegionError);
}

TEST(Zeta, MonotoneOnRealSegment) {
    double prev = zeta_eval({1.05, 0.0}).value.real();
    for (double s = 1.15; s <= 4.0; s += 0.1) {
        double cur = zeta_eval({s, 0.0}).value.real();
        EXPECT_LT(cur, prev) << "at s = " << s;
        EXPECT_GT(cur, 1.0);
        prev = cur;
    }
}

TEST(Zeta, ComplexPointAgainstKnownSeries) {
    // compare against a direct Dirichlet sum at a comfortably convergent point
    Complex s(3.0, 7.0);
    Complex direct(0.0, 0.0);
    for (int n = 1; n <= 200000; ++n)
        direct += std::exp(-s * std::log(static_cast<double>(n)));
    auto z = zeta_eval(s);
    EXPECT_NEAR(std::abs(z.value - direct), 0.0, 1e-8);
}

// independent long-double Euler-Maclaurin for the Hurwitz zeta, used as the
// elevated-precision oracle
std::complex<long double> hurwitz_oracle(std::complex<long double> s, long double a) {
    const int M = 80;
    const int J = 15;
    const long double bern[] = {1.0L / 6, -1.0L / 30, 1.0L / 42, -1.0L / 30, 5.0L / 66,
                                -691.0L / 2730, 7.0L / 6, -3617.0L / 510, 43867.0L / 798,
                                -174611.0L / 330, 854513.0L / 138, -236364091.0L / 2730,
                                8553103.0L / 6, -23749461029.0L / 870, 8615841276005.0L / 14322};
    std::complex<long double> sum = 0;
    for (int k = 0; k < M; ++k) sum += std::exp(-s * std::log(static_cast<long double>(k) + a));
    long double base = M + a, logb = std::log(base);
    sum += std::exp((1.0L - s) * logb) / (s - 1.0L);
    sum += 0.5L * std::exp(-s * logb);
    std::complex<long double> poch = s;
    long double fact = 2.0L;
    for (int j = 1; j <= J; ++j) {
        sum += bern[j - 1] / fact * poch * std::exp((-s - (2.0L * j - 1.0L)) * logb);
        poch *= (s + std::complex<long double>(2.0L * j - 1.0L)) *
                (s + std::complex<long double>(2.0L * j));
        fact *= (2.0L * j + 1.0L) * (2.0L * j + 2.0L);
    }
    return sum;
}

TEST(DirichletL, SpecialValues) {
    auto L1 = dirichlet_L({1.0, 0.0}, chi4());
    EXPECT_NEAR(L1.value.real(), kPi / 4.0, 1e-9);

    // Catalan's constant
    auto L2 = dirichlet_L({2.0, 0.0}, chi4());
    EXPECT_NEAR(L2.value.real(), 0.9159655941772190151, 1e-9);

    // elevated-precision self-consistency at s = 0.5
    auto Lh = dirichlet_L({0.5, 0.0}, chi4());
    std::complex<long double> oracle =
        std::exp(std::complex<long double>(-0.5L * std::log(4.0L))) *
        (hurwitz_oracle({0.5L, 0.0L}, 0.25L) - hurwitz_oracle({0.5L, 0.0L}, 0.75L));
    EXPECT_NEAR(Lh.value.real(), static_cast<double>(oracle.real()), 1e-9);

    DirichletCharacter principal;
    principal.modulus = 4;
    principal.values = {{0, 0}, {1, 0}, {0, 0}, {1, 0}};
    principal.principal = true;
    EXPECT_THROW(dirichlet_L({2.0, 0.0}, principal), ValidationError);
}

TEST(PrimeZeta, TailMatchesKnownValue) {
    // P(2) = 0.45224742004106549850654 ; subtract the direct part
    auto primes = sieve_primes(10000);
    double direct = 0.0;
    for (uint32_t p : primes) direct += 1.0 / (static_cast<double>(p) * p);
    auto tail = prime_zeta_tail({2.0, 0.0}, primes);
    EXPECT_NEAR(direct + tail.value.real(), 0.45224742004106549851, 1e-12);
}

TEST(PrimeZeta, TwistedTailMatchesDirectSum) {
    // sum_{p > 1000} chi(p) p^{-3} via the Moebius/L-tail route against a
    // direct sieve sum (its own truncation at 1e7 is ~1e-15)
    FrobenianFactorSpec spec;
    spec.table = tables::c2();
    spec.coeffs = {ClassFunction({Cyclotomic(Rational(4)), Cyclotomic(Rational(0))})};
    spec.dirichlet = FrobenianFactorSpec::DirichletData{4, {1, 3}};
    auto real = detail::realize_dirichlet(spec);
    auto pow_idx = detail::character_power_index(spec.table, 64);
    auto small = sieve_primes(1000);

    std::size_t chi_idx = real.characters[0].principal ? 1 : 0;
    Complex twisted =
        detail::prime_zeta_tail_twisted({3.0, 0.0}, chi_idx, small, real, pow_idx);
    Complex principal =
        detail::prime_zeta_tail_twisted({3.0, 0.0}, 1 - chi_idx, small, real, pow_idx);

    double direct_chi = 0.0, direct_principal = 0.0;
    for (uint32_t p : sieve_primes(10000000)) {
        if (p <= 1000) continue;
        double term = std::pow(static_cast<double>(p), -3.0);
        direct_principal += term;  // chi_0(p) = 1 for odd p; all p > 1000 are odd
        direct_chi += (p % 4 == 1 ? term : -term);
    }
    EXPECT_NEAR(twisted.real(), direct_chi, 1e-13);
    EXPECT_NEAR(principal.real(), direct_principal, 1e-13);
    EXPECT_NEAR(twisted.imag(), 0.0, 1e-15);
}

TEST(Continuation, TrivialFactor) {
    auto spec = poly_spec({1});
    auto d = decompose(spec, 4);
    auto r = continuation_eval(d, spec, {1.5, 0.3});
    EXPECT_EQ(r.value, Complex(1.0, 0.0));
}

TEST(Continuation, AgreesWithDirectProductAboveAbscissa) {
    auto spec = poly_spec({1, 2});
    auto d = decompose(spec, 6);
    auto r = continuation_eval(d, spec, {2.0, 0.0});
    // the direct product truncated at 1e6 carries its own tail
    // ~ 2 sum_{p>1e6} p^-2 ~ 3e-7; allow for it on top of the bound
    Complex direct = direct_euler_product(spec, {2.0, 0.0}, 1000000);
    EXPECT_NEAR(std::abs(r.value - direct), 0.0, 1e-6);
    EXPECT_LT(r.estimated_error, 1e-9);

    // independent high-precision value of the full product, via
    // exp(sum_k (-1)^{k+1} 2^k/k P(2k)): 2.19087008555325579635...
    EXPECT_NEAR(r.value.real(), 2.1908700855532557964, 2e-10);
    EXPECT_NEAR(r.value.imag(), 0.0, 1e-12);
}

TEST(Continuation, DepthConsistency) {
    auto spec = poly_spec({1, 2});
    auto d2 = decompose(spec, 2);
    auto d6 = decompose(spec, 6);
    auto r2 = continuation_eval(d2, spec, {0.6, 0.0});
    auto r6 = continuation_eval(d6, spec, {0.6, 0.0});
    EXPECT_NEAR(std::abs(r2.value - r6.value), 0.0, 1e-8);

    auto d3 = decompose(spec, 3);
    auto d7 = decompose(spec, 7);
    for (int i = 0; i < 20; ++i) {
        double sr = 1.0 / 3.0 + 0.06 + 0.12 * i;
        auto a = continuation_eval(d3, spec, {sr, 0.0});
        auto b = continuation_eval(d7, spec, {sr, 0.0});
        ASSERT_NEAR(std::abs(a.value - b.value), 0.0, 1e-8) << "s = " << sr;
    }
}

TEST(Continuation, RegionOfAgreementAcrossSpecs) {
    // at abscissa + 0.5 and abscissa + 1 every spec's continuation agrees
    // with the direct truncated product within that product's own tail
    std::vector<EulerFactorSpec> specs = {
        poly_spec({1, 2}), poly_spec({1, 0, -3, 2}), poly_spec({1, 0, 0, 2}),
        EulerFactorSpec::make(FactorKind::ReciprocalPolynomial, gp({1, -2}), {})};
    GPoly num = {GaussianRational(1), GaussianRational(0),
                 GaussianRational(Rational(1), Rational(1)), GaussianRational(-1)};
    specs.push_back(EulerFactorSpec::make(FactorKind::Polynomial, num, {}));
    for (const auto& spec : specs) {
        double a0 = abscissa(spec).value.get_d();
        auto d = decompose(spec, 8);
        for (double offset : {0.5, 1.0}) {
            Complex s(a0 + offset, 0.0);
            auto r = continuation_eval(d, spec, s);
            Complex direct = direct_euler_product(spec, s, 3000000);
            // combined bound: the continuation is good to ~1e-10, the direct
            // product carries a relative tail of order X^{-a sigma + 1}
            double tol = (offset < 0.75 ? 5e-4 : 1e-6) * std::max(1.0, std::abs(direct));
            ASSERT_NEAR(std::abs(r.value - direct), 0.0, tol)
                << "offset " << offset << " abscissa " << a0;
        }
    }
}

TEST(Continuation, SingularityMarkerAndRegionChecks) {
    auto spec = poly_spec({1, 2});
    auto d = decompose(spec, 6);
    EXPECT_TRUE(continuation_eval(d, spec, {1.0, 0.0}).at_singularity);
    EXPECT_THROW(continuation_eval(d, spec, {0.05, 0.0}), UnsupportedRegionError);
}

TEST(Continuation, BranchDiscipline) {
    GPoly num = {GaussianRational(1), GaussianRational(0),
                 GaussianRational(Rational(1), Rational(1)), GaussianRational(-1)};
    auto spec = EulerFactorSpec::make(FactorKind::Polynomial, num, {});
    auto d = decompose(spec, 4);
    EXPECT_FALSE(d.all_integral);
    // off-axis: branch ambiguity
    EXPECT_THROW(continuation_eval(d, spec, {0.8, 0.5}), ValidationError);
    // left of the rightmost singularity: refused
    EXPECT_THROW(continuation_eval(d, spec, {0.4, 0.0}), ValidationError);
    // legal real point evaluates and is consistent across depths
    auto r4 = continuation_eval(d, spec, {0.8, 0.0});
    auto d8 = decompose(spec, 8);
    auto r8 = continuation_eval(d8, spec, {0.8, 0.0});
    EXPECT_NEAR(std::abs(r4.value - r8.value), 0.0, 1e-9);
}

TEST(Continuation, DeterministicAcrossThreadCounts) {
    auto spec = poly_spec({1, 2});
    auto d = decompose(spec, 5);
    EvalOptions one;
    one.threads = 1;
    EvalOptions four;
    four.threads = 4;
    auto a = continuation_eval(d, spec, {0.7, 0.2}, one);
    auto b = continuation_eval(d, spec, {0.7, 0.2}, four);
    EXPECT_EQ(a.value.real(), b.value.real());
    EXPECT_EQ(a.value.imag(), b.value.imag());
}

TEST(LeadingCoefficient, OnePlus2z) {
    auto spec = poly_spec({1, 2});
    auto d = decompose(spec, 6);
    Complex lead = leading_coefficient(d, spec, Rational(1));
    // oracle: direct evaluation of prod (1 - 3p^-2 + 2p^-3)
    Complex direct = direct_euler_product(poly_spec({1, 0, -3, 2}), {1.0, 0.0}, 10000000);
    EXPECT_NEAR(std::abs(lead - direct), 0.0, 1e-6);
    // stability under prime-cutoff doubling
    EvalOptions doubled;
    doubled.prime_cutoff = 8192;
    Complex lead2 = leading_coefficient(d, spec, Rational(1), doubled);
    EXPECT_NEAR(std::abs(lead - lead2), 0.0, 1e-6);
}

TEST(LeadingCoefficient, PureZetaInverse) {
    // Q = 1 - z gives 1/zeta(s); normalization forces leading value 1 at s=1
    auto spec = poly_spec({1, -1});
    auto d = decompose(spec, 4);
    Complex lead = leading_coefficient(d, spec, Rational(1));
    EXPECT_NEAR(std::abs(lead - Complex(1.0, 0.0)), 0.0, 1e-9);
}

TEST(LeadingCoefficient, ZeroLocationMatchesFiniteDifferenceLimit) {
    // at s = 1/2 the factor zeta(2s)^{-3} forces a zero of order 3; the
    // regularized value must match lim Q(1/2 + h)/h^3
    auto spec = poly_spec({1, 2});
    auto d = decompose(spec, 6);
    Complex lead = leading_coefficient(d, spec, Rational(1, 2));
    auto estimate = [&](double h) {
        auto r = continuation_eval(d, spec, {0.5 + h, 0.0});
        return r.value / std::pow(Complex(h, 0.0), 3);
    };
    Complex e1 = estimate(1e-3), e2 = estimate(5e-4);
    EXPECT_LT(std::abs(e2 - lead), std::abs(e1 - lead));  // converging toward it
    EXPECT_NEAR(std::abs(e2 / lead - 1.0), 0.0, 0.05);
}

TEST(LeadingCoefficient, ErrorsOnBadRequests) {
    auto one = poly_spec({1});
    auto d1 = decompose(one, 4);
    EXPECT_THROW(leading_coefficient(d1, one, Rational(1)), ValidationError);

    auto spec = poly_spec({1, 2});
    auto d = decompose(spec, 6);
    EXPECT_THROW(leading_coefficient(d, spec, Rational(1, 7)), ValidationError);
}

TEST(Abscissa, Cases) {
    EXPECT_EQ(abscissa(poly_spec({1, 2})).value, Rational(1));
    EXPECT_EQ(abscissa(poly_spec({1, 0, -3, 2})).value, Rational(1, 2));
    EXPECT_EQ(abscissa(poly_spec({1, 0, 0, 2})).value, Rational(1, 3));
    auto triv = abscissa(poly_spec({1}));
    EXPECT_TRUE(triv.trivial_factor);
    EXPECT_EQ(triv.value, Rational(0));
    auto geo = abscissa(EulerFactorSpec::make(FactorKind::ReciprocalPolynomial, gp({1, -2}), {}));
    EXPECT_EQ(geo.value, Rational(1));
    EXPECT_TRUE(geo.warning);
}

TEST(Report, WorkedDecompositionTable) {
    auto spec = poly_spec({1, 2});
    auto d = decompose(spec, 6, Rational(1, 6));
    auto rep = singularity_report(d, spec, Rational(1, 6));
    ASSERT_EQ(rep.entries.size(), 6u);
    std::vector<std::pair<Rational, long>> expected = {
        {Rational(1, 1), 2},  {Rational(1, 2), -3}, {Rational(1, 3), 2},
        {Rational(1, 4), -3}, {Rational(1, 5), 6},  {Rational(1, 6), -11}};
    for (std::size_t i = 0; i < 6; ++i) {
        EXPECT_EQ(rep.entries[i].location, expected[i].first);
        EXPECT_EQ(rep.entries[i].order, Cyclotomic(Rational(expected[i].second)));
        EXPECT_FALSE(rep.entries[i].branch_cut);
    }
    EXPECT_FALSE(rep.branch_cut_needed);
    // entries sorted by descending real part
    for (std::size_t i = 1; i < rep.entries.size(); ++i)
        EXPECT_GT(rep.entries[i - 1].location, rep.entries[i].location);
    // the factor zero at -1/2 sits on Re(s) = 1 for p = 2: flagged there and
    // nowhere else (2^n is prime only for n = 1)
    EXPECT_TRUE(rep.entries[0].possible_cancellation);
    for (std::size_t i = 1; i < rep.entries.size(); ++i)
        EXPECT_FALSE(rep.entries[i].possible_cancellation);
    EXPECT_FALSE(rep.caveats.empty());
}

TEST(Report, BranchCutCase) {
    GPoly num = {GaussianRational(1), GaussianRational(0),
                 GaussianRational(Rational(1), Rational(1)), GaussianRational(-1)};
    auto spec = EulerFactorSpec::make(FactorKind::Polynomial, num, {});
    auto d = decompose(spec, 2, Rational(1, 2));
    auto rep = singularity_report(d, spec, Rational(1, 2));
    ASSERT_EQ(rep.entries.size(), 1u);
    EXPECT_EQ(rep.entries[0].location, Rational(1, 2));
    EXPECT_EQ(rep.entries[0].order,
              Cyclotomic::from_gaussian(GaussianRational(Rational(1), Rational(1))));
    EXPECT_TRUE(rep.entries[0].branch_cut);
    EXPECT_TRUE(rep.branch_cut_needed);
}

TEST(Report, EmptyForTrivialFactor) {
    auto spec = poly_spec({1});
    auto d = decompose(spec, 6, Rational(1, 6));
    auto rep = singularity_report(d, spec, Rational(1, 6));
    EXPECT_TRUE(rep.entries.empty());
}

// the split-primes factor: Q_p = 1 + (2 + 2 chi) z over C2 realized mod 4,
// with the trivial override at p = 2
FrobenianFactorSpec split_primes_spec() {
    FrobenianFactorSpec spec;
    spec.table = tables::c2();
    spec.coeffs = {ClassFunction({Cyclotomic(Rational(4)), Cyclotomic(Rational(0))})};
    spec.dirichlet = FrobenianFactorSpec::DirichletData{4, {1, 3}};
    return spec;
}

TEST(FrobContinuation, MatchesDirectProduct) {
    auto spec = split_primes_spec();
    auto d = compute_b_frob(spec, 6);
    auto r = continuation_eval(d, spec, {2.0, 0.0});
    Complex direct = direct_euler_product(spec, {2.0, 0.0}, 1000000);
    EXPECT_NEAR(std::abs(r.value - direct), 0.0, 1e-5);
    EXPECT_LT(r.estimated_error, 1e-8);
}

TEST(FrobContinuation, DepthConsistency) {
    auto spec = split_primes_spec();
    auto d2 = compute_b_frob(spec, 2);
    auto d6 = compute_b_frob(spec, 6);
    auto a = continuation_eval(d2, spec, {0.8, 0.0});
    auto b = continuation_eval(d6, spec, {0.8, 0.0});
    EXPECT_NEAR(std::abs(a.value - b.value), 0.0, 1e-8);
}

TEST(FrobContinuation, RefusesNonAbelianTables) {
    FrobenianFactorSpec spec;
    spec.table = tables::s3();
    spec.coeffs = {ClassFunction::constant(3, Cyclotomic(Rational(1)))};
    auto d = compute_b_frob(spec, 3);
    EXPECT_THROW(continuation_eval(d, spec, {1.5, 0.0}), ValidationError);
}

TEST(FrobContinuation, LeadingCoefficientStable) {
    auto spec = split_primes_spec();
    auto d = compute_b_frob(spec, 6);
    Complex lead = leading_coefficient(d, spec, Rational(1));
    EvalOptions doubled;
    doubled.prime_cutoff = 8192;
    Complex lead2 = leading_coefficient(d, spec, Rational(1), doubled);
    EXPECT_NEAR(std::abs(lead - lead2), 0.0, 1e-6);
    // cross-check: lim (s-1)^2 Q(s) = (pi/4)^2 * lim (s-1)^2 zeta(s)^2 (1-2^-s)^2 * C(1)
    // with C the compensated remainder; sanity: the value is finite, real, positive
    EXPECT_GT(lead.real(), 0.0);
    EXPECT_NEAR(lead.imag(), 0.0, 1e-9);
}

TEST(FrobReport, SplitPrimesEntries) {
    auto spec = split_primes_spec();
    auto d = compute_b_frob(spec, 4);
    auto rep = singularity_report(d, spec, Rational(1, 4));
    ASSERT_GE(rep.entries.size(), 2u);
    EXPECT_EQ(rep.entries[0].location, Rational(1));
    EXPECT_EQ(rep.entries[0].order, Cyclotomic(Rational(2)));
    EXPECT_EQ(rep.entries[1].location, Rational(1, 2));
    EXPECT_EQ(rep.entries[1].order, Cyclotomic(Rational(-6)));
    EXPECT_FALSE(rep.branch_cut_needed);
}

}  // namespace
