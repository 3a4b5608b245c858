#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eulerprod/combinatorics.hpp"
#include "eulerprod/roots.hpp"
#include "eulerprod/series.hpp"

namespace eulerprod {

enum class FactorKind { Polynomial, RationalFunction, ReciprocalPolynomial };

// One Euler factor Q(z), the same at every prime: a polynomial or rational
// function over Q(i) with Q(0) = 1.
struct EulerFactorSpec {
    FactorKind kind = FactorKind::Polynomial;
    GPoly num;  // constant term 1 after normalization
    GPoly den;  // constant term 1; {1} when absent
    int depth_hint = 0;

    static EulerFactorSpec make(FactorKind kind, GPoly num_in, GPoly den_in, int depth_hint = 0) {
        EulerFactorSpec s;
        s.kind = kind;
        s.depth_hint = depth_hint;
        if (kind == FactorKind::ReciprocalPolynomial) {
            // Q = 1 / h(z): the given polynomial is the denominator
            s.den = trim(std::move(num_in));
            s.num = {GaussianRational(1)};
            if (!den_in.empty() && trim(den_in) != GPoly{GaussianRational(1)})
                throw ValidationError("reciprocal-polynomial spec takes a single polynomial");
        } else {
            s.num = trim(std::move(num_in));
            s.den = trim(std::move(den_in));
        }
        if (s.num.empty()) s.num = {GaussianRational(1)};
        if (s.den.empty()) s.den = {GaussianRational(1)};
        if (s.num[0].is_zero() || s.den[0].is_zero())
            throw ValidationError("Euler factor must satisfy Q(0) = 1 (nonzero constant terms)");
        // normalize constant terms to exactly 1
        for (std::size_t k = s.num.size(); k-- > 0;) s.num[k] = s.num[k] / s.num[0];
        for (std::size_t k = s.den.size(); k-- > 0;) s.den[k] = s.den[k] / s.den[0];
        if (kind == FactorKind::Polynomial && s.den != GPoly{GaussianRational(1)})
            throw ValidationError("polynomial spec cannot carry a denominator");
        // cancel common factors so radius and caveats see the reduced function
        if (poly_degree(s.den) >= 1 && poly_degree(s.num) >= 1) {
            GPoly g = poly_gcd(s.num, s.den);
            if (poly_degree(g) >= 1) {
                s.num = poly_divide_exact(s.num, g);
                s.den = poly_divide_exact(s.den, g);
                GaussianRational c0 = s.num[0];
                for (auto& c : s.num) c = c / c0;
                c0 = s.den[0];
                for (auto& c : s.den) c = c / c0;
            }
        }
        return s;
    }

    bool is_one() const {
        return poly_degree(num) <= 0 && poly_degree(den) <= 0;
    }
};

inline TruncatedSeries<GaussianRational> factor_series(const EulerFactorSpec& spec, int depth) {
    auto nums = TruncatedSeries<GaussianRational>::from_coeffs(depth, spec.num);
    if (poly_degree(spec.den) <= 0) return nums;
    auto dens = TruncatedSeries<GaussianRational>::from_coeffs(depth, spec.den);
    return series_mul(nums, series_inverse(dens));
}

// log Q = log num - log den; avoids series inversion entirely
inline TruncatedSeries<GaussianRational> factor_log_series(const EulerFactorSpec& spec, int depth) {
    auto l = series_log(TruncatedSeries<GaussianRational>::from_coeffs(depth, spec.num));
    if (poly_degree(spec.den) <= 0) return l;
    auto ld = series_log(TruncatedSeries<GaussianRational>::from_coeffs(depth, spec.den));
    return series_sub(l, ld);
}

// b_1 = q_1;  b_n = q_n - sum_{d|n, d>1} b_{n/d}/d,
// where q is the coefficient sequence of log Q starting at degree 1.
template <class R>
std::vector<R> compute_b_from_log(const std::vector<R>& q) {
    std::vector<R> b(q.size(), q.empty() ? R() : zero_like(q[0]));
    for (std::size_t i = 0; i < q.size(); ++i) {
        unsigned long n = i + 1;
        R acc = q[i];
        for (unsigned long d : divisors(n)) {
            if (d == 1) continue;
            acc = acc - div_by_long(b[n / d - 1], static_cast<long>(d));
        }
        b[i] = acc;
    }
    return b;
}

struct ZetaDecomposition {
    int depth = 0;
    std::vector<GaussianRational> b;  // b[n-1] is the exponent of zeta(n s)
    bool all_integral = true;
    RadiusEnclosure radius;
    Rational epsilon{0};
    Integer exceptional_prime_bound{0};
};

// min magnitude over zeros and poles of Q, i.e. the radius of convergence
// of log Q around 0
inline RadiusEnclosure radius_of_log(const EulerFactorSpec& spec) {
    RadiusEnclosure rn = min_root_magnitude(spec.num);
    RadiusEnclosure rd = min_root_magnitude(spec.den);
    if (!rn.finite) return rd;
    if (!rd.finite) return rn;
    if (rn.exact && rd.exact) return RadiusEnclosure::exactly(std::min(rn.lo, rd.lo));
    RadiusEnclosure out;
    out.lo = std::min(rn.lo, rd.lo);
    out.hi = std::min(rn.hi, rd.hi);
    out.exact = false;
    if (rn.exact && rn.lo <= rd.lo) return RadiusEnclosure::exactly(rn.lo);
    if (rd.exact && rd.lo <= rn.lo) return RadiusEnclosure::exactly(rd.lo);
    return out;
}

// smallest integer B with B >= r^{-1/epsilon}, computed from the lower
// endpoint of the radius enclosure so the exceptional set is never too small
inline Integer exceptional_prime_bound(const RadiusEnclosure& radius, const Rational& epsilon) {
    if (!radius.finite) return 0;
    if (epsilon <= 0) throw ValidationError("epsilon must be positive");
    if (radius.lo <= 0) throw ValidationError("radius enclosure degenerate");
    // epsilon = a/b; B >= r^{-b/a} iff B^a >= r^{-b}
    Integer a = epsilon.get_num(), bb = epsilon.get_den();
    if (!a.fits_ulong_p() || !bb.fits_ulong_p())
        throw ValidationError("epsilon too extreme");
    unsigned long ae = a.get_ui(), be = bb.get_ui();
    Integer tn, td, rl_num = radius.lo.get_num(), rl_den = radius.lo.get_den();
    mpz_pow_ui(tn.get_mpz_t(), rl_den.get_mpz_t(), be);
    mpz_pow_ui(td.get_mpz_t(), rl_num.get_mpz_t(), be);
    Rational target(tn, td);
    target.canonicalize();  // target = r_lo^{-b}
    if (target <= 1) return 1;
    Integer t_ceil = ceil_to_integer(target);
    Integer b0;
    mpz_root(b0.get_mpz_t(), t_ceil.get_mpz_t(), ae);
    if (b0 < 1) b0 = 1;
    auto pow_ge = [&](const Integer& cand) {
        Integer p;
        mpz_pow_ui(p.get_mpz_t(), cand.get_mpz_t(), ae);
        return Rational(p) >= target;
    };
    while (b0 > 1 && pow_ge(b0 - 1)) b0 -= 1;
    while (!pow_ge(b0)) b0 += 1;
    return b0;
}

inline ZetaDecomposition decompose(const EulerFactorSpec& spec, int depth,
                                   const Rational& epsilon = Rational(0)) {
    if (depth < 1) throw ValidationError("decomposition depth must be >= 1");
    ZetaDecomposition d;
    d.depth = depth;
    auto logq = factor_log_series(spec, depth);
    std::vector<GaussianRational> q(logq.coeffs().begin() + 1, logq.coeffs().end());
    d.b = compute_b_from_log(q);
    d.all_integral = true;
    for (const auto& v : d.b)
        if (!v.is_rational_integer()) d.all_integral = false;
    d.radius = radius_of_log(spec);
    d.epsilon = epsilon;
    if (epsilon > 0) d.exceptional_prime_bound = exceptional_prime_bound(d.radius, epsilon);
    return d;
}

// exact check of log Q(z) = -sum_{n<=N} b_n log(1 - z^n) + O(z^{N+1})
inline bool verify_decomposition(const EulerFactorSpec& spec, const ZetaDecomposition& d) {
    int n_limit = std::min<int>(d.depth, static_cast<int>(d.b.size()));
    auto acc = factor_log_series(spec, d.depth);
    for (int n = 1; n <= n_limit; ++n) {
        if (d.b[n - 1].is_zero()) continue;
        auto basis = log_one_minus_zn(d.depth, n, d.b[n - 1]);
        acc = series_add(acc, series_scale(basis, d.b[n - 1]));
    }
    return !series_order(acc).has_value();
}

struct IntegralityResult {
    bool integral = true;
    std::string diagnostic;
};

inline bool spec_has_integer_coefficients(const EulerFactorSpec& spec) {
    for (const auto& c : spec.num)
        if (!c.is_rational_integer()) return false;
    for (const auto& c : spec.den)
        if (!c.is_rational_integer()) return false;
    return true;
}

// Whether every b_n is a rational integer. For an integer-coefficient spec a
// negative answer is impossible by theorem, so it raises a correctness alarm.
inline IntegralityResult integrality(const ZetaDecomposition& d, const EulerFactorSpec& spec) {
    IntegralityResult res;
    for (std::size_t i = 0; i < d.b.size(); ++i) {
        if (d.b[i].is_rational_integer()) continue;
        res.integral = false;
        res.diagnostic = "b_" + std::to_string(i + 1) + " = " + to_string(d.b[i]) +
                         " is not a rational integer";
        break;
    }
    if (!res.integral && spec_has_integer_coefficients(spec))
        throw CorrectnessAlarm("integer-coefficient factor produced non-integral exponent: " +
                               res.diagnostic);
    return res;
}

struct HeuristicPrediction {
    int a = 0;                     // minimum degree
    GaussianRational b;            // leading coefficient of Q - 1
    Rational location{0};          // 1/a
    bool branch_cut_needed = false;
    bool factor_caveat = false;    // an Euler factor may vanish or diverge at 1/a
    std::string caveat;
};

// Rightmost-singularity heuristic: location 1/a, order b, from the minimum
// degree term of Q - 1. Advisory only; the caveat flags per-prime factors
// that can break it (a pole of Q on (0, 2^{-1/a}] makes small-p factors
// diverge before Re(s) reaches 1/a; a zero there vanishes at s = 1/a).
inline HeuristicPrediction predict_rightmost(const EulerFactorSpec& spec) {
    int probe_depth = std::max({spec.depth_hint, poly_degree(spec.num) + poly_degree(spec.den), 2});
    auto q = factor_series(spec, probe_depth);
    std::optional<int> a;
    for (int k = 1; k <= q.depth(); ++k)
        if (!q.coeff(k).is_zero()) {
            a = k;
            break;
        }
    if (spec.is_one() || !a)
        throw ValidationError("predict_rightmost: Q = 1 has no minimum degree term");
    HeuristicPrediction out;
    out.a = *a;
    out.b = q.coeff(*a);
    out.location = Rational(1, *a);
    out.branch_cut_needed = !out.b.is_rational_integer();

    auto flag_roots = [&](const GPoly& poly, const char* what) {
        GPoly p = trim(poly);
        std::vector<GaussianRational> roots;
        GPoly residual = extract_exact_roots(p, &roots);
        for (const auto& w : roots) {
            // real positive root w <= 2^{-1/a}  <=>  w^a <= 1/2 on (0,1)
            bool small = false;
            if (w.is_real() && w.re > 0) {
                Rational pw = w.re;
                Rational acc(1);
                for (int i = 0; i < out.a; ++i) acc *= pw;
                small = acc <= Rational(1, 2);
            }
            if (small) {
                out.factor_caveat = true;
                out.caveat += std::string(what) + " root at z = " + to_string(w) +
                              " lies in (0, 2^(-1/a)]; the p = 2 factor misbehaves at s = 1/a. ";
            }
        }
        if (poly_degree(residual) >= 1) {
            RadiusEnclosure enc = min_root_magnitude(residual);
            double thresh = std::pow(0.5, 1.0 / out.a);
            if (enc.lo.get_d() <= thresh) {
                out.factor_caveat = true;
                out.caveat += std::string(what) +
                              " has a root of magnitude within 2^(-1/a); "
                              "small-p factors may misbehave near s = 1/a. ";
            }
        }
    };
    flag_roots(spec.num, "numerator");
    // any denominator root inside the unit disk already breaks per-factor
    // convergence for small p somewhere in Re(s) > 0
    GPoly den = trim(spec.den);
    if (poly_degree(den) >= 1) {
        RadiusEnclosure enc = min_root_magnitude(den);
        if (enc.lo < 1) {
            out.factor_caveat = true;
            out.caveat +=
                "denominator has a root inside the unit disk; individual Euler "
                "factors diverge for small p (geometric-series pathology). ";
        }
    }
    return out;
}

}  // namespace eulerprod
