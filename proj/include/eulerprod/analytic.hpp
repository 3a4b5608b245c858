#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eulerprod/frob_decomp.hpp"
#include "eulerprod/lfunctions.hpp"
#include "eulerprod/primes.hpp"
#include "eulerprod/zeta_decomp.hpp"

namespace eulerprod {

struct EvalOptions {
    double target_abs_err = 1e-10;
    long prime_cutoff = 4096;      // direct part of the compensated product
    long hard_cap = 100000000;     // cutoff growth stops here
    int tail_terms = 40;           // series depth beyond N for the prime tail
    int threads = thread_count_from_env();
};

struct EvaluationResult {
    Complex value{0.0, 0.0};
    double estimated_error = 0.0;
    long prime_cutoff = 0;
    int depth = 0;
    bool at_singularity = false;
};

namespace detail {

inline Complex cpow_int(Complex z, long e) {
    if (e == 0) return {1.0, 0.0};
    bool neg = e < 0;
    unsigned long n = static_cast<unsigned long>(neg ? -e : e);
    Complex acc(1.0, 0.0), base = z;
    while (n) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return neg ? 1.0 / acc : acc;
}

// zeta without the public Im window: Euler-Maclaurin scales its node count
// with the height, so n-fold arguments of the head factors stay accurate
inline EvalValue zeta_internal(Complex u) {
    if (u == Complex(1.0, 0.0)) {
        EvalValue out;
        out.pole = true;
        return out;
    }
    if (u.real() <= 0.0) throw UnsupportedRegionError("zeta requires Re > 0");
    return hurwitz_em(u, 1.0);
}

inline bool is_near(double x, double y) { return std::abs(x - y) < 1e-12; }

// z^b for exact Gaussian-rational exponent b. Integer exponents are exact
// powers; anything else takes the principal branch and is only reached on
// the positive real axis (enforced by the callers' region checks).
inline Complex cpow_exact(Complex z, const GaussianRational& b, bool* branch_risk) {
    if (b.is_rational_integer()) {
        long e = b.re.get_num().get_si();
        return cpow_int(z, e);
    }
    if (z.real() <= 0.0 && std::abs(z.imag()) < 1e-14) *branch_risk = true;
    return std::exp(b.to_complex() * std::log(z));
}

inline Complex eval_factor(const EulerFactorSpec& spec, Complex z, bool* pole_hit) {
    Complex num(0.0, 0.0), den(0.0, 0.0);
    for (auto it = spec.num.rbegin(); it != spec.num.rend(); ++it) num = num * z + it->to_complex();
    for (auto it = spec.den.rbegin(); it != spec.den.rend(); ++it) den = den * z + it->to_complex();
    if (std::abs(den) < 1e-290) {
        *pole_hit = true;
        return {0.0, 0.0};
    }
    return num / den;
}

// extend the exponent sequence of a constant-coefficient factor to `depth`
inline std::vector<GaussianRational> extended_b(const EulerFactorSpec& spec, int depth) {
    auto logq = factor_log_series(spec, depth);
    std::vector<GaussianRational> q(logq.coeffs().begin() + 1, logq.coeffs().end());
    return compute_b_from_log(q);
}

// Dirichlet-series coefficients of -sum_{n>N} b_n log(1-z^n):
// beta_m = sum_{n | m, n > N} (n/m) b_n for m > N
inline std::vector<Complex> tail_coefficients(const std::vector<GaussianRational>& b_ext, int N,
                                              int M) {
    std::vector<Complex> beta(static_cast<std::size_t>(M) + 1, Complex(0.0, 0.0));
    for (int n = N + 1; n <= M; ++n) {
        if (b_ext[n - 1].is_zero()) continue;
        Complex bn = b_ext[n - 1].to_complex();
        for (int m = n; m <= M; m += n)
            beta[m] += bn * (static_cast<double>(n) / static_cast<double>(m));
    }
    return beta;
}

}  // namespace detail

// Numeric value of the continued Euler product at s, assembled as
//   prod_{n<=N} zeta(ns)^{b_n}
//   * prod_{p<=P0} [ Q(p^{-s}) prod_{n<=N} (1-p^{-ns})^{b_n} ]
//   * exp( sum_{m>N} beta_m P_{>P0}(ms) )
// The last factor sums the compensated product over all remaining primes
// through the prime zeta function, so no raw cutoff error survives.
inline EvaluationResult continuation_eval(const ZetaDecomposition& d, const EulerFactorSpec& spec,
                                          Complex s, EvalOptions opts = {}) {
    const int N = d.depth;
    EvaluationResult res;
    res.depth = N;
    if (!(std::isfinite(s.real()) && std::isfinite(s.imag())))
        throw ValidationError("continuation_eval: non-finite s");
    if (std::abs(s.imag()) > 50.0)
        throw UnsupportedRegionError("continuation_eval supports |Im s| <= 50");
    const double sigma = s.real();
    if (sigma < 1.0 / (N + 1) + 0.05 || (N + 1) * sigma < 1.10)
        throw UnsupportedRegionError(
            "continuation_eval needs Re(s) comfortably above 1/(depth+1); increase the depth");

    // at-singularity marker: s = 1/n for some retained exponent
    for (int n = 1; n <= N; ++n)
        if (!d.b[n - 1].is_zero() && detail::is_near(sigma, 1.0 / n) &&
            std::abs(s.imag()) < 1e-12) {
            res.at_singularity = true;
            return res;
        }

    // branch discipline for non-integral exponents
    bool all_integral = true;
    double rightmost = 0.0;
    for (int n = 1; n <= N; ++n) {
        if (d.b[n - 1].is_zero()) continue;
        rightmost = std::max(rightmost, 1.0 / n);
        if (!d.b[n - 1].is_rational_integer()) all_integral = false;
    }
    if (!all_integral) {
        if (std::abs(s.imag()) > 1e-14)
            throw ValidationError(
                "non-integral exponents: evaluation is restricted to the real axis "
                "(branch ambiguity off it)");
        if (sigma <= rightmost)
            throw ValidationError(
                "non-integral exponents: evaluate on the real axis right of all singularities");
    }

    const int M = N + opts.tail_terms;
    auto b_ext = detail::extended_b(spec, M);
    auto beta = detail::tail_coefficients(b_ext, N, M);

    // the tail coefficients grow like radius^{-m}; the cutoff must make
    // p0^{-sigma} beat that growth so the tail series decays geometrically
    long p0 = opts.prime_cutoff;
    double rlo = d.radius.finite ? std::max(1e-6, d.radius.lo.get_d()) : 1.0;
    double needed = std::pow(4.0 / std::min(1.0, rlo), 1.0 / sigma);
    while (static_cast<double>(p0) < needed && p0 < opts.hard_cap)
        p0 = std::min(opts.hard_cap, p0 * 4);
    res.prime_cutoff = p0;

    double err_log = 0.0;  // accumulated relative error of the value
    Complex value(1.0, 0.0);
    bool branch_risk = false;

    for (int n = 1; n <= N; ++n) {
        if (d.b[n - 1].is_zero()) continue;
        EvalValue z = detail::zeta_internal(s * static_cast<double>(n));
        if (z.pole) {
            res.at_singularity = true;
            return res;
        }
        value *= detail::cpow_exact(z.value, d.b[n - 1], &branch_risk);
        double babs = std::abs(d.b[n - 1].to_complex());
        err_log += babs * (z.abs_err / std::max(1e-300, std::abs(z.value)));
    }

    auto primes = sieve_primes(static_cast<uint64_t>(p0));
    bool pole_hit = false;
    Complex prime_part = deterministic_prime_product(
        primes, opts.threads, [&](uint32_t p) -> Complex {
            Complex zp = std::exp(-s * std::log(static_cast<double>(p)));
            bool local_pole = false;
            Complex f = detail::eval_factor(spec, zp, &local_pole);
            if (local_pole) pole_hit = true;
            for (int n = 1; n <= N; ++n) {
                if (d.b[n - 1].is_zero()) continue;
                Complex base = 1.0 - detail::cpow_int(zp, n);
                f *= detail::cpow_exact(base, d.b[n - 1], &branch_risk);
            }
            return f;
        });
    if (pole_hit) {
        res.at_singularity = true;
        return res;
    }
    value *= prime_part;
    err_log += static_cast<double>(primes.size()) * 1e-15;

    // terms whose rigorous bound is already negligible are skipped (and the
    // bound charged to the error); computing them would only add beta-scaled
    // floating-point noise
    Complex tail(0.0, 0.0);
    double tail_err = 0.0;
    for (int m = N + 1; m <= M; ++m) {
        if (std::abs(beta[m]) < 1e-300) continue;
        double t = m * sigma;
        double bound =
            std::abs(beta[m]) * std::pow(static_cast<double>(p0), 1.0 - t) * 10.0 / (t - 1.0);
        if (bound < opts.target_abs_err / 16.0) {
            tail_err += bound;
            continue;
        }
        EvalValue pz = prime_zeta_tail(s * static_cast<double>(m), primes);
        tail += beta[m] * pz.value;
        tail_err += std::abs(beta[m]) * (pz.abs_err + 1e-15);
    }
    value *= std::exp(tail);
    err_log += tail_err;

    if (branch_risk)
        throw ValidationError("principal branch hit a negative real base; unsupported point");
    res.value = value;
    res.estimated_error = std::abs(value) * err_log + 1e-300;
    return res;
}

// lim_{s -> 1/a} (s - 1/a)^{order} Q(s) for a genuine pole/zero at 1/a of
// integer order b_a: the zeta factor at n = a contributes a^{-b_a} through
// (as - 1) zeta(as) -> 1/a, everything else is evaluated directly.
inline Complex leading_coefficient(const ZetaDecomposition& d, const EulerFactorSpec& spec,
                                   const Rational& location, EvalOptions opts = {}) {
    const int N = d.depth;
    if (location <= 0 || location.get_num() != 1)
        throw ValidationError("leading_coefficient expects a location of the form 1/a");
    long a = location.get_den().get_si();
    if (a > N) throw ValidationError("location 1/a needs depth >= a");
    const GaussianRational& order = d.b[a - 1];
    if (order.is_zero())
        throw ValidationError("no pole or zero of the zeta product at the requested location");
    if (!order.is_rational_integer())
        throw ValidationError("branch-cut singularity: leading coefficient undefined over a branch cut");
    const double s0 = 1.0 / static_cast<double>(a);
    if ((N + 1) * s0 < 1.10)
        throw UnsupportedRegionError("increase the depth: remainder not convergent at 1/a");

    long border = order.re.get_num().get_si();
    bool branch_risk = false;
    Complex value = detail::cpow_int(Complex(static_cast<double>(a), 0.0), -border);
    for (int n = 1; n <= N; ++n) {
        if (n == a || d.b[n - 1].is_zero()) continue;
        EvalValue z = detail::zeta_internal(Complex(n * s0, 0.0));
        if (z.pole) throw ValidationError("another zeta factor is singular at the same point");
        value *= detail::cpow_exact(z.value, d.b[n - 1], &branch_risk);
    }

    const int M = N + opts.tail_terms;
    auto b_ext = detail::extended_b(spec, M);
    auto beta = detail::tail_coefficients(b_ext, N, M);
    long p0 = opts.prime_cutoff;
    double rlo = d.radius.finite ? std::max(1e-6, d.radius.lo.get_d()) : 1.0;
    double needed = std::pow(4.0 / std::min(1.0, rlo), 1.0 / s0);
    while (static_cast<double>(p0) < needed && p0 < opts.hard_cap)
        p0 = std::min(opts.hard_cap, p0 * 4);
    auto primes = sieve_primes(static_cast<uint64_t>(p0));
    bool pole_hit = false;
    Complex prime_part = deterministic_prime_product(
        primes, opts.threads, [&](uint32_t p) -> Complex {
            Complex zp = std::exp(Complex(-s0 * std::log(static_cast<double>(p)), 0.0));
            bool local_pole = false;
            Complex f = detail::eval_factor(spec, zp, &local_pole);
            if (local_pole) pole_hit = true;
            for (int n = 1; n <= N; ++n) {
                if (d.b[n - 1].is_zero()) continue;
                Complex base = 1.0 - detail::cpow_int(zp, n);
                f *= detail::cpow_exact(base, d.b[n - 1], &branch_risk);
            }
            return f;
        });
    if (pole_hit)
        throw ValidationError(
            "an Euler factor is singular at the location; the reported order is unreliable");
    value *= prime_part;
    Complex tail(0.0, 0.0);
    for (int m = N + 1; m <= M; ++m) {
        if (std::abs(beta[m]) < 1e-300) continue;
        double t = m * s0;
        double bound =
            std::abs(beta[m]) * std::pow(static_cast<double>(p0), 1.0 - t) * 10.0 / (t - 1.0);
        if (bound < opts.target_abs_err / 16.0) continue;
        tail += beta[m] * prime_zeta_tail(Complex(m * s0, 0.0), primes).value;
    }
    value *= std::exp(tail);
    if (branch_risk)
        throw ValidationError("principal branch hit a negative real base at the location");
    return value;
}

// direct truncated Euler product over p <= limit; the independent oracle
inline Complex direct_euler_product(const EulerFactorSpec& spec, Complex s, uint64_t limit,
                                    int threads = thread_count_from_env()) {
    auto primes = sieve_primes(limit);
    bool pole_hit = false;
    Complex out = deterministic_prime_product(primes, threads, [&](uint32_t p) -> Complex {
        Complex zp = std::exp(-s * std::log(static_cast<double>(p)));
        bool local = false;
        Complex f = detail::eval_factor(spec, zp, &local);
        if (local) pole_hit = true;
        return f;
    });
    if (pole_hit) throw ValidationError("direct product hits a factor pole");
    return out;
}

struct AbscissaResult {
    Rational value{0};
    bool trivial_factor = false;  // Q = 1: empty product, abscissa 0 by convention
    bool warning = false;
    std::string warning_text;
};

// abscissa of absolute convergence 1/a from the minimum degree a of Q - 1
// (p-series test applied to the dominant prime-power term)
inline AbscissaResult abscissa(const EulerFactorSpec& spec) {
    AbscissaResult out;
    if (spec.is_one()) {
        out.trivial_factor = true;
        return out;
    }
    auto pred = predict_rightmost(spec);
    out.value = Rational(1, pred.a);
    out.warning = pred.factor_caveat;
    out.warning_text = pred.caveat;
    return out;
}

enum class SingularityKind { ZetaPower, LPower, ExceptionalFactor };

struct SingularityEntry {
    Rational location{0};
    Cyclotomic order;          // exact exponent, never a float
    SingularityKind kind = SingularityKind::ZetaPower;
    bool branch_cut = false;
    bool possible_cancellation = false;
    std::string source;
};

struct SingularityReport {
    std::vector<SingularityEntry> entries;  // sorted by descending Re(location)
    std::vector<std::string> caveats;       // symbolic loci (zeta/L zeros, factor zeros)
    bool branch_cut_needed = false;
};

namespace detail {

// exact test |w| = p^{-1/n}, i.e. norm(w)^n * p^2 = 1
inline bool magnitude_matches_location(const GaussianRational& w, long p, int n) {
    Rational nm = w.norm();
    Rational acc(1);
    for (int i = 0; i < n; ++i) acc *= nm;
    return acc * Rational(p * p) == 1;
}

inline void exceptional_zero_caveats(const GPoly& num, long p_lo, long p_hi,
                                     const std::string& what, SingularityReport* rep, int depth,
                                     const std::vector<const GaussianRational*>& orders) {
    GPoly zeros = trim(num);
    if (poly_degree(zeros) < 1 || p_hi < p_lo) return;
    std::vector<GaussianRational> roots;
    extract_exact_roots(zeros, &roots);
    rep->caveats.push_back("zeros of " + what + " for primes " + std::to_string(p_lo) +
                           " <= p <= " + std::to_string(p_hi) +
                           " are potential zero loci of the product");
    // flag entries whose real part carries a factor zero on the same line
    for (const auto& w : roots) {
        if (w.is_zero()) continue;
        for (uint32_t p : sieve_primes(static_cast<uint64_t>(p_hi))) {
            if (static_cast<long>(p) < p_lo) continue;
            for (int n = 1; n <= depth; ++n) {
                if (orders[n - 1] == nullptr) continue;
                if (magnitude_matches_location(w, static_cast<long>(p), n))
                    for (auto& e : rep->entries)
                        if (e.location == Rational(1, n)) e.possible_cancellation = true;
            }
        }
    }
}

}  // namespace detail

// Locations and orders of all singularities on Re(s) > eps inherited from
// the zeta powers, plus symbolic caveats for zeta-zero loci and for zeros of
// the finitely many exceptional Euler factors.
inline SingularityReport singularity_report(const ZetaDecomposition& d,
                                            const EulerFactorSpec& spec, const Rational& eps) {
    if (eps <= 0 || eps >= 1) throw ValidationError("epsilon must lie in (0,1)");
    Integer want = ceil_to_integer(Rational(1) / eps);
    if (Integer(d.depth) < want)
        throw ValidationError("decomposition depth is too small for this epsilon");
    SingularityReport rep;
    std::vector<const GaussianRational*> orders(static_cast<std::size_t>(d.depth), nullptr);
    for (int n = 1; n <= d.depth; ++n) {
        const GaussianRational& b = d.b[n - 1];
        if (b.is_zero()) continue;
        orders[n - 1] = &b;
        SingularityEntry e;
        e.location = Rational(1, n);
        e.order = Cyclotomic::from_gaussian(b);
        e.kind = SingularityKind::ZetaPower;
        e.branch_cut = !b.is_rational_integer();
        e.source = "zeta(" + std::to_string(n) + "s)^(" + to_string(b) + ")";
        rep.entries.push_back(std::move(e));
        rep.branch_cut_needed |= !b.is_rational_integer();
        rep.caveats.push_back("zeros of zeta(" + std::to_string(n) +
                              "s) are potential singularity loci (0 < Re(s) < " +
                              Rational(1, n).get_str() + ")");
    }
    long bound = d.exceptional_prime_bound.fits_slong_p() ? d.exceptional_prime_bound.get_si() : 0;
    if (bound >= 2 && !spec.is_one()) {
        std::string desc = "the Euler factor";
        detail::exceptional_zero_caveats(spec.num, 2, std::min(bound, 257l), desc, &rep, d.depth,
                                         orders);
    }
    return rep;
}

// Frobenian variant: poles and zeros at s = 1/n come from the trivial
// component (nontrivial L-functions are nonzero and finite at 1); every
// nontrivial component contributes symbolic zero-locus caveats only.
inline SingularityReport singularity_report(const FrobDecomposition& d,
                                            const FrobenianFactorSpec& spec, const Rational& eps) {
    if (eps <= 0 || eps >= 1) throw ValidationError("epsilon must lie in (0,1)");
    Integer want = ceil_to_integer(Rational(1) / eps);
    if (Integer(d.depth) < want)
        throw ValidationError("decomposition depth is too small for this epsilon");
    const auto& table = spec.table;
    std::size_t triv = table.irreducibles.size();
    ClassFunction ones = ClassFunction::constant(table.class_count(), Cyclotomic(Rational(1)));
    for (std::size_t r = 0; r < table.irreducibles.size(); ++r)
        if (table.irreducibles[r] == ones) triv = r;
    if (triv == table.irreducibles.size())
        throw ValidationError("character table lacks the trivial character");

    SingularityReport rep;
    for (int n = 1; n <= d.depth; ++n) {
        const Cyclotomic& b = d.b[n - 1][triv];
        if (!b.is_zero()) {
            SingularityEntry e;
            e.location = Rational(1, n);
            e.order = b;
            e.kind = SingularityKind::ZetaPower;
            e.branch_cut = !b.is_rational_integer();
            e.source = "zeta(" + std::to_string(n) + "s)^(" + to_string(b) + ")";
            rep.entries.push_back(std::move(e));
            rep.branch_cut_needed |= !b.is_rational_integer();
            rep.caveats.push_back("zeros of zeta(" + std::to_string(n) +
                                  "s) are potential singularity loci");
        }
        for (std::size_t rho = 0; rho < table.irreducibles.size(); ++rho) {
            if (rho == triv || d.b[n - 1][rho].is_zero()) continue;
            rep.branch_cut_needed |= !d.b[n - 1][rho].is_rational_integer();
            rep.caveats.push_back("zeros of L(" + std::to_string(n) + "s, rho_" +
                                  std::to_string(rho) +
                                  ") are potential singularity loci (exponent " +
                                  to_string(d.b[n - 1][rho]) + ")");
        }
    }
    for (const auto& [p, factor] : spec.exceptional) {
        std::vector<const GaussianRational*> orders(static_cast<std::size_t>(d.depth), nullptr);
        // flag against the trivial-component entries
        std::vector<GaussianRational> trivial_orders(static_cast<std::size_t>(d.depth));
        for (int n = 1; n <= d.depth; ++n)
            if (!d.b[n - 1][triv].is_zero() && d.b[n - 1][triv].is_rational()) {
                trivial_orders[n - 1] = GaussianRational(d.b[n - 1][triv].rational_value());
                orders[n - 1] = &trivial_orders[n - 1];
            }
        detail::exceptional_zero_caveats(factor.num, p, p,
                                         "the exceptional factor at p = " + std::to_string(p),
                                         &rep, d.depth, orders);
    }
    return rep;
}

}  // namespace eulerprod
