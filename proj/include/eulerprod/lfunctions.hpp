#pragma once

#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include "eulerprod/combinatorics.hpp"
#include "eulerprod/errors.hpp"
#include "eulerprod/primes.hpp"

namespace eulerprod {

using Complex = std::complex<double>;

struct EvalValue {
    Complex value{0.0, 0.0};
    double abs_err = 0.0;
    bool pole = false;  // requested point is a pole
};

namespace detail {

// B_2 .. B_32
inline const double kBernoulli[] = {
    1.0 / 6,           -1.0 / 30,          1.0 / 42,           -1.0 / 30,
    5.0 / 66,          -691.0 / 2730,      7.0 / 6,            -3617.0 / 510,
    43867.0 / 798,     -174611.0 / 330,    854513.0 / 138,     -236364091.0 / 2730,
    8553103.0 / 6,     -23749461029.0 / 870, 8615841276005.0 / 14322, -7709321041217.0 / 510};

constexpr double kImWindow = 50.0;

// Euler-Maclaurin pieces of the Hurwitz zeta zeta(s, a), a in (0, 1], with
// the pole term exp((1-s) log b)/(s-1) kept separate so Dirichlet L-sums can
// cancel the poles analytically. M scales with |Im s| so the Bernoulli tail
// stays far below double precision at any height.
struct HurwitzParts {
    Complex regular{0.0, 0.0};
    double log_base = 0.0;
    double abs_err = 0.0;
};

inline HurwitzParts hurwitz_em_parts(Complex s, double a) {
    const double sigma = s.real();
    if (!(a > 0.0) || a > 1.0) throw ValidationError("hurwitz shift must lie in (0, 1]");
    const int M = 40 + static_cast<int>(std::ceil(std::abs(s.imag())));
    const int J = 14;
    HurwitzParts out;
    Complex sum(0.0, 0.0);
    for (int k = 0; k < M; ++k) sum += std::exp(-s * std::log(static_cast<double>(k) + a));
    const double base = static_cast<double>(M) + a;
    const double logb = std::log(base);
    sum += 0.5 * std::exp(-s * logb);
    // correction terms B_{2j}/(2j)! * s(s+1)...(s+2j-2) * base^{-s-2j+1}
    Complex poch = s;   // rising product, updated per term
    double fact = 2.0;  // (2j)!
    double last_mag = 0.0;
    for (int j = 1; j <= J; ++j) {
        Complex term = kBernoulli[j - 1] / fact * poch * std::exp((-s - (2.0 * j - 1.0)) * logb);
        sum += term;
        last_mag = std::abs(term);
        poch *= (s + Complex(2.0 * j - 1.0, 0.0)) * (s + Complex(2.0 * j, 0.0));
        fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
    }
    double safety = std::abs(s + Complex(2.0 * J + 1.0, 0.0)) / (sigma + 2.0 * J + 1.0);
    out.regular = sum;
    out.log_base = logb;
    out.abs_err = last_mag * safety * 4.0 + (M + 4) * 4e-16 * (1.0 + std::abs(sum));
    return out;
}

inline EvalValue hurwitz_em(Complex s, double a) {
    HurwitzParts parts = hurwitz_em_parts(s, a);
    EvalValue out;
    out.value = parts.regular + std::exp((1.0 - s) * parts.log_base) / (s - 1.0);
    out.abs_err = parts.abs_err;
    return out;
}

// (exp((1-s) L) - 1)/(s - 1) = -(L + (1-s) L^2/2! + (1-s)^2 L^3/3! + ...),
// the pole term with its residue removed; stable arbitrarily close to s = 1
inline Complex pole_free_term(Complex s, double logb) {
    Complex u = 1.0 - s;
    Complex acc(0.0, 0.0), pw(1.0, 0.0);
    double fact = 1.0;
    for (int k = 1; k <= 40; ++k) {
        fact *= k;
        Complex term = pw * std::pow(logb, k) / fact;
        acc += term;
        pw *= u;
        if (std::abs(term) < 1e-20 && k > 3) break;
    }
    return -acc;
}

// L(s, chi) for nontrivial chi: the bare 1/(s-1) poles cancel by
// sum chi(a) = 0, so assemble from pole-free pieces near s = 1
inline EvalValue L_assemble(Complex s, long modulus, const std::vector<Complex>& chi_values) {
    EvalValue out;
    const double q = static_cast<double>(modulus);
    const bool near_pole = std::abs(s - Complex(1.0, 0.0)) < 0.1;
    Complex sum(0.0, 0.0);
    double err = 0.0;
    for (long a = 1; a <= modulus; ++a) {
        Complex c = chi_values[static_cast<std::size_t>(a % modulus)];
        if (c == Complex(0.0, 0.0)) continue;
        HurwitzParts h = hurwitz_em_parts(s, static_cast<double>(a) / q);
        Complex pole_part = near_pole ? pole_free_term(s, h.log_base)
                                      : std::exp((1.0 - s) * h.log_base) / (s - 1.0);
        sum += c * (h.regular + pole_part);
        err += std::abs(c) * h.abs_err;
    }
    Complex scale = std::exp(-s * std::log(q));
    out.value = scale * sum;
    out.abs_err = std::abs(scale) * err + 4e-16 * std::abs(out.value);
    return out;
}

}  // namespace detail

// Riemann zeta on Re(s) > 0, |Im s| <= 50, by Euler-Maclaurin summation.
// Absolute error well under 1e-10 inside the window; s = 1 reports a pole.
inline EvalValue zeta_eval(Complex s) {
    if (!(std::isfinite(s.real()) && std::isfinite(s.imag())))
        throw ValidationError("zeta_eval: non-finite argument");
    if (s == Complex(1.0, 0.0)) {
        EvalValue out;
        out.pole = true;
        return out;
    }
    if (s.real() <= 0.0 || std::abs(s.imag()) > detail::kImWindow)
        throw UnsupportedRegionError("zeta_eval supports Re(s) > 0, |Im s| <= 50");
    return detail::hurwitz_em(s, 1.0);
}

inline EvalValue hurwitz_zeta(Complex s, double a) {
    if (s == Complex(1.0, 0.0)) {
        EvalValue out;
        out.pole = true;
        return out;
    }
    if (s.real() <= 0.0 || std::abs(s.imag()) > detail::kImWindow)
        throw UnsupportedRegionError("hurwitz_zeta supports Re(s) > 0, |Im s| <= 50");
    return detail::hurwitz_em(s, a);
}

// Dirichlet character mod q given by its values on residues coprime to q
// (zero elsewhere).
struct DirichletCharacter {
    long modulus = 1;
    std::vector<Complex> values;  // indexed by residue 0..q-1
    bool principal = true;

    Complex at(long n) const {
        long r = n % modulus;
        if (r < 0) r += modulus;
        return values[static_cast<std::size_t>(r)];
    }
};

// L(s, chi) = q^{-s} sum_a chi(a) zeta(s, a/q) for nontrivial chi.
// The principal character belongs to zeta_eval with its Euler-factor
// correction, not here.
inline EvalValue dirichlet_L(Complex s, const DirichletCharacter& chi) {
    if (chi.principal)
        throw ValidationError("dirichlet_L: use zeta_eval plus Euler factors for the principal character");
    if (s.real() <= 0.0 || std::abs(s.imag()) > detail::kImWindow)
        throw UnsupportedRegionError("dirichlet_L supports Re(s) > 0, |Im s| <= 50");
    return detail::L_assemble(s, chi.modulus, chi.values);
}

// P_{>P0}(w) = sum_{p > P0} p^{-w} via Moebius inversion of the prime-tail
// zeta: requires Re(w) > 1 with enough margin that
// zeta_{>P0}(kw) = zeta(kw) prod_{p<=P0}(1 - p^{-kw}) stays near 1.
inline EvalValue prime_zeta_tail(Complex w, const std::vector<uint32_t>& primes_upto_p0) {
    if (w.real() <= 1.02)
        throw UnsupportedRegionError("prime_zeta_tail needs Re(w) > 1.02");
    const double p0 = primes_upto_p0.empty() ? 2.0
                                             : static_cast<double>(primes_upto_p0.back());
    // the internal Euler-Maclaurin stays accurate at any height (M scales
    // with |Im|), so k-fold arguments may leave the public zeta window
    auto log_zeta_tail = [&](Complex u) -> Complex {
        Complex acc = detail::hurwitz_em(u, 1.0).value;
        for (uint32_t p : primes_upto_p0)
            acc *= 1.0 - std::exp(-u * std::log(static_cast<double>(p)));
        return std::log(acc);  // principal; the value is close to 1
    };
    EvalValue out;
    Complex sum(0.0, 0.0);
    for (unsigned long k = 1; k <= 60; ++k) {
        // |log zeta_{>P0}(kw)| decays like p0^{-k Re w}; stop once negligible
        if (static_cast<double>(k) * w.real() * std::log(p0) > 48.0 * 2.302585) break;
        int mu = moebius(k);
        if (mu == 0) continue;
        Complex term = static_cast<double>(mu) / static_cast<double>(k) *
                       log_zeta_tail(w * static_cast<double>(k));
        sum += term;
        if (std::abs(term) < 1e-19 && k > 2) break;
    }
    out.value = sum;
    out.abs_err = 1e-14 * (1.0 + std::abs(sum)) + 1e-19;
    return out;
}

}  // namespace eulerprod
