#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "eulerprod/gaussian.hpp"

namespace eulerprod {

// Polynomials over Q(i), ascending coefficient order.
using GPoly = std::vector<GaussianRational>;

inline GPoly trim(GPoly p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    return p;
}

inline int poly_degree(const GPoly& p) { return static_cast<int>(p.size()) - 1; }

inline GaussianRational poly_eval(const GPoly& p, const GaussianRational& w) {
    GaussianRational acc;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * w + *it;
    return acc;
}

// exact synthetic division by (z - w); the caller guarantees w is a root
inline GPoly poly_deflate(const GPoly& p, const GaussianRational& w) {
    GPoly q(p.size() - 1);
    GaussianRational carry = p.back();
    for (int k = static_cast<int>(p.size()) - 2; k >= 0; --k) {
        q[k] = carry;
        carry = p[k] + carry * w;
    }
    if (!carry.is_zero()) throw ValidationError("poly_deflate: not a root");
    return q;
}

inline GPoly poly_mod(GPoly a, const GPoly& b) {
    a = trim(std::move(a));
    while (poly_degree(a) >= poly_degree(b)) {
        GaussianRational f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = a[shift + j] - f * b[j];
        a = trim(std::move(a));
        if (a.empty()) break;
    }
    return a;
}

// monic gcd over Q(i)
inline GPoly poly_gcd(GPoly a, GPoly b) {
    a = trim(std::move(a));
    b = trim(std::move(b));
    while (!b.empty()) {
        GPoly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        GaussianRational lead = a.back();
        for (auto& c : a) c = c / lead;
    }
    return a;
}

inline GPoly poly_divide_exact(const GPoly& num, const GPoly& den) {
    GPoly rem = trim(num), q;
    GPoly d = trim(den);
    q.assign(rem.size() - d.size() + 1, GaussianRational());
    for (int k = static_cast<int>(q.size()) - 1; k >= 0; --k) {
        GaussianRational f = rem[k + d.size() - 1] / d.back();
        q[k] = f;
        for (std::size_t j = 0; j < d.size(); ++j) rem[k + j] = rem[k + j] - f * d[j];
    }
    if (!trim(rem).empty()) throw ValidationError("poly_divide_exact: nonzero remainder");
    return trim(std::move(q));
}

namespace detail {

inline std::vector<std::complex<double>> numeric_roots(const GPoly& p) {
    int n = poly_degree(p);
    std::vector<std::complex<double>> c(n + 1);
    for (int k = 0; k <= n; ++k) c[k] = p[k].to_complex();
    for (int k = 0; k <= n; ++k) c[k] /= c[n];
    // Durand-Kerner iteration
    std::vector<std::complex<double>> z(n);
    std::complex<double> seed(0.4, 0.9);
    z[0] = seed;
    for (int i = 1; i < n; ++i) z[i] = z[i - 1] * seed;
    for (int iter = 0; iter < 400; ++iter) {
        double moved = 0;
        for (int i = 0; i < n; ++i) {
            std::complex<double> f = 0;
            for (int k = n; k >= 0; --k) f = f * z[i] + c[k];
            std::complex<double> denom = 1;
            for (int j = 0; j < n; ++j)
                if (j != i) denom *= (z[i] - z[j]);
            if (std::abs(denom) < 1e-300) denom = 1e-300;
            std::complex<double> step = f / denom;
            z[i] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-14) break;
    }
    return z;
}

// best continued-fraction approximation with bounded denominator, accepted
// only when very close; exactness is verified by the caller anyway
inline std::optional<Rational> rationalize(double x, long max_den, double tol) {
    if (!std::isfinite(x) || std::abs(x) > 1e15) return std::nullopt;
    if (std::abs(x) < tol) return Rational(0);
    long p0 = 1, q0 = 0;  // p(-1)/q(-1)
    double v = x;
    long p1 = static_cast<long>(std::floor(v)), q1 = 1;
    for (int it = 0; it < 40; ++it) {
        double approx = static_cast<double>(p1) / static_cast<double>(q1);
        if (std::abs(approx - x) <= tol) {
            Rational r(p1, q1);
            r.canonicalize();
            return r;
        }
        double frac = v - std::floor(v);
        if (frac < 1e-15) break;
        v = 1.0 / frac;
        long a = static_cast<long>(std::floor(v));
        long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den || q2 <= 0) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    return std::nullopt;
}

inline double log2_of(const Rational& q) {
    // accurate log2 of a positive rational of arbitrary size
    long en, ed;
    double dn = mpz_get_d_2exp(&en, q.get_num().get_mpz_t());
    double dd = mpz_get_d_2exp(&ed, q.get_den().get_mpz_t());
    return (std::log2(std::abs(dn)) + static_cast<double>(en)) -
           (std::log2(std::abs(dd)) + static_cast<double>(ed));
}

}  // namespace detail

// Enclosure of a positive real quantity. `exact` means lo == hi is the value.
struct RadiusEnclosure {
    bool finite = true;
    bool exact = false;
    Rational lo{0}, hi{0};

    static RadiusEnclosure infinite() {
        RadiusEnclosure r;
        r.finite = false;
        return r;
    }
    static RadiusEnclosure exactly(const Rational& v) {
        RadiusEnclosure r;
        r.exact = true;
        r.lo = r.hi = v;
        return r;
    }
    double midpoint() const { return (lo.get_d() + hi.get_d()) / 2; }
};

namespace detail {

// [lo, hi] enclosing sqrt(q) for rational q >= 0, tight to ~2^-64
inline RadiusEnclosure sqrt_enclosure(const Rational& q) {
    Rational r;
    if (rational_sqrt(q, &r)) return RadiusEnclosure::exactly(r);
    Integer scaled = floor_to_integer(q * Rational(Integer(1) << 128, 1));
    Integer s;
    mpz_sqrt(s.get_mpz_t(), scaled.get_mpz_t());
    RadiusEnclosure out;
    out.lo = Rational(s, Integer(1) << 64);
    out.hi = Rational(s + 1, Integer(1) << 64);
    out.lo.canonicalize();
    out.hi.canonicalize();
    return out;
}

// Graeffe-iteration enclosure of the minimum root magnitude. Exact rational
// root-squaring plus the two-sided coefficient bound rho in [B/n, 2B] with
// B = max_j |e_j|^{1/j}; k squarings shrink the ratio to (2n)^{1/2^k}.
inline RadiusEnclosure graeffe_min_magnitude(const GPoly& poly) {
    GPoly p = trim(poly);
    int n = poly_degree(p);
    if (n <= 0) return RadiusEnclosure::infinite();
    if (p[0].is_zero()) throw ValidationError("graeffe: zero constant term");
    // reversed polynomial: roots are reciprocals, track the max magnitude
    GPoly s(p.rbegin(), p.rend());
    const int steps = 10;
    for (int it = 0; it < steps; ++it) {
        // t(y) = e(y)^2 - y*o(y)^2 where s(z) = e(z^2) + z o(z^2)
        std::size_t m = s.size();
        GPoly t(m, GaussianRational());
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                std::size_t sum = i + j;
                if (sum % 2) continue;
                GaussianRational term = s[i] * s[j];
                if ((i % 2) && (j % 2)) term = -term;
                t[sum / 2] = t[sum / 2] + term;
            }
        s = std::move(t);
    }
    double log2B = -1e300;
    double log2lead = detail::log2_of(s.back().norm()) / 2;
    for (int j = 1; j <= n; ++j) {
        const GaussianRational& e = s[n - j];
        if (e.is_zero()) continue;
        double l = (detail::log2_of(e.norm()) / 2 - log2lead) / j;
        log2B = std::max(log2B, l);
    }
    double scale = std::pow(2.0, -steps);  // 1/2^k
    double lo_log = (log2B - std::log2(static_cast<double>(n))) * scale;
    double hi_log = (log2B + 1.0) * scale;
    // min magnitude of the original polynomial is 1/max(reversed)
    RadiusEnclosure out;
    out.lo = Rational(std::exp2(-hi_log) * (1.0 - 1e-9));
    out.hi = Rational(std::exp2(-lo_log) * (1.0 + 1e-9));
    out.lo.canonicalize();
    out.hi.canonicalize();
    return out;
}

}  // namespace detail

// All roots of p that are Gaussian rationals, found by numeric approximation,
// exact verification, and exact deflation. Returns the residual factor.
inline GPoly extract_exact_roots(GPoly p, std::vector<GaussianRational>* roots) {
    p = trim(std::move(p));
    bool progress = true;
    while (poly_degree(p) >= 1 && progress) {
        progress = false;
        for (const auto& z : detail::numeric_roots(p)) {
            auto re = detail::rationalize(z.real(), 1000000, 1e-7);
            auto im = detail::rationalize(z.imag(), 1000000, 1e-7);
            if (!re || !im) continue;
            GaussianRational w(*re, *im);
            if (!poly_eval(p, w).is_zero()) continue;
            roots->push_back(w);
            p = poly_deflate(p, w);
            progress = true;
            break;
        }
    }
    return p;
}

// Validated enclosure of min |root| over all roots of p (p(0) != 0).
// Degree-0 input has no roots: infinite radius.
inline RadiusEnclosure min_root_magnitude(const GPoly& poly) {
    GPoly p = trim(poly);
    if (poly_degree(p) <= 0) return RadiusEnclosure::infinite();
    if (p[0].is_zero()) throw ValidationError("min_root_magnitude: root at z = 0");

    std::vector<GaussianRational> exact;
    GPoly residual = extract_exact_roots(p, &exact);

    std::vector<RadiusEnclosure> cands;
    for (const auto& w : exact) cands.push_back(detail::sqrt_enclosure(w.norm()));
    if (poly_degree(residual) >= 1) cands.push_back(detail::graeffe_min_magnitude(residual));

    RadiusEnclosure out;
    out.lo = cands[0].lo;
    out.hi = cands[0].hi;
    for (const auto& c : cands) {
        out.lo = std::min(out.lo, c.lo);
        out.hi = std::min(out.hi, c.hi);
    }
    for (const auto& c : cands) {
        if (!c.exact) continue;
        bool minimal = c.lo <= out.hi;
        for (const auto& other : cands)
            if (&other != &c && c.lo > other.lo) minimal = false;
        if (minimal) {
            out = RadiusEnclosure::exactly(c.lo);
            break;
        }
    }
    return out;
}

}  // namespace eulerprod
