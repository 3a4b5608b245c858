#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "eulerprod/errors.hpp"
#include "eulerprod/ring.hpp"

namespace eulerprod {

// Formal power series truncated at an explicit depth D: coefficients of
// z^0..z^D are stored, everything beyond is dropped. All arithmetic is exact;
// no coefficient ever passes through floating point.
template <class R>
class TruncatedSeries {
  public:
    TruncatedSeries(int depth, const R& constant_term)
        : c_(static_cast<std::size_t>(depth) + 1, zero_like(constant_term)) {
        if (depth < 0) throw ValidationError("series depth must be >= 0");
        c_[0] = constant_term;
    }

    static TruncatedSeries from_coeffs(int depth, std::vector<R> coeffs) {
        if (coeffs.empty()) throw ValidationError("series needs at least a constant term");
        TruncatedSeries s(depth, coeffs[0]);
        for (std::size_t k = 1; k < coeffs.size() && k <= static_cast<std::size_t>(depth); ++k)
            s.c_[k] = std::move(coeffs[k]);
        return s;
    }

    int depth() const { return static_cast<int>(c_.size()) - 1; }
    const R& coeff(int k) const { return c_[static_cast<std::size_t>(k)]; }
    void set_coeff(int k, const R& v) { c_[static_cast<std::size_t>(k)] = v; }
    const std::vector<R>& coeffs() const { return c_; }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        if (a.depth() != b.depth()) return false;
        for (int k = 0; k <= a.depth(); ++k)
            if (!(a.c_[k] == b.c_[k])) return false;
        return true;
    }

  private:
    std::vector<R> c_;
};

template <class R>
TruncatedSeries<R> series_add(const TruncatedSeries<R>& a, const TruncatedSeries<R>& b) {
    check_same_ring(a.coeff(0), b.coeff(0));
    int d = std::min(a.depth(), b.depth());
    TruncatedSeries<R> out(d, a.coeff(0) + b.coeff(0));
    for (int k = 1; k <= d; ++k) out.set_coeff(k, a.coeff(k) + b.coeff(k));
    return out;
}

template <class R>
TruncatedSeries<R> series_sub(const TruncatedSeries<R>& a, const TruncatedSeries<R>& b) {
    check_same_ring(a.coeff(0), b.coeff(0));
    int d = std::min(a.depth(), b.depth());
    TruncatedSeries<R> out(d, a.coeff(0) - b.coeff(0));
    for (int k = 1; k <= d; ++k) out.set_coeff(k, a.coeff(k) - b.coeff(k));
    return out;
}

// Cauchy product, truncated at min(depth(a), depth(b)).
template <class R>
TruncatedSeries<R> series_mul(const TruncatedSeries<R>& a, const TruncatedSeries<R>& b) {
    check_same_ring(a.coeff(0), b.coeff(0));
    int d = std::min(a.depth(), b.depth());
    TruncatedSeries<R> out(d, zero_like(a.coeff(0)));
    for (int i = 0; i <= d; ++i) {
        if (is_zero_elem(a.coeff(i))) continue;
        for (int j = 0; i + j <= d; ++j) {
            if (is_zero_elem(b.coeff(j))) continue;
            out.set_coeff(i + j, out.coeff(i + j) + a.coeff(i) * b.coeff(j));
        }
    }
    return out;
}

template <class R>
TruncatedSeries<R> series_scale(const TruncatedSeries<R>& a, const R& s) {
    TruncatedSeries<R> out(a.depth(), a.coeff(0) * s);
    for (int k = 1; k <= a.depth(); ++k) out.set_coeff(k, a.coeff(k) * s);
    return out;
}

// Smallest degree with a nonzero coefficient; nullopt when every stored
// coefficient vanishes ("beyond depth").
template <class R>
std::optional<int> series_order(const TruncatedSeries<R>& f) {
    for (int k = 0; k <= f.depth(); ++k)
        if (!is_zero_elem(f.coeff(k))) return k;
    return std::nullopt;
}

// log of a series with constant term 1, by the derivative recurrence
// n*l_n = n*q_n - sum_{k<n} k*l_k*q_{n-k}.
template <class R>
TruncatedSeries<R> series_log(const TruncatedSeries<R>& q) {
    if (!(q.coeff(0) == one_like(q.coeff(0))))
        throw ValidationError("series_log requires constant term 1");
    int d = q.depth();
    TruncatedSeries<R> l(d, zero_like(q.coeff(0)));
    for (int n = 1; n <= d; ++n) {
        R acc = q.coeff(n);
        for (int k = 1; k < n; ++k) {
            if (is_zero_elem(l.coeff(k)) || is_zero_elem(q.coeff(n - k))) continue;
            acc = acc - div_by_long(mul_long(l.coeff(k) * q.coeff(n - k), k), n);
        }
        l.set_coeff(n, acc);
    }
    return l;
}

// exp of a series with constant term 0: n*e_n = sum_{k<=n} k*l_k*e_{n-k}.
template <class R>
TruncatedSeries<R> series_exp(const TruncatedSeries<R>& l) {
    if (!is_zero_elem(l.coeff(0))) throw ValidationError("series_exp requires constant term 0");
    int d = l.depth();
    TruncatedSeries<R> e(d, one_like(l.coeff(0)));
    for (int n = 1; n <= d; ++n) {
        R acc = zero_like(l.coeff(0));
        for (int k = 1; k <= n; ++k) {
            if (is_zero_elem(l.coeff(k)) || is_zero_elem(e.coeff(n - k))) continue;
            acc = acc + div_by_long(mul_long(l.coeff(k) * e.coeff(n - k), k), n);
        }
        e.set_coeff(n, acc);
    }
    return e;
}

// f(z^k), truncated at depth(f).
template <class R>
TruncatedSeries<R> compose_zk(const TruncatedSeries<R>& f, int k) {
    if (k < 1) throw ValidationError("compose_zk requires k >= 1");
    TruncatedSeries<R> out(f.depth(), f.coeff(0));
    for (int j = 1; static_cast<long>(j) * k <= f.depth(); ++j) out.set_coeff(j * k, f.coeff(j));
    return out;
}

// 1/f for constant term 1, via exp(-log f).
template <class R>
TruncatedSeries<R> series_inverse(const TruncatedSeries<R>& f) {
    TruncatedSeries<R> l = series_log(f);
    TruncatedSeries<R> neg(l.depth(), zero_like(l.coeff(0)));
    for (int k = 1; k <= l.depth(); ++k) neg.set_coeff(k, -l.coeff(k));
    return series_exp(neg);
}

// the series of log(1 - z^n) = -sum_k z^{nk}/k, truncated.
template <class R>
TruncatedSeries<R> log_one_minus_zn(int depth, int n, const R& exemplar) {
    TruncatedSeries<R> out(depth, zero_like(exemplar));
    R one = one_like(exemplar);
    for (int k = 1; static_cast<long>(k) * n <= depth; ++k)
        out.set_coeff(k * n, -div_by_long(one, k));
    return out;
}

}  // namespace eulerprod
