#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "eulerprod/errors.hpp"
#include "eulerprod/rational.hpp"

namespace eulerprod {

inline int moebius(unsigned long n) {
    if (n == 0) throw ValidationError("moebius(0) is undefined");
    int factors = 0;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        ++factors;
    }
    if (n > 1) ++factors;
    return factors % 2 ? -1 : 1;
}

inline std::vector<unsigned long> divisors(unsigned long n) {
    std::vector<unsigned long> small, large;
    for (unsigned long d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        small.push_back(d);
        if (d != n / d) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

// A finite tuple (n_0, n_1, ...) of nonnegative integers, not all zero,
// with trailing zeros stripped so lookups are canonical.
using Composition = std::vector<unsigned long>;

inline Composition normalized(Composition n) {
    while (!n.empty() && n.back() == 0) n.pop_back();
    if (n.empty()) throw ValidationError("composition must not be all zero");
    return n;
}

inline unsigned long composition_weight(const Composition& n) {
    return std::accumulate(n.begin(), n.end(), 0ul);
}

inline unsigned long composition_gcd(const Composition& n) {
    unsigned long g = 0;
    for (unsigned long v : n) g = std::gcd(g, v);
    return g;
}

// total! / prod(parts_i!), exact
inline Integer multinomial(unsigned long total, const Composition& parts) {
    if (composition_weight(parts) != total)
        throw ValidationError("multinomial: parts must sum to total");
    Integer result = 1;
    unsigned long consumed = 0;
    for (unsigned long p : parts) {
        // multiply by binomial(consumed + p, p)
        Integer b;
        mpz_bin_uiui(b.get_mpz_t(), consumed + p, p);
        result *= b;
        consumed += p;
    }
    return result;
}

// c_n = (1/|n|) sum_{d | gcd(n)} mu(d) * multinomial(|n/d|, n/d).
// Integrality of the division is a theorem; a failure here is a bug.
inline Integer log_coeff(const Composition& raw) {
    Composition n = normalized(raw);
    unsigned long weight = composition_weight(n);
    unsigned long g = composition_gcd(n);
    Integer sum = 0;
    for (unsigned long d : divisors(g)) {
        int mu = moebius(d);
        if (mu == 0) continue;
        Composition nd(n.size());
        for (std::size_t i = 0; i < n.size(); ++i) nd[i] = n[i] / d;
        sum += mu * multinomial(weight / d, nd);
    }
    Integer c, rem;
    mpz_tdiv_qr(c.get_mpz_t(), rem.get_mpz_t(), sum.get_mpz_t(), Integer(weight).get_mpz_t());
    if (rem != 0)
        throw CorrectnessAlarm("log_coeff: sum not divisible by |n| (theorem violated)");
    if (c < 0) throw CorrectnessAlarm("log_coeff: negative value (theorem violated)");
    return c;
}

namespace detail {

inline uint32_t rotate_mask(uint32_t mask, unsigned long m) {
    return ((mask << 1) | (mask >> (m - 1))) & ((1u << m) - 1);
}

// enumerate tuples of pairwise-disjoint subsets (A_1,...,A_k) of Z/mZ with
// |A_i| = n_i; calls visit(tuple) for each.
template <class F>
void enumerate_disjoint_tuples(const Composition& n, unsigned long m, std::size_t idx,
                               uint32_t used, std::vector<uint32_t>& tuple, F&& visit) {
    if (idx == n.size()) {
        visit(tuple);
        return;
    }
    uint32_t free_mask = ~used & ((1u << m) - 1);
    // iterate subsets of free_mask with popcount n_idx
    for (uint32_t sub = free_mask;; sub = (sub - 1) & free_mask) {
        if (static_cast<unsigned long>(__builtin_popcount(sub)) == n[idx]) {
            tuple.push_back(sub);
            enumerate_disjoint_tuples(n, m, idx + 1, used | sub, tuple, visit);
            tuple.pop_back();
        }
        if (sub == 0) break;
    }
}

}  // namespace detail

// Brute-force oracle for log_coeff: counts orbits of length exactly |n| of
// disjoint-subset tuples of Z/|n|Z under simultaneous translation. A tuple is
// counted once via its canonical (lexicographically smallest) translate.
inline Integer orbit_count(const Composition& raw, unsigned long weight_bound = 12) {
    Composition n = normalized(raw);
    unsigned long m = composition_weight(n);
    if (m > weight_bound || m > 28)
        throw ResourceLimitError("orbit_count: |n| exceeds brute-force bound");
    if (multinomial(m, n) > 20000000)
        throw ResourceLimitError("orbit_count: state space too large");
    long count = 0;
    std::vector<uint32_t> tuple;
    detail::enumerate_disjoint_tuples(n, m, 0, 0u, tuple, [&](const std::vector<uint32_t>& t) {
        // canonical if no translate is lexicographically smaller; trivial
        // stabilizer iff no nonzero translate equals t
        std::vector<uint32_t> rot = t;
        for (unsigned long shift = 1; shift < m; ++shift) {
            for (auto& mask : rot) mask = detail::rotate_mask(mask, m);
            if (rot < t) return;   // not canonical
            if (rot == t) return;  // short orbit
        }
        ++count;
    });
    return Integer(count);
}

}  // namespace eulerprod
