#pragma once

#include "eulerprod/cyclotomic.hpp"
#include "eulerprod/gaussian.hpp"
#include "eulerprod/rational.hpp"

namespace eulerprod {

// Coefficient-ring interface used by the series templates. Every ring is a
// Q-algebra, so division by a nonzero integer is exact.

inline Rational zero_like(const Rational&) { return Rational(0); }
inline Rational one_like(const Rational&) { return Rational(1); }
inline bool is_zero_elem(const Rational& q) { return q == 0; }
inline Rational div_by_long(const Rational& q, long n) { return q / Rational(n); }
inline Rational mul_long(const Rational& q, long n) { return q * Rational(n); }
inline void check_same_ring(const Rational&, const Rational&) {}

inline GaussianRational zero_like(const GaussianRational&) { return {}; }
inline GaussianRational one_like(const GaussianRational&) { return {Rational(1), Rational(0)}; }
inline bool is_zero_elem(const GaussianRational& z) { return z.is_zero(); }
inline GaussianRational div_by_long(const GaussianRational& z, long n) {
    return {z.re / Rational(n), z.im / Rational(n)};
}
inline GaussianRational mul_long(const GaussianRational& z, long n) {
    return {z.re * Rational(n), z.im * Rational(n)};
}
inline void check_same_ring(const GaussianRational&, const GaussianRational&) {}

inline Cyclotomic zero_like(const Cyclotomic&) { return Cyclotomic(); }
inline Cyclotomic one_like(const Cyclotomic&) { return Cyclotomic(Rational(1)); }
inline bool is_zero_elem(const Cyclotomic& z) { return z.is_zero(); }
inline Cyclotomic div_by_long(const Cyclotomic& z, long n) { return z * Rational(1, n); }
inline Cyclotomic mul_long(const Cyclotomic& z, long n) { return z * Rational(n); }
inline void check_same_ring(const Cyclotomic&, const Cyclotomic&) {}

}  // namespace eulerprod
