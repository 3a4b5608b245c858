#pragma once

#include <gmpxx.h>

#include <string>

#include "eulerprod/errors.hpp"

namespace eulerprod {

using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Integer floor_to_integer(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

inline Integer ceil_to_integer(const Rational& q) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

// Accepts "a", "a/b" and decimal notation "a.b" (so CLI flags like
// --epsilon 0.1667 parse exactly).
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw ValidationError("empty rational literal");
    std::string s = text;
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::size_t frac_len = s.size() - dot - 1;
        if (digits.empty() || digits == "-" || digits == "+")
            throw ValidationError("bad rational literal: " + text);
        Rational q;
        std::string denom = "1" + std::string(frac_len, '0');
        if (mpq_set_str(q.get_mpq_t(), (digits + "/" + denom).c_str(), 10) != 0)
            throw ValidationError("bad rational literal: " + text);
        q.canonicalize();
        return q;
    }
    Rational q;
    if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
        throw ValidationError("bad rational literal: " + text);
    if (q.get_den() == 0) throw ValidationError("zero denominator: " + text);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

// sqrt of a rational, when it is one: both numerator and denominator
// must be perfect squares.
inline bool rational_sqrt(const Rational& q, Rational* out) {
    if (q < 0) return false;
    const Integer num = q.get_num(), den = q.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return false;
    Integer rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    if (out) *out = Rational(rn, rd);
    return true;
}

}  // namespace eulerprod
