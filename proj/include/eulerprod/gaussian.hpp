#pragma once

#include <complex>
#include <string>

#include "eulerprod/rational.hpp"

namespace eulerprod {

// Exact element of Q(i). The coefficient field for constant-coefficient
// Euler factors; plain rationals are the im == 0 case.
struct GaussianRational {
    Rational re, im;

    GaussianRational() : re(0), im(0) {}
    GaussianRational(const Rational& r) : re(r), im(0) {}  // NOLINT: implicit by design
    GaussianRational(long r) : re(r), im(0) {}             // NOLINT
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }
    // "integral" throughout means a rational integer
    bool is_rational_integer() const { return im == 0 && is_integer(re); }
    bool is_gaussian_integer() const { return is_integer(re) && is_integer(im); }

    Rational norm() const { return re * re + im * im; }
    GaussianRational conj() const { return {re, -im}; }

    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        Rational n = b.norm();
        if (n == 0) throw ValidationError("division by zero in Q(i)");
        GaussianRational c = a * b.conj();
        return {c.re / n, c.im / n};
    }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

inline std::string to_string(const GaussianRational& z) {
    if (z.im == 0) return z.re.get_str();
    std::string s = z.re.get_str();
    s += (z.im > 0 ? "+" : "-");
    Rational a = abs(z.im);
    if (a != 1) s += a.get_str();
    s += "i";
    return s;
}

}  // namespace eulerprod
