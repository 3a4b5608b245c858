#pragma once

#include <complex>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "eulerprod/gaussian.hpp"
#include "eulerprod/rational.hpp"

namespace eulerprod {

namespace detail {

// coefficients of the n-th cyclotomic polynomial, ascending degree, monic.
// Phi_n = (x^n - 1) / prod_{d|n, d<n} Phi_d, computed bottom-up over the
// divisors of n by exact division.
inline const std::vector<Rational>& cyclotomic_poly(int n) {
    static std::map<int, std::vector<Rational>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    for (int m = 1; m <= n; ++m) {
        if (n % m != 0 || cache.count(m)) continue;
        std::vector<Rational> num(m + 1, Rational(0));
        num[0] = -1;
        num[m] = 1;
        for (int d = 1; d < m; ++d) {
            if (m % d != 0) continue;
            const std::vector<Rational>& phi = cache.at(d);
            // divide num by phi (monic), exactly
            std::vector<Rational> quot(num.size() - phi.size() + 1, Rational(0));
            std::vector<Rational> rem = num;
            for (int k = static_cast<int>(quot.size()) - 1; k >= 0; --k) {
                Rational c = rem[k + phi.size() - 1];
                quot[k] = c;
                if (c == 0) continue;
                for (std::size_t j = 0; j < phi.size(); ++j) rem[k + j] -= c * phi[j];
            }
            num = std::move(quot);
        }
        cache.emplace(m, std::move(num));
    }
    return cache.at(n);
}

inline void poly_mod_cyclotomic(std::vector<Rational>& c, int n) {
    const std::vector<Rational>& phi = cyclotomic_poly(n);
    const std::size_t d = phi.size() - 1;
    while (c.size() > d) {
        Rational lead = c.back();
        std::size_t k = c.size() - 1 - d;
        if (lead != 0)
            for (std::size_t j = 0; j < d; ++j) c[k + j] -= lead * phi[j];
        c.pop_back();
    }
    c.resize(d, Rational(0));
}

}  // namespace detail

// Exact element of Q(zeta_N), stored as coordinates on 1, z, ..., z^{phi(N)-1}
// reduced against Phi_N, so representations are unique and equality is decidable.
class Cyclotomic {
  public:
    Cyclotomic() : conductor_(1), c_(1, Rational(0)) {}
    explicit Cyclotomic(const Rational& q) : conductor_(1), c_(1, q) {}
    Cyclotomic(long v) : conductor_(1), c_(1, Rational(v)) {}  // NOLINT

    static Cyclotomic from_coords(int conductor, std::vector<Rational> coords) {
        Cyclotomic z;
        z.conductor_ = conductor;
        z.c_ = std::move(coords);
        detail::poly_mod_cyclotomic(z.c_, conductor);
        return z;
    }

    // zeta_n^k
    static Cyclotomic root_of_unity(int n, long k = 1) {
        k %= n;
        if (k < 0) k += n;
        std::vector<Rational> c(k + 1, Rational(0));
        c[k] = 1;
        return from_coords(n, std::move(c));
    }

    static Cyclotomic from_gaussian(const GaussianRational& g) {
        if (g.im == 0) return Cyclotomic(g.re);
        return from_coords(4, {g.re, g.im});
    }

    int conductor() const { return conductor_; }
    const std::vector<Rational>& coords() const { return c_; }

    bool is_zero() const {
        for (const auto& q : c_)
            if (q != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (std::size_t k = 1; k < c_.size(); ++k)
            if (c_[k] != 0) return false;
        return true;
    }
    Rational rational_value() const {
        if (!is_rational()) throw ValidationError("cyclotomic value is not rational");
        return c_[0];
    }
    bool is_rational_integer() const { return is_rational() && is_integer(c_[0]); }

    Cyclotomic promoted(int m) const {
        if (m == conductor_) return *this;
        if (m % conductor_ != 0) throw ValidationError("conductor promotion must be to a multiple");
        long step = m / conductor_;
        std::vector<Rational> out(static_cast<std::size_t>(step) * (c_.size() - 1) + 1, Rational(0));
        for (std::size_t k = 0; k < c_.size(); ++k) out[k * step] = c_[k];
        return from_coords(m, std::move(out));
    }

    Cyclotomic conj() const {
        // complex conjugation: zeta^k -> zeta^{N-k}
        if (conductor_ == 1) return *this;
        std::vector<Rational> acc(conductor_, Rational(0));
        for (std::size_t k = 0; k < c_.size(); ++k) {
            std::size_t e = (conductor_ - k) % conductor_;
            acc[e] += c_[k];
        }
        return from_coords(conductor_, std::move(acc));
    }

    Cyclotomic pow(long e) const {
        if (e < 0) throw ValidationError("negative cyclotomic power");
        Cyclotomic base = *this, result(Rational(1));
        while (e > 0) {
            if (e & 1) result = result * base;
            base = base * base;
            e >>= 1;
        }
        return result;
    }

    std::complex<double> to_complex() const {
        std::complex<double> z(0.0, 0.0);
        for (std::size_t k = 0; k < c_.size(); ++k) {
            if (c_[k] == 0) continue;
            double angle = 2.0 * 3.14159265358979323846 * static_cast<double>(k) / conductor_;
            z += c_[k].get_d() * std::complex<double>(std::cos(angle), std::sin(angle));
        }
        return z;
    }

    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
        int m = std::lcm(a.conductor_, b.conductor_);
        Cyclotomic x = a.promoted(m), y = b.promoted(m);
        for (std::size_t k = 0; k < x.c_.size(); ++k) x.c_[k] += y.c_[k];
        return x;
    }
    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
        int m = std::lcm(a.conductor_, b.conductor_);
        Cyclotomic x = a.promoted(m), y = b.promoted(m);
        for (std::size_t k = 0; k < x.c_.size(); ++k) x.c_[k] -= y.c_[k];
        return x;
    }
    friend Cyclotomic operator-(const Cyclotomic& a) {
        Cyclotomic x = a;
        for (auto& q : x.c_) q = -q;
        return x;
    }
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
        int m = std::lcm(a.conductor_, b.conductor_);
        Cyclotomic x = a.promoted(m), y = b.promoted(m);
        std::vector<Rational> prod(x.c_.size() + y.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < x.c_.size(); ++i) {
            if (x.c_[i] == 0) continue;
            for (std::size_t j = 0; j < y.c_.size(); ++j) {
                if (y.c_[j] == 0) continue;
                prod[i + j] += x.c_[i] * y.c_[j];
            }
        }
        detail::poly_mod_cyclotomic(prod, m);
        x.c_ = std::move(prod);
        return x;
    }
    friend Cyclotomic operator*(const Cyclotomic& a, const Rational& s) {
        Cyclotomic x = a;
        for (auto& q : x.c_) q *= s;
        return x;
    }
    friend Cyclotomic operator*(const Rational& s, const Cyclotomic& a) { return a * s; }
    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
        int m = std::lcm(a.conductor_, b.conductor_);
        return a.promoted(m).c_ == b.promoted(m).c_;
    }
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  private:
    int conductor_;
    std::vector<Rational> c_;
};

inline std::string to_string(const Cyclotomic& z) {
    if (z.is_rational()) return z.coords()[0].get_str();
    std::string s;
    bool first = true;
    for (std::size_t k = 0; k < z.coords().size(); ++k) {
        const Rational& q = z.coords()[k];
        if (q == 0) continue;
        if (!first) s += q > 0 ? " + " : " - ";
        else if (q < 0) s += "-";
        Rational a = abs(q);
        if (k == 0) s += a.get_str();
        else {
            if (a != 1) s += a.get_str() + "*";
            s += "z" + std::to_string(z.conductor()) + (k > 1 ? "^" + std::to_string(k) : "");
        }
        first = false;
    }
    return s.empty() ? "0" : s;
}

}  // namespace eulerprod
