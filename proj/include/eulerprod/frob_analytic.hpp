#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "eulerprod/analytic.hpp"

namespace eulerprod {

namespace detail {

// Realize an abelian character table as the character group of (Z/qZ)^*.
// The dirichlet block maps classes to residues; this checks it is a group
// isomorphism against the power maps and produces one numeric Dirichlet
// character per irreducible row.
struct DirichletRealization {
    long modulus = 0;
    std::vector<int> class_of_residue;            // residue -> class, -1 off units
    std::vector<DirichletCharacter> characters;   // per irreducible
    std::vector<long> ramified;                   // primes dividing q
};

inline DirichletRealization realize_dirichlet(const FrobenianFactorSpec& spec) {
    for (long dim : spec.table.dimensions)
        if (dim != 1)
            throw ValidationError(
                "numeric evaluation supports abelian tables only (general Artin "
                "L-functions are out of scope)");
    if (!spec.dirichlet)
        throw ValidationError("numeric evaluation needs the dirichlet block (modulus + residues)");
    const auto& dd = *spec.dirichlet;
    const long q = dd.modulus;
    if (q < 2) throw ValidationError("dirichlet modulus must be >= 2");
    if (dd.class_residue.size() != spec.table.class_count())
        throw ValidationError("dirichlet block needs one residue per class");

    DirichletRealization out;
    out.modulus = q;
    out.class_of_residue.assign(static_cast<std::size_t>(q), -1);
    std::set<long> seen;
    for (std::size_t c = 0; c < dd.class_residue.size(); ++c) {
        long r = dd.class_residue[c] % q;
        if (r < 0) r += q;
        if (std::gcd(r, q) != 1) throw ValidationError("class residue not coprime to modulus");
        if (!seen.insert(r).second) throw ValidationError("duplicate class residue");
        out.class_of_residue[static_cast<std::size_t>(r)] = static_cast<int>(c);
    }
    long phi = 0;
    for (long r = 1; r < q; ++r)
        if (std::gcd(r, q) == 1) ++phi;
    if (static_cast<long>(seen.size()) != phi)
        throw ValidationError("residues must exhaust (Z/qZ)^*: expected phi(q) classes");
    // consistency with the power maps: residue(c)^k = residue(power_class(c,k))
    for (std::size_t c = 0; c < dd.class_residue.size(); ++c) {
        long r = dd.class_residue[c] % q;
        long acc = 1 % q;
        for (int k = 0; k < spec.table.group.classes[c].element_order; ++k) {
            int pc = spec.table.group.power_class(static_cast<int>(c), k);
            if (out.class_of_residue[static_cast<std::size_t>(acc)] != pc)
                throw ValidationError("dirichlet residues are inconsistent with the power map");
            acc = (acc * r) % q;
        }
    }
    for (std::size_t rho = 0; rho < spec.table.irreducibles.size(); ++rho) {
        DirichletCharacter chi;
        chi.modulus = q;
        chi.values.assign(static_cast<std::size_t>(q), Complex(0.0, 0.0));
        chi.principal = true;
        for (long r = 0; r < q; ++r) {
            int c = out.class_of_residue[static_cast<std::size_t>(r)];
            if (c < 0) continue;
            Complex v = spec.table.irreducibles[rho].at(c).to_complex();
            chi.values[static_cast<std::size_t>(r)] = v;
            if (std::abs(v - Complex(1.0, 0.0)) > 1e-12) chi.principal = false;
        }
        out.characters.push_back(std::move(chi));
    }
    for (long p = 2; p <= q; ++p) {
        if (q % p) continue;
        bool prime = true;
        for (long f = 2; f * f <= p; ++f)
            if (p % f == 0) prime = false;
        if (prime) out.ramified.push_back(p);
    }
    return out;
}

// L(u, chi) with internal (window-free) evaluation; principal characters
// route through zeta with the ramified Euler factors removed
inline EvalValue L_internal(Complex u, const DirichletCharacter& chi,
                            const std::vector<long>& ramified) {
    if (chi.principal) {
        EvalValue z = zeta_internal(u);
        if (z.pole) return z;
        for (long p : ramified)
            z.value *= 1.0 - std::exp(-u * std::log(static_cast<double>(p)));
        return z;
    }
    return L_assemble(u, chi.modulus, chi.values);
}

// index of the pointwise j-th power of irreducible rho in the table
inline std::vector<std::vector<std::size_t>> character_power_index(const CharacterTable& table,
                                                                   int max_power) {
    const std::size_t nirr = table.irreducibles.size();
    std::vector<std::vector<std::size_t>> idx(nirr);
    for (std::size_t rho = 0; rho < nirr; ++rho) {
        idx[rho].assign(static_cast<std::size_t>(max_power) + 1, nirr);
        ClassFunction acc = one_like(table.irreducibles[rho]);
        for (int j = 0; j <= max_power; ++j) {
            for (std::size_t k = 0; k < nirr; ++k)
                if (acc == table.irreducibles[k]) {
                    idx[rho][static_cast<std::size_t>(j)] = k;
                    break;
                }
            if (idx[rho][static_cast<std::size_t>(j)] == nirr)
                throw ValidationError("character powers leave the table (not closed: non-abelian?)");
            acc = acc * table.irreducibles[rho];
        }
    }
    return idx;
}

// P_{>P0}(w, chi) = sum_{p>P0} chi(p) p^{-w}
//                 = sum_k mu(k)/k log L_{>P0}(kw, chi^k)
inline Complex prime_zeta_tail_twisted(
    Complex w, std::size_t rho, const std::vector<uint32_t>& primes,
    const DirichletRealization& real, const std::vector<std::vector<std::size_t>>& pow_idx) {
    Complex sum(0.0, 0.0);
    const double p0 = primes.empty() ? 2.0 : static_cast<double>(primes.back());
    for (unsigned long k = 1; k < pow_idx[rho].size(); ++k) {
        if (static_cast<double>(k) * w.real() * std::log(p0) > 110.0) break;
        int mu = moebius(k);
        if (mu == 0) continue;
        std::size_t chik = pow_idx[rho][k];
        const DirichletCharacter& chi = real.characters[chik];
        EvalValue L = L_internal(w * static_cast<double>(k), chi, real.ramified);
        Complex acc = L.value;
        for (uint32_t p : primes)
            acc *= 1.0 - chi.at(p) * std::exp(-w * static_cast<double>(k) *
                                              std::log(static_cast<double>(p)));
        sum += static_cast<double>(mu) / static_cast<double>(k) * std::log(acc);
    }
    return sum;
}

}  // namespace detail

// Numeric continuation of an abelian Frobenian Euler product:
//   prod_{n<=N, rho} L(ns, chi_rho)^{b_{n,rho}}
//   * overrides at excluded primes
//   * compensated product over good p <= P0
//   * twisted prime-zeta tails for p > P0
inline EvaluationResult continuation_eval(const FrobDecomposition& d,
                                          const FrobenianFactorSpec& spec, Complex s,
                                          EvalOptions opts = {}) {
    const int N = d.depth;
    EvaluationResult res;
    res.depth = N;
    auto real = detail::realize_dirichlet(spec);
    const std::size_t nirr = spec.table.irreducibles.size();

    if (std::abs(s.imag()) > 50.0)
        throw UnsupportedRegionError("continuation_eval supports |Im s| <= 50");
    const double sigma = s.real();
    if (sigma < 1.0 / (N + 1) + 0.05 || (N + 1) * sigma < 1.10)
        throw UnsupportedRegionError("Re(s) too small for this depth");

    std::size_t triv = nirr;
    for (std::size_t r = 0; r < nirr; ++r)
        if (real.characters[r].principal) triv = r;
    if (triv == nirr) throw ValidationError("no principal character found");

    for (int n = 1; n <= N; ++n)
        if (!d.b[n - 1][triv].is_zero() && detail::is_near(sigma, 1.0 / n) &&
            std::abs(s.imag()) < 1e-12) {
            res.at_singularity = true;
            return res;
        }

    bool all_integral = d.all_integral;
    if (!all_integral && std::abs(s.imag()) > 1e-14)
        throw ValidationError("non-integral exponents: evaluation restricted to the real axis");

    // excluded primes: ramified plus overridden
    std::set<long> excluded(real.ramified.begin(), real.ramified.end());
    std::map<long, const EulerFactorSpec*> overrides;
    for (const auto& [p, f] : spec.exceptional) {
        excluded.insert(p);
        overrides[p] = &f;
    }
    long max_excluded = excluded.empty() ? 0 : *excluded.rbegin();

    const int M = N + opts.tail_terms;
    auto ext = compute_b_frob(spec, M, ROrientation::TensorOnPrior, BOrientation::CycOnPrior,
                              /*validate=*/false);
    auto pow_idx = detail::character_power_index(spec.table, std::max(M + 1, 64));

    // beta[m][psi]: Dirichlet-series coefficients over primes of the
    // compensated log, collected per resulting character psi = rho^j
    std::vector<std::vector<Complex>> beta(static_cast<std::size_t>(M) + 1,
                                           std::vector<Complex>(nirr, Complex(0.0, 0.0)));
    for (int n = N + 1; n <= M; ++n)
        for (std::size_t rho = 0; rho < nirr; ++rho) {
            const Cyclotomic& bnr = ext.b[n - 1][rho];
            if (bnr.is_zero()) continue;
            Complex bv = bnr.to_complex();
            for (int j = 1; n * j <= M; ++j) {
                std::size_t psi = pow_idx[rho][static_cast<std::size_t>(j)];
                beta[static_cast<std::size_t>(n * j)][psi] +=
                    bv * (1.0 / static_cast<double>(j));
            }
        }

    // Cauchy lower bound on the radius of every specialized factor
    double maxc = 0.0;
    for (const auto& a : spec.coeffs)
        for (const auto& v : a.v) maxc = std::max(maxc, std::abs(v.to_complex()));
    double rlo = 1.0 / (1.0 + maxc);
    long p0 = std::max(opts.prime_cutoff, max_excluded);
    double needed = std::pow(4.0 / rlo, 1.0 / sigma);
    while (static_cast<double>(p0) < needed && p0 < opts.hard_cap)
        p0 = std::min(opts.hard_cap, p0 * 4);
    res.prime_cutoff = p0;

    Complex value(1.0, 0.0);
    double err_log = 0.0;
    bool branch_risk = false;
    auto apply_power = [&](Complex base, const Cyclotomic& expo) {
        if (expo.is_rational_integer())
            value *= detail::cpow_int(base, expo.rational_value().get_num().get_si());
        else {
            if (base.real() <= 0.0 && std::abs(base.imag()) < 1e-14) branch_risk = true;
            value *= std::exp(expo.to_complex() * std::log(base));
        }
    };

    for (int n = 1; n <= N; ++n)
        for (std::size_t rho = 0; rho < nirr; ++rho) {
            const Cyclotomic& b = d.b[n - 1][rho];
            if (b.is_zero()) continue;
            EvalValue L =
                detail::L_internal(s * static_cast<double>(n), real.characters[rho], real.ramified);
            if (L.pole) {
                res.at_singularity = true;
                return res;
            }
            apply_power(L.value, b);
            err_log +=
                std::abs(b.to_complex()) * (L.abs_err / std::max(1e-300, std::abs(L.value)));
        }

    // override factors at excluded primes (default factor is 1)
    bool pole_hit = false;
    for (long p : excluded) {
        auto it = overrides.find(p);
        if (it == overrides.end()) continue;
        Complex zp = std::exp(-s * std::log(static_cast<double>(p)));
        bool local = false;
        value *= detail::eval_factor(*it->second, zp, &local);
        pole_hit |= local;
    }
    // put back the L-factors of overridden primes not dividing q
    for (long p : excluded) {
        if (std::find(real.ramified.begin(), real.ramified.end(), p) != real.ramified.end())
            continue;
        Complex zp = std::exp(-s * std::log(static_cast<double>(p)));
        for (int n = 1; n <= N; ++n)
            for (std::size_t rho = 0; rho < nirr; ++rho) {
                const Cyclotomic& b = d.b[n - 1][rho];
                if (b.is_zero()) continue;
                Complex chi_p = real.characters[rho].at(p);
                apply_power(1.0 - chi_p * detail::cpow_int(zp, n), b);
            }
    }

    auto primes = sieve_primes(static_cast<uint64_t>(p0));
    Complex prime_part = deterministic_prime_product(
        primes, opts.threads, [&](uint32_t p) -> Complex {
            if (excluded.count(static_cast<long>(p))) return {1.0, 0.0};
            int cls = real.class_of_residue[static_cast<std::size_t>(p % real.modulus)];
            Complex zp = std::exp(-s * std::log(static_cast<double>(p)));
            Complex num(0.0, 0.0);
            // specialized factor 1 + sum a_k(class) zp^k, Horner over stored degrees
            for (std::size_t k = spec.coeffs.size(); k-- > 0;)
                num = (num + spec.coeffs[k].at(cls).to_complex()) * zp;
            Complex f = 1.0 + num;
            for (int n = 1; n <= N; ++n)
                for (std::size_t rho = 0; rho < nirr; ++rho) {
                    const Cyclotomic& b = d.b[n - 1][rho];
                    if (b.is_zero()) continue;
                    Complex base = 1.0 - real.characters[rho].at(p) * detail::cpow_int(zp, n);
                    if (b.is_rational_integer())
                        f *= detail::cpow_int(base, b.rational_value().get_num().get_si());
                    else
                        f *= std::exp(b.to_complex() * std::log(base));
                }
            return f;
        });
    if (pole_hit) {
        res.at_singularity = true;
        return res;
    }
    value *= prime_part;
    err_log += static_cast<double>(primes.size()) * 1e-15;

    Complex tail(0.0, 0.0);
    double tail_err = 0.0;
    for (int m = N + 1; m <= M; ++m) {
        double t = m * sigma;
        for (std::size_t psi = 0; psi < nirr; ++psi) {
            if (std::abs(beta[m][psi]) < 1e-300) continue;
            double bound = std::abs(beta[m][psi]) *
                           std::pow(static_cast<double>(p0), 1.0 - t) * 10.0 / (t - 1.0);
            if (bound < opts.target_abs_err / 16.0) {
                tail_err += bound;
                continue;
            }
            tail += beta[m][psi] * detail::prime_zeta_tail_twisted(s * static_cast<double>(m), psi,
                                                                   primes, real, pow_idx);
            tail_err += std::abs(beta[m][psi]) * 1e-14;
        }
    }
    value *= std::exp(tail);
    err_log += tail_err;

    if (branch_risk)
        throw ValidationError("principal branch hit a negative real base; unsupported point");
    res.value = value;
    res.estimated_error = std::abs(value) * err_log + 1e-300;
    return res;
}

// lim (s - 1/a)^{order} Q(s) for the Frobenian case: only the principal
// component's zeta factor is regularized; nontrivial L(n/a, chi) values are
// finite and multiply in directly.
inline Complex leading_coefficient(const FrobDecomposition& d, const FrobenianFactorSpec& spec,
                                   const Rational& location, EvalOptions opts = {}) {
    const int N = d.depth;
    if (location <= 0 || location.get_num() != 1)
        throw ValidationError("leading_coefficient expects a location of the form 1/a");
    long a = location.get_den().get_si();
    if (a > N) throw ValidationError("location 1/a needs depth >= a");
    auto real = detail::realize_dirichlet(spec);
    const std::size_t nirr = spec.table.irreducibles.size();
    std::size_t triv = nirr;
    for (std::size_t r = 0; r < nirr; ++r)
        if (real.characters[r].principal) triv = r;
    if (triv == nirr) throw ValidationError("no principal character found");
    const Cyclotomic& order = d.b[a - 1][triv];
    if (order.is_zero())
        throw ValidationError("no pole or zero of the product at the requested location");
    if (!order.is_rational_integer())
        throw ValidationError("branch-cut singularity: leading coefficient undefined");
    const double s0 = 1.0 / static_cast<double>(a);
    if ((N + 1) * s0 < 1.10)
        throw UnsupportedRegionError("increase the depth: remainder not convergent at 1/a");
    long border = order.rational_value().get_num().get_si();

    // (as - 1) zeta(as) -> 1/a; the ramified Euler factors of the principal
    // L-function at n = a remain and evaluate directly
    Complex value = detail::cpow_int(Complex(static_cast<double>(a), 0.0), -border);
    for (long p : real.ramified)
        value *= detail::cpow_int(1.0 - std::exp(-s0 * static_cast<double>(a) *
                                                 std::log(static_cast<double>(p))),
                                  border);
    bool branch_risk = false;
    auto apply_power = [&](Complex base, const Cyclotomic& expo) {
        if (expo.is_rational_integer())
            value *= detail::cpow_int(base, expo.rational_value().get_num().get_si());
        else {
            if (base.real() <= 0.0 && std::abs(base.imag()) < 1e-14) branch_risk = true;
            value *= std::exp(expo.to_complex() * std::log(base));
        }
    };
    for (int n = 1; n <= N; ++n)
        for (std::size_t rho = 0; rho < nirr; ++rho) {
            if (n == static_cast<int>(a) && rho == triv) continue;
            const Cyclotomic& b = d.b[n - 1][rho];
            if (b.is_zero()) continue;
            EvalValue L = detail::L_internal(Complex(n * s0, 0.0), real.characters[rho],
                                             real.ramified);
            if (L.pole)
                throw ValidationError("another L-factor is singular at the same point");
            apply_power(L.value, b);
        }

    std::set<long> excluded(real.ramified.begin(), real.ramified.end());
    std::map<long, const EulerFactorSpec*> overrides;
    for (const auto& [p, f] : spec.exceptional) {
        excluded.insert(p);
        overrides[p] = &f;
    }
    for (long p : excluded) {
        Complex zp = std::exp(Complex(-s0 * std::log(static_cast<double>(p)), 0.0));
        auto it = overrides.find(p);
        if (it != overrides.end()) {
            bool local = false;
            Complex f = detail::eval_factor(*it->second, zp, &local);
            if (local || std::abs(f) < 1e-290)
                throw ValidationError("an exceptional factor vanishes or diverges at the location");
            value *= f;
        }
        if (std::find(real.ramified.begin(), real.ramified.end(), p) == real.ramified.end())
            for (int n = 1; n <= N; ++n)
                for (std::size_t rho = 0; rho < nirr; ++rho) {
                    const Cyclotomic& b = d.b[n - 1][rho];
                    if (b.is_zero()) continue;
                    apply_power(1.0 - real.characters[rho].at(p) * detail::cpow_int(zp, n), b);
                }
    }

    const int M = N + opts.tail_terms;
    auto ext = compute_b_frob(spec, M, ROrientation::TensorOnPrior, BOrientation::CycOnPrior,
                              /*validate=*/false);
    auto pow_idx = detail::character_power_index(spec.table, std::max(M + 1, 64));
    std::vector<std::vector<Complex>> beta(static_cast<std::size_t>(M) + 1,
                                           std::vector<Complex>(nirr, Complex(0.0, 0.0)));
    for (int n = N + 1; n <= M; ++n)
        for (std::size_t rho = 0; rho < nirr; ++rho) {
            const Cyclotomic& bnr = ext.b[n - 1][rho];
            if (bnr.is_zero()) continue;
            for (int j = 1; n * j <= M; ++j)
                beta[static_cast<std::size_t>(n * j)][pow_idx[rho][static_cast<std::size_t>(j)]] +=
                    bnr.to_complex() * (1.0 / static_cast<double>(j));
        }
    double maxc = 0.0;
    for (const auto& a : spec.coeffs)
        for (const auto& v : a.v) maxc = std::max(maxc, std::abs(v.to_complex()));
    long p0 = std::max(opts.prime_cutoff, excluded.empty() ? 0 : *excluded.rbegin());
    double needed = std::pow(4.0 * (1.0 + maxc), 1.0 / s0);
    while (static_cast<double>(p0) < needed && p0 < opts.hard_cap)
        p0 = std::min(opts.hard_cap, p0 * 4);
    auto primes = sieve_primes(static_cast<uint64_t>(p0));
    Complex prime_part = deterministic_prime_product(
        primes, opts.threads, [&](uint32_t p) -> Complex {
            if (excluded.count(static_cast<long>(p))) return {1.0, 0.0};
            int cls = real.class_of_residue[static_cast<std::size_t>(p % real.modulus)];
            Complex zp = std::exp(Complex(-s0 * std::log(static_cast<double>(p)), 0.0));
            Complex num(0.0, 0.0);
            for (std::size_t k = spec.coeffs.size(); k-- > 0;)
                num = (num + spec.coeffs[k].at(cls).to_complex()) * zp;
            Complex f = 1.0 + num;
            for (int n = 1; n <= N; ++n)
                for (std::size_t rho = 0; rho < nirr; ++rho) {
                    const Cyclotomic& b = d.b[n - 1][rho];
                    if (b.is_zero()) continue;
                    Complex base = 1.0 - real.characters[rho].at(p) * detail::cpow_int(zp, n);
                    if (b.is_rational_integer())
                        f *= detail::cpow_int(base, b.rational_value().get_num().get_si());
                    else
                        f *= std::exp(b.to_complex() * std::log(base));
                }
            return f;
        });
    value *= prime_part;
    Complex tail(0.0, 0.0);
    for (int m = N + 1; m <= M; ++m) {
        double t = m * s0;
        for (std::size_t psi = 0; psi < nirr; ++psi) {
            if (std::abs(beta[m][psi]) < 1e-300) continue;
            double bound = std::abs(beta[m][psi]) *
                           std::pow(static_cast<double>(p0), 1.0 - t) * 10.0 / (t - 1.0);
            if (bound < opts.target_abs_err / 16.0) continue;
            tail += beta[m][psi] * detail::prime_zeta_tail_twisted(Complex(m * s0, 0.0), psi,
                                                                   primes, real, pow_idx);
        }
    }
    value *= std::exp(tail);
    if (branch_risk)
        throw ValidationError("principal branch hit a negative real base at the location");
    return value;
}

// direct truncated product over p <= limit: overrides at excluded primes,
// the class-specialized polynomial elsewhere
inline Complex direct_euler_product(const FrobenianFactorSpec& spec, Complex s, uint64_t limit,
                                    int threads = thread_count_from_env()) {
    auto real = detail::realize_dirichlet(spec);
    std::set<long> excluded(real.ramified.begin(), real.ramified.end());
    std::map<long, const EulerFactorSpec*> overrides;
    for (const auto& [p, f] : spec.exceptional) {
        excluded.insert(p);
        overrides[p] = &f;
    }
    auto primes = sieve_primes(limit);
    bool pole_hit = false;
    Complex out = deterministic_prime_product(primes, threads, [&](uint32_t p) -> Complex {
        Complex zp = std::exp(-s * std::log(static_cast<double>(p)));
        if (excluded.count(static_cast<long>(p))) {
            auto it = overrides.find(static_cast<long>(p));
            if (it == overrides.end()) return {1.0, 0.0};
            bool local = false;
            Complex f = detail::eval_factor(*it->second, zp, &local);
            if (local) pole_hit = true;
            return f;
        }
        int cls = real.class_of_residue[static_cast<std::size_t>(p % real.modulus)];
        Complex num(0.0, 0.0);
        for (std::size_t k = spec.coeffs.size(); k-- > 0;)
            num = (num + spec.coeffs[k].at(cls).to_complex()) * zp;
        return 1.0 + num;
    });
    if (pole_hit) throw ValidationError("direct product hits a factor pole");
    return out;
}

// abscissa of absolute convergence for a Frobenian factor: 1/a with a the
// minimum degree present in any class
inline AbscissaResult abscissa(const FrobenianFactorSpec& spec) {
    AbscissaResult out;
    int a = 0;
    for (std::size_t k = 0; k < spec.coeffs.size(); ++k)
        if (!is_zero_elem(spec.coeffs[k])) {
            a = static_cast<int>(k) + 1;
            break;
        }
    if (a == 0) {
        out.trivial_factor = true;
        return out;
    }
    out.value = Rational(1, a);
    return out;
}

}  // namespace eulerprod
