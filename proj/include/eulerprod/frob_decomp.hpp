#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "eulerprod/group.hpp"
#include "eulerprod/zeta_decomp.hpp"

namespace eulerprod {

// Frobenian Euler factor: Q_p(z) = 1 + sum_n a_n(Fr_p) z^n with class-function
// coefficients, plus explicit per-prime override factors for the finitely
// many primes that break the pattern (ramification).
struct FrobenianFactorSpec {
    CharacterTable table;
    std::vector<ClassFunction> coeffs;  // coeffs[k] is a_{k+1}
    std::vector<std::pair<long, EulerFactorSpec>> exceptional;

    // Realization of an abelian table as characters of (Z/qZ)^*: class c
    // consists of the residues class_residue[c]. Required for numeric
    // evaluation; irrelevant to the exact decomposition.
    struct DirichletData {
        long modulus = 0;
        std::vector<long> class_residue;
    };
    std::optional<DirichletData> dirichlet;

    void validate_shape() const {
        table.validate();
        for (const auto& a : coeffs)
            if (a.size() != table.class_count())
                throw ValidationError("coefficient class function does not match the table");
        for (const auto& [p, f] : exceptional) {
            if (p < 2) throw ValidationError("exceptional prime must be >= 2");
            (void)f;
        }
    }

    TruncatedSeries<ClassFunction> series(int depth) const {
        ClassFunction one = ClassFunction::constant(table.class_count(), Cyclotomic(Rational(1)));
        TruncatedSeries<ClassFunction> s(depth, one);
        for (std::size_t k = 0; k < coeffs.size() && static_cast<int>(k) < depth; ++k)
            s.set_coeff(static_cast<int>(k) + 1, coeffs[k]);
        return s;
    }

    // the scalar series at one conjugacy class
    TruncatedSeries<Cyclotomic> specialized_series(int g_class, int depth) const {
        TruncatedSeries<Cyclotomic> s(depth, Cyclotomic(Rational(1)));
        for (std::size_t k = 0; k < coeffs.size() && static_cast<int>(k) < depth; ++k)
            s.set_coeff(static_cast<int>(k) + 1, coeffs[k].at(g_class));
        return s;
    }
};

// The r-recursion's inner product carries an index ambiguity in its source:
// the tensor power may sit on the already-computed character (gamma, the
// summation index) or on the target index rho. Both are implemented; the
// specialization oracle validates TensorOnPrior and the default is frozen to
// it. TensorOnTarget is kept for auditability.
enum class ROrientation { TensorOnPrior, TensorOnTarget };

// Same question for the b-assembly's cyclic-tensor multiplicity. CycOnPrior
// (<gamma^{cyc d}, rho>, cyclic power on the summation index) validates.
enum class BOrientation { CycOnPrior, CycOnTarget };

struct FrobDecomposition {
    int depth = 0;
    std::vector<std::vector<Cyclotomic>> r;  // r[n-1][rho]
    std::vector<std::vector<Cyclotomic>> b;  // b[n-1][rho]
    bool all_integral = true;
};

// q_{n,rho}: log of the class-function series, decomposed into irreducibles
inline std::vector<std::vector<Cyclotomic>> frob_log_coords(const FrobenianFactorSpec& spec,
                                                            int depth) {
    auto logq = series_log(spec.series(depth));
    std::vector<std::vector<Cyclotomic>> q;
    q.reserve(static_cast<std::size_t>(depth));
    for (int n = 1; n <= depth; ++n) q.push_back(decompose(logq.coeff(n), spec.table));
    return q;
}

namespace detail {

// M[gamma][rho] = <gamma^{tensor d}, rho>
inline std::vector<std::vector<Cyclotomic>> tensor_multiplicities(const CharacterTable& table,
                                                                  long d) {
    std::vector<std::vector<Cyclotomic>> m;
    m.reserve(table.irreducibles.size());
    for (const auto& gamma : table.irreducibles)
        m.push_back(decompose(tensor_power_char(gamma, d), table));
    return m;
}

// C[gamma][rho] = <gamma^{cyc d}, rho>
inline std::vector<std::vector<Cyclotomic>> cyclic_multiplicities(const CharacterTable& table,
                                                                  long d) {
    std::vector<std::vector<Cyclotomic>> m;
    m.reserve(table.irreducibles.size());
    for (const auto& gamma : table.irreducibles)
        m.push_back(decompose(cyclic_tensor_char(gamma, d, table.group), table));
    return m;
}

}  // namespace detail

// r_{1,rho} = q_{1,rho};
// r_{n,rho} = q_{n,rho} - sum_{d|n, d>1} sum_gamma (mult/d) r_{n/d,gamma},
// with mult = <gamma^{tensor d}, rho> under TensorOnPrior.
inline std::vector<std::vector<Cyclotomic>> compute_r(
    const FrobenianFactorSpec& spec, int depth,
    ROrientation orient = ROrientation::TensorOnPrior) {
    const std::size_t nirr = spec.table.irreducibles.size();
    auto q = frob_log_coords(spec, depth);
    std::vector<std::vector<Cyclotomic>> r(q.size(), std::vector<Cyclotomic>(nirr));
    std::map<long, std::vector<std::vector<Cyclotomic>>> tensor_cache;
    for (int n = 1; n <= depth; ++n) {
        for (std::size_t rho = 0; rho < nirr; ++rho) {
            Cyclotomic acc = q[n - 1][rho];
            for (unsigned long d : divisors(static_cast<unsigned long>(n))) {
                if (d == 1) continue;
                auto it = tensor_cache.find(static_cast<long>(d));
                if (it == tensor_cache.end())
                    it = tensor_cache
                             .emplace(d, detail::tensor_multiplicities(spec.table,
                                                                       static_cast<long>(d)))
                             .first;
                const auto& mult = it->second;
                for (std::size_t gamma = 0; gamma < nirr; ++gamma) {
                    const Cyclotomic& m = orient == ROrientation::TensorOnPrior
                                              ? mult[gamma][rho]
                                              : mult[rho][gamma];
                    if (m.is_zero()) continue;
                    Cyclotomic prev = r[n / d - 1][gamma];
                    if (prev.is_zero()) continue;
                    acc = acc - m * prev * Rational(1, static_cast<long>(d));
                }
            }
            r[n - 1][rho] = acc;
        }
    }
    return r;
}

// For every conjugacy class g the decomposition must reproduce the scalar
// series exactly: log Q_g(z) = sum_{n,rho} b_{n,rho} [charpoly_log(rho,g)](z^n)
// up to the working depth. Returns the offending (class, degree) on failure.
inline std::optional<std::pair<int, int>> specialization_defect(
    const FrobenianFactorSpec& spec, const std::vector<std::vector<Cyclotomic>>& b, int depth) {
    const auto& table = spec.table;
    if (b.size() < static_cast<std::size_t>(depth))
        throw ValidationError("decomposition depth exceeds the exponent rows provided");
    for (const auto& row : b)
        if (row.size() != table.irreducibles.size())
            throw ValidationError("exponent row length does not match the table's irreducibles");
    for (std::size_t g = 0; g < table.class_count(); ++g) {
        auto lhs = series_log(spec.specialized_series(static_cast<int>(g), depth));
        TruncatedSeries<Cyclotomic> rhs(depth, Cyclotomic());
        for (int n = 1; n <= depth; ++n)
            for (std::size_t rho = 0; rho < table.irreducibles.size(); ++rho) {
                if (b[n - 1][rho].is_zero()) continue;
                for (int j = 1; n * j <= depth; ++j) {
                    Cyclotomic tr = table.irreducibles[rho].at(
                        table.group.power_class(static_cast<int>(g), j));
                    rhs.set_coeff(n * j,
                                  rhs.coeff(n * j) + b[n - 1][rho] * tr * Rational(1, j));
                }
            }
        for (int k = 1; k <= depth; ++k)
            if (lhs.coeff(k) != rhs.coeff(k)) return std::make_pair(static_cast<int>(g), k);
    }
    return std::nullopt;
}

// b_{n,rho} = sum_{d|n} sum_gamma <gamma^{cyc d}, rho> r_{n/d,gamma}
// (CycOnPrior). Validates the per-class specialization identity before
// returning; a defect is a correctness alarm, not an error path.
inline FrobDecomposition compute_b_frob(const FrobenianFactorSpec& spec, int depth,
                                        ROrientation r_orient = ROrientation::TensorOnPrior,
                                        BOrientation b_orient = BOrientation::CycOnPrior,
                                        bool validate = true) {
    const std::size_t nirr = spec.table.irreducibles.size();
    FrobDecomposition out;
    out.depth = depth;
    out.r = compute_r(spec, depth, r_orient);
    out.b.assign(out.r.size(), std::vector<Cyclotomic>(nirr));
    std::map<long, std::vector<std::vector<Cyclotomic>>> cyc_cache;
    for (int n = 1; n <= depth; ++n)
        for (std::size_t rho = 0; rho < nirr; ++rho) {
            Cyclotomic acc;
            for (unsigned long d : divisors(static_cast<unsigned long>(n))) {
                auto it = cyc_cache.find(static_cast<long>(d));
                if (it == cyc_cache.end())
                    it = cyc_cache
                             .emplace(d, detail::cyclic_multiplicities(spec.table,
                                                                       static_cast<long>(d)))
                             .first;
                const auto& mult = it->second;
                for (std::size_t gamma = 0; gamma < nirr; ++gamma) {
                    const Cyclotomic& m = b_orient == BOrientation::CycOnPrior
                                              ? mult[gamma][rho]
                                              : mult[rho][gamma];
                    if (m.is_zero()) continue;
                    Cyclotomic prev = out.r[n / d - 1][gamma];
                    if (prev.is_zero()) continue;
                    acc = acc + m * prev;
                }
            }
            out.b[n - 1][rho] = acc;
        }
    out.all_integral = true;
    for (const auto& row : out.b)
        for (const auto& v : row)
            if (!v.is_rational_integer()) out.all_integral = false;
    if (validate) {
        if (auto defect = specialization_defect(spec, out.b, depth))
            throw CorrectnessAlarm("Frobenian decomposition fails specialization at class " +
                                   std::to_string(defect->first) + ", degree " +
                                   std::to_string(defect->second));
    }
    return out;
}

// Independent check: per-class series identity, plus the identity-class
// cross-check through the constant-coefficient recursion
// b_n(Q_e) = sum_rho dim(rho) b_{n,rho}.
inline bool specialization_oracle(const FrobenianFactorSpec& spec, const FrobDecomposition& d) {
    if (specialization_defect(spec, d.b, d.depth).has_value()) return false;
    int e = spec.table.group.identity_class();
    auto log_e = series_log(spec.specialized_series(e, d.depth));
    std::vector<Cyclotomic> q_e(log_e.coeffs().begin() + 1, log_e.coeffs().end());
    auto b_e = compute_b_from_log(q_e);
    for (int n = 1; n <= d.depth; ++n) {
        Cyclotomic agg;
        for (std::size_t rho = 0; rho < spec.table.irreducibles.size(); ++rho)
            agg = agg + d.b[n - 1][rho] * Rational(spec.table.dimensions[rho]);
        if (agg != b_e[n - 1]) return false;
    }
    return true;
}

struct FrobIntegralityResult {
    bool integral = true;
    std::string diagnostic;
};

inline bool coeffs_are_integer_virtual(const FrobenianFactorSpec& spec) {
    for (const auto& a : spec.coeffs)
        if (!is_integer_virtual(decompose(a, spec.table))) return false;
    return true;
}

// every b_{n,rho} a rational integer; guaranteed by theorem when the
// coefficients are integer virtual characters
inline FrobIntegralityResult frob_integrality(const FrobDecomposition& d,
                                              const FrobenianFactorSpec& spec) {
    FrobIntegralityResult res;
    for (std::size_t n = 0; n < d.b.size() && res.integral; ++n)
        for (std::size_t rho = 0; rho < d.b[n].size(); ++rho)
            if (!d.b[n][rho].is_rational_integer()) {
                res.integral = false;
                res.diagnostic = "b_{" + std::to_string(n + 1) + "," + std::to_string(rho) +
                                 "} = " + to_string(d.b[n][rho]) + " is not a rational integer";
                break;
            }
    if (!res.integral && coeffs_are_integer_virtual(spec))
        throw CorrectnessAlarm(
            "integer-virtual-character factor produced non-integral exponent: " + res.diagnostic);
    return res;
}

}  // namespace eulerprod
