#pragma once

#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "eulerprod/combinatorics.hpp"
#include "eulerprod/cyclotomic.hpp"
#include "eulerprod/series.hpp"

namespace eulerprod {

struct ConjClass {
    long size = 1;
    int element_order = 1;
    std::vector<int> power;  // power[k] = class of g^k for k = 0..element_order-1
};

// A finite group by conjugacy-class data: sizes and power maps, no Cayley
// table. Enough for all character arithmetic here.
struct FiniteGroupData {
    std::vector<ConjClass> classes;

    long order() const {
        long n = 0;
        for (const auto& c : classes) n += c.size;
        return n;
    }
    int identity_class() const {
        for (std::size_t i = 0; i < classes.size(); ++i)
            if (classes[i].element_order == 1 && classes[i].size == 1) return static_cast<int>(i);
        throw ValidationError("group has no identity class");
    }
    int power_class(int c, long k) const {
        const ConjClass& cc = classes[static_cast<std::size_t>(c)];
        long m = k % cc.element_order;
        if (m < 0) m += cc.element_order;
        return cc.power[static_cast<std::size_t>(m)];
    }
    int exponent() const {
        int e = 1;
        for (const auto& c : classes) e = std::lcm(e, c.element_order);
        return e;
    }
    void validate() const {
        for (std::size_t i = 0; i < classes.size(); ++i) {
            const auto& c = classes[i];
            if (c.size < 1 || c.element_order < 1 ||
                c.power.size() != static_cast<std::size_t>(c.element_order))
                throw ValidationError("malformed conjugacy class " + std::to_string(i));
            if (c.power[0] != identity_class() || (c.element_order > 1 && c.power[1] != static_cast<int>(i)))
                throw ValidationError("power map of class " + std::to_string(i) +
                                      " must start at identity, then itself");
            for (int p : c.power)
                if (p < 0 || p >= static_cast<int>(classes.size()))
                    throw ValidationError("power map out of range");
        }
        (void)identity_class();
    }
};

// Class function with exact cyclotomic values, one per conjugacy class.
// Multiplication is pointwise, which makes these a commutative ring and a
// valid coefficient ring for TruncatedSeries.
struct ClassFunction {
    std::vector<Cyclotomic> v;

    ClassFunction() = default;
    explicit ClassFunction(std::vector<Cyclotomic> values) : v(std::move(values)) {}
    static ClassFunction constant(std::size_t classes, const Cyclotomic& c) {
        return ClassFunction(std::vector<Cyclotomic>(classes, c));
    }

    std::size_t size() const { return v.size(); }
    const Cyclotomic& at(int c) const { return v[static_cast<std::size_t>(c)]; }

    friend ClassFunction operator+(const ClassFunction& a, const ClassFunction& b) {
        check_same_ring(a, b);
        ClassFunction out = a;
        for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] = out.v[i] + b.v[i];
        return out;
    }
    friend ClassFunction operator-(const ClassFunction& a, const ClassFunction& b) {
        check_same_ring(a, b);
        ClassFunction out = a;
        for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] = out.v[i] - b.v[i];
        return out;
    }
    friend ClassFunction operator-(const ClassFunction& a) {
        ClassFunction out = a;
        for (auto& x : out.v) x = -x;
        return out;
    }
    friend ClassFunction operator*(const ClassFunction& a, const ClassFunction& b) {
        check_same_ring(a, b);
        ClassFunction out = a;
        for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] = out.v[i] * b.v[i];
        return out;
    }
    friend ClassFunction operator*(const ClassFunction& a, const Cyclotomic& s) {
        ClassFunction out = a;
        for (auto& x : out.v) x = x * s;
        return out;
    }
    friend bool operator==(const ClassFunction& a, const ClassFunction& b) {
        if (a.v.size() != b.v.size()) return false;
        for (std::size_t i = 0; i < a.v.size(); ++i)
            if (a.v[i] != b.v[i]) return false;
        return true;
    }
    friend void check_same_ring(const ClassFunction& a, const ClassFunction& b) {
        if (a.v.size() != b.v.size())
            throw ValidationError("class functions live on different groups (ring mismatch)");
    }
};

inline ClassFunction zero_like(const ClassFunction& x) {
    return ClassFunction::constant(x.v.size(), Cyclotomic());
}
inline ClassFunction one_like(const ClassFunction& x) {
    return ClassFunction::constant(x.v.size(), Cyclotomic(Rational(1)));
}
inline bool is_zero_elem(const ClassFunction& x) {
    for (const auto& c : x.v)
        if (!c.is_zero()) return false;
    return true;
}
inline ClassFunction div_by_long(const ClassFunction& x, long n) {
    ClassFunction out = x;
    for (auto& c : out.v) c = c * Rational(1, n);
    return out;
}
inline ClassFunction mul_long(const ClassFunction& x, long n) {
    ClassFunction out = x;
    for (auto& c : out.v) c = c * Rational(n);
    return out;
}

struct CharacterTable {
    FiniteGroupData group;
    std::vector<ClassFunction> irreducibles;
    std::vector<long> dimensions;
    std::string name;

    std::size_t class_count() const { return group.classes.size(); }

    // row orthogonality <chi_i, chi_j> = delta_ij, column orthogonality,
    // dimensions at the identity, irreducible count = class count
    void validate() const;
};

// (1/|G|) sum_c size_c f(c) conj(g(c))
inline Cyclotomic inner_product(const ClassFunction& f, const ClassFunction& g,
                                const CharacterTable& table) {
    if (f.size() != table.class_count() || g.size() != table.class_count())
        throw ValidationError("class function does not match the table's classes");
    Cyclotomic acc;
    for (std::size_t c = 0; c < table.class_count(); ++c) {
        Cyclotomic term = f.v[c] * g.v[c].conj();
        acc = acc + term * Rational(table.group.classes[c].size);
    }
    return acc * Rational(1, table.group.order());
}

inline void CharacterTable::validate() const {
    group.validate();
    if (irreducibles.size() != class_count())
        throw ValidationError("need exactly one irreducible per conjugacy class");
    if (dimensions.size() != irreducibles.size())
        throw ValidationError("dimension list does not match irreducibles");
    int id = group.identity_class();
    for (std::size_t i = 0; i < irreducibles.size(); ++i) {
        if (irreducibles[i].size() != class_count())
            throw ValidationError("irreducible " + std::to_string(i) + " has wrong class count");
        if (irreducibles[i].v[static_cast<std::size_t>(id)] != Cyclotomic(Rational(dimensions[i])))
            throw ValidationError("irreducible " + std::to_string(i) +
                                  " does not take its dimension at the identity");
        for (std::size_t j = 0; j <= i; ++j) {
            Cyclotomic ip = inner_product(irreducibles[i], irreducibles[j], *this);
            Cyclotomic expect(Rational(i == j ? 1 : 0));
            if (ip != expect)
                throw ValidationError("row orthogonality fails for irreducibles " +
                                      std::to_string(i) + ", " + std::to_string(j));
        }
    }
    // column orthogonality: sum_i chi_i(c) conj(chi_i(c')) = delta |G|/size_c
    for (std::size_t c = 0; c < class_count(); ++c)
        for (std::size_t cp = 0; cp <= c; ++cp) {
            Cyclotomic acc;
            for (const auto& chi : irreducibles) acc = acc + chi.v[c] * chi.v[cp].conj();
            Rational centralizer(group.order(), group.classes[c].size);
            centralizer.canonicalize();
            Cyclotomic expect = c == cp ? Cyclotomic(centralizer) : Cyclotomic();
            if (acc != expect)
                throw ValidationError("column orthogonality fails for classes " +
                                      std::to_string(c) + ", " + std::to_string(cp));
        }
}

// coefficients <f, chi_i> for every irreducible
inline std::vector<Cyclotomic> decompose(const ClassFunction& f, const CharacterTable& table) {
    std::vector<Cyclotomic> out;
    out.reserve(table.irreducibles.size());
    for (const auto& chi : table.irreducibles) out.push_back(inner_product(f, chi, table));
    return out;
}

inline bool is_integer_virtual(const std::vector<Cyclotomic>& coords) {
    for (const auto& c : coords)
        if (!c.is_rational_integer()) return false;
    return true;
}

// character of the d-th tensor power: pointwise d-th power
inline ClassFunction tensor_power_char(const ClassFunction& chi, long d) {
    if (d < 1) throw ValidationError("tensor power needs d >= 1");
    ClassFunction out = chi;
    for (auto& x : out.v) x = x.pow(d);
    return out;
}

// character of the cyclic tensor power:
//   tr(chi^{cyc d})(g) = (1/d) sum_{q | d} mu(d/q) chi(g^{d/q})^q
inline ClassFunction cyclic_tensor_char(const ClassFunction& chi, long d,
                                        const FiniteGroupData& group) {
    if (d < 1) throw ValidationError("cyclic tensor power needs d >= 1");
    if (chi.size() != group.classes.size())
        throw ValidationError("class function does not match group");
    ClassFunction out = ClassFunction::constant(chi.size(), Cyclotomic());
    for (std::size_t c = 0; c < chi.size(); ++c) {
        Cyclotomic acc;
        for (unsigned long q : divisors(static_cast<unsigned long>(d))) {
            int mu = moebius(static_cast<unsigned long>(d) / q);
            if (mu == 0) continue;
            Cyclotomic val = chi.at(group.power_class(static_cast<int>(c), d / static_cast<long>(q)));
            Cyclotomic term = val.pow(static_cast<long>(q)) * Rational(mu);
            acc = acc + term;
        }
        out.v[c] = acc * Rational(1, d);
    }
    return out;
}

// -log det(I - rho(g) z) as a series: sum_k chi(g^k)/k z^k
inline TruncatedSeries<Cyclotomic> charpoly_log(const ClassFunction& chi, int g_class, int depth,
                                                const FiniteGroupData& group) {
    TruncatedSeries<Cyclotomic> out(depth, Cyclotomic());
    for (int k = 1; k <= depth; ++k)
        out.set_coeff(k, chi.at(group.power_class(g_class, k)) * Rational(1, k));
    return out;
}

// Checks -log(1 - chi(g) z) = sum_{n <= D} [charpoly-log of chi^{cyc n} at g](z^n)
// exactly up to degree D, with each cyclic tensor character first decomposed
// into irreducibles.
inline bool verify_log_trchar(const ClassFunction& chi, int g_class, int depth,
                              const CharacterTable& table) {
    // left side: series with coefficient chi(g)^k / k
    TruncatedSeries<Cyclotomic> lhs(depth, Cyclotomic());
    Cyclotomic x = chi.at(g_class);
    Cyclotomic p(Rational(1));
    for (int k = 1; k <= depth; ++k) {
        p = p * x;
        lhs.set_coeff(k, p * Rational(1, k));
    }
    TruncatedSeries<Cyclotomic> rhs(depth, Cyclotomic());
    for (int n = 1; n <= depth; ++n) {
        ClassFunction cyc = cyclic_tensor_char(chi, n, table.group);
        std::vector<Cyclotomic> mult = decompose(cyc, table);
        for (std::size_t r = 0; r < mult.size(); ++r) {
            if (mult[r].is_zero()) continue;
            for (int j = 1; n * j <= depth; ++j) {
                Cyclotomic contrib =
                    table.irreducibles[r].at(table.group.power_class(g_class, j)) *
                    Rational(1, j) * mult[r];
                rhs.set_coeff(n * j, rhs.coeff(n * j) + contrib);
            }
        }
    }
    return lhs == rhs;
}

// Builds class data from an explicit Cayley table (mult[i][j] = index of
// g_i g_j) for user-supplied groups.
inline FiniteGroupData group_from_cayley(const std::vector<std::vector<int>>& mult) {
    const int n = static_cast<int>(mult.size());
    if (n == 0) throw ValidationError("empty Cayley table");
    for (const auto& row : mult)
        if (static_cast<int>(row.size()) != n) throw ValidationError("Cayley table must be square");
    int identity = -1;
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x) ok = mult[e][x] == x && mult[x][e] == x;
        if (ok) {
            identity = e;
            break;
        }
    }
    if (identity < 0) throw ValidationError("Cayley table has no identity");
    std::vector<int> inv(n, -1);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (mult[x][y] == identity) inv[x] = y;
    for (int x = 0; x < n; ++x)
        if (inv[x] < 0) throw ValidationError("Cayley table has a non-invertible element");
    // conjugacy classes
    std::vector<int> class_of(n, -1);
    std::vector<std::vector<int>> members;
    for (int x = 0; x < n; ++x) {
        if (class_of[x] >= 0) continue;
        int id = static_cast<int>(members.size());
        members.emplace_back();
        for (int g = 0; g < n; ++g) {
            int conj = mult[mult[g][x]][inv[g]];
            if (class_of[conj] < 0) {
                class_of[conj] = id;
                members.back().push_back(conj);
            }
        }
    }
    auto element_order = [&](int x) {
        int ord = 1, cur = x;
        while (cur != identity) {
            cur = mult[cur][x];
            ++ord;
        }
        return ord;
    };
    FiniteGroupData out;
    out.classes.resize(members.size());
    for (std::size_t c = 0; c < members.size(); ++c) {
        int rep = members[c][0];
        ConjClass cc;
        cc.size = static_cast<long>(members[c].size());
        cc.element_order = element_order(rep);
        int cur = identity;
        for (int k = 0; k < cc.element_order; ++k) {
            cc.power.push_back(class_of[cur]);
            cur = mult[cur][rep];
        }
        out.classes[c] = std::move(cc);
    }
    return out;
}

namespace tables {

namespace detail {
inline ClassFunction cf(std::vector<Cyclotomic> v) { return ClassFunction(std::move(v)); }
inline Cyclotomic R(long x) { return Cyclotomic(Rational(x)); }
}  // namespace detail

// trivial group: the degenerate table that reduces the Frobenian pipeline
// to the constant-coefficient one
inline CharacterTable trivial() {
    CharacterTable t;
    t.name = "trivial";
    t.group.classes = {{1, 1, {0}}};
    t.irreducibles = {detail::cf({detail::R(1)})};
    t.dimensions = {1};
    return t;
}

inline CharacterTable c2() {
    CharacterTable t;
    t.name = "c2";
    t.group.classes = {{1, 1, {0}}, {1, 2, {0, 1}}};
    t.irreducibles = {detail::cf({detail::R(1), detail::R(1)}),
                      detail::cf({detail::R(1), detail::R(-1)})};
    t.dimensions = {1, 1};
    return t;
}

inline CharacterTable c4() {
    CharacterTable t;
    t.name = "c4";
    // classes: e, g, g^2, g^3
    t.group.classes = {{1, 1, {0}}, {1, 4, {0, 1, 2, 3}}, {1, 2, {0, 2}}, {1, 4, {0, 3, 2, 1}}};
    Cyclotomic i = Cyclotomic::root_of_unity(4);
    auto chi = [&](long a) {
        std::vector<Cyclotomic> v;
        const long k_of_class[4] = {0, 1, 2, 3};
        for (long c = 0; c < 4; ++c) v.push_back(i.pow(((a * k_of_class[c]) % 4 + 4) % 4));
        return ClassFunction(std::move(v));
    };
    t.irreducibles = {chi(0), chi(1), chi(2), chi(3)};
    t.dimensions = {1, 1, 1, 1};
    return t;
}

inline CharacterTable v4() {
    CharacterTable t;
    t.name = "v4";
    // classes: e, a, b, ab
    t.group.classes = {{1, 1, {0}}, {1, 2, {0, 1}}, {1, 2, {0, 2}}, {1, 2, {0, 3}}};
    using detail::R;
    t.irreducibles = {detail::cf({R(1), R(1), R(1), R(1)}),
                      detail::cf({R(1), R(1), R(-1), R(-1)}),
                      detail::cf({R(1), R(-1), R(1), R(-1)}),
                      detail::cf({R(1), R(-1), R(-1), R(1)})};
    t.dimensions = {1, 1, 1, 1};
    return t;
}

inline CharacterTable s3() {
    CharacterTable t;
    t.name = "s3";
    // classes: e, transpositions (3), 3-cycles (2)
    t.group.classes = {{1, 1, {0}}, {3, 2, {0, 1}}, {2, 3, {0, 2, 2}}};
    using detail::R;
    t.irreducibles = {detail::cf({R(1), R(1), R(1)}),
                      detail::cf({R(1), R(-1), R(1)}),
                      detail::cf({R(2), R(0), R(-1)})};
    t.dimensions = {1, 1, 2};
    return t;
}

inline CharacterTable d4() {
    CharacterTable t;
    t.name = "d4";
    // classes: e, r^2, {r, r^3}, {s, r^2 s}, {rs, r^3 s}
    t.group.classes = {
        {1, 1, {0}}, {1, 2, {0, 1}}, {2, 4, {0, 2, 1, 2}}, {2, 2, {0, 3}}, {2, 2, {0, 4}}};
    using detail::R;
    t.irreducibles = {detail::cf({R(1), R(1), R(1), R(1), R(1)}),
                      detail::cf({R(1), R(1), R(1), R(-1), R(-1)}),
                      detail::cf({R(1), R(1), R(-1), R(1), R(-1)}),
                      detail::cf({R(1), R(1), R(-1), R(-1), R(1)}),
                      detail::cf({R(2), R(-2), R(0), R(0), R(0)})};
    t.dimensions = {1, 1, 1, 1, 2};
    return t;
}

inline CharacterTable a4() {
    CharacterTable t;
    t.name = "a4";
    // classes: e, double transpositions (3), 3-cycles (4), their inverses (4)
    t.group.classes = {{1, 1, {0}}, {3, 2, {0, 1}}, {4, 3, {0, 2, 3}}, {4, 3, {0, 3, 2}}};
    using detail::R;
    Cyclotomic w = Cyclotomic::root_of_unity(3);
    Cyclotomic w2 = w.pow(2);
    t.irreducibles = {detail::cf({R(1), R(1), R(1), R(1)}),
                      detail::cf({R(1), R(1), w, w2}),
                      detail::cf({R(1), R(1), w2, w}),
                      detail::cf({R(3), R(-1), R(0), R(0)})};
    t.dimensions = {1, 1, 1, 3};
    return t;
}

inline std::vector<CharacterTable> bundled() {
    return {c2(), c4(), v4(), s3(), d4(), a4()};
}

inline CharacterTable by_name(const std::string& name) {
    for (auto& t : bundled())
        if (t.name == name) return t;
    if (name == "trivial") return trivial();
    throw ValidationError("unknown bundled table: " + name);
}

}  // namespace tables

}  // namespace eulerprod
