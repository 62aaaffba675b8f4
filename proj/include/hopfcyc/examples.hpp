// Deterministic desk-scale inputs: finite groups, G-sets, group and function
// Hopf algebras, Sweedler's four-dimensional Hopf algebra, and the brute-force
// fixed-pair count of a G-set.

#pragma once

#include "hopfcyc/algstruct.hpp"
#include "hopfcyc/galois.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace hopfcyc::examples {

/// Elements are 0..order-1 with 0 the identity; mult_table[g][h] = gh.
struct FiniteGroupPresentation {
    std::string name;
    std::size_t order = 0;
    std::vector<std::vector<std::size_t>> mult_table;
    std::vector<std::size_t> inverse;
    std::size_t identity = 0;

    std::size_t mul(std::size_t g, std::size_t h) const { return mult_table[g][h]; }

    bool valid() const
    {
        if (mult_table.size() != order || inverse.size() != order || identity != 0) return false;
        for (std::size_t g = 0; g < order; ++g) {
            if (mul(identity, g) != g || mul(g, identity) != g) return false;
            if (mul(g, inverse[g]) != identity) return false;
            for (std::size_t h = 0; h < order; ++h) {
                for (std::size_t k = 0; k < order; ++k) {
                    if (mul(mul(g, h), k) != mul(g, mul(h, k))) return false;
                }
            }
        }
        return true;
    }
};

/// Right action: action_table[x][g] = x.g.
struct GSet {
    std::string name;
    FiniteGroupPresentation group;
    std::size_t size = 0;
    std::vector<std::vector<std::size_t>> action_table;

    std::size_t act(std::size_t x, std::size_t g) const { return action_table[x][g]; }

    bool valid() const
    {
        for (std::size_t x = 0; x < size; ++x) {
            if (act(x, group.identity) != x) return false;
            for (std::size_t g = 0; g < group.order; ++g) {
                for (std::size_t h = 0; h < group.order; ++h) {
                    if (act(act(x, g), h) != act(x, group.mul(g, h))) return false;
                }
            }
        }
        return true;
    }
};

inline FiniteGroupPresentation group_from_table(std::string name, std::vector<std::vector<std::size_t>> table)
{
    FiniteGroupPresentation g{std::move(name), table.size(), std::move(table), {}, 0};
    g.inverse.resize(g.order);
    for (std::size_t a = 0; a < g.order; ++a) {
        for (std::size_t b = 0; b < g.order; ++b) {
            if (g.mult_table[a][b] == 0) g.inverse[a] = b;
        }
    }
    return g;
}

inline FiniteGroupPresentation cyclic_group(std::size_t n)
{
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    }
    return group_from_table("C" + std::to_string(n), std::move(t));
}

/// Permutations of {0,1,2} in lexicographic order of their images (identity first).
/// The product gh applies g first, so x.g = g(x) is a right action on {0,1,2}.
inline std::vector<std::vector<std::size_t>> s3_permutations()
{
    std::vector<std::size_t> p{0, 1, 2};
    std::vector<std::vector<std::size_t>> perms;
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return perms;
}

inline FiniteGroupPresentation symmetric_group3()
{
    auto perms = s3_permutations();
    std::vector<std::vector<std::size_t>> t(6, std::vector<std::size_t>(6));
    for (std::size_t a = 0; a < 6; ++a) {
        for (std::size_t b = 0; b < 6; ++b) {
            std::vector<std::size_t> c(3);
            for (std::size_t x = 0; x < 3; ++x) c[x] = perms[b][perms[a][x]];
            t[a][b] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
        }
    }
    return group_from_table("S3", std::move(t));
}

/// Index in symmetric_group3() of the transposition swapping 0 and 1.
inline std::size_t s3_transposition01() { return 2; }

/// Index in symmetric_group3() of the 3-cycle 0->1->2->0.
inline std::size_t s3_three_cycle() { return 3; }

/// Group algebra kG: basis = group elements, Delta g = g (x) g, S g = g^-1.
inline HopfAlgebra group_algebra(const FiniteGroupPresentation& g)
{
    const std::size_t n = g.order;
    StructureConstantSpace space{n, {}};
    for (std::size_t i = 0; i < n; ++i) space.basis.push_back("g" + std::to_string(i));
    SparseMat mult(n, n * n), comult(n * n, n), counit(1, n), s(n, n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) mult.set_column(a * n + b, unit_vec(g.mul(a, b)));
        comult.set_column(a, unit_vec(a * n + a));
        counit.set_column(a, unit_vec(0));
        s.set_column(a, unit_vec(g.inverse[a]));
    }
    std::vector<SparseVec> grouplikes;
    for (std::size_t a = 0; a < n; ++a) grouplikes.push_back(unit_vec(a));
    return HopfAlgebra{Algebra{space, mult, unit_vec(0)}, Coalgebra{space, comult, counit, grouplikes}, s, s};
}

/// Function algebra k^G in the basis of point indicators delta_g.
inline HopfAlgebra function_hopf(const FiniteGroupPresentation& g)
{
    const std::size_t n = g.order;
    StructureConstantSpace space{n, {}};
    for (std::size_t i = 0; i < n; ++i) space.basis.push_back("d" + std::to_string(i));
    SparseMat mult(n, n * n), comult(n * n, n), counit(1, n), s(n, n);
    VecBuilder one;
    for (std::size_t a = 0; a < n; ++a) {
        mult.set_column(a * n + a, unit_vec(a));
        one.add(a, Rat(1));
        s.set_column(a, unit_vec(g.inverse[a]));
    }
    for (std::size_t c = 0; c < n; ++c) {
        VecBuilder d;
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                if (g.mul(a, b) == c) d.add(a * n + b, Rat(1));
            }
        }
        comult.set_column(c, d.take());
    }
    counit.set_column(g.identity, unit_vec(0));
    SparseVec unit = one.take();
    return HopfAlgebra{Algebra{space, mult, unit}, Coalgebra{space, comult, counit, {unit}}, s, s};
}

/// Function algebra k^X of a finite set (pointwise product).
inline Algebra function_algebra(std::size_t n)
{
    StructureConstantSpace space{n, {}};
    for (std::size_t i = 0; i < n; ++i) space.basis.push_back("d" + std::to_string(i));
    SparseMat mult(n, n * n);
    VecBuilder one;
    for (std::size_t a = 0; a < n; ++a) {
        mult.set_column(a * n + a, unit_vec(a));
        one.add(a, Rat(1));
    }
    return Algebra{space, mult, one.take()};
}

/// k[x]/(x^n), basis 1, x, ..., x^{n-1}.
inline Algebra truncated_polynomial(std::size_t n)
{
    StructureConstantSpace space{n, {}};
    for (std::size_t i = 0; i < n; ++i) space.basis.push_back(i == 0 ? "1" : (i == 1 ? "x" : "x^" + std::to_string(i)));
    SparseMat mult(n, n * n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; a + b < n; ++b) mult.set_column(a * n + b, unit_vec(a + b));
    }
    return Algebra{space, mult, unit_vec(0)};
}

inline Algebra ground_field() { return truncated_polynomial(1); }

/// A = k^X coacted on by k^G dually to the right action: delta_x |-> sum_{y.g = x} delta_y (x) delta_g.
inline ComoduleAlgebra gset_comodule_algebra(const GSet& x)
{
    HopfAlgebra h = function_hopf(x.group);
    const std::size_t n = x.size, m = x.group.order;
    SparseMat nab(n * m, n);
    std::vector<VecBuilder> cols(n);
    for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t g = 0; g < m; ++g) cols[x.act(y, g)].add(y * m + g, Rat(1));
    }
    for (std::size_t k = 0; k < n; ++k) nab.set_column(k, cols[k].take());
    return ComoduleAlgebra{function_algebra(n), h, nab};
}

inline GSet right_regular(const FiniteGroupPresentation& g)
{
    GSet x{g.name + " right-regular", g, g.order, {}};
    x.action_table.assign(g.order, std::vector<std::size_t>(g.order));
    for (std::size_t a = 0; a < g.order; ++a) {
        for (std::size_t b = 0; b < g.order; ++b) x.action_table[a][b] = g.mul(a, b);
    }
    return x;
}

inline GSet s3_on_three_points()
{
    auto g = symmetric_group3();
    auto perms = s3_permutations();
    GSet x{"S3 on {0,1,2}", g, 3, {}};
    x.action_table.assign(3, std::vector<std::size_t>(6));
    for (std::size_t p = 0; p < 3; ++p) {
        for (std::size_t k = 0; k < 6; ++k) x.action_table[p][k] = perms[k][p];
    }
    return x;
}

inline GSet trivial_gset(const FiniteGroupPresentation& g, std::size_t points = 1)
{
    GSet x{g.name + " trivial on " + std::to_string(points), g, points, {}};
    x.action_table.assign(points, std::vector<std::size_t>(g.order));
    for (std::size_t p = 0; p < points; ++p) {
        for (std::size_t k = 0; k < g.order; ++k) x.action_table[p][k] = p;
    }
    return x;
}

/// C4 acting on two points through C4 -> C2.
inline GSet c4_on_two_points()
{
    auto g = cyclic_group(4);
    GSet x{"C4 on {0,1} via C2", g, 2, {}};
    x.action_table.assign(2, std::vector<std::size_t>(4));
    for (std::size_t p = 0; p < 2; ++p) {
        for (std::size_t k = 0; k < 4; ++k) x.action_table[p][k] = (p + k) % 2;
    }
    return x;
}

struct FixedPairs {
    std::size_t dimension = 0;
    std::vector<std::pair<std::size_t, std::size_t>> fixed_pairs; // (g, x)
};

/// Enumerates {(g, x) : x.g = x}.
inline FixedPairs brylinski_oracle(const GSet& x)
{
    FixedPairs out;
    for (std::size_t g = 0; g < x.group.order; ++g) {
        for (std::size_t p = 0; p < x.size; ++p) {
            if (x.act(p, g) == p) out.fixed_pairs.emplace_back(g, p);
        }
    }
    out.dimension = out.fixed_pairs.size();
    return out;
}

/// C = k^G / (functions vanishing on K); isomorphic to k^K when K is a subgroup.
inline QuotientCoalgebraSpec subgroup_quotient_coalgebra(const FiniteGroupPresentation& g, const std::vector<std::size_t>& subgroup)
{
    std::vector<SparseVec> outside;
    for (std::size_t x = 0; x < g.order; ++x) {
        if (std::find(subgroup.begin(), subgroup.end(), x) == subgroup.end()) outside.push_back(unit_vec(x));
    }
    return quotient_coalgebra(function_hopf(g), Subspace::span(g.order, outside));
}

/// Sweedler's Hopf algebra: g^2 = 1, x^2 = 0, xg = -gx, Delta g = g(x)g, Delta x = x(x)1 + g(x)x.
/// Basis order 1, g, x, gx.
inline HopfAlgebra sweedler_h4()
{
    // Monomials g^a x^b encoded as index a + 2b.
    auto idx = [](int a, int b) { return static_cast<std::size_t>(a + 2 * b); };
    StructureConstantSpace space{4, {"1", "g", "x", "gx"}};
    SparseMat mult(4, 16);
    for (int a1 = 0; a1 < 2; ++a1) {
        for (int b1 = 0; b1 < 2; ++b1) {
            for (int a2 = 0; a2 < 2; ++a2) {
                for (int b2 = 0; b2 < 2; ++b2) {
                    if (b1 + b2 > 1) continue;
                    // g^a1 x^b1 g^a2 x^b2 = (-1)^{b1 a2} g^{a1+a2} x^{b1+b2}
                    Rat sign = (b1 * a2) % 2 ? Rat(-1) : Rat(1);
                    mult.set_column(idx(a1, b1) * 4 + idx(a2, b2), SparseVec{Entry{idx((a1 + a2) % 2, b1 + b2), sign}});
                }
            }
        }
    }
    SparseMat comult(16, 4);
    auto t = [](std::size_t i, std::size_t j) { return i * 4 + j; };
    comult.set_column(0, unit_vec(t(0, 0)));
    comult.set_column(1, unit_vec(t(1, 1)));
    // Delta x = x(x)1 + g(x)x
    comult.set_column(2, SparseVec{Entry{t(1, 2), Rat(1)}, Entry{t(2, 0), Rat(1)}});
    // Delta(gx) = (g(x)g)(x(x)1 + g(x)x) = gx(x)g + 1(x)gx
    comult.set_column(3, SparseVec{Entry{t(0, 3), Rat(1)}, Entry{t(3, 1), Rat(1)}});
    SparseMat counit(1, 4);
    counit.set_column(0, unit_vec(0));
    counit.set_column(1, unit_vec(0));
    // S(g) = g, S(x) = -gx, S(gx) = S(x)S(g) = -gxg = x.
    SparseMat s(4, 4), sinv(4, 4);
    s.set_column(0, unit_vec(0));
    s.set_column(1, unit_vec(1));
    s.set_column(2, SparseVec{Entry{3, Rat(-1)}});
    s.set_column(3, unit_vec(2));
    // S^-1 = S^3: x -> gx, gx -> -x.
    sinv.set_column(0, unit_vec(0));
    sinv.set_column(1, unit_vec(1));
    sinv.set_column(2, unit_vec(3));
    sinv.set_column(3, SparseVec{Entry{2, Rat(-1)}});
    return HopfAlgebra{Algebra{space, mult, unit_vec(0)}, Coalgebra{space, comult, counit, {unit_vec(0), unit_vec(1)}}, s,
                       sinv};
}

/// Recovers a G-set from a comodule algebra in split function-algebra form
/// (orthogonal idempotent bases with group-law comultiplication); nothing otherwise.
inline std::optional<GSet> decode_gset(const ComoduleAlgebra& ca)
{
    const HopfAlgebra& h = ca.hopf;
    const std::size_t m = h.dim(), n = ca.dim();
    auto idempotent_basis = [](const Algebra& a) {
        const std::size_t d = a.dim();
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                SparseVec want = i == j ? unit_vec(i) : SparseVec{};
                if (!(a.product(i, j) == want)) return false;
            }
        }
        return true;
    };
    if (!idempotent_basis(h.algebra) || !idempotent_basis(ca.algebra)) return std::nullopt;
    std::vector<std::vector<std::size_t>> table(m, std::vector<std::size_t>(m, m));
    for (std::size_t c = 0; c < m; ++c) {
        for (const auto& e : h.coalgebra.comult.column(c)) {
            if (e.value != 1) return std::nullopt;
            std::size_t a = e.index / m, b = e.index % m;
            if (table[a][b] != m) return std::nullopt;
            table[a][b] = c;
        }
    }
    for (const auto& row : table) {
        for (auto v : row) {
            if (v == m) return std::nullopt;
        }
    }
    // The counit picks out the identity; reorder so it has index 0.
    const auto& eps = h.coalgebra.counit;
    std::size_t ident = m;
    for (std::size_t c = 0; c < m; ++c) {
        if (eps.at(0, c) == 1) ident = c;
    }
    if (ident != 0) return std::nullopt;
    FiniteGroupPresentation g = group_from_table("decoded", table);
    if (!g.valid()) return std::nullopt;
    GSet x{"decoded", g, n, std::vector<std::vector<std::size_t>>(n, std::vector<std::size_t>(m, n))};
    for (std::size_t target = 0; target < n; ++target) {
        for (const auto& e : ca.coaction.column(target)) {
            if (e.value != 1) return std::nullopt;
            x.action_table[e.index / m][e.index % m] = target;
        }
    }
    if (!x.valid()) return std::nullopt;
    return x;
}

} // namespace hopfcyc::examples
