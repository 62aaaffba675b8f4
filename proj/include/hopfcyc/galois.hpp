// Coalgebra-Galois data: the induced C-coaction, its invariants B, the canonical
// map A (x)_B A -> A (x) C with its inverse, the translation map, quotient module
// coalgebras H/I, and the Sweedler and Galois corings.

#pragma once

#include "hopfcyc/bimodule.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hopfcyc {

struct NotGroupLike : Error {
    using Error::Error;
};

struct NotCoidealRightIdeal : Error {
    NotCoidealRightIdeal(const std::string& what, std::string w) : Error(what), witness(std::move(w)) {}
    std::string witness;
};

struct NotHopfGalois : Error {
    using Error::Error;
};

struct GaloisConditionFailed : Error {
    GaloisConditionFailed(std::size_t r, std::size_t src, std::size_t tgt)
        : Error("canonical map is not bijective: rank " + std::to_string(r) + ", dim A(x)_B A = " + std::to_string(src) +
                ", dim A(x)C = " + std::to_string(tgt)),
          rank(r), source_dim(src), target_dim(tgt)
    {
    }
    std::size_t rank, source_dim, target_dim;
};

/// Matrix of h |-> c.h for a fixed c in C.
inline SparseMat orbit_map(const ModuleCoalgebra& c, const SparseVec& v)
{
    SparseMat m(c.dim(), c.hopf.dim());
    for (std::size_t h = 0; h < c.hopf.dim(); ++h) m.set_column(h, c.act(v, unit_vec(h)));
    return m;
}

/// rho(a) = a_(0) (x) e.a_(1).
inline SparseMat induce_coaction(const ComoduleAlgebra& a, const ModuleCoalgebra& c, const SparseVec& e)
{
    const std::size_t dc = c.dim();
    if (!(c.coalgebra.comult.apply(e) == tensor2(e, e, dc)) || c.coalgebra.epsilon(e) != 1) {
        throw NotGroupLike("e is not group-like in C");
    }
    return kron(SparseMat::identity(a.dim()), orbit_map(c, e)) * a.coaction;
}

/// B = {b : rho(ba) = (b (x) 1) rho(a) for all a}; always a unital subalgebra.
inline Subspace invariants(const ComoduleAlgebra& ca, const SparseMat& rho)
{
    const std::size_t da = ca.dim(), dc = rho.rows() / da;
    const Algebra& a = ca.algebra;
    SparseMat stacked(da * da * dc, da);
    for (std::size_t b = 0; b < da; ++b) {
        VecBuilder col;
        for (std::size_t x = 0; x < da; ++x) {
            const std::size_t off = x * da * dc;
            for (const auto& e : rho.apply(a.product(b, x))) col.add(off + e.index, e.value);
            for (const auto& e : rho.column(x)) {
                const std::size_t a0 = e.index / dc, c = e.index % dc;
                for (const auto& p : a.product(b, a0)) col.add(off + p.index * dc + c, -e.value * p.value);
            }
        }
        stacked.set_column(b, col.take());
    }
    Subspace inv = kernel(stacked);
    if (!inv.contains(a.unit)) throw InternalTheoremViolation("coaction invariants do not contain 1");
    for (const auto& x : inv.basis()) {
        for (const auto& y : inv.basis()) {
            if (!inv.contains(a.multiply(x, y))) throw InternalTheoremViolation("coaction invariants not closed under product");
        }
    }
    return inv;
}

/// A as a bimodule with `left_by` acting on the left and `right_by` on the right.
inline Bimodule algebra_bimodule(const Algebra& a, const std::vector<SparseVec>& left_by,
                                 const std::vector<SparseVec>& right_by)
{
    Bimodule m{a.dim(), {}, {}};
    for (const auto& r : left_by) m.left.push_back(a.left_mult(r));
    for (const auto& r : right_by) m.right.push_back(a.right_mult(r));
    return m;
}

inline std::vector<SparseVec> basis_vectors(std::size_t n)
{
    std::vector<SparseVec> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(unit_vec(i));
    return v;
}

struct GaloisDatum {
    ComoduleAlgebra A;
    ModuleCoalgebra C;
    SparseVec e;
    SparseMat rho;
    Subspace B;
    BalancedTensor AB; // A (x)_B A as an A-bimodule
    SparseMat can;     // dim(A(x)_B A) columns, A (x) C rows
    SparseMat can_inv;

    std::size_t dim_a() const { return A.dim(); }
    std::size_t dim_c() const { return C.dim(); }

    /// Coordinates of x (x)_B y in A (x)_B A.
    SparseVec balanced(const SparseVec& x, const SparseVec& y) const
    {
        return AB.presented.proj.apply(tensor2(x, y, dim_a()));
    }

    /// tau(c) = can^{-1}(1 (x) c), in A (x)_B A coordinates.
    SparseVec tau(const SparseVec& c) const { return can_inv.apply(tensor2(A.algebra.unit, c, dim_c())); }

    /// Ambient representative in A (x) A of a class in A (x)_B A.
    SparseVec lift_balanced(const SparseVec& coords) const { return AB.presented.lift.apply(coords); }

    /// True when C is H itself with the regular action and e = 1.
    bool hopf_galois() const
    {
        const HopfAlgebra& h = C.hopf;
        return C.dim() == h.dim() && C.coalgebra.comult == h.coalgebra.comult && C.coalgebra.counit == h.coalgebra.counit &&
               C.action == h.algebra.mult && e == h.unit();
    }
};

/// Canonical map can(x (x)_B y) = x y_(0) (x) y_(1) on ambient A (x) A.
inline SparseMat canonical_ambient(const Algebra& a, const SparseMat& rho)
{
    const std::size_t da = a.dim(), dc = rho.rows() / da;
    SparseMat out(da * dc, da * da);
    for (std::size_t x = 0; x < da; ++x) {
        for (std::size_t y = 0; y < da; ++y) {
            VecBuilder col;
            for (const auto& e : rho.column(y)) {
                for (const auto& p : a.product(x, e.index / dc)) col.add(p.index * dc + e.index % dc, e.value * p.value);
            }
            out.set_column(x * da + y, col.take());
        }
    }
    return out;
}

/// Everything up to and including the canonical map and its inverse; throws GaloisConditionFailed
/// when can is not bijective.
inline GaloisDatum make_galois_datum(const ComoduleAlgebra& a, const ModuleCoalgebra& c, const SparseVec& e)
{
    GaloisDatum g{a, c, e, induce_coaction(a, c, e), {}, {}, {}, {}};
    g.B = invariants(a, g.rho);
    const auto all = basis_vectors(a.dim());
    g.AB = balanced_tensor(algebra_bimodule(a.algebra, all, g.B.basis()), algebra_bimodule(a.algebra, g.B.basis(), all));
    const SparseMat amb = canonical_ambient(a.algebra, g.rho);
    const QuotientSpace& q = g.AB.presented.space;
    for (const auto& r : q.relations().basis()) {
        if (!amb.apply(r).empty()) throw InternalTheoremViolation("canonical map is not B-balanced");
    }
    g.can = amb * g.AB.presented.lift;
    const std::size_t src = q.dim(), tgt = a.dim() * c.dim(), rk = rank(g.can);
    if (src != tgt || rk != src) throw GaloisConditionFailed(rk, src, tgt);
    g.can_inv = SparseMat(src, tgt);
    for (std::size_t j = 0; j < tgt; ++j) {
        auto x = solve(g.can, unit_vec(j));
        if (!x) throw GaloisConditionFailed(rk, src, tgt);
        g.can_inv.set_column(j, std::move(*x));
    }
    return g;
}

/// Matrix C -> A (x)_B A of the translation map.
inline SparseMat translation_map(const GaloisDatum& g)
{
    SparseMat t(g.AB.module.dim, g.dim_c());
    for (std::size_t c = 0; c < g.dim_c(); ++c) t.set_column(c, g.tau(unit_vec(c)));
    return t;
}

struct QuotientCoalgebraSpec {
    HopfAlgebra H;
    Subspace I;
    SparseMat pi;
    ModuleCoalgebra C;
    SparseVec e; // pi(1)
};

/// C = H/I for a coideal right ideal I, with the induced coalgebra and right H-action.
inline QuotientCoalgebraSpec quotient_coalgebra(const HopfAlgebra& h, Subspace ideal)
{
    ideal.finalize();
    const std::size_t d = h.dim();
    if (ideal.ambient_dim() != d) throw DimensionMismatch("coideal lives in the wrong space");
    QuotientSpace q(ideal);
    const SparseMat pi = q.projection_matrix();
    const SparseMat lift = q.lift_matrix();
    const auto& basis = ideal.basis();
    for (std::size_t k = 0; k < basis.size(); ++k) {
        for (std::size_t x = 0; x < d; ++x) {
            if (!ideal.contains(h.multiply(basis[k], unit_vec(x)))) {
                throw NotCoidealRightIdeal("I is not a right ideal", "I basis " + std::to_string(k) + " times h" + std::to_string(x));
            }
        }
    }
    const SparseMat pipi = kron(pi, pi);
    for (std::size_t k = 0; k < basis.size(); ++k) {
        if (!pipi.apply(h.coalgebra.comult.apply(basis[k])).empty()) {
            throw NotCoidealRightIdeal("Delta(I) not in I(x)H + H(x)I", "I basis " + std::to_string(k));
        }
        if (h.epsilon(basis[k]) != 0) throw NotCoidealRightIdeal("eps(I) != 0", "I basis " + std::to_string(k));
    }
    const std::size_t dc = q.dim();
    SparseVec e = pi.apply(h.unit());
    Coalgebra cc{StructureConstantSpace::numbered(dc, "c"), pipi * h.coalgebra.comult * lift, h.coalgebra.counit * lift, {e}};
    SparseMat act(dc, dc * d);
    for (std::size_t c = 0; c < dc; ++c) {
        for (std::size_t x = 0; x < d; ++x) act.set_column(c * d + x, pi.apply(h.multiply(lift.column(c), unit_vec(x))));
    }
    if (rank(pi) != dc) throw InternalTheoremViolation("quotient map is not surjective");
    return QuotientCoalgebraSpec{h, std::move(ideal), pi, ModuleCoalgebra{std::move(cc), h, std::move(act)}, std::move(e)};
}

/// An A-coring: an A-bimodule with coassociative comultiplication into the (x)_A square and a counit to A.
struct Coring {
    std::string name;
    Algebra base;
    Bimodule bimodule; // actions of the basis of A
    SparseMat comult;  // dim^2 x dim; ambient representatives of the (x)_A square
    SparseMat counit;  // dimA x dim
    SparseVec grouplike;

    std::size_t dim() const { return bimodule.dim; }
};

/// A (x)_B A with Delta(x (x)_B y) = (x (x)_B 1) (x)_A (1 (x)_B y) and eps(x (x)_B y) = xy.
inline Coring sweedler_coring(const GaloisDatum& g)
{
    const Algebra& a = g.A.algebra;
    const std::size_t d = g.AB.module.dim, da = a.dim();
    Coring c{"Sweedler coring", a, g.AB.module, SparseMat(d * d, d), SparseMat(da, d), g.balanced(a.unit, a.unit)};
    for (std::size_t k = 0; k < d; ++k) {
        const std::size_t amb = g.AB.presented.space.lift_index(k), x = amb / da, y = amb % da;
        c.comult.set_column(k, tensor2(g.balanced(unit_vec(x), a.unit), g.balanced(a.unit, unit_vec(y)), d));
        c.counit.set_column(k, a.product(x, y));
    }
    return c;
}

/// A (x) C with a'(a (x) c) = a'a (x) c, (a (x) c)a' = a a'_(0) (x) c.a'_(1),
/// Delta(a (x) c) = (a (x) c_1) (x)_A (1 (x) c_2) and eps(a (x) c) = a eps(c).
inline Coring galois_coring(const GaloisDatum& g)
{
    const Algebra& a = g.A.algebra;
    const std::size_t da = a.dim(), dc = g.dim_c(), dh = g.C.hopf.dim(), d = da * dc;
    Coring c{"Galois coring", a, Bimodule{d, {}, {}}, SparseMat(d * d, d), SparseMat(da, d),
             tensor2(a.unit, g.e, dc)};
    const SparseMat ic = SparseMat::identity(dc);
    for (std::size_t x = 0; x < da; ++x) {
        c.bimodule.left.push_back(kron(a.left_mult(unit_vec(x)), ic));
        SparseMat r(d, d);
        for (std::size_t y = 0; y < da; ++y) {
            for (std::size_t z = 0; z < dc; ++z) {
                VecBuilder col;
                for (const auto& t : g.A.coaction.column(x)) {
                    col.add(tensor2(a.product(y, t.index / dh), g.C.act(unit_vec(z), unit_vec(t.index % dh)), dc), t.value);
                }
                r.set_column(y * dc + z, col.take());
            }
        }
        c.bimodule.right.push_back(std::move(r));
    }
    const auto& cm = g.C.coalgebra.comult;
    for (std::size_t y = 0; y < da; ++y) {
        for (std::size_t z = 0; z < dc; ++z) {
            VecBuilder col;
            for (const auto& t : cm.column(z)) {
                const std::size_t c1 = t.index / dc, c2 = t.index % dc;
                col.add(tensor2(tensor2(unit_vec(y), unit_vec(c1), dc), tensor2(a.unit, unit_vec(c2), dc), d), t.value);
            }
            c.comult.set_column(y * dc + z, col.take());
            c.counit.set_column(y * dc + z, scaled(unit_vec(y), g.C.coalgebra.epsilon(unit_vec(z))));
        }
    }
    return c;
}

namespace detail {

/// Linear combination sum_k v_k ops[k] of action matrices indexed by the basis of A.
inline SparseMat action_of(const std::vector<SparseMat>& ops, const SparseVec& v, std::size_t dim)
{
    SparseMat out(dim, dim);
    for (const auto& e : v) out = out + ops[e.index].scaled(e.value);
    return out;
}

inline Check bimodule_laws(const Bimodule& m, const Algebra& a, const std::string& prefix)
{
    const std::size_t d = m.dim;
    const SparseMat id = SparseMat::identity(d);
    if (!(action_of(m.left, a.unit, d) == id) || !(action_of(m.right, a.unit, d) == id)) {
        return boolean_check(prefix + "bimodule laws", false, "unit does not act trivially");
    }
    for (std::size_t x = 0; x < a.dim(); ++x) {
        for (std::size_t y = 0; y < a.dim(); ++y) {
            const SparseVec xy = a.product(x, y);
            bool ok = m.left[x] * m.left[y] == action_of(m.left, xy, d) &&
                      m.right[y] * m.right[x] == action_of(m.right, xy, d) && m.left[x] * m.right[y] == m.right[y] * m.left[x];
            if (!ok) return boolean_check(prefix + "bimodule laws", false, "basis " + format_index({x, y}));
        }
    }
    return boolean_check(prefix + "bimodule laws", true);
}

} // namespace detail

inline VerificationReport verify_coring(const Coring& c)
{
    VerificationReport r{c.name, {}};
    const Algebra& a = c.base;
    const std::size_t d = c.dim(), da = a.dim();
    r.add(detail::bimodule_laws(c.bimodule, a, ""));
    const BalancedTensor t2 = balanced_tensor(c.bimodule, c.bimodule);
    const BalancedTensor t3 = balanced_tensor(t2.module, c.bimodule);
    const SparseMat id = SparseMat::identity(d);
    const SparseMat p3 = t3.presented.proj * kron(t2.presented.proj, id);
    const SparseMat& p2 = t2.presented.proj;
    r.add(compare_maps("coassociativity", p3 * kron(c.comult, id) * c.comult, p3 * kron(id, c.comult) * c.comult, Shape({d})));
    SparseMat left_counit(d, d), right_counit(d, d);
    for (std::size_t q = 0; q < d; ++q) {
        VecBuilder lc, rc;
        for (const auto& t : c.comult.column(q)) {
            const std::size_t u = t.index / d, v = t.index % d;
            lc.add(detail::action_of(c.bimodule.left, c.counit.column(u), d).column(v), t.value);
            rc.add(detail::action_of(c.bimodule.right, c.counit.column(v), d).column(u), t.value);
        }
        left_counit.set_column(q, lc.take());
        right_counit.set_column(q, rc.take());
    }
    r.add(compare_maps("left counit", left_counit, id, Shape({d})));
    r.add(compare_maps("right counit", right_counit, id, Shape({d})));
    bool lin = true;
    std::string witness;
    for (std::size_t x = 0; x < da && lin; ++x) {
        const SparseMat lx = a.left_mult(unit_vec(x)), rx = a.right_mult(unit_vec(x));
        lin = p2 * c.comult * c.bimodule.left[x] == t2.module.left[x] * p2 * c.comult &&
              p2 * c.comult * c.bimodule.right[x] == t2.module.right[x] * p2 * c.comult &&
              c.counit * c.bimodule.left[x] == lx * c.counit && c.counit * c.bimodule.right[x] == rx * c.counit;
        if (!lin) witness = "a" + std::to_string(x);
    }
    r.add(boolean_check("structure maps are bimodule maps", lin, witness));
    const SparseVec& gl = c.grouplike;
    r.add(boolean_check("grouplike", p2.apply(c.comult.apply(gl)) == p2.apply(tensor2(gl, gl, d)) && c.counit.apply(gl) == a.unit,
                        "Delta(g) != g (x)_A g or eps(g) != 1"));
    return r;
}

/// Identities of a complete Galois datum, exact and with first-failure witnesses.
inline VerificationReport verify_galois(const GaloisDatum& g)
{
    VerificationReport r{"galois", {}};
    const Algebra& a = g.A.algebra;
    const std::size_t da = g.dim_a(), dc = g.dim_c(), d = g.AB.module.dim;
    const SparseMat ia = SparseMat::identity(da), ic = SparseMat::identity(dc);
    r.add(compare_maps("can after can_inv", g.can * g.can_inv, SparseMat::identity(da * dc), Shape({da, dc})));
    r.add(compare_maps("can_inv after can", g.can_inv * g.can, SparseMat::identity(d), Shape({d})));

    bool lin = true;
    std::string witness;
    for (std::size_t x = 0; x < da && lin; ++x) {
        lin = g.can * g.AB.module.left[x] == kron(a.left_mult(unit_vec(x)), ic) * g.can;
        if (!lin) witness = "a" + std::to_string(x);
    }
    r.add(boolean_check("can left A-linear", lin, witness));

    // (can (x) id)(x (x)_B y_(0) (x) y_(1)) against (id (x) Delta_C) can.
    const SparseMat amb = canonical_ambient(a, g.rho);
    SparseMat lhs(da * dc * dc, d);
    for (std::size_t k = 0; k < d; ++k) {
        const std::size_t t = g.AB.presented.space.lift_index(k), x = t / da, y = t % da;
        VecBuilder col;
        for (const auto& e : g.rho.column(y)) {
            col.add(tensor2(amb.column(x * da + e.index / dc), unit_vec(e.index % dc), dc), e.value);
        }
        lhs.set_column(k, col.take());
    }
    r.add(compare_maps("can right C-colinear", lhs, kron(ia, g.C.coalgebra.comult) * g.can, Shape({d})));

    const SparseMat tau = translation_map(g);
    bool central = true;
    witness.clear();
    for (std::size_t bi = 0; bi < g.B.rank() && central; ++bi) {
        const SparseVec& b = g.B.basis()[bi];
        const SparseMat lb = detail::action_of(g.AB.module.left, b, d), rb = detail::action_of(g.AB.module.right, b, d);
        central = lb * tau == rb * tau;
        if (!central) witness = "B basis " + std::to_string(bi);
    }
    r.add(boolean_check("translation map in B-centralizer", central, witness));

    // can(tau(c) a) = a_(0) (x) c.a_(1): the canonical and standard entwinings agree.
    SparseMat ent_l(da * dc, dc * da), ent_r(da * dc, dc * da);
    const std::size_t dh = g.C.hopf.dim();
    for (std::size_t c = 0; c < dc; ++c) {
        for (std::size_t x = 0; x < da; ++x) {
            ent_l.set_column(c * da + x, g.can.apply(g.AB.module.right[x].apply(tau.column(c))));
            VecBuilder col;
            for (const auto& e : g.A.coaction.column(x)) {
                col.add(tensor2(unit_vec(e.index / dh), g.C.act(unit_vec(c), unit_vec(e.index % dh)), dc), e.value);
            }
            ent_r.set_column(c * da + x, col.take());
        }
    }
    r.add(compare_maps("entwinings coincide", ent_l, ent_r, Shape({dc, da})));

    const Coring sw = sweedler_coring(g), ga = galois_coring(g);
    r.absorb(verify_coring(sw), "sweedler coring: ");
    r.absorb(verify_coring(ga), "galois coring: ");
    bool iso = g.can.apply(sw.grouplike) == ga.grouplike && ga.counit * g.can == sw.counit;
    for (std::size_t x = 0; x < da && iso; ++x) {
        iso = g.can * sw.bimodule.right[x] == ga.bimodule.right[x] * g.can;
    }
    const BalancedTensor gg = balanced_tensor(ga.bimodule, ga.bimodule);
    iso = iso && gg.presented.proj * kron(g.can, g.can) * sw.comult == gg.presented.proj * ga.comult * g.can;
    r.add(boolean_check("can is a coring isomorphism", iso, "structure map not intertwined"));

    if (g.hopf_galois()) {
        const HopfAlgebra& h = g.C.hopf;
        // tau(hh') = h'^[1] h^[1] (x)_B h^[2] h'^[2]
        SparseMat lhs2(d, dh * dh), rhs2(d, dh * dh);
        for (std::size_t x = 0; x < dh; ++x) {
            const SparseVec tx = g.lift_balanced(tau.column(x));
            for (std::size_t y = 0; y < dh; ++y) {
                lhs2.set_column(x * dh + y, g.tau(h.algebra.product(x, y)));
                const SparseVec ty = g.lift_balanced(tau.column(y));
                VecBuilder acc;
                for (const auto& u : tx) {
                    for (const auto& v : ty) {
                        acc.add(g.balanced(a.product(v.index / da, u.index / da), a.product(u.index % da, v.index % da)),
                                u.value * v.value);
                    }
                }
                rhs2.set_column(x * dh + y, acc.take());
            }
        }
        r.add(compare_maps("translation map anti-multiplicative", lhs2, rhs2, Shape({dh, dh})));

        // a (x) 1 = a_(1)^[2] (x) a_(0) a_(1)^[1] in (A (x) A)_B.
        Bimodule aa{da * da, {}, {}};
        for (const auto& b : g.B.basis()) {
            aa.left.push_back(kron(a.left_mult(b), ia));
            aa.right.push_back(kron(ia, a.right_mult(b)));
        }
        const Presented cyc = coinvariants(aa);
        SparseMat l3(cyc.space.dim(), da), r3(cyc.space.dim(), da);
        for (std::size_t x = 0; x < da; ++x) {
            l3.set_column(x, cyc.proj.apply(tensor2(unit_vec(x), a.unit, da)));
            VecBuilder acc;
            for (const auto& e : g.A.coaction.column(x)) {
                for (const auto& t : g.lift_balanced(g.tau(unit_vec(e.index % dh)))) {
                    const std::size_t u = t.index / da, v = t.index % da;
                    acc.add(tensor2(unit_vec(v), a.product(e.index / dh, u), da), e.value * t.value);
                }
            }
            r3.set_column(x, cyc.proj.apply(acc.take()));
        }
        r.add(compare_maps("a(x)1 through the translation map in (A(x)A)_B", l3, r3, Shape({da})));
    }
    return r;
}

} // namespace hopfcyc
