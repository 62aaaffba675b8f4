// Structure-constant algebras, coalgebras, Hopf algebras, comodule algebras and
// module coalgebras, each with an exact axiom verifier.
//
// Conventions (shapes are rows x cols):
//   mult       dim x dim^2        column i*dim+j holds e_i e_j
//   comult     dim^2 x dim        column i holds Delta(e_i)
//   counit     1 x dim
//   coaction   dimA*dimH x dimA   column a holds a_(0) (x) a_(1)
//   action     dimC x dimC*dimH   column c*dimH+h holds c . h

#pragma once

#include "hopfcyc/tensor.hpp"

#include <string>
#include <vector>

namespace hopfcyc {

/// A finite-dimensional rational vector space with named basis vectors.
struct StructureConstantSpace {
    std::size_t dim = 0;
    std::vector<std::string> basis;

    static StructureConstantSpace numbered(std::size_t n, const std::string& stem = "e")
    {
        StructureConstantSpace s{n, {}};
        for (std::size_t i = 0; i < n; ++i) s.basis.push_back(stem + std::to_string(i));
        return s;
    }
};

struct Algebra {
    StructureConstantSpace space;
    SparseMat mult;
    SparseVec unit;

    std::size_t dim() const { return space.dim; }
    const SparseVec& product(std::size_t i, std::size_t j) const { return mult.column(i * dim() + j); }

    SparseVec multiply(const SparseVec& x, const SparseVec& y) const
    {
        VecBuilder acc;
        for (const auto& a : x) {
            for (const auto& b : y) acc.add(product(a.index, b.index), a.value * b.value);
        }
        return acc.take();
    }

    /// Matrix of x |-> v x.
    SparseMat left_mult(const SparseVec& v) const
    {
        SparseMat m(dim(), dim());
        for (std::size_t j = 0; j < dim(); ++j) m.set_column(j, multiply(v, unit_vec(j)));
        return m;
    }

    /// Matrix of x |-> x v.
    SparseMat right_mult(const SparseVec& v) const
    {
        SparseMat m(dim(), dim());
        for (std::size_t j = 0; j < dim(); ++j) m.set_column(j, multiply(unit_vec(j), v));
        return m;
    }

    bool commutative() const
    {
        for (std::size_t i = 0; i < dim(); ++i) {
            for (std::size_t j = i + 1; j < dim(); ++j) {
                if (!(product(i, j) == product(j, i))) return false;
            }
        }
        return true;
    }
};

struct Coalgebra {
    StructureConstantSpace space;
    SparseMat comult;
    SparseMat counit;
    std::vector<SparseVec> grouplikes;

    std::size_t dim() const { return space.dim; }
    Rat epsilon(const SparseVec& v) const { return coeff(counit.apply(v), 0); }
};

struct HopfAlgebra {
    Algebra algebra;
    Coalgebra coalgebra;
    SparseMat antipode;
    SparseMat antipode_inv;

    std::size_t dim() const { return algebra.dim(); }
    const SparseVec& unit() const { return algebra.unit; }
    SparseVec multiply(const SparseVec& x, const SparseVec& y) const { return algebra.multiply(x, y); }
    Rat epsilon(const SparseVec& v) const { return coalgebra.epsilon(v); }

    /// Iterated coproduct Delta^(n-1): H -> H^{(x) n} on a vector, n >= 1.
    SparseVec iterated_coproduct(const SparseVec& v, std::size_t legs) const
    {
        SparseVec cur = v;
        const std::size_t d = dim();
        for (std::size_t k = 1; k < legs; ++k) {
            // Split the last leg: (id^{k-1} (x) Delta).
            VecBuilder acc;
            for (const auto& e : cur) {
                std::size_t head = e.index / d, tail = e.index % d;
                for (const auto& t : coalgebra.comult.column(tail)) acc.add(head * d * d + t.index, e.value * t.value);
            }
            cur = acc.take();
        }
        return cur;
    }
};

struct ComoduleAlgebra {
    Algebra algebra;
    HopfAlgebra hopf;
    SparseMat coaction;

    std::size_t dim() const { return algebra.dim(); }

    /// a |-> a_(0) (x) a_(1) (x) ... (x) a_(legs), flattened as A (x) H^{legs}.
    SparseVec iterated_coaction(std::size_t a, std::size_t legs) const
    {
        SparseVec cur = unit_vec(a);
        const std::size_t dh = hopf.dim();
        std::size_t trailing = 1;
        for (std::size_t k = 0; k < legs; ++k) {
            // (coaction (x) id_{H^k}) keeps leg labels increasing left to right.
            VecBuilder acc;
            for (const auto& e : cur) {
                std::size_t head = e.index / trailing, tail = e.index % trailing;
                for (const auto& t : coaction.column(head)) acc.add(t.index * trailing + tail, e.value * t.value);
            }
            cur = acc.take();
            trailing *= dh;
        }
        return cur;
    }
};

struct ModuleCoalgebra {
    Coalgebra coalgebra;
    HopfAlgebra hopf;
    SparseMat action;

    std::size_t dim() const { return coalgebra.dim(); }

    SparseVec act(const SparseVec& c, const SparseVec& h) const
    {
        VecBuilder acc;
        for (const auto& x : c) {
            for (const auto& y : h) acc.add(action.column(x.index * hopf.dim() + y.index), x.value * y.value);
        }
        return acc.take();
    }
};

namespace detail {

inline SparseMat unit_map(const SparseVec& unit, std::size_t dim)
{
    return SparseMat::column_vector(dim, unit);
}

} // namespace detail

inline VerificationReport verify_algebra(const Algebra& a)
{
    VerificationReport r{"algebra", {}};
    const std::size_t d = a.dim();
    if (a.mult.rows() != d || a.mult.cols() != d * d) {
        r.add(boolean_check("shape", false, "mult is not dim x dim^2"));
        return r;
    }
    const SparseMat id = SparseMat::identity(d);
    r.add(compare_maps("associativity", a.mult * kron(a.mult, id), a.mult * kron(id, a.mult), Shape::power(d, 3)));
    const SparseMat u = detail::unit_map(a.unit, d);
    r.add(compare_maps("left unit", a.mult * kron(u, id), id, Shape({d})));
    r.add(compare_maps("right unit", a.mult * kron(id, u), id, Shape({d})));
    return r;
}

inline VerificationReport verify_coalgebra(const Coalgebra& c)
{
    VerificationReport r{"coalgebra", {}};
    const std::size_t d = c.dim();
    if (c.comult.rows() != d * d || c.comult.cols() != d || c.counit.rows() != 1 || c.counit.cols() != d) {
        r.add(boolean_check("shape", false, "comult/counit shape"));
        return r;
    }
    const SparseMat id = SparseMat::identity(d);
    r.add(compare_maps("coassociativity", kron(c.comult, id) * c.comult, kron(id, c.comult) * c.comult, Shape({d})));
    r.add(compare_maps("left counit", kron(c.counit, id) * c.comult, id, Shape({d})));
    r.add(compare_maps("right counit", kron(id, c.counit) * c.comult, id, Shape({d})));
    for (std::size_t k = 0; k < c.grouplikes.size(); ++k) {
        const auto& g = c.grouplikes[k];
        bool ok = c.comult.apply(g) == tensor2(g, g, d) && c.epsilon(g) == 1;
        r.add(boolean_check("grouplike " + std::to_string(k), ok, "declared grouplike fails Delta e = e(x)e or eps(e) = 1"));
    }
    return r;
}

inline VerificationReport verify_hopf(const HopfAlgebra& h)
{
    VerificationReport r{"hopf", {}};
    r.absorb(verify_algebra(h.algebra), "algebra: ");
    r.absorb(verify_coalgebra(h.coalgebra), "coalgebra: ");
    if (!r.ok()) return r;
    const std::size_t d = h.dim();
    if (h.coalgebra.dim() != d || h.antipode.rows() != d || h.antipode.cols() != d || h.antipode_inv.rows() != d ||
        h.antipode_inv.cols() != d) {
        r.add(boolean_check("shape", false, "antipode or coalgebra dimension mismatch"));
        return r;
    }
    const SparseMat id = SparseMat::identity(d);
    const SparseMat& m = h.algebra.mult;
    const SparseMat& dl = h.coalgebra.comult;
    const SparseMat& eps = h.coalgebra.counit;
    const SparseMat u = detail::unit_map(h.unit(), d);
    const SparseMat mid = kron({id, swap_matrix(d, d), id});
    r.add(compare_maps("comult multiplicative", dl * m, kron(m, m) * mid * kron(dl, dl), Shape::power(d, 2)));
    r.add(compare_maps("comult unital", dl * u, kron(u, u), Shape({1})));
    r.add(compare_maps("counit multiplicative", eps * m, kron(eps, eps), Shape::power(d, 2)));
    r.add(compare_maps("counit unital", eps * u, SparseMat::identity(1), Shape({1})));
    r.add(compare_maps("antipode left", m * kron(h.antipode, id) * dl, u * eps, Shape({d})));
    r.add(compare_maps("antipode right", m * kron(id, h.antipode) * dl, u * eps, Shape({d})));
    r.add(compare_maps("antipode inverse left", h.antipode_inv * h.antipode, id, Shape({d})));
    r.add(compare_maps("antipode inverse right", h.antipode * h.antipode_inv, id, Shape({d})));
    return r;
}

inline VerificationReport verify_comodule_algebra(const ComoduleAlgebra& ca)
{
    VerificationReport r{"comodule algebra", {}};
    r.absorb(verify_algebra(ca.algebra), "algebra: ");
    const std::size_t da = ca.dim(), dh = ca.hopf.dim();
    if (ca.coaction.rows() != da * dh || ca.coaction.cols() != da) {
        r.add(boolean_check("shape", false, "coaction is not dimA*dimH x dimA"));
        return r;
    }
    if (!r.ok()) return r;
    const SparseMat ia = SparseMat::identity(da), ih = SparseMat::identity(dh);
    const SparseMat& nab = ca.coaction;
    r.add(compare_maps("coassociativity", kron(nab, ih) * nab, kron(ia, ca.hopf.coalgebra.comult) * nab, Shape({da})));
    r.add(compare_maps("counitality", kron(ia, ca.hopf.coalgebra.counit) * nab, ia, Shape({da})));
    const SparseMat mid = kron({ia, swap_matrix(dh, da), ih});
    r.add(compare_maps("multiplicativity", nab * ca.algebra.mult,
                       kron(ca.algebra.mult, ca.hopf.algebra.mult) * mid * kron(nab, nab), Shape::power(da, 2)));
    r.add(boolean_check("unit coinvariant", nab.apply(ca.algebra.unit) == tensor2(ca.algebra.unit, ca.hopf.unit(), dh),
                        "coaction(1) != 1 (x) 1"));
    return r;
}

inline VerificationReport verify_module_coalgebra(const ModuleCoalgebra& mc)
{
    VerificationReport r{"module coalgebra", {}};
    r.absorb(verify_coalgebra(mc.coalgebra), "coalgebra: ");
    const std::size_t dc = mc.dim(), dh = mc.hopf.dim();
    if (mc.action.rows() != dc || mc.action.cols() != dc * dh) {
        r.add(boolean_check("shape", false, "action is not dimC x dimC*dimH"));
        return r;
    }
    if (!r.ok()) return r;
    const SparseMat ic = SparseMat::identity(dc), ih = SparseMat::identity(dh);
    const SparseMat& act = mc.action;
    r.add(compare_maps("module associativity", act * kron(act, ih), act * kron(ic, mc.hopf.algebra.mult),
                       Shape({dc, dh, dh})));
    r.add(compare_maps("module unit", act * kron(ic, detail::unit_map(mc.hopf.unit(), dh)), ic, Shape({dc})));
    const SparseMat mid = kron({ic, swap_matrix(dc, dh), ih});
    r.add(compare_maps("comult equivariant", mc.coalgebra.comult * act,
                       kron(act, act) * mid * kron(mc.coalgebra.comult, mc.hopf.coalgebra.comult), Shape({dc, dh})));
    r.add(compare_maps("counit equivariant", mc.coalgebra.counit * act, kron(mc.coalgebra.counit, mc.hopf.coalgebra.counit),
                       Shape({dc, dh})));
    return r;
}

/// H regarded as a right H-comodule algebra through its comultiplication.
inline ComoduleAlgebra regular_comodule_algebra(const HopfAlgebra& h)
{
    return ComoduleAlgebra{h.algebra, h, h.coalgebra.comult};
}

/// H regarded as a right H-module coalgebra through right multiplication.
inline ModuleCoalgebra regular_module_coalgebra(const HopfAlgebra& h)
{
    return ModuleCoalgebra{h.coalgebra, h, h.algebra.mult};
}

/// A with the trivial coaction a |-> a (x) 1.
inline ComoduleAlgebra trivial_comodule_algebra(const Algebra& a, const HopfAlgebra& h)
{
    SparseMat nab(a.dim() * h.dim(), a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) nab.set_column(i, tensor2(unit_vec(i), h.unit(), h.dim()));
    return ComoduleAlgebra{a, h, nab};
}

} // namespace hopfcyc
