// Bimodules given by the action matrices of a spanning set of the acting algebra,
// balanced tensor products over that algebra, and cyclic coinvariants M/[R,M].

#pragma once

#include "hopfcyc/algstruct.hpp"

#include <string>
#include <vector>

namespace hopfcyc {

/// left[r] is m |-> r.m and right[r] is m |-> m.r for the r-th spanning element of the acting algebra.
struct Bimodule {
    std::size_t dim = 0;
    std::vector<SparseMat> left;
    std::vector<SparseMat> right;
};

/// A quotient of an ambient space together with the matrices relating the two.
struct Presented {
    QuotientSpace space;
    SparseMat proj; // dim x ambient
    SparseMat lift; // ambient x dim, every column a single ambient basis vector
};

inline Presented present(QuotientSpace q)
{
    SparseMat p = q.projection_matrix();
    SparseMat l = q.lift_matrix();
    return Presented{std::move(q), std::move(p), std::move(l)};
}

namespace detail {

/// P op L, after checking that op maps the relations of the quotient into themselves.
inline SparseMat descend(const QuotientSpace& q, const SparseMat& op, const std::string& what)
{
    for (const auto& r : q.relations().basis()) {
        if (!q.project(op.apply(r)).empty()) throw InternalTheoremViolation(what + " does not preserve the relations");
    }
    SparseMat out(q.dim(), q.dim());
    for (std::size_t k = 0; k < q.dim(); ++k) out.set_column(k, q.project(op.column(q.lift_index(k))));
    return out;
}

} // namespace detail

/// A as a bimodule over the elements `acting` of A (for instance a basis of a subalgebra).
inline Bimodule algebra_bimodule(const Algebra& a, const std::vector<SparseVec>& acting)
{
    Bimodule m{a.dim(), {}, {}};
    for (const auto& r : acting) {
        m.left.push_back(a.left_mult(r));
        m.right.push_back(a.right_mult(r));
    }
    return m;
}

struct BalancedTensor {
    Presented presented;
    Bimodule module; // outer actions, in quotient coordinates
};

/// M (x)_R N, where M.right and N.left are indexed by the same spanning set of R.
/// The result keeps M's left action and N's right action.
inline BalancedTensor balanced_tensor(const Bimodule& m, const Bimodule& n)
{
    if (m.right.size() != n.left.size()) throw DimensionMismatch("balanced tensor: acting sets differ");
    const std::size_t dm = m.dim, dn = n.dim;
    Subspace rel(dm * dn);
    for (std::size_t r = 0; r < m.right.size(); ++r) {
        for (std::size_t i = 0; i < dm; ++i) {
            const SparseVec& mr = m.right[r].column(i);
            for (std::size_t j = 0; j < dn; ++j) {
                SparseVec v = add(tensor2(mr, unit_vec(j), dn), tensor2(unit_vec(i), n.left[r].column(j), dn), Rat(-1));
                if (!v.empty()) rel.insert(v);
            }
        }
    }
    Presented p = present(QuotientSpace(std::move(rel)));
    Bimodule out{p.space.dim(), {}, {}};
    const SparseMat im = SparseMat::identity(dm), in = SparseMat::identity(dn);
    for (const auto& l : m.left) out.left.push_back(detail::descend(p.space, kron(l, in), "left action on balanced tensor"));
    for (const auto& r : n.right) out.right.push_back(detail::descend(p.space, kron(im, r), "right action on balanced tensor"));
    return BalancedTensor{std::move(p), std::move(out)};
}

/// M_R = M / span{r.m - m.r}.
inline Presented coinvariants(const Bimodule& m)
{
    if (m.left.size() != m.right.size()) throw DimensionMismatch("coinvariants: acting sets differ");
    Subspace rel(m.dim);
    for (std::size_t r = 0; r < m.left.size(); ++r) {
        for (std::size_t i = 0; i < m.dim; ++i) {
            SparseVec v = add(m.left[r].column(i), m.right[r].column(i), Rat(-1));
            if (!v.empty()) rel.insert(v);
        }
    }
    return present(QuotientSpace(std::move(rel)));
}

} // namespace hopfcyc
