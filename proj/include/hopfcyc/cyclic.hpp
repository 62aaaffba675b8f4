// Cyclic objects given by chain spaces that are quotients of tensor powers, with
// face, degeneracy and cyclic operators as matrices, and cyclic maps between them.
//
// Indexing follows Loday: faces d_i : X_n -> X_{n-1} (0 <= i <= n), degeneracies
// s_j : X_n -> X_{n+1} (0 <= j <= n), cyclic operator t_n : X_n -> X_n.

#pragma once

#include "hopfcyc/sayd.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace hopfcyc {

struct BuildOptions {
    std::size_t cap = 3;
    std::size_t ambient_bound = 200000;
    bool check_well_defined = true;
    std::size_t check_limit = 50000;    // ambient tuples examined per structure operator
    std::size_t map_check_limit = 5000; // and per degree of a map between cyclic objects
};

/// X_n as a quotient of a tensor power; lift[k] is the ambient basis tuple representing basis k.
/// The ambient space is never stored; project_index gives the class of one ambient basis tuple.
struct ChainSpace {
    Shape ambient;
    std::vector<std::size_t> lift;
    std::function<SparseVec(std::size_t)> project_index;

    std::size_t dim() const { return lift.size(); }

    SparseVec project(const SparseVec& v) const
    {
        VecBuilder out;
        for (const auto& e : v) out.add(project_index(e.index), e.value);
        return out.take();
    }
};

struct CyclicObject {
    std::string name;
    std::size_t cap = 0;
    std::vector<ChainSpace> spaces;
    std::vector<std::vector<SparseMat>> faces;        // faces[n][i], n >= 1
    std::vector<std::vector<SparseMat>> degeneracies; // degeneracies[n][j], n < cap
    std::vector<SparseMat> cyclic;

    std::size_t dim(std::size_t n) const { return spaces.at(n).dim(); }
};

struct CyclicMap {
    std::string name;
    std::vector<SparseMat> maps; // per degree, source -> target
};

/// Values on ambient basis tuples; the result lives in the target ambient space.
using AmbientFn = std::function<SparseVec(const std::vector<std::size_t>&)>;

/// Ambient tuples at which well-definedness is checked: all of them up to `limit`,
/// otherwise an evenly strided selection of about `limit` tuples.
inline std::vector<std::size_t> check_points(std::size_t ambient, std::size_t limit)
{
    std::vector<std::size_t> pts;
    const std::size_t stride = ambient <= limit ? 1 : (ambient + limit - 1) / limit;
    for (std::size_t u = 0; u < ambient; u += stride) pts.push_back(u);
    return pts;
}

/// Matrix of the operator induced on quotients. With checking on, the ambient map is
/// compared with the induced one on ambient basis vectors, so an operator that does
/// not respect the relations raises InternalTheoremViolation.
inline SparseMat induced_operator(const ChainSpace& src, const ChainSpace& tgt, const AmbientFn& f, const std::string& name,
                                  bool check, std::size_t check_limit = 50000)
{
    SparseMat op(tgt.dim(), src.dim());
    for (std::size_t k = 0; k < src.dim(); ++k) op.set_column(k, tgt.project(f(src.ambient.decode(src.lift[k]))));
    if (!check) return op;
    for (std::size_t u : check_points(src.ambient.size(), check_limit)) {
        const SparseVec pu = src.project_index(u);
        // Representatives are their own classes.
        if (pu.size() == 1 && pu.front().value == 1 && src.lift[pu.front().index] == u) continue;
        if (!(tgt.project(f(src.ambient.decode(u))) == op.apply(pu))) {
            throw InternalTheoremViolation(name + " is not well defined at " + format_index(src.ambient.decode(u)));
        }
    }
    return op;
}

inline std::vector<SparseVec> unit_factors(const std::vector<std::size_t>& idx)
{
    std::vector<SparseVec> f;
    f.reserve(idx.size());
    for (auto i : idx) f.push_back(unit_vec(i));
    return f;
}

inline void check_dimension(std::size_t size, std::size_t bound, const std::string& what)
{
    if (size > bound) {
        throw ResourceLimit(what + ": dimension " + std::to_string(size) + " exceeds the ambient bound " + std::to_string(bound));
    }
}

/// Staged presentation of M (x)_R ... (x)_R M: stage[k] projects T_{k+1} (x) M onto T_{k+2}.
/// table[len] caches the T_len coordinates of every tuple of length len while that is small.
struct TensorTower {
    std::size_t base_dim = 0;
    std::vector<SparseMat> stage;
    std::vector<std::vector<SparseVec>> table;

    SparseVec step(const SparseVec& v, std::size_t len, std::size_t last) const
    {
        VecBuilder next;
        for (const auto& e : v) next.add(stage[len - 2].column(e.index * base_dim + last), e.value);
        return next.take();
    }

    /// Coordinates in T_len of the tuple t[0..len).
    SparseVec reduce(const std::vector<std::size_t>& t, std::size_t len) const
    {
        if (len < table.size() && !table[len].empty()) {
            std::size_t code = 0;
            for (std::size_t k = 0; k < len; ++k) code = code * base_dim + t[k];
            return table[len][code];
        }
        if (len == 1) return unit_vec(t[0]);
        return step(reduce(t, len - 1), len, t[len - 1]);
    }

    /// Fill table[len] from table[len - 1] when d^len stays within the bound.
    void tabulate(std::size_t len, std::size_t bound)
    {
        if (table.size() <= len) table.resize(len + 1);
        std::size_t size = 1;
        for (std::size_t k = 0; k < len; ++k) {
            if (size > bound / base_dim) return;
            size *= base_dim;
        }
        if (len == 1) {
            for (std::size_t i = 0; i < base_dim; ++i) table[1].push_back(unit_vec(i));
            return;
        }
        if (table[len - 1].empty()) return;
        table[len].reserve(size);
        for (std::size_t p = 0; p < size / base_dim; ++p) {
            for (std::size_t last = 0; last < base_dim; ++last) table[len].push_back(step(table[len - 1][p], len, last));
        }
    }
};

/// (M (x)_R ... (x)_R M)_R with n+1 factors for n = 0..cap, built in stages so that each
/// balancing step only sees (previous quotient) (x) M. The bound applies to every
/// intermediate space that is actually reduced.
inline std::vector<ChainSpace> cyclic_tensor_powers(const Bimodule& base, const BuildOptions& opt, const std::string& what)
{
    const std::size_t d = base.dim;
    auto tower = std::make_shared<TensorTower>();
    tower->base_dim = d;
    tower->tabulate(1, opt.ambient_bound);
    std::vector<ChainSpace> out;
    Bimodule cur = base;
    std::vector<std::size_t> l_cur;
    for (std::size_t i = 0; i < d; ++i) l_cur.push_back(i);
    for (std::size_t n = 0; n <= opt.cap; ++n) {
        if (n > 0) {
            check_dimension(cur.dim * d, opt.ambient_bound, what + " in degree " + std::to_string(n));
            BalancedTensor bt = balanced_tensor(cur, base);
            tower->stage.push_back(bt.presented.proj);
            tower->tabulate(n + 1, opt.ambient_bound);
            std::vector<std::size_t> l_next;
            for (std::size_t k = 0; k < bt.module.dim; ++k) {
                const std::size_t s = bt.presented.space.lift_index(k);
                l_next.push_back(l_cur[s / d] * d + s % d);
            }
            l_cur = std::move(l_next);
            cur = std::move(bt.module);
        }
        Presented pres = coinvariants(cur);
        auto co = std::make_shared<const SparseMat>(pres.proj);
        ChainSpace cs{Shape::power(d, n + 1), {}, {}};
        const Shape shape = cs.ambient;
        cs.project_index = [tower, co, shape, n](std::size_t u) { return co->apply(tower->reduce(shape.decode(u), n + 1)); };
        for (std::size_t k = 0; k < pres.space.dim(); ++k) cs.lift.push_back(l_cur[pres.space.lift_index(k)]);
        out.push_back(std::move(cs));
    }
    return out;
}

namespace detail {

inline SparseMat power(const SparseMat& m, std::size_t k)
{
    SparseMat out = SparseMat::identity(m.rows());
    for (std::size_t i = 0; i < k; ++i) out = m * out;
    return out;
}

inline void expect_equal(VerificationReport& r, const std::string& name, const SparseMat& a, const SparseMat& b, bool& first)
{
    if (!first) return;
    if (!(a == b)) {
        r.add(boolean_check(name, false, "matrices differ"));
        first = false;
    }
}

} // namespace detail

/// The cyclic-category identities in every degree where both sides are defined.
inline VerificationReport verify_cyclic(const CyclicObject& x)
{
    VerificationReport r{x.name, {}};
    const std::size_t cap = x.cap;
    auto d = [&](std::size_t n, std::size_t i) -> const SparseMat& { return x.faces.at(n).at(i); };
    auto s = [&](std::size_t n, std::size_t j) -> const SparseMat& { return x.degeneracies.at(n).at(j); };
    auto t = [&](std::size_t n) -> const SparseMat& { return x.cyclic.at(n); };
    struct Family {
        std::string name;
        bool ok = true;
    };
    std::vector<Family> fam{{"d_i d_j = d_{j-1} d_i"}, {"s_i s_j = s_{j+1} s_i"}, {"d_i s_j"}, {"d_i t = t d_{i-1}, d_0 t = d_n"},
                            {"s_i t = t s_{i-1}, s_0 t = t^2 s_n"}, {"t^{n+1} = id"}};
    std::vector<std::string> where(fam.size());
    auto fail = [&](std::size_t f, const std::string& w) {
        if (fam[f].ok) where[f] = w;
        fam[f].ok = false;
    };
    for (std::size_t n = 0; n <= cap; ++n) {
        const std::string deg = "degree " + std::to_string(n);
        for (std::size_t j = 0; j <= n && n >= 2; ++j) {
            for (std::size_t i = 0; i < j; ++i) {
                if (!(d(n - 1, i) * d(n, j) == d(n - 1, j - 1) * d(n, i))) fail(0, deg + " i=" + std::to_string(i) + " j=" + std::to_string(j));
            }
        }
        if (n + 2 <= cap) {
            for (std::size_t j = 0; j <= n; ++j) {
                for (std::size_t i = 0; i <= j; ++i) {
                    if (!(s(n + 1, i) * s(n, j) == s(n + 1, j + 1) * s(n, i))) fail(1, deg + " i=" + std::to_string(i) + " j=" + std::to_string(j));
                }
            }
        }
        if (n + 1 <= cap) {
            const SparseMat id = SparseMat::identity(x.dim(n));
            for (std::size_t j = 0; j <= n; ++j) {
                for (std::size_t i = 0; i <= n + 1; ++i) {
                    const SparseMat lhs = d(n + 1, i) * s(n, j);
                    bool ok;
                    if (i < j) ok = lhs == s(n - 1, j - 1) * d(n, i);
                    else if (i == j || i == j + 1) ok = lhs == id;
                    else ok = lhs == s(n - 1, j) * d(n, i - 1);
                    if (!ok) fail(2, deg + " i=" + std::to_string(i) + " j=" + std::to_string(j));
                }
            }
            for (std::size_t i = 1; i <= n; ++i) {
                if (!(s(n, i) * t(n) == t(n + 1) * s(n, i - 1))) fail(4, deg + " i=" + std::to_string(i));
            }
            if (!(s(n, 0) * t(n) == t(n + 1) * t(n + 1) * s(n, n))) fail(4, deg + " i=0");
        }
        if (n >= 1) {
            for (std::size_t i = 1; i <= n; ++i) {
                if (!(d(n, i) * t(n) == t(n - 1) * d(n, i - 1))) fail(3, deg + " i=" + std::to_string(i));
            }
            if (!(d(n, 0) * t(n) == d(n, n))) fail(3, deg + " i=0");
        }
        if (!(detail::power(t(n), n + 1) == SparseMat::identity(x.dim(n)))) fail(5, deg);
    }
    for (std::size_t f = 0; f < fam.size(); ++f) r.add(boolean_check(fam[f].name, fam[f].ok, where[f]));
    return r;
}

/// f commutes with every face, degeneracy and cyclic operator.
inline VerificationReport verify_cyclic_map(const CyclicMap& f, const CyclicObject& src, const CyclicObject& tgt)
{
    VerificationReport r{f.name, {}};
    const std::size_t cap = std::min(src.cap, tgt.cap);
    std::string wf, ws, wt;
    for (std::size_t n = 0; n <= cap; ++n) {
        const std::string deg = "degree " + std::to_string(n);
        if (!(f.maps[n] * src.cyclic[n] == tgt.cyclic[n] * f.maps[n]) && wt.empty()) wt = deg;
        for (std::size_t i = 0; n >= 1 && i <= n; ++i) {
            if (!(f.maps[n - 1] * src.faces[n][i] == tgt.faces[n][i] * f.maps[n]) && wf.empty()) wf = deg + " i=" + std::to_string(i);
        }
        for (std::size_t j = 0; n < cap && j <= n; ++j) {
            if (!(f.maps[n + 1] * src.degeneracies[n][j] == tgt.degeneracies[n][j] * f.maps[n]) && ws.empty()) {
                ws = deg + " j=" + std::to_string(j);
            }
        }
    }
    r.add(boolean_check("commutes with faces", wf.empty(), wf));
    r.add(boolean_check("commutes with degeneracies", ws.empty(), ws));
    r.add(boolean_check("commutes with cyclic operators", wt.empty(), wt));
    return r;
}

/// g f = id and f g = id in every degree.
inline Check mutually_inverse(const CyclicMap& f, const CyclicMap& g)
{
    for (std::size_t n = 0; n < f.maps.size() && n < g.maps.size(); ++n) {
        if (!(g.maps[n] * f.maps[n] == SparseMat::identity(f.maps[n].cols())) ||
            !(f.maps[n] * g.maps[n] == SparseMat::identity(g.maps[n].cols()))) {
            return boolean_check(f.name + " and " + g.name + " mutually inverse", false, "degree " + std::to_string(n));
        }
    }
    return boolean_check(f.name + " and " + g.name + " mutually inverse", true);
}

inline Check invertible_in_every_degree(const CyclicMap& f)
{
    for (std::size_t n = 0; n < f.maps.size(); ++n) {
        const SparseMat& m = f.maps[n];
        if (m.rows() != m.cols() || rank(m) != m.rows()) return boolean_check(f.name + " invertible", false, "degree " + std::to_string(n));
    }
    return boolean_check(f.name + " invertible", true);
}

/// Operators on ambient tuples; face(n, i), degeneracy(n, j) and rotation(n) return the
/// ambient maps out of degree n.
struct AmbientOperators {
    std::function<AmbientFn(std::size_t, std::size_t)> face;
    std::function<AmbientFn(std::size_t, std::size_t)> degeneracy;
    std::function<AmbientFn(std::size_t)> rotation;
};

inline CyclicObject assemble(std::string name, std::vector<ChainSpace> spaces, const AmbientOperators& ops, const BuildOptions& opt)
{
    CyclicObject x;
    x.name = std::move(name);
    x.cap = spaces.size() - 1;
    x.spaces = std::move(spaces);
    const bool chk = opt.check_well_defined;
    const auto& sp = x.spaces;
    x.faces.resize(x.cap + 1);
    x.degeneracies.resize(x.cap + 1);
    for (std::size_t n = 0; n <= x.cap; ++n) {
        const std::string deg = " in degree " + std::to_string(n);
        for (std::size_t i = 0; n >= 1 && i <= n; ++i) {
            x.faces[n].push_back(induced_operator(sp[n], sp[n - 1], ops.face(n, i), x.name + ": d_" + std::to_string(i) + deg, chk, opt.check_limit));
        }
        for (std::size_t j = 0; n < x.cap && j <= n; ++j) {
            x.degeneracies[n].push_back(
                induced_operator(sp[n], sp[n + 1], ops.degeneracy(n, j), x.name + ": s_" + std::to_string(j) + deg, chk, opt.check_limit));
        }
        x.cyclic.push_back(induced_operator(sp[n], sp[n], ops.rotation(n), x.name + ": t" + deg, chk, opt.check_limit));
    }
    return x;
}

namespace detail {

/// Rotation of tuples: the last factor moves to the front.
inline AmbientFn rotate_last_to_front(std::size_t dim)
{
    return [dim](const std::vector<std::size_t>& t) {
        std::vector<std::size_t> r;
        r.push_back(t.back());
        r.insert(r.end(), t.begin(), t.end() - 1);
        return unit_vec(Shape::power(dim, r.size()).encode(r));
    };
}

} // namespace detail

/// Z_n = (A (x)_B ... (x)_B A)_B with n+1 factors, for a subalgebra B of A.
inline CyclicObject build_Z(const Algebra& a, const Subspace& b, const BuildOptions& opt = {})
{
    const std::size_t d = a.dim();
    auto spaces = cyclic_tensor_powers(algebra_bimodule(a, b.basis()), opt, "Z");
    AmbientOperators ops;
    ops.face = [&a, d](std::size_t n, std::size_t i) -> AmbientFn {
        return [&a, d, n, i](const std::vector<std::size_t>& t) {
            auto f = unit_factors(t);
            if (i < n) {
                f[i] = a.product(t[i], t[i + 1]);
                f.erase(f.begin() + i + 1);
            } else {
                f[0] = a.product(t[n], t[0]);
                f.pop_back();
            }
            return tensor(f, std::vector<std::size_t>(n, d));
        };
    };
    ops.degeneracy = [&a, d](std::size_t n, std::size_t j) -> AmbientFn {
        return [&a, d, n, j](const std::vector<std::size_t>& t) {
            auto f = unit_factors(t);
            f.insert(f.begin() + j + 1, a.unit);
            return tensor(f, std::vector<std::size_t>(n + 2, d));
        };
    };
    ops.rotation = [d](std::size_t) { return detail::rotate_last_to_front(d); };
    return assemble("Z", std::move(spaces), ops, opt);
}

inline CyclicObject build_Z(const GaloisDatum& g, const BuildOptions& opt = {}) { return build_Z(g.A.algebra, g.B, opt); }

/// Y_n = (C (x)_A ... (x)_A C)_A for an A-coring C, with faces applying the counit to
/// factor i and degeneracies applying the comultiplication to factor j.
inline CyclicObject build_Y_coring(const Coring& c, const std::string& name, const BuildOptions& opt = {})
{
    const std::size_t d = c.dim();
    auto spaces = cyclic_tensor_powers(c.bimodule, opt, name);
    AmbientOperators ops;
    // Left and right multiplication by the counit of each basis element.
    auto by_counit = std::make_shared<std::pair<std::vector<SparseMat>, std::vector<SparseMat>>>();
    for (std::size_t q = 0; q < d; ++q) {
        by_counit->first.push_back(detail::action_of(c.bimodule.left, c.counit.column(q), d));
        by_counit->second.push_back(detail::action_of(c.bimodule.right, c.counit.column(q), d));
    }
    ops.face = [by_counit, d](std::size_t n, std::size_t i) -> AmbientFn {
        return [by_counit, d, n, i](const std::vector<std::size_t>& t) {
            auto f = unit_factors(t);
            if (i < n) {
                f[i + 1] = by_counit->first[t[i]].column(t[i + 1]);
                f.erase(f.begin() + i);
            } else {
                f[n - 1] = by_counit->second[t[n]].column(t[n - 1]);
                f.pop_back();
            }
            return tensor(f, std::vector<std::size_t>(n, d));
        };
    };
    ops.degeneracy = [&c, d](std::size_t n, std::size_t j) -> AmbientFn {
        return [&c, d, n, j](const std::vector<std::size_t>& t) {
            // The comultiplication is a combination of pairs; splice it in at position j.
            VecBuilder out;
            const Shape pre = Shape::power(d, j), post = Shape::power(d, n - j);
            std::vector<std::size_t> head(t.begin(), t.begin() + j), tail(t.begin() + j + 1, t.end());
            const std::size_t h = pre.encode(head), tl = post.encode(tail);
            for (const auto& e : c.comult.column(t[j])) out.add((h * d * d + e.index) * post.size() + tl, e.value);
            return out.take();
        };
    };
    ops.rotation = [d](std::size_t) { return detail::rotate_last_to_front(d); };
    return assemble(name, std::move(spaces), ops, opt);
}

inline CyclicObject build_Y_sweedler(const GaloisDatum& g, const BuildOptions& opt = {})
{
    return build_Y_coring(sweedler_coring(g), "Y (Sweedler coring)", opt);
}

inline CyclicObject build_Y_galois(const GaloisDatum& g, const BuildOptions& opt = {})
{
    return build_Y_coring(galois_coring(g), "Y (Galois coring)", opt);
}

namespace detail {

/// Right action matrices c |-> c.h of the basis of H on C.
inline std::vector<SparseMat> right_actions(const ModuleCoalgebra& c)
{
    std::vector<SparseMat> out;
    for (std::size_t h = 0; h < c.hopf.dim(); ++h) {
        SparseMat m(c.dim(), c.dim());
        for (std::size_t x = 0; x < c.dim(); ++x) m.set_column(x, c.act(unit_vec(x), unit_vec(h)));
        out.push_back(std::move(m));
    }
    return out;
}

/// (c^0, ..., c^n).h = c^0.h_(1) (x) ... (x) c^n.h_(n+1) on a basis tuple.
inline SparseVec diagonal_action(const std::vector<SparseMat>& act, const SparseVec& coproduct, const std::vector<std::size_t>& c,
                                 std::size_t dim_c, std::size_t dim_h)
{
    const std::size_t legs = c.size();
    const Shape hs = Shape::power(dim_h, legs);
    VecBuilder out;
    for (const auto& t : coproduct) {
        const auto hl = hs.decode(t.index);
        std::vector<SparseVec> f;
        for (std::size_t i = 0; i < legs; ++i) f.push_back(act[hl[i]].column(c[i]));
        out.add(tensor(f, std::vector<std::size_t>(legs, dim_c)), t.value);
    }
    return out.take();
}

} // namespace detail

/// C^{(x) n+1} (x)_H M for a right H-module coalgebra C and a SAYD module M, with the
/// diagonal action on C^{(x) n+1}. Faces apply the counit to one factor, degeneracies
/// the comultiplication, and t(c^0, ..., c^n, m) = c^n.m_(1) (x) c^0 (x) ... (x) c^{n-1} (x) m_(0).
inline CyclicObject build_Y_hopf(const ModuleCoalgebra& c, const SaydModule& m, const BuildOptions& opt = {})
{
    const HopfAlgebra& h = c.hopf;
    const std::size_t dc = c.dim(), dh = h.dim(), dm = m.dim();
    auto act = std::make_shared<const std::vector<SparseMat>>(detail::right_actions(c));
    std::vector<ChainSpace> spaces;
    for (std::size_t n = 0; n <= opt.cap; ++n) {
        std::vector<std::size_t> dims(n + 1, dc);
        dims.push_back(dm);
        Shape shape(dims);
        check_dimension(shape.size(), opt.ambient_bound, "Y (Hopf module) in degree " + std::to_string(n));
        const Shape cs = Shape::power(dc, n + 1);
        Subspace rel(shape.size());
        for (std::size_t x = 0; x < dh; ++x) {
            const SparseVec cop = h.iterated_coproduct(unit_vec(x), n + 1);
            for (std::size_t u = 0; u < cs.size(); ++u) {
                const SparseVec moved = detail::diagonal_action(*act, cop, cs.decode(u), dc, dh);
                for (std::size_t k = 0; k < dm; ++k) {
                    SparseVec v = add(tensor2(moved, unit_vec(k), dm), tensor2(unit_vec(u), m.action.column(x * dm + k), dm), Rat(-1));
                    if (!v.empty()) rel.insert(v);
                }
            }
        }
        auto p = std::make_shared<const Presented>(present(QuotientSpace(std::move(rel))));
        ChainSpace space{shape, {}, [p](std::size_t u) { return p->proj.column(u); }};
        for (std::size_t k = 0; k < p->space.dim(); ++k) space.lift.push_back(p->space.lift_index(k));
        spaces.push_back(std::move(space));
    }
    auto shape_of = [dc, dm](std::size_t n) {
        std::vector<std::size_t> dims(n + 1, dc);
        dims.push_back(dm);
        return dims;
    };
    AmbientOperators ops;
    ops.face = [&c, shape_of](std::size_t n, std::size_t i) -> AmbientFn {
        return [&c, shape_of, n, i](const std::vector<std::size_t>& t) {
            const Rat e = c.coalgebra.epsilon(unit_vec(t[i]));
            if (e == 0) return SparseVec{};
            std::vector<std::size_t> r = t;
            r.erase(r.begin() + i);
            return SparseVec{Entry{Shape(shape_of(n - 1)).encode(r), e}};
        };
    };
    ops.degeneracy = [&c, shape_of](std::size_t n, std::size_t j) -> AmbientFn {
        return [&c, shape_of, n, j](const std::vector<std::size_t>& t) {
            const std::size_t dc = c.dim();
            // Delta(c^j) occupies two slots between the untouched head and tail.
            const Shape pre = Shape::power(dc, j);
            std::vector<std::size_t> tail(t.begin() + j + 1, t.end());
            const auto dims = shape_of(n);
            const Shape post(std::vector<std::size_t>(dims.begin() + j + 1, dims.end()));
            const std::size_t hidx = pre.encode(std::vector<std::size_t>(t.begin(), t.begin() + j)), tidx = post.encode(tail);
            VecBuilder out;
            for (const auto& e : c.coalgebra.comult.column(t[j])) out.add((hidx * dc * dc + e.index) * post.size() + tidx, e.value);
            return out.take();
        };
    };
    ops.rotation = [&c, &m, shape_of, dh](std::size_t n) -> AmbientFn {
        return [&c, &m, shape_of, n, dh](const std::vector<std::size_t>& t) {
            const Shape s(shape_of(n));
            VecBuilder out;
            for (const auto& e : m.coaction.column(t[n + 1])) {
                const std::size_t m0 = e.index / dh, h1 = e.index % dh;
                std::vector<SparseVec> f{c.act(unit_vec(t[n]), unit_vec(h1))};
                for (std::size_t i = 0; i < n; ++i) f.push_back(unit_vec(t[i]));
                f.push_back(unit_vec(m0));
                out.add(tensor(f, s.dims()), e.value);
            }
            return out.take();
        };
    };
    return assemble("Y (Hopf module)", std::move(spaces), ops, opt);
}

/// A cyclic map given degree-wise by ambient functions, checked for well-definedness like the operators.
inline CyclicMap induced_map(std::string name, const CyclicObject& src, const CyclicObject& tgt,
                             const std::function<AmbientFn(std::size_t)>& fn, const BuildOptions& opt)
{
    CyclicMap f{std::move(name), {}};
    const std::size_t cap = std::min(src.cap, tgt.cap);
    for (std::size_t n = 0; n <= cap; ++n) {
        f.maps.push_back(induced_operator(src.spaces[n], tgt.spaces[n], fn(n), f.name + " in degree " + std::to_string(n),
                                          opt.check_well_defined, opt.map_check_limit));
    }
    return f;
}

/// a^0 (x)_B ... (x)_B a^n |-> (a^0 (x)_B 1) (x)_A ... (x)_A (a^n (x)_B 1).
inline CyclicMap iso_Z_to_Y_sweedler(const GaloisDatum& g, const CyclicObject& z, const CyclicObject& y, const BuildOptions& opt = {})
{
    const Algebra& a = g.A.algebra;
    const std::size_t d = g.AB.module.dim;
    return induced_map("Z -> Y (Sweedler)", z, y, [&g, &a, d](std::size_t n) -> AmbientFn {
        return [&g, &a, d, n](const std::vector<std::size_t>& t) {
            std::vector<SparseVec> f;
            for (auto x : t) f.push_back(g.balanced(unit_vec(x), a.unit));
            return tensor(f, std::vector<std::size_t>(n + 1, d));
        };
    }, opt);
}

/// (x^0 (x)_B y^0) (x)_A ... (x)_A (x^n (x)_B y^n) |-> y^n x^0 (x)_B y^0 x^1 (x)_B ... (x)_B y^{n-1} x^n.
inline CyclicMap iso_Y_sweedler_to_Z(const GaloisDatum& g, const CyclicObject& y, const CyclicObject& z, const BuildOptions& opt = {})
{
    const Algebra& a = g.A.algebra;
    const std::size_t da = a.dim();
    return induced_map("Y (Sweedler) -> Z", y, z, [&g, &a, da](std::size_t n) -> AmbientFn {
        return [&g, &a, da, n](const std::vector<std::size_t>& t) {
            std::vector<std::size_t> xs, ys;
            for (auto q : t) {
                const std::size_t amb = g.AB.presented.space.lift_index(q);
                xs.push_back(amb / da);
                ys.push_back(amb % da);
            }
            std::vector<SparseVec> f;
            for (std::size_t i = 0; i <= n; ++i) f.push_back(a.product(ys[(i + n) % (n + 1)], xs[i]));
            return tensor(f, std::vector<std::size_t>(n + 1, da));
        };
    }, opt);
}

/// The canonical map applied to every factor.
inline CyclicMap iso_sweedler_to_galois(const GaloisDatum& g, const CyclicObject& ys, const CyclicObject& yg, const BuildOptions& opt = {})
{
    const std::size_t d = g.dim_a() * g.dim_c();
    return induced_map("Y (Sweedler) -> Y (Galois)", ys, yg, [&g, d](std::size_t n) -> AmbientFn {
        return [&g, d, n](const std::vector<std::size_t>& t) {
            std::vector<SparseVec> f;
            for (auto q : t) f.push_back(g.can.column(q));
            return tensor(f, std::vector<std::size_t>(n + 1, d));
        };
    }, opt);
}

/// a (x) c |-> a c^[1] (x)_B c^[2] on every factor, through the translation map.
inline CyclicMap iso_galois_to_sweedler(const GaloisDatum& g, const CyclicObject& yg, const CyclicObject& ys, const BuildOptions& opt = {})
{
    const std::size_t dc = g.dim_c(), d = g.AB.module.dim;
    return induced_map("Y (Galois) -> Y (Sweedler)", yg, ys, [&g, dc, d](std::size_t n) -> AmbientFn {
        return [&g, dc, d, n](const std::vector<std::size_t>& t) {
            std::vector<SparseVec> f;
            for (auto q : t) f.push_back(g.AB.module.left[q / dc].apply(g.tau(unit_vec(q % dc))));
            return tensor(f, std::vector<std::size_t>(n + 1, d));
        };
    }, opt);
}

/// Phi : Y (Galois) -> Y (Hopf module),
/// (a^0 (x) c^0) (x)_A ... (x)_A (a^n (x) c^n) |->
///   c^0.(a^1_(1) ... a^n_(1)) (x) c^1.(a^2_(2) ... a^n_(2)) (x) ... (x) c^{n-1}.a^n_(n) (x) c^n
///   (x)_H [1 (x) a^0 a^1_(0) ... a^n_(0)].
inline CyclicMap build_phi(const GaloisDatum& g, const SaydModule& m, const CyclicObject& yg, const CyclicObject& yh,
                           const BuildOptions& opt = {})
{
    const Algebra& a = g.A.algebra;
    const HopfAlgebra& h = g.C.hopf;
    const std::size_t da = a.dim(), dc = g.dim_c(), dh = h.dim(), dm = m.dim();
    return induced_map("Phi", yg, yh, [&, da, dc, dh, dm](std::size_t n) -> AmbientFn {
        return [&, da, dc, dh, dm, n](const std::vector<std::size_t>& t) {
            // state on A (x) H^{n} (x) A: the A part, the H products collected for slots 0..n-1,
            // and the part u of a^j still to be split. Splitting u_(0) (x) u_(1) feeds u_(1) to
            // slots j-1, ..., 0 in turn, which is the iterated coaction read right to left.
            std::vector<std::size_t> sd{da};
            sd.insert(sd.end(), n, dh);
            sd.push_back(da);
            const Shape ss(sd);
            VecBuilder init;
            {
                std::vector<SparseVec> f{unit_vec(t[0] / dc)};
                for (std::size_t i = 0; i < n; ++i) f.push_back(h.unit());
                f.push_back(unit_vec(0));
                init.add(tensor(f, sd), Rat(1));
            }
            SparseVec state = init.take();
            auto with = [&](std::vector<std::size_t> x, std::size_t pos, std::size_t v) {
                x[pos] = v;
                return ss.encode(x);
            };
            for (std::size_t j = 1; j <= n; ++j) {
                VecBuilder start;
                for (const auto& e : state) start.add(with(ss.decode(e.index), n + 1, t[j] / dc), e.value);
                state = start.take();
                for (std::size_t i = j; i-- > 0;) {
                    VecBuilder next;
                    for (const auto& e : state) {
                        const auto x = ss.decode(e.index);
                        for (const auto& r : g.A.coaction.column(x[n + 1])) {
                            for (const auto& p : h.algebra.product(x[i + 1], r.index % dh)) {
                                auto y = x;
                                y[i + 1] = p.index;
                                y[n + 1] = r.index / dh;
                                next.add(ss.encode(y), e.value * r.value * p.value);
                            }
                        }
                    }
                    state = next.take();
                }
                VecBuilder merged;
                for (const auto& e : state) {
                    const auto x = ss.decode(e.index);
                    for (const auto& p : a.product(x[0], x[n + 1])) {
                        auto y = x;
                        y[0] = p.index;
                        y[n + 1] = 0;
                        merged.add(ss.encode(y), e.value * p.value);
                    }
                }
                state = merged.take();
            }
            std::vector<std::size_t> od(n + 1, dc);
            od.push_back(dm);
            VecBuilder out;
            for (const auto& s : state) {
                const auto sx = ss.decode(s.index);
                std::vector<SparseVec> f;
                for (std::size_t i = 0; i < n; ++i) f.push_back(g.C.act(unit_vec(t[i] % dc), unit_vec(sx[i + 1])));
                f.push_back(unit_vec(t[n] % dc));
                f.push_back(m.carrier.proj.apply(tensor2(h.unit(), unit_vec(sx[0]), da)));
                out.add(tensor(f, od), s.value);
            }
            return out.take();
        };
    }, opt);
}

namespace detail {

/// Psi on c^0 (x) ... (x) c^n (x) (x (x) y) with x in H and y in A, landing in the Galois Y ambient:
/// (y_(0) (x) c^0.x_(1)S^-1(y_(n+1))) (x)_A (1 (x) c^1.x_(2)S^-1(y_(n))) (x)_A ... (x)_A (1 (x) c^n.x_(n+1)S^-1(y_(1))).
inline SparseVec psi_ambient(const GaloisDatum& g, const std::vector<std::size_t>& c, std::size_t x, std::size_t y)
{
    const Algebra& a = g.A.algebra;
    const HopfAlgebra& h = g.C.hopf;
    const std::size_t n = c.size() - 1, da = a.dim(), dc = g.dim_c(), dh = h.dim();
    const Shape slots = Shape::power(dc, n + 1);
    // Entries are (slots filled so far, remaining part of x, remaining part of y). Slot i takes
    // the next leg of x and the H part of one more coaction step on y, so the legs of y are
    // consumed from the last one inwards.
    const Shape st({slots.size(), dh, da});
    SparseVec state{Entry{st.encode({0, x, y}), Rat(1)}};
    for (std::size_t i = 0; i <= n; ++i) {
        VecBuilder next;
        for (const auto& e : state) {
            const auto s = st.decode(e.index);
            auto place = [&](std::size_t leg, std::size_t remaining, const Rat& coef) {
                for (const auto& r : g.A.coaction.column(s[2])) {
                    const SparseVec w = h.multiply(unit_vec(leg), h.antipode_inv.column(r.index % dh));
                    if (w.empty()) continue;
                    for (const auto& v : g.C.act(unit_vec(c[i]), w)) {
                        next.add(st.encode({s[0] * dc + v.index, remaining, r.index / dh}), coef * r.value * v.value);
                    }
                }
            };
            if (i < n) {
                for (const auto& d : h.coalgebra.comult.column(s[1])) place(d.index / dh, d.index % dh, e.value * d.value);
            } else {
                place(s[1], 0, e.value);
            }
        }
        state = next.take();
    }
    VecBuilder out;
    for (const auto& e : state) {
        const auto s = st.decode(e.index);
        const auto cl = slots.decode(s[0]);
        std::vector<SparseVec> f;
        for (std::size_t i = 0; i <= n; ++i) f.push_back(tensor2(i == 0 ? unit_vec(s[2]) : a.unit, unit_vec(cl[i]), dc));
        out.add(tensor(f, std::vector<std::size_t>(n + 1, da * dc)), e.value);
    }
    return out.take();
}

} // namespace detail

/// Psi : Y (Hopf module) -> Y (Galois), the inverse of Phi. Besides the checks on the
/// tensor relations, Psi is checked to vanish on the relations defining M.
inline CyclicMap build_psi(const GaloisDatum& g, const SaydModule& m, const CyclicObject& yh, const CyclicObject& yg,
                           const BuildOptions& opt = {})
{
    const std::size_t da = g.dim_a(), dc = g.dim_c();
    CyclicMap psi = induced_map("Psi", yh, yg, [&g, &m, da](std::size_t n) -> AmbientFn {
        return [&g, &m, da, n](const std::vector<std::size_t>& t) {
            const std::size_t amb = m.carrier.space.lift_index(t[n + 1]);
            return detail::psi_ambient(g, std::vector<std::size_t>(t.begin(), t.end() - 1), amb / da, amb % da);
        };
    }, opt);
    if (!opt.check_well_defined) return psi;
    const auto& rels = m.carrier.space.relations().basis();
    for (std::size_t n = 0; n < psi.maps.size(); ++n) {
        const Shape cs = Shape::power(dc, n + 1);
        for (std::size_t u : check_points(cs.size() * rels.size(), opt.map_check_limit)) {
            const auto c = cs.decode(u % cs.size());
            VecBuilder v;
            for (const auto& e : rels[u / cs.size()]) v.add(detail::psi_ambient(g, c, e.index / da, e.index % da), e.value);
            if (!yg.spaces[n].project(v.take()).empty()) {
                throw InternalTheoremViolation("Psi does not vanish on the relations of M in degree " + std::to_string(n));
            }
        }
    }
    return psi;
}

/// ((1 (x) c^0) (x)_A ... (x)_A (1 (x) c^n)) (x)_{A^e} a'a
///   = ((1 (x) c^0.a'_(1)) (x)_A ... (x)_A (1 (x) c^n.a'_(n+1))) (x)_{A^e} a a'_(0)
/// in Y (Galois), with X (x)_{A^e} a represented by the class of a.X.
inline Check balanced_coaction_identity(const GaloisDatum& g, const CyclicObject& yg, std::size_t n, std::size_t limit = 5000)
{
    const Algebra& a = g.A.algebra;
    const std::size_t da = a.dim(), dc = g.dim_c(), dh = g.C.hopf.dim();
    const Shape cs = Shape::power(dc, n + 1);
    std::vector<std::size_t> ad{da};
    ad.insert(ad.end(), n + 1, dh);
    const Shape as(ad);
    const std::vector<std::size_t> dims(n + 1, da * dc);
    for (std::size_t point : check_points(cs.size() * da * da, limit)) {
        const auto c = cs.decode(point / (da * da));
        const std::size_t x = point / da % da, y = point % da;
        {
            {
                std::vector<SparseVec> lf;
                for (std::size_t i = 0; i <= n; ++i) lf.push_back(tensor2(i == 0 ? a.product(y, x) : a.unit, unit_vec(c[i]), dc));
                VecBuilder rhs;
                for (const auto& e : g.A.iterated_coaction(y, n + 1)) {
                    const auto l = as.decode(e.index);
                    std::vector<SparseVec> f;
                    for (std::size_t i = 0; i <= n; ++i) {
                        f.push_back(tensor2(i == 0 ? a.product(x, l[0]) : a.unit, g.C.act(unit_vec(c[i]), unit_vec(l[i + 1])), dc));
                    }
                    rhs.add(tensor(f, dims), e.value);
                }
                if (!(yg.spaces[n].project(tensor(lf, dims)) == yg.spaces[n].project(rhs.take()))) {
                    return boolean_check("balanced coaction identity", false,
                                         "degree " + std::to_string(n) + " c=" + format_index(c) + " a=" + std::to_string(x) +
                                             " a'=" + std::to_string(y));
                }
            }
        }
    }
    return boolean_check("balanced coaction identity", true);
}

} // namespace hopfcyc
