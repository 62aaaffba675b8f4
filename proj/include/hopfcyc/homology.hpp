// Hochschild, cyclic and S-stabilized periodic Betti numbers of a cyclic object over Q.

#pragma once

#include "hopfcyc/cyclic.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

namespace hopfcyc {

/// Worker count for per-degree work: HOPFCYC_THREADS if set and positive, else the hardware count.
inline std::size_t worker_count()
{
    if (const char* env = std::getenv("HOPFCYC_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs fn(0..count-1), spread over at most worker_count() threads.
template <class Fn>
void parallel_for(std::size_t count, Fn fn)
{
    const std::size_t workers = std::min(worker_count(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

struct MixedComplex {
    std::string name;
    std::size_t cap = 0;
    std::vector<std::size_t> dims;
    std::vector<SparseMat> b;     // b[n] : X_n -> X_{n-1}; b[0] has no rows
    std::vector<SparseMat> B;     // B[n] : X_n -> X_{n+1}, n < cap
};

namespace detail {

inline Rat sign(std::size_t k) { return k % 2 == 0 ? Rat(1) : Rat(-1); }

} // namespace detail

/// b = sum (-1)^i d_i, and B = (1 - t_{n+1}) s N with t_n = (-1)^n tau_n,
/// N = 1 + t_n + ... + t_n^n and the extra degeneracy s = tau_{n+1} s_n.
/// b^2 = 0, B^2 = 0 and bB + Bb = 0 are checked wherever both sides exist.
inline MixedComplex mixed_complex(const CyclicObject& x)
{
    MixedComplex m{x.name, x.cap, {}, {}, {}};
    for (std::size_t n = 0; n <= x.cap; ++n) m.dims.push_back(x.dim(n));
    m.b.push_back(SparseMat(0, m.dims[0]));
    for (std::size_t n = 1; n <= x.cap; ++n) {
        SparseMat s(m.dims[n - 1], m.dims[n]);
        for (std::size_t i = 0; i <= n; ++i) s = s + x.faces[n][i].scaled(detail::sign(i));
        m.b.push_back(std::move(s));
    }
    for (std::size_t n = 0; n < x.cap; ++n) {
        const SparseMat t = x.cyclic[n].scaled(detail::sign(n));
        SparseMat norm = SparseMat::identity(m.dims[n]), power = norm;
        for (std::size_t i = 1; i <= n; ++i) {
            power = t * power;
            norm = norm + power;
        }
        const SparseMat extra = x.cyclic[n + 1] * x.degeneracies[n][n];
        const SparseMat one_minus_t = SparseMat::identity(m.dims[n + 1]) + x.cyclic[n + 1].scaled(-detail::sign(n + 1));
        m.B.push_back(one_minus_t * extra * norm);
    }
    for (std::size_t n = 2; n <= x.cap; ++n) {
        if (!(m.b[n - 1] * m.b[n]).is_zero()) throw InternalTheoremViolation(x.name + ": b^2 != 0 in degree " + std::to_string(n));
    }
    for (std::size_t n = 0; n + 2 <= x.cap; ++n) {
        if (!(m.B[n + 1] * m.B[n]).is_zero()) throw InternalTheoremViolation(x.name + ": B^2 != 0 in degree " + std::to_string(n));
    }
    for (std::size_t n = 0; n + 1 <= x.cap; ++n) {
        SparseMat s = m.b[n + 1] * m.B[n];
        if (n >= 1) s = s + m.B[n - 1] * m.b[n];
        if (!s.is_zero()) throw InternalTheoremViolation(x.name + ": bB + Bb != 0 in degree " + std::to_string(n));
    }
    return m;
}

/// Tot_n = X_n + X_{n-2} + ..., block k holding X_{n-2k}.
inline std::size_t tot_dim(const MixedComplex& m, std::size_t n)
{
    std::size_t d = 0;
    for (std::size_t k = 0; 2 * k <= n; ++k) d += m.dims[n - 2 * k];
    return d;
}

/// D = b + B : Tot_n -> Tot_{n-1}, for 1 <= n <= cap.
inline SparseMat total_differential(const MixedComplex& m, std::size_t n)
{
    SparseMat out(tot_dim(m, n - 1), tot_dim(m, n));
    std::size_t col = 0;
    for (std::size_t k = 0; 2 * k <= n; ++k) {
        const std::size_t deg = n - 2 * k;
        // Row offsets in Tot_{n-1} of X_{deg-1} (block k) and X_{deg+1} (block k-1).
        auto offset = [&](std::size_t block) {
            std::size_t o = 0;
            for (std::size_t j = 0; j < block; ++j) o += m.dims[n - 1 - 2 * j];
            return o;
        };
        for (std::size_t c = 0; c < m.dims[deg]; ++c) {
            VecBuilder v;
            if (deg >= 1) {
                const std::size_t o = offset(k);
                for (const auto& e : m.b[deg].column(c)) v.add(o + e.index, e.value);
            }
            if (k >= 1) {
                const std::size_t o = offset(k - 1);
                for (const auto& e : m.B[deg].column(c)) v.add(o + e.index, e.value);
            }
            out.set_column(col + c, v.take());
        }
        col += m.dims[deg];
    }
    return out;
}

/// S : Tot_n -> Tot_{n-2}, forgetting the block X_n.
inline SparseMat periodicity_map(const MixedComplex& m, std::size_t n)
{
    SparseMat out(tot_dim(m, n - 2), tot_dim(m, n));
    const std::size_t skip = m.dims[n];
    for (std::size_t c = skip; c < out.cols(); ++c) out.set_column(c, unit_vec(c - skip));
    return out;
}

/// dim ker b_n - rank b_{n+1} for n <= cap - 1.
inline std::vector<std::size_t> hochschild(const MixedComplex& m)
{
    std::vector<std::size_t> ranks(m.cap + 1, 0);
    parallel_for(m.cap, [&](std::size_t i) { ranks[i + 1] = rank(m.b[i + 1]); });
    std::vector<std::size_t> hh;
    for (std::size_t n = 0; n < m.cap; ++n) hh.push_back(m.dims[n] - ranks[n] - ranks[n + 1]);
    return hh;
}

struct CyclicHomology {
    std::vector<std::size_t> hc;
    std::vector<bool> truncation_sensitive;
    std::vector<SparseMat> D;         // D[n] : Tot_n -> Tot_{n-1}, n = 1..cap
    std::vector<std::size_t> D_rank;  // rank D[n]
};

/// Homology of Tot in degrees n <= cap - 1. Tot_n only involves X_j with j <= n and D_{n+1}
/// only X_j with j <= n + 1, so these degrees see the whole bicomplex and none is flagged.
inline CyclicHomology cyclic_homology_data(const MixedComplex& m)
{
    CyclicHomology h;
    h.D.resize(m.cap + 1);
    h.D_rank.assign(m.cap + 1, 0);
    for (std::size_t n = 1; n <= m.cap; ++n) h.D[n] = total_differential(m, n);
    parallel_for(m.cap, [&](std::size_t i) { h.D_rank[i + 1] = rank(h.D[i + 1]); });
    for (std::size_t n = 0; n < m.cap; ++n) {
        h.hc.push_back(tot_dim(m, n) - h.D_rank[n] - h.D_rank[n + 1]);
        h.truncation_sensitive.push_back(false);
    }
    return h;
}

inline std::vector<std::size_t> cyclic_homology(const MixedComplex& m) { return cyclic_homology_data(m).hc; }

/// Rank of S : HC_n -> HC_{n-2}, n >= 2 and n <= cap - 1.
inline std::size_t periodicity_rank(const MixedComplex& m, const CyclicHomology& h, std::size_t n)
{
    const Subspace cycles = kernel(h.D[n]);
    Subspace span = image(h.D[n - 1]);
    const std::size_t boundaries = span.rank();
    const SparseMat s = periodicity_map(m, n);
    for (const auto& v : cycles.basis()) span.insert(s.apply(v));
    span.finalize();
    return span.rank() - boundaries;
}

struct PeriodicResult {
    bool stabilized = false;
    std::size_t hp_even = 0, hp_odd = 0;
};

/// Declares stabilization when S : HC_n -> HC_{n-2} is bijective for the top two degrees
/// n = cap - 1, cap - 2 (HC_{-1} = 0), and then reads HP off those degrees.
inline PeriodicResult periodic_stabilize(const MixedComplex& m, const CyclicHomology& h)
{
    PeriodicResult p;
    if (m.cap < 3) return p;
    bool bijective = true;
    for (std::size_t n : {m.cap - 1, m.cap - 2}) {
        const std::size_t below = n >= 2 ? h.hc[n - 2] : 0;
        const std::size_t r = n >= 2 ? periodicity_rank(m, h, n) : 0;
        if (h.hc[n] != below || r != below) bijective = false;
    }
    p.stabilized = bijective;
    if (bijective) {
        const std::size_t top = m.cap - 1;
        p.hp_even = h.hc[top % 2 == 0 ? top : top - 1];
        p.hp_odd = h.hc[top % 2 == 1 ? top : top - 1];
    }
    return p;
}

inline PeriodicResult periodic_stabilize(const MixedComplex& m) { return periodic_stabilize(m, cyclic_homology_data(m)); }

struct HomologyReport {
    std::string name;
    std::size_t cap = 0;
    std::vector<std::size_t> hh, hc;
    std::vector<bool> truncation_sensitive;
    bool hp_stabilized = false;
    std::optional<std::size_t> hp_even, hp_odd;
};

inline HomologyReport homology_report(const CyclicObject& x)
{
    const MixedComplex m = mixed_complex(x);
    const CyclicHomology h = cyclic_homology_data(m);
    const PeriodicResult p = periodic_stabilize(m, h);
    HomologyReport r{x.name, m.cap, hochschild(m), h.hc, h.truncation_sensitive, p.stabilized, {}, {}};
    if (p.stabilized) {
        r.hp_even = p.hp_even;
        r.hp_odd = p.hp_odd;
    }
    return r;
}

/// A cyclic map commutes with b and B, hence with D on Tot, and with S there since it acts blockwise.
inline VerificationReport s_compatibility(const CyclicMap& f, const MixedComplex& src, const MixedComplex& tgt)
{
    VerificationReport r{f.name + " and S", {}};
    const std::size_t cap = std::min(src.cap, tgt.cap);
    std::string wb, wB, wS;
    auto tot_map = [&](std::size_t n) {
        SparseMat out(tot_dim(tgt, n), tot_dim(src, n));
        std::size_t row = 0, col = 0;
        for (std::size_t k = 0; 2 * k <= n; ++k) {
            const SparseMat& fm = f.maps[n - 2 * k];
            for (std::size_t c = 0; c < fm.cols(); ++c) {
                VecBuilder v;
                for (const auto& e : fm.column(c)) v.add(row + e.index, e.value);
                out.set_column(col + c, v.take());
            }
            row += fm.rows();
            col += fm.cols();
        }
        return out;
    };
    for (std::size_t n = 1; n <= cap; ++n) {
        if (!(f.maps[n - 1] * src.b[n] == tgt.b[n] * f.maps[n]) && wb.empty()) wb = "degree " + std::to_string(n);
    }
    for (std::size_t n = 0; n < cap; ++n) {
        if (!(f.maps[n + 1] * src.B[n] == tgt.B[n] * f.maps[n]) && wB.empty()) wB = "degree " + std::to_string(n);
    }
    for (std::size_t n = 2; n <= cap; ++n) {
        if (!(tot_map(n - 2) * periodicity_map(src, n) == periodicity_map(tgt, n) * tot_map(n)) && wS.empty()) {
            wS = "degree " + std::to_string(n);
        }
    }
    r.add(boolean_check("commutes with b", wb.empty(), wb));
    r.add(boolean_check("commutes with B", wB.empty(), wB));
    r.add(boolean_check("commutes with S on Tot", wS.empty(), wS));
    return r;
}

} // namespace hopfcyc
