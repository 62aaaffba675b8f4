// Independent dense reference implementations used to cross-check the sparse library.

#pragma once

#include "hopfcyc/algstruct.hpp"

#include <algorithm>

#include <random>
#include <vector>

namespace oracle {

using hopfcyc::Rat;
using Dense = std::vector<std::vector<Rat>>;

inline Dense zeros(std::size_t r, std::size_t c) { return Dense(r, std::vector<Rat>(c, Rat(0))); }

inline Dense to_dense(const hopfcyc::SparseMat& m)
{
    Dense d = zeros(m.rows(), m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        for (const auto& e : m.column(j)) d[e.index][j] = e.value;
    }
    return d;
}

/// Plain Gaussian elimination with full pivot search by rows.
inline std::size_t dense_rank(Dense a)
{
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (a[i][c] == 0) continue;
            Rat f = a[i][c] / a[r][c];
            for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
        }
        ++r;
    }
    return r;
}

inline Dense mul(const Dense& a, const Dense& b)
{
    const std::size_t n = a.size(), m = b.size(), p = m ? b[0].size() : 0;
    Dense c = zeros(n, p);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < m; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < p; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    }
    return c;
}

/// Random sparse matrix with small integer/rational entries.
inline hopfcyc::SparseMat random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, double density = 0.4)
{
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
    std::vector<hopfcyc::SparseVec> columns(cols);
    for (std::size_t j = 0; j < cols; ++j) {
        for (std::size_t i = 0; i < rows; ++i) {
            if (coin(rng) > density) continue;
            Rat v(num(rng), den(rng));
            v.canonicalize();
            if (v != 0) columns[j].push_back(hopfcyc::Entry{i, v});
        }
    }
    return hopfcyc::SparseMat::from_columns(rows, std::move(columns));
}

// Dense reference: the Hochschild complex A^{(x) n+1} over k and Connes' quotient by 1 - t.
struct DenseCyclic {
    std::size_t d;
    std::vector<std::vector<std::vector<Rat>>> mult; // mult[i][j][k]: coefficient of e_k in e_i e_j

    explicit DenseCyclic(const hopfcyc::Algebra& a) : d(a.dim())
    {
        mult.assign(d, std::vector<std::vector<Rat>>(d, std::vector<Rat>(d, Rat(0))));
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                for (const auto& e : a.product(i, j)) mult[i][j][e.index] = e.value;
            }
        }
    }

    std::size_t pow(std::size_t n) const
    {
        std::size_t p = 1;
        for (std::size_t i = 0; i < n; ++i) p *= d;
        return p;
    }

    std::vector<std::size_t> digits(std::size_t u, std::size_t len) const
    {
        std::vector<std::size_t> t(len);
        for (std::size_t k = len; k-- > 0;) {
            t[k] = u % d;
            u /= d;
        }
        return t;
    }

    std::size_t number(const std::vector<std::size_t>& t) const
    {
        std::size_t u = 0;
        for (auto x : t) u = u * d + x;
        return u;
    }

    // b : A^{(x) n+1} -> A^{(x) n}
    Dense b(std::size_t n) const
    {
        Dense m = zeros(pow(n), pow(n + 1));
        for (std::size_t u = 0; u < pow(n + 1); ++u) {
            const auto t = digits(u, n + 1);
            for (std::size_t i = 0; i <= n; ++i) {
                const Rat sign = i % 2 == 0 ? Rat(1) : Rat(-1);
                const std::size_t x = i < n ? t[i] : t[n], y = i < n ? t[i + 1] : t[0];
                for (std::size_t k = 0; k < d; ++k) {
                    if (mult[x][y][k] == 0) continue;
                    std::vector<std::size_t> r;
                    if (i < n) {
                        r = t;
                        r[i] = k;
                        r.erase(r.begin() + i + 1);
                    } else {
                        r.assign(t.begin(), t.end() - 1);
                        r[0] = k;
                    }
                    m[number(r)][u] += sign * mult[x][y][k];
                }
            }
        }
        return m;
    }

    // 1 - t with t(a0, ..., an) = (-1)^n (an, a0, ..., a_{n-1})
    Dense one_minus_t(std::size_t n) const
    {
        const std::size_t size = pow(n + 1);
        Dense m = zeros(size, size);
        for (std::size_t u = 0; u < size; ++u) {
            auto t = digits(u, n + 1);
            std::rotate(t.rbegin(), t.rbegin() + 1, t.rend());
            m[u][u] += 1;
            m[number(t)][u] -= n % 2 == 0 ? Rat(1) : Rat(-1);
        }
        return m;
    }

    static Dense beside(const Dense& a, const Dense& b)
    {
        Dense m = a;
        for (std::size_t i = 0; i < m.size(); ++i) m[i].insert(m[i].end(), b[i].begin(), b[i].end());
        return m;
    }

    std::vector<std::size_t> hh(std::size_t top) const
    {
        std::vector<std::size_t> out;
        for (std::size_t n = 0; n <= top; ++n) {
            const std::size_t rn = n == 0 ? 0 : dense_rank(b(n));
            out.push_back(pow(n + 1) - rn - dense_rank(b(n + 1)));
        }
        return out;
    }

    std::vector<std::size_t> hc(std::size_t top) const
    {
        std::vector<std::size_t> out;
        auto r1t = [&](std::size_t n) { return dense_rank(one_minus_t(n)); };
        // rank of b from C^lambda_n to C^lambda_{n-1}
        auto rb = [&](std::size_t n) { return dense_rank(beside(b(n), one_minus_t(n - 1))) - r1t(n - 1); };
        for (std::size_t n = 0; n <= top; ++n) out.push_back(pow(n + 1) - r1t(n) - (n == 0 ? 0 : rb(n)) - rb(n + 1));
        return out;
    }
};

} // namespace oracle
