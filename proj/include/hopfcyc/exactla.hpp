// Exact rational sparse linear algebra.
//
// Every structure map in the library is a SparseMat over the rationals in a
// fixed basis. Tensor products flatten row-major: the leftmost factor is the
// most significant digit, so the basis element (i, j) of V (x) W has index
// i * dim(W) + j.

#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace hopfcyc {

using Rat = mpq_class;

/// Parses "p", "-p" or "p/q" into a canonical rational.
inline Rat parse_rat(std::string_view text)
{
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational literal '" + s + "'");
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rat& r) { return r.get_str(); }

struct Entry {
    std::size_t index;
    Rat value;

    bool operator==(const Entry& o) const { return index == o.index && value == o.value; }
};

/// Sorted by index, no stored zeros.
using SparseVec = std::vector<Entry>;

inline SparseVec unit_vec(std::size_t i) { return SparseVec{Entry{i, Rat(1)}}; }

inline Rat coeff(const SparseVec& v, std::size_t i)
{
    auto it = std::lower_bound(v.begin(), v.end(), i,
                               [](const Entry& e, std::size_t k) { return e.index < k; });
    if (it != v.end() && it->index == i) return it->value;
    return Rat(0);
}

/// Ordered accumulator for building sparse vectors out of scattered terms.
class VecBuilder {
public:
    void add(std::size_t i, const Rat& r)
    {
        if (sgn(r) == 0) return;
        auto [it, fresh] = terms_.try_emplace(i, r);
        if (!fresh) {
            it->second += r;
            if (sgn(it->second) == 0) terms_.erase(it);
        }
    }

    void add(const SparseVec& v, const Rat& scale = Rat(1))
    {
        if (sgn(scale) == 0) return;
        for (const auto& e : v) add(e.index, e.value * scale);
    }

    bool empty() const { return terms_.empty(); }

    SparseVec take()
    {
        SparseVec out;
        out.reserve(terms_.size());
        for (auto& [i, r] : terms_) out.push_back(Entry{i, std::move(r)});
        terms_.clear();
        return out;
    }

private:
    std::map<std::size_t, Rat> terms_;
};

inline SparseVec add(const SparseVec& a, const SparseVec& b, const Rat& scale_b = Rat(1))
{
    SparseVec out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].index < b[j].index)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].index < a[i].index) {
            out.push_back(Entry{b[j].index, b[j].value * scale_b});
            ++j;
        } else {
            Rat v = a[i].value + b[j].value * scale_b;
            if (sgn(v) != 0) out.push_back(Entry{a[i].index, std::move(v)});
            ++i;
            ++j;
        }
    }
    return out;
}

inline SparseVec scaled(SparseVec v, const Rat& s)
{
    if (sgn(s) == 0) return {};
    for (auto& e : v) e.value *= s;
    return v;
}

/// Column-major sparse matrix: column j is the image of basis vector j.
class SparseMat {
public:
    SparseMat() = default;
    SparseMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), columns_(cols) {}

    static SparseMat identity(std::size_t n)
    {
        SparseMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.columns_[i] = unit_vec(i);
        return m;
    }

    static SparseMat from_columns(std::size_t rows, std::vector<SparseVec> columns)
    {
        SparseMat m(rows, columns.size());
        for (std::size_t j = 0; j < columns.size(); ++j) m.set_column(j, std::move(columns[j]));
        return m;
    }

    /// Triples (row, col, value); repeated positions are summed.
    static SparseMat from_triples(std::size_t rows, std::size_t cols,
                                  const std::vector<std::tuple<std::size_t, std::size_t, Rat>>& triples)
    {
        std::vector<VecBuilder> builders(cols);
        for (const auto& [r, c, v] : triples) {
            if (r >= rows || c >= cols) throw std::out_of_range("matrix triple out of bounds");
            builders[c].add(r, v);
        }
        SparseMat m(rows, cols);
        for (std::size_t j = 0; j < cols; ++j) m.columns_[j] = builders[j].take();
        return m;
    }

    /// Single-row matrix holding a linear functional.
    static SparseMat row_vector(std::size_t cols, const SparseVec& functional)
    {
        SparseMat m(1, cols);
        for (const auto& e : functional) m.columns_.at(e.index) = SparseVec{Entry{0, e.value}};
        return m;
    }

    /// Single-column matrix holding a vector.
    static SparseMat column_vector(std::size_t rows, SparseVec v)
    {
        SparseMat m(rows, 1);
        m.set_column(0, std::move(v));
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const SparseVec& column(std::size_t j) const { return columns_.at(j); }

    void set_column(std::size_t j, SparseVec v)
    {
        for (const auto& e : v) {
            if (e.index >= rows_) throw std::out_of_range("column entry out of bounds");
        }
        v.erase(std::remove_if(v.begin(), v.end(), [](const Entry& e) { return sgn(e.value) == 0; }),
                v.end());
        columns_.at(j) = std::move(v);
    }

    Rat at(std::size_t i, std::size_t j) const { return coeff(columns_.at(j), i); }

    std::size_t nnz() const
    {
        std::size_t n = 0;
        for (const auto& c : columns_) n += c.size();
        return n;
    }

    bool is_zero() const
    {
        return std::all_of(columns_.begin(), columns_.end(), [](const SparseVec& c) { return c.empty(); });
    }

    SparseVec apply(const SparseVec& v) const
    {
        VecBuilder acc;
        for (const auto& e : v) acc.add(columns_.at(e.index), e.value);
        return acc.take();
    }

    SparseMat operator*(const SparseMat& rhs) const
    {
        if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product dimension mismatch");
        SparseMat out(rows_, rhs.cols_);
        for (std::size_t j = 0; j < rhs.cols_; ++j) out.columns_[j] = apply(rhs.columns_[j]);
        return out;
    }

    SparseMat operator+(const SparseMat& rhs) const { return combine(rhs, Rat(1)); }
    SparseMat operator-(const SparseMat& rhs) const { return combine(rhs, Rat(-1)); }

    SparseMat scaled(const Rat& s) const
    {
        SparseMat out(rows_, cols_);
        for (std::size_t j = 0; j < cols_; ++j) out.columns_[j] = hopfcyc::scaled(columns_[j], s);
        return out;
    }

    SparseMat transpose() const
    {
        std::vector<SparseVec> rowsv(rows_);
        for (std::size_t j = 0; j < cols_; ++j) {
            for (const auto& e : columns_[j]) rowsv[e.index].push_back(Entry{j, e.value});
        }
        return from_columns(cols_, std::move(rowsv));
    }

    /// Rows of the matrix as sparse vectors over the column index.
    std::vector<SparseVec> row_vectors() const
    {
        std::vector<SparseVec> rowsv(rows_);
        for (std::size_t j = 0; j < cols_; ++j) {
            for (const auto& e : columns_[j]) rowsv[e.index].push_back(Entry{j, e.value});
        }
        return rowsv;
    }

    bool operator==(const SparseMat& o) const
    {
        return rows_ == o.rows_ && cols_ == o.cols_ && columns_ == o.columns_;
    }

private:
    SparseMat combine(const SparseMat& rhs, const Rat& s) const
    {
        if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix sum dimension mismatch");
        SparseMat out(rows_, cols_);
        for (std::size_t j = 0; j < cols_; ++j) out.columns_[j] = add(columns_[j], rhs.columns_[j], s);
        return out;
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<SparseVec> columns_;
};

/// Kronecker product; (a (x) b)(e_i (x) e_j) = a(e_i) (x) b(e_j) with row-major flattening.
inline SparseMat kron(const SparseMat& a, const SparseMat& b)
{
    SparseMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.cols(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            SparseVec col;
            col.reserve(a.column(i).size() * b.column(j).size());
            for (const auto& x : a.column(i)) {
                for (const auto& y : b.column(j)) col.push_back(Entry{x.index * b.rows() + y.index, x.value * y.value});
            }
            out.set_column(i * b.cols() + j, std::move(col));
        }
    }
    return out;
}

inline SparseMat kron(const std::vector<SparseMat>& factors)
{
    SparseMat out = factors.at(0);
    for (std::size_t k = 1; k < factors.size(); ++k) out = kron(out, factors[k]);
    return out;
}

/// Linear span kept in reduced row-echelon form (leftmost pivots, leading 1).
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient) : ambient_(ambient) {}

    static Subspace span(std::size_t ambient, const std::vector<SparseVec>& vectors)
    {
        Subspace s(ambient);
        for (const auto& v : vectors) s.insert(v);
        s.finalize();
        return s;
    }

    static Subspace whole(std::size_t ambient)
    {
        std::vector<SparseVec> basis;
        for (std::size_t i = 0; i < ambient; ++i) basis.push_back(unit_vec(i));
        return span(ambient, basis);
    }

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t rank() const { return basis_.size(); }
    const std::vector<SparseVec>& basis() const { return basis_; }
    const std::vector<std::size_t>& pivot_cols() const { return pivots_; }

    /// v minus its components along the pivot rows; zero iff v lies in the span.
    SparseVec reduce(const SparseVec& v) const
    {
        std::map<std::size_t, Rat> acc;
        for (const auto& e : v) {
            if (sgn(e.value) != 0) acc.emplace(e.index, e.value);
        }
        eliminate(acc);
        SparseVec out;
        for (auto& [i, r] : acc) out.push_back(Entry{i, r});
        return out;
    }

    bool contains(const SparseVec& v) const { return reduce(v).empty(); }

    bool contains(const Subspace& other) const
    {
        return std::all_of(other.basis_.begin(), other.basis_.end(), [&](const SparseVec& v) { return contains(v); });
    }

    bool operator==(const Subspace& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }

    /// Incremental insertion; call finalize() before using reduced rows.
    bool insert(const SparseVec& v)
    {
        std::map<std::size_t, Rat> acc;
        for (const auto& e : v) {
            if (e.index >= ambient_) throw std::out_of_range("vector index exceeds ambient dimension");
            if (sgn(e.value) != 0) acc.emplace(e.index, e.value);
        }
        eliminate(acc);
        SparseVec row;
        for (auto& [i, r] : acc) {
            if (sgn(r) != 0) row.push_back(Entry{i, r});
        }
        if (row.empty()) return false;
        Rat lead = row.front().value;
        if (lead != 1) {
            for (auto& e : row) e.value /= lead;
        }
        pivot_row_.emplace(row.front().index, basis_.size());
        basis_.push_back(std::move(row));
        finalized_ = false;
        return true;
    }

    /// Back-substitution into full RREF and sorting rows by pivot.
    void finalize()
    {
        if (finalized_) return;
        std::vector<SparseVec> rows = std::move(basis_);
        std::sort(rows.begin(), rows.end(), [](const SparseVec& a, const SparseVec& b) {
            return a.front().index < b.front().index;
        });
        pivot_row_.clear();
        pivots_.clear();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            pivot_row_.emplace(rows[i].front().index, i);
            pivots_.push_back(rows[i].front().index);
        }
        for (std::size_t k = rows.size(); k-- > 0;) {
            bool touches = false;
            for (std::size_t t = 1; t < rows[k].size(); ++t) {
                if (pivot_row_.count(rows[k][t].index)) {
                    touches = true;
                    break;
                }
            }
            if (!touches) continue;
            VecBuilder acc;
            acc.add(rows[k]);
            for (const auto& e : rows[k]) {
                if (e.index == rows[k].front().index) continue;
                auto p = pivot_row_.find(e.index);
                if (p != pivot_row_.end()) acc.add(rows[p->second], -e.value);
            }
            rows[k] = acc.take();
        }
        basis_ = std::move(rows);
        finalized_ = true;
    }

private:
    // Clears every pivot column from acc, walking columns left to right; rows have
    // their leading entry at the pivot so fill-in only lands further right.
    void eliminate(std::map<std::size_t, Rat>& acc) const
    {
        for (auto it = acc.begin(); it != acc.end();) {
            auto p = pivot_row_.find(it->first);
            if (p == pivot_row_.end() || sgn(it->second) == 0) {
                it = sgn(it->second) == 0 ? acc.erase(it) : std::next(it);
                continue;
            }
            const Rat c = it->second;
            const std::size_t col = it->first;
            for (const auto& e : basis_[p->second]) {
                auto [jt, fresh] = acc.try_emplace(e.index, -c * e.value);
                if (!fresh) jt->second -= c * e.value;
            }
            acc.erase(col);
            it = acc.upper_bound(col);
        }
    }

    std::size_t ambient_ = 0;
    std::vector<SparseVec> basis_;
    std::vector<std::size_t> pivots_;
    std::map<std::size_t, std::size_t> pivot_row_;
    bool finalized_ = true;
};

/// Row reduction of m: the row space in RREF plus an invertible T with T*m = RREF (zero rows last).
struct RrefResult {
    Subspace row_space;
    SparseMat transform;
};

inline RrefResult rref(const SparseMat& m)
{
    const std::size_t n = m.rows(), c = m.cols();
    // Augment each row with its identity tag so the transform falls out of the elimination.
    auto rowsv = m.row_vectors();
    Subspace aug(c + n);
    for (std::size_t i = 0; i < n; ++i) {
        SparseVec r = rowsv[i];
        r.push_back(Entry{c + i, Rat(1)});
        aug.insert(r);
    }
    aug.finalize();
    std::vector<SparseVec> reduced, tags;
    for (const auto& row : aug.basis()) {
        SparseVec left, right;
        for (const auto& e : row) {
            if (e.index < c) left.push_back(e);
            else right.push_back(Entry{e.index - c, e.value});
        }
        if (!left.empty()) reduced.push_back(std::move(left));
        tags.push_back(std::move(right));
    }
    SparseMat t = SparseMat::from_columns(n, std::move(tags)).transpose();
    return RrefResult{Subspace::span(c, reduced), std::move(t)};
}

inline std::size_t rank(const SparseMat& m)
{
    Subspace s(m.rows());
    for (std::size_t j = 0; j < m.cols(); ++j) s.insert(m.column(j));
    return s.rank();
}

/// Column space of m.
inline Subspace image(const SparseMat& m)
{
    Subspace s(m.rows());
    for (std::size_t j = 0; j < m.cols(); ++j) s.insert(m.column(j));
    s.finalize();
    return s;
}

/// Some x with m*x = rhs, or nothing when the system is inconsistent.
inline std::optional<SparseVec> solve(const SparseMat& m, const SparseVec& rhs)
{
    const std::size_t c = m.cols();
    auto rowsv = m.row_vectors();
    Subspace aug(c + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        SparseVec r = rowsv[i];
        Rat b = coeff(rhs, i);
        if (sgn(b) != 0) r.push_back(Entry{c, b});
        aug.insert(r);
    }
    for (const auto& e : rhs) {
        if (e.index >= m.rows()) throw std::out_of_range("rhs longer than matrix rows");
    }
    aug.finalize();
    VecBuilder x;
    for (const auto& row : aug.basis()) {
        if (row.front().index == c) return std::nullopt;
        x.add(row.front().index, coeff(row, c));
    }
    return x.take();
}

/// Basis of {x : m*x = 0}.
inline Subspace kernel(const SparseMat& m)
{
    Subspace rs = Subspace::span(m.cols(), m.row_vectors());
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : rs.pivot_cols()) is_pivot[p] = true;
    std::vector<SparseVec> vecs;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        VecBuilder v;
        v.add(f, Rat(1));
        for (std::size_t k = 0; k < rs.rank(); ++k) {
            Rat r = coeff(rs.basis()[k], f);
            if (sgn(r) != 0) v.add(rs.pivot_cols()[k], -r);
        }
        vecs.push_back(v.take());
    }
    return Subspace::span(m.cols(), vecs);
}

/// Intersection of two subspaces of the same ambient space.
inline Subspace intersect(const Subspace& a, const Subspace& b)
{
    // x = sum alpha_i a_i lies in b iff its reduction modulo b vanishes; reduction is linear.
    std::vector<SparseVec> reductions;
    for (const auto& v : a.basis()) reductions.push_back(b.reduce(v));
    SparseMat red = SparseMat::from_columns(a.ambient_dim(), reductions);
    Subspace coeffs = kernel(red);
    std::vector<SparseVec> out;
    for (const auto& k : coeffs.basis()) {
        VecBuilder acc;
        for (const auto& e : k) acc.add(a.basis()[e.index], e.value);
        out.push_back(acc.take());
    }
    return Subspace::span(a.ambient_dim(), out);
}

/// V / relations, represented on the non-pivot columns of the relation RREF.
class QuotientSpace {
public:
    QuotientSpace() = default;

    explicit QuotientSpace(Subspace relations) : relations_(std::move(relations))
    {
        relations_.finalize();
        const std::size_t n = relations_.ambient_dim();
        position_.assign(n, npos);
        pivot_row_.assign(n, npos);
        for (std::size_t k = 0; k < relations_.rank(); ++k) pivot_row_[relations_.pivot_cols()[k]] = k;
        for (std::size_t j = 0; j < n; ++j) {
            if (pivot_row_[j] == npos) {
                position_[j] = rep_cols_.size();
                rep_cols_.push_back(j);
            }
        }
    }

    static QuotientSpace trivial(std::size_t ambient) { return QuotientSpace(Subspace(ambient)); }

    std::size_t ambient_dim() const { return relations_.ambient_dim(); }
    std::size_t dim() const { return rep_cols_.size(); }
    const Subspace& relations() const { return relations_; }
    const std::vector<std::size_t>& rep_cols() const { return rep_cols_; }

    /// Coordinates of the class of v.
    SparseVec project(const SparseVec& v) const
    {
        VecBuilder acc;
        for (const auto& e : v) add_class_of(e.index, e.value, acc);
        return acc.take();
    }

    SparseVec project_basis(std::size_t j) const
    {
        VecBuilder acc;
        add_class_of(j, Rat(1), acc);
        return acc.take();
    }

    std::size_t lift_index(std::size_t k) const { return rep_cols_.at(k); }

    SparseVec lift(const SparseVec& coords) const
    {
        SparseVec out;
        for (const auto& e : coords) out.push_back(Entry{rep_cols_.at(e.index), e.value});
        return out;
    }

    SparseMat projection_matrix() const
    {
        SparseMat p(dim(), ambient_dim());
        for (std::size_t j = 0; j < ambient_dim(); ++j) p.set_column(j, project_basis(j));
        return p;
    }

    SparseMat lift_matrix() const
    {
        SparseMat l(ambient_dim(), dim());
        for (std::size_t k = 0; k < dim(); ++k) l.set_column(k, unit_vec(rep_cols_[k]));
        return l;
    }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    void add_class_of(std::size_t j, const Rat& c, VecBuilder& acc) const
    {
        if (j >= ambient_dim()) throw std::out_of_range("projecting index outside ambient space");
        if (position_[j] != npos) {
            acc.add(position_[j], c);
            return;
        }
        // e_p = row_p - (non-pivot tail of row_p) modulo relations.
        for (const auto& e : relations_.basis()[pivot_row_[j]]) {
            if (e.index == j) continue;
            acc.add(position_[e.index], -c * e.value);
        }
    }

    Subspace relations_;
    std::vector<std::size_t> rep_cols_;
    std::vector<std::size_t> position_;
    std::vector<std::size_t> pivot_row_;
};

} // namespace hopfcyc
