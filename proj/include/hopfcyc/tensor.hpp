// Multi-index helpers, tensor expansion of sparse vectors, and verification reports.

#pragma once

#include "hopfcyc/exactla.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hopfcyc {

/// Base class for every error the library raises.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An identity the theory guarantees failed to hold: an implementation bug, never bad input.
struct InternalTheoremViolation : Error {
    using Error::Error;
};

struct ResourceLimit : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

/// Shape of a tensor product space; row-major flattening.
class Shape {
public:
    Shape() = default;
    explicit Shape(std::vector<std::size_t> dims) : dims_(std::move(dims)) {}

    static Shape power(std::size_t dim, std::size_t n) { return Shape(std::vector<std::size_t>(n, dim)); }

    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t rank() const { return dims_.size(); }
    std::size_t operator[](std::size_t k) const { return dims_[k]; }

    std::size_t size() const
    {
        return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>());
    }

    std::size_t encode(const std::vector<std::size_t>& idx) const
    {
        std::size_t out = 0;
        for (std::size_t k = 0; k < dims_.size(); ++k) out = out * dims_[k] + idx[k];
        return out;
    }

    std::vector<std::size_t> decode(std::size_t flat) const
    {
        std::vector<std::size_t> idx(dims_.size());
        for (std::size_t k = dims_.size(); k-- > 0;) {
            idx[k] = flat % dims_[k];
            flat /= dims_[k];
        }
        return idx;
    }

    Shape append(const Shape& other) const
    {
        auto d = dims_;
        d.insert(d.end(), other.dims_.begin(), other.dims_.end());
        return Shape(std::move(d));
    }

private:
    std::vector<std::size_t> dims_;
};

/// v_0 (x) v_1 (x) ... flattened with the given factor dimensions.
inline SparseVec tensor(const std::vector<SparseVec>& factors, const std::vector<std::size_t>& dims)
{
    SparseVec acc{Entry{0, Rat(1)}};
    for (std::size_t k = 0; k < factors.size(); ++k) {
        SparseVec next;
        next.reserve(acc.size() * factors[k].size());
        for (const auto& a : acc) {
            for (const auto& b : factors[k]) next.push_back(Entry{a.index * dims[k] + b.index, a.value * b.value});
        }
        acc = std::move(next);
    }
    // Row-major expansion of sorted inputs stays sorted and collision-free.
    return acc;
}

inline SparseVec tensor2(const SparseVec& a, const SparseVec& b, std::size_t dim_b)
{
    return tensor({a, b}, {1, dim_b});
}

/// Matrix of the factor permutation (x_0 .. x_{n-1}) -> (x_{perm[0]} .. x_{perm[n-1]}).
inline SparseMat permutation_matrix(const Shape& in, const std::vector<std::size_t>& perm)
{
    std::vector<std::size_t> out_dims;
    for (auto p : perm) out_dims.push_back(in[p]);
    Shape out(out_dims);
    SparseMat m(out.size(), in.size());
    std::vector<std::size_t> oi(perm.size());
    for (std::size_t j = 0; j < in.size(); ++j) {
        auto ii = in.decode(j);
        for (std::size_t k = 0; k < perm.size(); ++k) oi[k] = ii[perm[k]];
        m.set_column(j, unit_vec(out.encode(oi)));
    }
    return m;
}

/// Swap of two tensor factors of dimensions a and b.
inline SparseMat swap_matrix(std::size_t a, std::size_t b) { return permutation_matrix(Shape({a, b}), {1, 0}); }

struct Check {
    std::string name;
    bool passed = true;
    std::string witness;
};

struct VerificationReport {
    std::string subject;
    std::vector<Check> checks;

    bool ok() const
    {
        for (const auto& c : checks) {
            if (!c.passed) return false;
        }
        return true;
    }

    const Check* first_failure() const
    {
        for (const auto& c : checks) {
            if (!c.passed) return &c;
        }
        return nullptr;
    }

    const Check* find(const std::string& name) const
    {
        for (const auto& c : checks) {
            if (c.name == name) return &c;
        }
        return nullptr;
    }

    void add(Check c) { checks.push_back(std::move(c)); }

    void absorb(const VerificationReport& other, const std::string& prefix)
    {
        for (auto c : other.checks) {
            c.name = prefix + c.name;
            checks.push_back(std::move(c));
        }
    }
};

inline std::string format_index(const std::vector<std::size_t>& idx)
{
    std::ostringstream os;
    os << '(';
    for (std::size_t k = 0; k < idx.size(); ++k) os << (k ? "," : "") << idx[k];
    os << ')';
    return os.str();
}

/// Exact comparison of two linear maps; the witness is the first input basis tuple where they differ.
inline Check compare_maps(std::string name, const SparseMat& lhs, const SparseMat& rhs, const Shape& input)
{
    Check c{std::move(name), true, {}};
    if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) {
        c.passed = false;
        c.witness = "shape mismatch";
        return c;
    }
    for (std::size_t j = 0; j < lhs.cols(); ++j) {
        if (!(lhs.column(j) == rhs.column(j))) {
            c.passed = false;
            c.witness = "basis " + format_index(input.decode(j));
            return c;
        }
    }
    return c;
}

inline Check boolean_check(std::string name, bool ok, std::string witness = {})
{
    return Check{std::move(name), ok, ok ? std::string{} : std::move(witness)};
}

} // namespace hopfcyc
