#include "hopfcyc/exactla.hpp"
#include "hopfcyc/tensor.hpp"
#include "oracle.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace hopfcyc;

namespace {

SparseMat dense_matrix(const std::vector<std::vector<int>>& rows)
{
    std::vector<std::tuple<std::size_t, std::size_t, Rat>> t;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            if (rows[i][j]) t.emplace_back(i, j, Rat(rows[i][j]));
        }
    }
    return SparseMat::from_triples(rows.size(), rows.empty() ? 0 : rows[0].size(), t);
}

} // namespace

TEST_CASE("rationals are canonical")
{
    CHECK(parse_rat("6/4") == Rat(3, 2));
    CHECK(to_string(parse_rat("6/4")) == "3/2");
    CHECK(to_string(parse_rat("-0/7")) == "0");
    CHECK_THROWS(parse_rat("1/0"));
    CHECK_THROWS(parse_rat("abc"));
}

TEST_CASE("rref examples")
{
    auto r = rref(SparseMat::identity(2));
    CHECK(r.row_space.rank() == 2);
    CHECK(r.row_space.pivot_cols() == std::vector<std::size_t>{0, 1});

    CHECK(rref(SparseMat(3, 3)).row_space.rank() == 0);

    auto m = dense_matrix({{1, 2}, {2, 4}});
    auto r2 = rref(m);
    REQUIRE(r2.row_space.rank() == 1);
    CHECK(r2.row_space.basis()[0] == SparseVec{Entry{0, Rat(1)}, Entry{1, Rat(2)}});
    // The transform carries m to its RREF with zero rows last.
    auto reduced = oracle::to_dense(r2.transform * m);
    CHECK(reduced[0][0] == 1);
    CHECK(reduced[0][1] == 2);
    CHECK(reduced[1][0] == 0);
    CHECK(reduced[1][1] == 0);
}

TEST_CASE("solve examples")
{
    CHECK(*solve(SparseMat::identity(3), unit_vec(1)) == unit_vec(1));
    CHECK_FALSE(solve(dense_matrix({{1}, {0}}), unit_vec(1)).has_value());
    auto x = solve(dense_matrix({{2}}), unit_vec(0));
    REQUIRE(x);
    CHECK(*x == SparseVec{Entry{0, Rat(1, 2)}});
}

TEST_CASE("quotient examples")
{
    auto q0 = QuotientSpace::trivial(3);
    for (std::size_t j = 0; j < 3; ++j) CHECK(q0.project_basis(j) == unit_vec(j));

    auto q1 = QuotientSpace(Subspace::span(2, {SparseVec{Entry{0, Rat(1)}, Entry{1, Rat(-1)}}}));
    CHECK(q1.dim() == 1);
    CHECK(q1.project_basis(0) == q1.project_basis(1));

    auto q2 = QuotientSpace(Subspace::span(3, {SparseVec{Entry{0, Rat(1)}, Entry{1, Rat(1)}}}));
    CHECK(q2.dim() == 2);
    CHECK(q2.project(SparseVec{Entry{0, Rat(1)}, Entry{1, Rat(1)}}).empty());
}

TEST_CASE("kron examples")
{
    CHECK(kron(SparseMat::identity(2), SparseMat::identity(3)) == SparseMat::identity(6));
    std::mt19937 rng(7);
    auto a = oracle::random_matrix(rng, 3, 2);
    CHECK(kron(a, SparseMat(2, 2)).is_zero());
}

TEST_CASE("rref is idempotent and matches the dense rank oracle")
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
        auto m = oracle::random_matrix(rng, r, c);
        auto res = rref(m);
        CHECK(res.row_space.rank() == oracle::dense_rank(oracle::to_dense(m)));
        CHECK(rank(m) == res.row_space.rank());
        auto again = Subspace::span(c, res.row_space.basis());
        CHECK(again == res.row_space);
        // Transform is invertible and produces the RREF rows on top.
        CHECK(oracle::dense_rank(oracle::to_dense(res.transform)) == r);
        auto tm = res.transform * m;
        auto rows = tm.row_vectors();
        for (std::size_t i = 0; i < res.row_space.rank(); ++i) CHECK(rows[i] == res.row_space.basis()[i]);
        for (std::size_t i = res.row_space.rank(); i < r; ++i) CHECK(rows[i].empty());
    }
}

TEST_CASE("solve returns exact solutions or detects inconsistency")
{
    std::mt19937 rng(13);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
        auto m = oracle::random_matrix(rng, r, c);
        auto rhs = oracle::random_matrix(rng, r, 1).column(0);
        auto x = solve(m, rhs);
        auto aug = oracle::to_dense(m);
        for (std::size_t i = 0; i < r; ++i) aug[i].push_back(coeff(rhs, i));
        bool consistent = oracle::dense_rank(aug) == oracle::dense_rank(oracle::to_dense(m));
        CHECK(x.has_value() == consistent);
        if (x) CHECK(m.apply(*x) == rhs);
    }
}

TEST_CASE("kernel, image and intersection dimensions")
{
    std::mt19937 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
        auto m = oracle::random_matrix(rng, r, c);
        auto k = kernel(m);
        CHECK(k.rank() + image(m).rank() == c);
        for (const auto& v : k.basis()) CHECK(m.apply(v).empty());

        auto a = image(oracle::random_matrix(rng, 5, 1 + rng() % 4));
        auto b = image(oracle::random_matrix(rng, 5, 1 + rng() % 4));
        auto ab = intersect(a, b);
        std::vector<SparseVec> both = a.basis();
        both.insert(both.end(), b.basis().begin(), b.basis().end());
        CHECK(ab.rank() == a.rank() + b.rank() - Subspace::span(5, both).rank());
        CHECK(a.contains(ab));
        CHECK(b.contains(ab));
    }
}

TEST_CASE("project after lift is the identity and relations project to zero")
{
    std::mt19937 rng(19);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 2 + rng() % 6;
        auto rel = image(oracle::random_matrix(rng, n, rng() % n));
        QuotientSpace q(rel);
        CHECK(q.dim() == n - rel.rank());
        CHECK(q.projection_matrix() * q.lift_matrix() == SparseMat::identity(q.dim()));
        for (const auto& r : rel.basis()) CHECK(q.project(r).empty());
        // A vector and its reduction modulo the relations have the same class.
        auto v = oracle::random_matrix(rng, n, 1).column(0);
        CHECK(q.project(v) == q.project(rel.reduce(v)));
    }
}

TEST_CASE("kron is associative and satisfies the mixed product rule")
{
    std::mt19937 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = oracle::random_matrix(rng, 2, 3);
        auto b = oracle::random_matrix(rng, 3, 2);
        auto c = oracle::random_matrix(rng, 2, 2);
        CHECK(kron(kron(a, b), c) == kron(a, kron(b, c)));
        auto v = oracle::random_matrix(rng, 3, 1).column(0);
        auto w = oracle::random_matrix(rng, 2, 1).column(0);
        CHECK(kron(a, b).apply(tensor2(v, w, 2)) == tensor2(a.apply(v), b.apply(w), 3));
    }
}

TEST_CASE("shape encoding and permutations")
{
    Shape s({2, 3, 4});
    CHECK(s.size() == 24);
    for (std::size_t f = 0; f < s.size(); ++f) CHECK(s.encode(s.decode(f)) == f);
    CHECK(s.encode({1, 2, 3}) == 1 * 12 + 2 * 4 + 3);
    auto p = permutation_matrix(s, {2, 0, 1});
    auto back = permutation_matrix(Shape({4, 2, 3}), {1, 2, 0});
    CHECK(back * p == SparseMat::identity(24));
    CHECK(swap_matrix(2, 3).apply(tensor2(unit_vec(1), unit_vec(2), 3)) == tensor2(unit_vec(2), unit_vec(1), 2));
}
