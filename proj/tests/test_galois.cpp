#include "hopfcyc/examples.hpp"
#include "hopfcyc/galois.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace hopfcyc;
namespace ex = hopfcyc::examples;

namespace {

GaloisDatum hopf_galois(const HopfAlgebra& h)
{
    return make_galois_datum(regular_comodule_algebra(h), regular_module_coalgebra(h), h.unit());
}

/// k^C4 over itself, coacting through the quotient C = k^{C2} with C2 = {0, 2}.
GaloisDatum c4_over_c2()
{
    auto g = ex::cyclic_group(4);
    auto q = ex::subgroup_quotient_coalgebra(g, {0, 2});
    return make_galois_datum(ex::gset_comodule_algebra(ex::right_regular(g)), q.C, q.e);
}

SparseVec sum(std::initializer_list<std::size_t> idx)
{
    VecBuilder b;
    for (auto i : idx) b.add(i, Rat(1));
    return b.take();
}

} // namespace

TEST_CASE("induced coaction")
{
    auto h = ex::group_algebra(ex::cyclic_group(3));
    auto ca = regular_comodule_algebra(h);
    CHECK(induce_coaction(ca, regular_module_coalgebra(h), h.unit()) == ca.coaction);

    auto g = c4_over_c2();
    CHECK(g.rho.rows() == 8);
    CHECK(g.rho.cols() == 4);
    CHECK(kron(SparseMat::identity(4), g.C.coalgebra.counit) * g.rho == SparseMat::identity(4));
    // delta_x |-> delta_x (x) [coset of identity] + delta_{x-2}... : each delta_x maps to the two points of its coset.
    CHECK(g.rho.column(0).size() == 2);

    auto k = ex::group_algebra(ex::cyclic_group(1));
    auto triv = trivial_comodule_algebra(ex::truncated_polynomial(2), k);
    auto rho = induce_coaction(triv, regular_module_coalgebra(k), k.unit());
    for (std::size_t a = 0; a < 2; ++a) CHECK(rho.column(a) == unit_vec(a));

    CHECK_THROWS_AS(induce_coaction(ca, regular_module_coalgebra(h), scaled(h.unit(), Rat(2))), NotGroupLike);
    CHECK_THROWS_AS(induce_coaction(ca, regular_module_coalgebra(h), SparseVec{}), NotGroupLike);
}

TEST_CASE("coaction invariants")
{
    auto h = ex::group_algebra(ex::cyclic_group(2));
    auto triv = trivial_comodule_algebra(ex::truncated_polynomial(3), h);
    CHECK(invariants(triv, induce_coaction(triv, regular_module_coalgebra(h), h.unit())).rank() == 3);

    auto c2 = hopf_galois(h);
    CHECK(c2.B.rank() == 1);
    CHECK(c2.B.contains(unit_vec(0)));

    auto g = c4_over_c2();
    CHECK(g.B.rank() == 2);
    // Functions constant on the cosets {0,2} and {1,3}.
    CHECK(g.B.contains(sum({0, 2})));
    CHECK(g.B.contains(sum({1, 3})));
}

TEST_CASE("canonical map")
{
    auto c2 = hopf_galois(ex::group_algebra(ex::cyclic_group(2)));
    CHECK(c2.can.rows() == 4);
    CHECK(c2.can.cols() == 4);
    CHECK(rank(c2.can) == 4);

    auto g = c4_over_c2();
    CHECK(g.AB.module.dim == 8);
    CHECK(rank(g.can) == 8);

    auto x = ex::s3_on_three_points();
    auto q = ex::subgroup_quotient_coalgebra(x.group, {0, ex::s3_transposition01()});
    try {
        make_galois_datum(ex::gset_comodule_algebra(x), q.C, q.e);
        FAIL("expected GaloisConditionFailed");
    } catch (const GaloisConditionFailed& e) {
        CHECK(e.target_dim == 6);
        CHECK(e.rank < e.target_dim);
    }
}

TEST_CASE("translation map")
{
    auto h = ex::group_algebra(ex::cyclic_group(2));
    auto g = hopf_galois(h);
    CHECK(g.tau(h.unit()) == g.balanced(h.unit(), h.unit()));
    // tau(g) = g^{-1} (x) g
    CHECK(g.tau(unit_vec(1)) == g.balanced(unit_vec(1), unit_vec(1)));
    auto tau = translation_map(g);
    CHECK(g.can * tau == kron(SparseMat::column_vector(2, h.unit()), SparseMat::identity(2)));

    auto h4 = ex::sweedler_h4();
    auto g4 = hopf_galois(h4);
    // tau(h) = S(h_1) (x) h_2 in the Hopf-Galois case.
    for (std::size_t k = 0; k < 4; ++k) {
        VecBuilder expect;
        for (const auto& t : h4.coalgebra.comult.column(k)) {
            expect.add(g4.balanced(h4.antipode.column(t.index / 4), unit_vec(t.index % 4)), t.value);
        }
        CHECK(g4.tau(unit_vec(k)) == expect.take());
    }
}

TEST_CASE("corings")
{
    auto h = ex::group_algebra(ex::cyclic_group(2));
    auto g = hopf_galois(h);
    auto gal = galois_coring(g);
    CHECK(gal.counit.apply(gal.grouplike) == h.unit());
    for (std::size_t a = 0; a < 2; ++a) CHECK(gal.bimodule.right[a].apply(gal.grouplike) == g.rho.column(a));
    CHECK(verify_coring(gal).ok());
    CHECK(verify_coring(sweedler_coring(g)).ok());
}

TEST_CASE("full Galois identity suite")
{
    for (const auto& g : {hopf_galois(ex::group_algebra(ex::cyclic_group(2))), hopf_galois(ex::group_algebra(ex::cyclic_group(4))),
                          hopf_galois(ex::sweedler_h4()), hopf_galois(ex::function_hopf(ex::symmetric_group3())), c4_over_c2()}) {
        auto r = verify_galois(g);
        INFO((r.first_failure() ? r.first_failure()->name + " " + r.first_failure()->witness : std::string()));
        CHECK(r.ok());
        if (g.hopf_galois()) CHECK(r.find("translation map anti-multiplicative"));
    }
}

TEST_CASE("quotient coalgebras")
{
    auto h = ex::sweedler_h4();
    auto q0 = quotient_coalgebra(h, Subspace(4));
    CHECK(q0.C.dim() == 4);
    CHECK(q0.pi == SparseMat::identity(4));
    CHECK(verify_module_coalgebra(q0.C).ok());

    auto q = ex::subgroup_quotient_coalgebra(ex::cyclic_group(4), {0, 2});
    CHECK(q.C.dim() == 2);
    CHECK(verify_module_coalgebra(q.C).ok());
    CHECK(q.e == q.pi.apply(q.H.unit()));

    auto kc2 = ex::group_algebra(ex::cyclic_group(2));
    CHECK_THROWS_AS(quotient_coalgebra(kc2, Subspace::span(2, {unit_vec(0)})), NotCoidealRightIdeal);

    auto s3 = ex::symmetric_group3();
    try {
        ex::subgroup_quotient_coalgebra(s3, {0, ex::s3_three_cycle()});
        FAIL("expected NotCoidealRightIdeal");
    } catch (const NotCoidealRightIdeal& e) {
        CHECK_FALSE(e.witness.empty());
    }
    CHECK(ex::subgroup_quotient_coalgebra(s3, {0}).C.dim() == 1);
}
