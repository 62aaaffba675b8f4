#include "hopfcyc/algstruct.hpp"
#include "hopfcyc/examples.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace hopfcyc;
namespace ex = hopfcyc::examples;

namespace {

/// Right action of H4 on itself twisted by the automorphism g -> g, x -> gx.
/// It is a module, but the automorphism is not a coalgebra map.
ModuleCoalgebra twisted_h4_action()
{
    HopfAlgebra h = ex::sweedler_h4();
    SparseMat phi(4, 4);
    phi.set_column(0, unit_vec(0));
    phi.set_column(1, unit_vec(1));
    phi.set_column(2, unit_vec(3));
    phi.set_column(3, unit_vec(2));
    SparseMat act = h.algebra.mult * kron(SparseMat::identity(4), phi);
    return ModuleCoalgebra{h.coalgebra, h, act};
}

} // namespace

TEST_CASE("verify_algebra examples")
{
    CHECK(verify_algebra(ex::group_algebra(ex::cyclic_group(2)).algebra).ok());
    CHECK(verify_algebra(ex::ground_field()).ok());

    // e0 e0 = e1, e1 e0 = e0, all other products zero: (e0 e0) e0 = e0 but e0 (e0 e0) = 0.
    Algebra bad{StructureConstantSpace::numbered(2), SparseMat(2, 4), unit_vec(0)};
    bad.mult.set_column(0, unit_vec(1));
    bad.mult.set_column(2, unit_vec(0));
    auto r = verify_algebra(bad);
    REQUIRE_FALSE(r.ok());
    CHECK(r.first_failure()->name == "associativity");
    CHECK(r.first_failure()->witness == "basis (0,0,0)");
}

TEST_CASE("verify_hopf examples")
{
    CHECK(verify_hopf(ex::function_hopf(ex::cyclic_group(2))).ok());
    auto ks3 = ex::group_algebra(ex::symmetric_group3());
    CHECK(verify_hopf(ks3).ok());
    CHECK(ks3.antipode * ks3.antipode == SparseMat::identity(6));
    CHECK_FALSE(ks3.algebra.commutative());

    auto h4 = ex::sweedler_h4();
    CHECK(verify_hopf(h4).ok());
    CHECK_FALSE(h4.antipode * h4.antipode == SparseMat::identity(4));
    CHECK(h4.antipode_inv * h4.antipode == SparseMat::identity(4));
}

TEST_CASE("verify_hopf catches a broken antipode")
{
    auto h = ex::group_algebra(ex::cyclic_group(3));
    h.antipode = SparseMat::identity(3);
    h.antipode_inv = SparseMat::identity(3);
    auto r = verify_hopf(h);
    REQUIRE_FALSE(r.ok());
    CHECK(r.first_failure()->name == "antipode left");
    CHECK(r.first_failure()->witness == "basis (1)");
}

TEST_CASE("verify_comodule_algebra examples")
{
    auto h = ex::sweedler_h4();
    CHECK(verify_comodule_algebra(regular_comodule_algebra(h)).ok());
    CHECK(verify_comodule_algebra(ex::gset_comodule_algebra(ex::s3_on_three_points())).ok());
    CHECK(verify_comodule_algebra(trivial_comodule_algebra(ex::truncated_polynomial(2), h)).ok());

    // Coaction with the group legs reversed is not coassociative for a non-abelian group.
    auto ca = ex::gset_comodule_algebra(ex::s3_on_three_points());
    auto s3 = ex::symmetric_group3();
    SparseMat inv(6, 6);
    for (std::size_t g = 0; g < 6; ++g) inv.set_column(g, unit_vec(s3.inverse[g]));
    ca.coaction = kron(SparseMat::identity(3), inv) * ca.coaction;
    CHECK_FALSE(verify_comodule_algebra(ca).ok());
}

TEST_CASE("verify_module_coalgebra examples")
{
    auto h = ex::sweedler_h4();
    CHECK(verify_module_coalgebra(regular_module_coalgebra(h)).ok());

    auto r = verify_module_coalgebra(twisted_h4_action());
    REQUIRE_FALSE(r.ok());
    CHECK(r.first_failure()->name == "comult equivariant");
    CHECK_FALSE(r.first_failure()->witness.empty());

    // c.h = eps(h) c is always compatible: both sides of the comultiplication law equal eps(h) c1 (x) c2.
    SparseMat triv(4, 16);
    for (std::size_t c = 0; c < 4; ++c) {
        for (std::size_t k = 0; k < 4; ++k) triv.set_column(c * 4 + k, scaled(unit_vec(c), h.epsilon(unit_vec(k))));
    }
    CHECK(verify_module_coalgebra(ModuleCoalgebra{h.coalgebra, h, triv}).ok());
}

TEST_CASE("group algebra and function algebra are dual")
{
    for (const auto& g : {ex::cyclic_group(2), ex::cyclic_group(4), ex::symmetric_group3()}) {
        auto kg = ex::group_algebra(g);
        auto fg = ex::function_hopf(g);
        CHECK(verify_hopf(kg).ok());
        CHECK(verify_hopf(fg).ok());
        // <delta_k, g h> = <Delta delta_k, g (x) h> in the dual bases.
        CHECK(fg.coalgebra.comult == kg.algebra.mult.transpose());
        CHECK(kg.coalgebra.comult == fg.algebra.mult.transpose());
    }
}
