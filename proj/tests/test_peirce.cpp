#include <catch2/catch_amalgamated.hpp>

#include "axial/constructions.hpp"
#include "axial/peirce.hpp"

using namespace axial;

TEST_CASE("decompose") {
    SECTION("sym_jordan(2) at E11") {
        AlgebraDef a = sym_jordan(2);
        PeirceDecomposition d = decompose(a, a.basis(0));
        CHECK(d.dim_one() == 1);
        CHECK(d.dim_half() == 1);
        CHECK(d.dim_zero() == 1);
        CHECK(d.basis_half[0] == a.basis(2));
        CHECK(d.basis_zero[0] == a.basis(1));
    }

    SECTION("matsuo 3C(1/4) is incomplete with the eta eigenvector reported") {
        AlgebraDef m = matsuo_3c(Rat(1, 4));
        try {
            decompose(m, m.basis(0));
            FAIL("expected DecompositionIncomplete");
        } catch (const DecompositionIncomplete& e) {
            CHECK(e.residual_dim == 1);
            bool has_quarter = false;
            for (const auto& s : e.eigenvalues_found)
                if (s == "1/4") has_quarter = true;
            CHECK(has_quarter);
        }
    }

    SECTION("zero and non-idempotent axes are rejected") {
        AlgebraDef a = sym_jordan(2);
        CHECK_THROWS_AS(decompose(a, a.zero()), ZeroVector);
        CHECK_THROWS_AS(decompose(a, a.basis(2)), NotIdempotent);
    }
}

TEST_CASE("half_axis_check") {
    SECTION("sym_jordan(n) at E11 for n in {2,3,4}") {
        for (int n : {2, 3, 4}) {
            AlgebraDef a = sym_jordan(n);
            HalfAxisReport rep = half_axis_check(a, a.basis(0));
            CHECK(rep.is_half_axis());
            REQUIRE(rep.decomposition.has_value());
            CHECK(rep.decomposition->dim_one() == 1);
            CHECK(rep.decomposition->dim_half() == static_cast<std::size_t>(n - 1));
            CHECK(rep.decomposition->dim_zero() == static_cast<std::size_t>(n * (n - 1) / 2));
        }
    }

    SECTION("matsuo 3C(1/2) at a, with A_0 = span(-1/2 a + b + c)") {
        AlgebraDef m = matsuo_3c(Rat(1, 2));
        HalfAxisReport rep = half_axis_check(m, m.basis(0));
        REQUIRE(rep.is_half_axis());
        const auto& z = rep.decomposition->basis_zero;
        REQUIRE(z.size() == 1);
        Element expected =
            m.basis(1) + m.basis(2) - m.basis(0) * Scalar(m.field(), Rat(1, 2));
        // same line: z[0] must be a scalar multiple of expected
        bool proportional = false;
        for (std::size_t i = 0; i < 3; ++i) {
            if (expected.coords[i].is_zero()) continue;
            Scalar ratio = z[0].coords[i] / expected.coords[i];
            proportional = z[0] == expected * ratio;
            break;
        }
        CHECK(proportional);
    }

    SECTION("rank-2 idempotent of sym_jordan(3) fails the one-dimensionality flag") {
        AlgebraDef a = sym_jordan(3);
        Element e = a.basis(0) + a.basis(1);  // E11 + E22
        REQUIRE(is_idempotent(a, e));
        HalfAxisReport rep = half_axis_check(a, e);
        CHECK_FALSE(rep.is_half_axis());
        CHECK_FALSE(rep.one_dim_eigenspace_1);
    }
}

TEST_CASE("project_parts") {
    AlgebraDef a = sym_jordan(2);
    PeirceDecomposition d = certify_half_axis(a, a.basis(0));
    Scalar half(a.field(), Rat(1, 2));

    SECTION("f = 1/2 (b1+b2+b3) splits as (1/2, 1/2 b3, 1/2 b2)") {
        Element f = (a.basis(0) + a.basis(1) + a.basis(2)) * half;
        PeirceParts p = project_parts(d, f);
        CHECK(p.delta == half);
        CHECK(p.u_part == a.basis(2) * half);
        CHECK(p.z_part == a.basis(1) * half);
    }

    SECTION("the axis splits as (1, 0, 0)") {
        PeirceParts p = project_parts(d, a.basis(0));
        CHECK(p.delta == Scalar::one(a.field()));
        CHECK(p.u_part.is_zero());
        CHECK(p.z_part.is_zero());
    }

    SECTION("elements of U are fixed") {
        PeirceParts p = project_parts(d, a.basis(2));
        CHECK(p.delta.is_zero());
        CHECK(p.u_part == a.basis(2));
        CHECK(p.z_part.is_zero());
    }

    SECTION("projection is idempotent and linear") {
        Element x = a.element({Rat(3), Rat(-2, 5), Rat(7, 3)});
        PeirceParts p = project_parts(d, x);
        CHECK(x == a.basis(0) * p.delta + p.u_part + p.z_part);
        PeirceParts pu = project_parts(d, p.u_part);
        CHECK(pu.u_part == p.u_part);
        CHECK(pu.delta.is_zero());
        CHECK(pu.z_part.is_zero());
        PeirceParts pz = project_parts(d, p.z_part);
        CHECK(pz.z_part == p.z_part);
    }

    SECTION("e x = delta_x e on span(e) + A_0(e)") {
        for (const Element& x : {a.basis(0), a.basis(1), a.basis(0) + a.basis(1) * Scalar(a.field(), 3)}) {
            PeirceParts p = project_parts(d, x);
            CHECK(a.product(a.basis(0), x) == a.basis(0) * p.delta);
        }
    }
}

TEST_CASE("condition_star") {
    SECTION("sym_jordan(3) at E11 passes") {
        AlgebraDef a = sym_jordan(3);
        PeirceDecomposition d = certify_half_axis(a, a.basis(0));
        CHECK(d.dim_half() == 2);
        CHECK(d.dim_zero() == 3);
        CHECK(condition_star(a, d).pass);
    }

    SECTION("one-dimensional U is trivially symmetric") {
        AlgebraDef m = matsuo_3c(Rat(1, 2));
        PeirceDecomposition d = certify_half_axis(m, m.basis(0));
        CHECK(d.dim_half() == 1);
        CHECK(condition_star(m, d).pass);
    }

    SECTION("uncertified decompositions are rejected") {
        AlgebraDef a = sym_jordan(3);
        PeirceDecomposition d = decompose(a, a.basis(0));
        CHECK_THROWS_AS(condition_star(a, d), NotHalfAxis);
    }
}
