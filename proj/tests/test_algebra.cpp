#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "axial/constructions.hpp"
#include "axial/peirce.hpp"

using namespace axial;

TEST_CASE("products from structure constants") {
    AlgebraDef s2 = sym_jordan(2);
    Element b1 = s2.basis(0), b2 = s2.basis(1), b3 = s2.basis(2);

    CHECK(s2.product(b3, b3) == b1 + b2);
    CHECK(s2.product(b1, b3) == b3 * Scalar(s2.field(), Rat(1, 2)));
    CHECK(s2.product(b1, b2).is_zero());

    AlgebraDef m = matsuo_3c(Rat(1, 2));
    Element a = m.basis(0), b = m.basis(1), c = m.basis(2);
    Element expected = (a + b - c) * Scalar(m.field(), Rat(1, 4));
    CHECK(m.product(a, b) == expected);

    SECTION("product is symmetric") {
        std::mt19937_64 rng(5);
        for (int t = 0; t < 10; ++t) {
            std::vector<Rat> vc, wc;
            for (int i = 0; i < 3; ++i) {
                vc.push_back(Rat(static_cast<long>(rng() % 11) - 5));
                wc.push_back(Rat(static_cast<long>(rng() % 11) - 5));
            }
            Element v = s2.element(vc), w = s2.element(wc);
            CHECK(s2.product(v, w) == s2.product(w, v));
        }
    }
}

TEST_CASE("eval_free_poly") {
    AlgebraDef s2 = sym_jordan(2);
    Element b1 = s2.basis(0), b2 = s2.basis(1), b3 = s2.basis(2);

    SECTION("x^2 at b3") {
        Element r = eval_free_poly(s2, parse_poly("x^2"), {{VarId{"x"}, b3}});
        CHECK(r == b1 + b2);
    }

    SECTION("associator at an idempotent vanishes") {
        Element r = eval_free_poly(s2, parse_poly("[x, y, z]"),
                                   {{VarId{"x"}, b1}, {VarId{"y"}, b1}, {VarId{"z"}, b1}});
        CHECK(r.is_zero());
    }

    SECTION("four-term identity vanishes at x=b3, y=b2") {
        FreePoly f = parse_poly("4 x^2 (x y) - x^3 y - x (x^2 y) - 2 x (x (x y))");
        Element r = eval_free_poly(s2, f, {{VarId{"x"}, b3}, {VarId{"y"}, b2}});
        CHECK(r.is_zero());
    }

    SECTION("unassigned variable") {
        CHECK_THROWS_AS(eval_free_poly(s2, parse_poly("x y"), {{VarId{"x"}, b1}}),
                        UnassignedVariable);
    }

    SECTION("coefficient not reducible mod p") {
        AlgebraDef m3 = matsuo_3c(Rat(1, 2), FieldSpec::Fp(3));
        CHECK_THROWS_AS(
            eval_free_poly(m3, parse_poly("1/3 x^2"), {{VarId{"x"}, m3.basis(0)}}),
            CoefficientNotReducible);
    }

    SECTION("eval respects products on disjoint single-variable polys") {
        std::mt19937_64 rng(31);
        for (int t = 0; t < 10; ++t) {
            std::vector<Rat> vc, wc;
            for (int i = 0; i < 3; ++i) {
                vc.push_back(Rat(static_cast<long>(rng() % 7) - 3));
                wc.push_back(Rat(static_cast<long>(rng() % 7) - 3));
            }
            std::map<VarId, Element> assign{{VarId{"x"}, s2.element(vc)}, {VarId{"y"}, s2.element(wc)}};
            FreePoly f = parse_poly("x^2"), g = parse_poly("y^3");
            CHECK(eval_free_poly(s2, mul(f, g), assign) ==
                  s2.product(eval_free_poly(s2, f, assign), eval_free_poly(s2, g, assign)));
        }
    }
}

TEST_CASE("idempotents") {
    AlgebraDef s2 = sym_jordan(2);
    CHECK(is_idempotent(s2, s2.basis(0)));
    CHECK_FALSE(is_idempotent(s2, s2.basis(2)));  // b3^2 = b1 + b2 != b3

    SECTION("exhaustive search over F3 finds the Matsuo points") {
        AlgebraDef m3 = matsuo_3c(Rat(1, 2), FieldSpec::Fp(3));
        auto found = find_idempotents_exhaustive(m3);
        auto contains = [&](const Element& x) {
            for (const auto& f : found)
                if (f == x) return true;
            return false;
        };
        CHECK(contains(m3.basis(0)));
        CHECK(contains(m3.basis(1)));
        CHECK(contains(m3.basis(2)));
    }

    SECTION("budget is enforced") {
        AlgebraDef m3 = matsuo_3c(Rat(1, 2), FieldSpec::Fp(3));
        CHECK_THROWS_AS(find_idempotents_exhaustive(m3, 10), BudgetExceeded);
    }

    SECTION("search requires a finite field") {
        CHECK_THROWS_AS(find_idempotents_exhaustive(s2), Error);
    }
}

TEST_CASE("check_multilinear_on_basis") {
    AlgebraDef s2 = sym_jordan(2);

    SECTION("Jordan multilinearization passes on sym_jordan(2)") {
        FreePoly m = full_multilinearization(jordan_identity_poly());
        CHECK(check_multilinear_on_basis(s2, m).pass);
    }

    SECTION("commutativity as a multilinear identity") {
        CHECK(check_multilinear_on_basis(s2, parse_poly("x y - y x")).pass);
    }

    SECTION("non-multilinear input is rejected") {
        CHECK_THROWS_AS(check_multilinear_on_basis(s2, parse_poly("x^2")), NotMultilinear);
    }

    SECTION("witness on the perturbed fixture") {
        AlgebraDef ap = perturbed_sym_jordan2();
        FreePoly m = full_multilinearization(jordan_identity_poly());
        CheckOutcome r = check_multilinear_on_basis(ap, m);
        REQUIRE_FALSE(r.pass);
        REQUIRE(r.witness.size() == 4);
        // The failing tuples are exactly (b3,b3,b3,y); the first in
        // lexicographic order has y = b1.  (b3,b3,b3,b2) also fails, with
        // value 6 * (1/4 b3).
        Element b1 = ap.basis(0), b2 = ap.basis(1), b3 = ap.basis(2);
        CHECK(r.witness[0].second == b3);
        CHECK(r.witness[1].second == b3);
        CHECK(r.witness[2].second == b3);
        CHECK(r.witness[3].second == b1);
        REQUIRE(r.residual.has_value());
        CHECK_FALSE(r.residual->is_zero());

        std::map<VarId, Element> at_b2;
        for (std::size_t i = 0; i < 3; ++i) at_b2.insert_or_assign(r.witness[i].first, b3);
        at_b2.insert_or_assign(r.witness[3].first, b2);
        Element v = eval_free_poly(ap, m, at_b2);
        CHECK(v == b3 * Scalar(ap.field(), Rat(3, 2)));  // 6 * (1/4 b3)
    }

    SECTION("pass implies vanishing on random rational assignments") {
        FreePoly m = full_multilinearization(jordan_identity_poly());
        REQUIRE(check_multilinear_on_basis(s2, m).pass);
        std::mt19937_64 rng(404);
        auto vars = m.variables();
        for (int t = 0; t < 100; ++t) {
            std::map<VarId, Element> assign;
            for (const auto& v : vars) {
                std::vector<Rat> coords;
                for (int i = 0; i < 3; ++i)
                    coords.push_back(Rat(static_cast<long>(rng() % 9) - 4,
                                         static_cast<long>(rng() % 3) + 1));
                assign.insert_or_assign(v, s2.element(coords));
            }
            CHECK(eval_free_poly(s2, m, assign).is_zero());
        }
    }
}

TEST_CASE("holds_strictly") {
    FreePoly seed1 = parse_poly("x^2 x^2 - x x^3");
    FreePoly seed2 = parse_poly("x^3 x^2 - x x^4");

    SECTION("both seeds pass on sym_jordan(2)") {
        AlgebraDef s2 = sym_jordan(2);
        CHECK(holds_strictly(s2, seed1).pass);
        CHECK(holds_strictly(s2, seed2).pass);
    }

    SECTION("seed 1 fails with a witness on the perturbed fixture") {
        AlgebraDef ap = perturbed_sym_jordan2();
        CheckOutcome r = holds_strictly(ap, seed1);
        REQUIRE_FALSE(r.pass);
        REQUIRE(!r.witness.empty());
        // verify the witness by direct evaluation
        REQUIRE(r.residual.has_value());
        CHECK_FALSE(r.residual->is_zero());
    }

    SECTION("x - x holds trivially") {
        AlgebraDef s2 = sym_jordan(2);
        CHECK(holds_strictly(s2, parse_poly("x - x")).pass);
    }

    SECTION("Jordan implies the degree-4 seed on the Jordan examples") {
        for (AlgebraDef a : {sym_jordan(2), sym_jordan(3), spin_factor({Rat(1), Rat(1)})}) {
            REQUIRE(is_jordan(a).pass);
            CHECK(holds_strictly(a, seed1).pass);
        }
    }
}

TEST_CASE("is_jordan") {
    CHECK(is_jordan(sym_jordan(3)).pass);

    SECTION("one-dimensional idempotent algebra") {
        auto c = std::vector<std::vector<std::vector<Scalar>>>(
            1, std::vector<std::vector<Scalar>>(1, std::vector<Scalar>(1, Scalar::one(FieldSpec::Q()))));
        AlgebraDef f_e(FieldSpec::Q(), {"e"}, c);
        CHECK(is_jordan(f_e).pass);
    }

    SECTION("perturbed fixture fails at the documented tuple") {
        AlgebraDef ap = perturbed_sym_jordan2();
        CheckOutcome r = is_jordan(ap);
        REQUIRE_FALSE(r.pass);
        REQUIRE(r.witness.size() == 4);
        Element b1 = ap.basis(0), b3 = ap.basis(2);
        CHECK(r.witness[0].second == b3);
        CHECK(r.witness[1].second == b3);
        CHECK(r.witness[2].second == b3);
        CHECK(r.witness[3].second == b1);
    }
}

TEST_CASE("F_p path agrees with Q on the same structure constants") {
    FreePoly seed1 = parse_poly("x^2 x^2 - x x^3");
    AlgebraDef mq = matsuo_3c(Rat(1, 2));
    AlgebraDef m3 = matsuo_3c(Rat(1, 2), FieldSpec::Fp(3));
    CheckOutcome rq = holds_strictly(mq, seed1);
    CheckOutcome r3 = holds_strictly(m3, seed1);
    CHECK(rq.pass == r3.pass);
    CHECK(rq.pass);
}

TEST_CASE("algebra file round-trip") {
    AlgebraDef a = matsuo_3c(Rat(1, 2));
    std::ostringstream os;
    write_algebra_file(os, a);
    std::istringstream is(os.str());
    AlgebraDef b = read_algebra_file(is);
    REQUIRE(b.dim() == a.dim());
    CHECK(b.basis_labels() == a.basis_labels());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            for (std::size_t k = 0; k < a.dim(); ++k) CHECK(a.c(i, j, k) == b.c(i, j, k));

    SECTION("omitted pairs are zero and completion is symmetric") {
        std::istringstream small(
            "field F5\n"
            "dim 2\n"
            "basis p q\n"
            "products\n"
            "1 2 : 1=2/3\n");
        AlgebraDef s = read_algebra_file(small);
        CHECK(s.c(0, 0, 0).is_zero());
        CHECK(s.c(0, 1, 0) == s.c(1, 0, 0));
        CHECK(s.c(0, 1, 0) == Scalar(FieldSpec::Fp(5), Rat(2, 3)));
    }

    SECTION("bad input is rejected") {
        std::istringstream bad("field Q\ndim 2\nbasis p q\nproducts\n2 1 : 1=1\n");
        CHECK_THROWS_AS(read_algebra_file(bad), Error);
    }
}
