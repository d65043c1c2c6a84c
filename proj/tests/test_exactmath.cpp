#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "axial/constructions.hpp"
#include "axial/linalg.hpp"

using namespace axial;

TEST_CASE("field construction rejects characteristic 2 and non-primes") {
    CHECK_THROWS_AS(FieldSpec::Fp(2), CharTwo);
    CHECK_THROWS_AS(FieldSpec::Fp(9), Error);
    CHECK_THROWS_AS(FieldSpec::Fp(1), Error);
    CHECK(FieldSpec::Fp(3).p() == 3);
    CHECK(FieldSpec::Fp(97).str() == "F97");
    CHECK(FieldSpec::Q().str() == "Q");
}

TEST_CASE("scalar arithmetic is exact") {
    FieldSpec Q = FieldSpec::Q();
    Scalar a(Q, Rat(1, 3)), b(Q, Rat(2, 5));
    CHECK((a + b) == Scalar(Q, Rat(11, 15)));
    CHECK((a * b) == Scalar(Q, Rat(2, 15)));
    CHECK(a / a == Scalar::one(Q));
    CHECK((a - a).is_zero());

    FieldSpec F3 = FieldSpec::Fp(3);
    Scalar two(F3, 2);
    CHECK(two * two == Scalar::one(F3));        // 4 = 1 mod 3
    CHECK(two.inv() == two);                    // 2 * 2 = 1 mod 3
    CHECK(Scalar(F3, Rat(1, 2)) == two);        // 1/2 = 2 mod 3
    CHECK_THROWS_AS(Scalar(F3, Rat(1, 3)), CoefficientNotReducible);
    CHECK_THROWS_AS(a + two, FieldMismatch);
}

TEST_CASE("field axioms on sampled scalars") {
    std::mt19937_64 rng(12345);
    auto rand_rat = [&]() {
        long num = static_cast<long>(rng() % 41) - 20;
        long den = static_cast<long>(rng() % 19) + 1;
        return Rat(num, den);
    };
    FieldSpec Q = FieldSpec::Q();
    for (int i = 0; i < 200; ++i) {
        Scalar a(Q, rand_rat()), b(Q, rand_rat()), c(Q, rand_rat());
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        if (!a.is_zero()) CHECK(a * a.inv() == Scalar::one(Q));
    }
    FieldSpec F7 = FieldSpec::Fp(7);
    for (int i = 0; i < 200; ++i) {
        Scalar a(F7, static_cast<long>(rng() % 7)), b(F7, static_cast<long>(rng() % 7)),
            c(F7, static_cast<long>(rng() % 7));
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        if (!a.is_zero()) CHECK(a * a.inv() == Scalar::one(F7));
    }
}

TEST_CASE("kernel_basis on the spec examples") {
    FieldSpec Q = FieldSpec::Q();

    SECTION("rank-1 diagonal") {
        Mat m(Q, 2, 2);
        m.at(0, 0) = Scalar::one(Q);
        auto k = kernel_basis(m);
        REQUIRE(k.size() == 1);
        CHECK(k[0][0].is_zero());
        CHECK(k[0][1] == Scalar::one(Q));
    }

    SECTION("ad_E11 - 1/2 in sym_jordan(2)") {
        AlgebraDef a = sym_jordan(2);
        Mat ad = a.ad(a.basis(0));
        Scalar half = Scalar(Q, Rat(1, 2));
        for (std::size_t i = 0; i < 3; ++i) ad.at(i, i) -= half;
        auto k = kernel_basis(ad);
        REQUIRE(k.size() == 1);
        CHECK(k[0][0].is_zero());
        CHECK(k[0][1].is_zero());
        CHECK(k[0][2] == Scalar::one(Q));
    }

    SECTION("zero 1x1 over F3") {
        Mat m(FieldSpec::Fp(3), 1, 1);
        auto k = kernel_basis(m);
        REQUIRE(k.size() == 1);
        CHECK(k[0][0] == Scalar::one(FieldSpec::Fp(3)));
    }
}

TEST_CASE("solve_linear on the spec examples") {
    FieldSpec Q = FieldSpec::Q();

    SECTION("identity") {
        Mat m = Mat::identity(Q, 3);
        Vec b(Q, 3);
        b[0] = Scalar(Q, Rat(2, 7));
        b[2] = Scalar(Q, -5);
        auto x = solve_linear(m, b);
        REQUIRE(x.has_value());
        CHECK(*x == b);
    }

    SECTION("inconsistent rows") {
        Mat m(Q, 2, 1);
        m.at(0, 0) = Scalar::one(Q);
        m.at(1, 0) = Scalar::one(Q);
        Vec b(Q, 2);
        b[1] = Scalar::one(Q);
        CHECK_FALSE(solve_linear(m, b).has_value());
    }

    SECTION("2x = 1 over F3") {
        FieldSpec F3 = FieldSpec::Fp(3);
        Mat m(F3, 1, 1);
        m.at(0, 0) = Scalar(F3, 2);
        Vec b(F3, 1);
        b[0] = Scalar::one(F3);
        auto x = solve_linear(m, b);
        REQUIRE(x.has_value());
        CHECK((*x)[0] == Scalar(F3, 2));
    }
}

TEST_CASE("rank-nullity and exact kernels on random matrices") {
    std::mt19937_64 rng(987);
    FieldSpec Q = FieldSpec::Q();
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
        Mat m(Q, rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c)
                m.at(r, c) = Scalar(Q, Rat(static_cast<long>(rng() % 7) - 3,
                                           static_cast<long>(rng() % 4) + 1));
        auto k = kernel_basis(m);
        CHECK(rank(m) + k.size() == cols);
        for (const auto& v : k) CHECK(m.mul(v).is_zero());
        // independence: the matrix made of kernel vectors has full rank
        if (!k.empty()) {
            Mat km(Q, cols, k.size());
            for (std::size_t c = 0; c < k.size(); ++c)
                for (std::size_t r = 0; r < cols; ++r) km.at(r, c) = k[c][r];
            CHECK(rank(km) == k.size());
        }
    }
}
