#include <catch2/catch_amalgamated.hpp>

#include "kfun/pfaff.hpp"

#include <random>

using namespace kfun;

TEST_CASE("pfaffian small cases")
{
    Profile p = Profile::unbounded();
    SkewMatrix A(2, p);
    A.set(0, 1, TPoly::x(1, p));
    CHECK(pfaffian(A) == TPoly::x(1, p));
    CHECK(A.get(1, 0) == -TPoly::x(1, p));

    SkewMatrix B(4, p);
    B.set(0, 1, TPoly::x(1, p));
    B.set(2, 3, TPoly::y(1, p));
    CHECK(pfaffian(B) == TPoly::x(1, p) * TPoly::y(1, p));
    CHECK(pfaffian(SkewMatrix(0, p)) == TPoly(1));
    CHECK_THROWS_AS(pfaffian(SkewMatrix(3, p)), std::invalid_argument);
    CHECK_THROWS_AS(B.set(1, 1, TPoly(1)), std::invalid_argument);
}

TEST_CASE("pfaffian squared is the determinant")
{
    std::mt19937_64 rng(3);
    Profile p = Profile::unbounded();
    for (int n : {2, 4, 6}) {
        SkewMatrix A(n, p);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                TPoly v(Rational(long(rng() % 11) - 5), p);
                if (rng() % 2) v += TPoly::x(1 + int(rng() % 2), p);
                A.set(i, j, v);
            }
        TPoly pf = pfaffian(A);
        CHECK(pf * pf == determinant(A.dense()));
    }
}

TEST_CASE("cross factor coefficients")
{
    Profile p = Profile::make(4);
    for (int i = 1; i <= 3; ++i)
        for (int j = i + 1; j <= 4; ++j) {
            CHECK(a_coeff(i, j, 0, 0, p) == TPoly(1, p));
            CHECK(a_coeff(i, j, 1, -1, p).is_zero());
            CHECK(a_coeff(i, j, -2, 1, p).is_zero());
        }
    // beta = 0: (z_i - z_j)/(z_i + z_j) = 1 + 2 sum_{a>=1} (-s)^a, s = z_j/z_i
    Profile p0 = Profile::make(0);
    for (int q = 0; q <= 4; ++q)
        for (int pp = -q; pp <= 3; ++pp) {
            Rational want = 0;
            if (pp == -q) want = q == 0 ? 1 : (q % 2 ? -2 : 2);
            CHECK(a_coeff(1, 2, pp, q, p0) == TPoly(want, p0));
        }
    auto t = a_coeffs(1, 3, 3, 3, p);
    CHECK(t.a.at({0, 0}) == TPoly(1, p));
    CHECK_THROWS_AS(a_coeffs(2, 2, 1, 1, p), std::invalid_argument);
    CHECK_THROWS_AS(a_coeff(1, 2, 0, 0, Profile::unbounded()), std::invalid_argument);
}

TEST_CASE("cross factor column q = 0 against a one-variable series")
{
    // at z_j = 0 the factor is (1 + beta z_i)^{1-i}
    Profile p = Profile::make(4);
    for (int i = 1; i <= 3; ++i)
        for (int pp = 0; pp <= 4; ++pp)
            CHECK(a_coeff(i, i + 1, pp, 0, p) == TPoly::beta(p).pow(pp) * gen_binom(1 - i, pp));
}

TEST_CASE("knuth extraction examples")
{
    Profile p = Profile::make(3);
    Factor1 one{0, {TPoly(1, p)}};
    StrictPartition la({2, 1});
    auto k = knuth_sides(la, {one, one}, p);
    CHECK(k.pfaffian_side == k.extraction_side);
    CHECK(k.extraction_side == extract_product({one, one}, la.parts, CrossKind::UMinus, p));

    Profile px = Profile::make(3, 4);
    TSeries s = single_row_x(Fam::GP, alphabet_x(2, px), 8, px);
    Factor1 g = Factor1::from_series(s, -3, 8);
    auto kg = knuth_sides(la, {g, g}, px);
    CHECK_FALSE(kg.extraction_side.is_zero());
    CHECK(kg.pfaffian_side == kg.extraction_side);
    CHECK_THROWS_AS(knuth_sides(StrictPartition({3, 2, 1}), {g, g, g}, px), std::invalid_argument);
}

TEST_CASE("pfaffian formula for gq")
{
    Profile p = Profile::make(3, INF, 4);
    Alphabet y = alphabet_y(3, p), b = alphabet_b(kNumB, p);
    for (auto& la : strict_partitions_upto(4, 3)) {
        CHECK(gq_pfaffian(la, std::nullopt, y, p) == extract_fn(Fam::gq, la, std::nullopt, y, p));
        CHECK(gq_pfaffian(la, b, y, p) == extract_fn(Fam::gq, la, b, y, p));
    }
    CHECK(gq_pfaffian(StrictPartition(), b, y, p) == TPoly(1, p));
}

TEST_CASE("gq pfaffian beta-degree zero slice")
{
    Profile p = Profile::make(0, INF, 5);
    Alphabet y = alphabet_y(3, p);
    for (auto& la : strict_partitions_upto(5, 4))
        CHECK(gq_pfaffian(la, std::nullopt, y, p) == extract_fn(Fam::gq, la, std::nullopt, y, p));
}

TEST_CASE("stated bounds suffice without b")
{
    Profile p = Profile::make(3, INF, 5);
    Alphabet y = alphabet_y(3, p);
    for (auto& la : strict_partitions_upto(5, 4))
        CHECK(gq_pfaffian(la, std::nullopt, y, p, {0}) == gq_pfaffian(la, std::nullopt, y, p, {3}));
}
