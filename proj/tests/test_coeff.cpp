#include <catch2/catch_amalgamated.hpp>

#include "kfun/coeff.hpp"

#include <random>

using namespace kfun;

namespace {

TPoly one_plus_beta(const TPoly& v, const Profile& p) { return TPoly(1, p) + TPoly::beta(p) * v; }

} // namespace

TEST_CASE("d_lambda examples")
{
    Profile p = Profile::make(4);
    Alphabet b = alphabet_b(kNumB, p);
    CHECK(d_lambda(StrictPartition({1}), b, p) == TPoly(1, p));
    CHECK(d_lambda(StrictPartition({3, 1}), b, p) == one_plus_beta(b[0], p) * one_plus_beta(b[1], p));
    Alphabet zero = alphabet_b_prefix(kNumB, 0, p);
    CHECK(d_lambda(StrictPartition({4, 2, 1}), zero, p) == TPoly(1, p));
    CHECK_THROWS_AS(d_lambda(StrictPartition({4}), prefix(b, 2), p), std::invalid_argument);
}

TEST_CASE("generalized binomials")
{
    CHECK(gen_binom(-1, 3) == Rational(-1));
    CHECK(gen_binom(-2, 2) == Rational(3));
    CHECK(gen_binom(3, 5) == Rational(0));
    CHECK(gen_binom(0, 0) == Rational(1));
}

TEST_CASE("jt_coefficient examples")
{
    Profile p = Profile::make(5);
    Alphabet b = alphabet_b(kNumB, p), c = alphabet_c(kNumC, p);
    for (auto& la : strict_partitions_upto(5)) CHECK(jt_coefficient(la, la, b, b, p) == TPoly(1, p));
    CHECK(jt_coefficient(StrictPartition({1}), StrictPartition({2}), b, c, p) == ominus(b[0], c[0]));
    CHECK(jt_coefficient(StrictPartition({3}), StrictPartition({2}), b, c, p).is_zero());
    CHECK(jt_coefficient(StrictPartition({3, 1}), StrictPartition({4, 2}), b, c, p).is_zero() == false);
    CHECK(jt_coefficient(StrictPartition({2, 1}), StrictPartition({3}), b, c, p).is_zero());
}

TEST_CASE("non-equivariant determinants are the specializations")
{
    Profile p = Profile::make(3);
    Alphabet b = alphabet_b(kNumB, p), zero = alphabet_b_prefix(kNumB, 0, p);
    for (auto& mu : strict_partitions_upto(5))
        for (auto& la : strict_subpartitions(mu)) {
            if (la.length() != mu.length() || la.empty()) continue;
            CHECK(jt_coefficient_gq_noneq(la, mu, b, p) == jt_coefficient(la, mu, b, zero, p));
            CHECK(jt_coefficient_gp_noneq(mu, la, b, p) == jt_coefficient(la, mu, zero, b, p));
        }
}

TEST_CASE("double grothendieck examples")
{
    Profile p = Profile::make(4);
    Alphabet b = alphabet_b(kNumB, p), c = alphabet_c(kNumC, p);
    CHECK(double_grothendieck(Permutation::simple(1), 2, p) == ominus(b[0], c[0]));
    CHECK(double_grothendieck(Permutation::identity(), 2, p) == TPoly(1, p));
    CHECK(double_grothendieck(Permutation::identity(), 3, p) == TPoly(1, p));
    GrothendieckTable t(p);
    for (int r = 1; r <= 2; ++r)
        for (auto& la : partitions_in_box(r, 2))
            CHECK(t.get(grassmannian(la, r).perm) == factorial_grothendieck(la, r, prefix(b, r), c, p));
    CHECK_THROWS_AS(double_grothendieck(Permutation::longest(4), 3, p), std::invalid_argument);
}

TEST_CASE("pi operators satisfy the 0-Hecke relations")
{
    Profile p = Profile::make(3);
    std::mt19937_64 rng(7);
    for (int inst = 0; inst < 4; ++inst) {
        TPoly f(0, p);
        for (int t = 0; t < 4; ++t) {
            TPoly m(Rational(long(rng() % 7) - 3), p);
            for (int j = 1; j <= 4; ++j) m *= TPoly::b(j, p).pow(int(rng() % 2));
            f += m * TPoly::c(1 + int(rng() % 2), p);
        }
        for (int i = 1; i <= 3; ++i) CHECK(pi_op(i, pi_op(i, f)) == -TPoly::beta(p) * pi_op(i, f));
        CHECK(pi_op(1, pi_op(2, pi_op(1, f))) == pi_op(2, pi_op(1, pi_op(2, f))));
        CHECK(pi_op(1, pi_op(3, f)) == pi_op(3, pi_op(1, f)));
    }
}

TEST_CASE("groth_coefficient examples")
{
    Profile p = Profile::make(4);
    Alphabet b = alphabet_b(kNumB, p), c = alphabet_c(kNumC, p);
    GrothendieckTable t(p);
    for (int r = 1; r <= 3; ++r) CHECK(groth_coefficient(staircase(r), staircase(r), t) == TPoly(1, p));
    CHECK(groth_coefficient(StrictPartition({1}), StrictPartition({2}), t) == ominus(b[0], c[0]));
    for (auto& mu : strict_subpartitions(StrictPartition({4, 2}))) {
        if (mu.length() != 2 || !mu.contains(staircase(2))) continue;
        CHECK(groth_coefficient(staircase(2), mu, t) == t.get(quotient_perm(staircase(2), mu)));
        CHECK(groth_coefficient(staircase(2), mu, t) == jt_coefficient(staircase(2), mu, b, c, p));
    }
    CHECK_THROWS_AS(groth_coefficient(StrictPartition({3}), StrictPartition({3, 1}), t), ScopeError);
    CHECK_THROWS_AS(groth_coefficient(StrictPartition({3, 2}), StrictPartition({3, 1}), t), ScopeError);
}

// the two-term expression holds at (3,1) but not at (4,2), where la - delta_2 has two corners
TEST_CASE("two-term formula on the diagonal")
{
    Profile p = Profile::make(3);
    Alphabet b = alphabet_b(kNumB, p), c = alphabet_c(kNumC, p);
    GrothendieckTable t(p);
    StrictPartition la({3, 1});
    CHECK(jt_coefficient(la, la, b, b, p) == TPoly(1, p));
    CHECK(groth_coefficient(la, la, t) == jt_coefficient(la, la, b, c, p));

    StrictPartition ka({4, 2});
    TPoly be = TPoly::beta(p);
    Permutation s1 = Permutation::simple(1), s3 = Permutation::simple(3);
    TPoly full = TPoly(1, p) + be * t.get(s1) + be * t.get(s3) + be * be * t.get(s1 * s3);
    CHECK(jt_coefficient(ka, ka, b, c, p) == full);
    CHECK(groth_coefficient(ka, ka, t) != full);
}

TEST_CASE("solved coefficients agree with the determinant")
{
    Profile p = Profile::make(3);
    Alphabet b = alphabet_b(kNumB, p), c = alphabet_c(kNumC, p);
    for (Fam f : {Fam::GQ, Fam::GP}) {
        auto C = solve_coefficients(f, StrictPartition({2}), b, c, p);
        CHECK(C.at(StrictPartition({1})) == ominus(b[0], c[0]));
        CHECK(C.at(StrictPartition({2})) == jt_coefficient(StrictPartition({2}), StrictPartition({2}), b, c, p));
        auto D = solve_coefficients(f, StrictPartition({3, 1}), b, b, p);
        for (auto& [la, v] : D) CHECK(v == TPoly(la == StrictPartition({3, 1}) ? 1 : 0, p));
    }
    CHECK_THROWS_AS(solve_coefficients(Fam::gq, StrictPartition({2}), b, c, p), std::invalid_argument);
}

TEST_CASE("contour identity examples")
{
    Profile p = Profile::make(3);
    Alphabet b = alphabet_b(kNumB, p), c = alphabet_c(kNumC, p);
    // uw/(1-uw) has no u^1 w^0 term, and h_1 of empty alphabets is 0
    CHECK(contour_lhs(0, 0, 1, 0, 0, b, c, p).is_zero());
    CHECK(contour_rhs(0, 0, 1, 0, 0, b, c, p).is_zero());
    CHECK(contour_lhs(0, 0, 1, 1, 0, b, c, p) == TPoly(1, p));
    CHECK(contour_rhs(0, 0, 1, 1, 0, b, c, p) == TPoly(1, p));
    Profile p0 = Profile::make(0);
    Alphabet b0 = alphabet_b(kNumB, p0), c0 = alphabet_c(kNumC, p0);
    for (int m = 1; m <= 3; ++m)
        for (int n = 0; n <= 3; ++n)
            for (int d = 0; d <= 2; ++d)
                CHECK(contour_lhs(0, 0, m, n, d, b0, c0, p0) == supersym_h(m + d - n, prefix(b0, n), prefix(c0, m - 1), p0));
    // every retained index l - n + m + d is negative
    Profile p1 = Profile::make(1);
    Alphabet b1 = alphabet_b(kNumB, p1), c1 = alphabet_c(kNumC, p1);
    CHECK(contour_rhs(2, 1, 1, 4, 0, b1, c1, p1).is_zero());
    CHECK(contour_lhs(2, 1, 1, 4, 0, b1, c1, p1).is_zero());
}

TEST_CASE("factorial grothendieck determinant examples")
{
    Profile p = Profile::make(4);
    Alphabet b = alphabet_b(kNumB, p), c = alphabet_c(kNumC, p);
    CHECK(factorial_groth_jt_det(Partition(), 2, b, c, p) == TPoly(1, p));
    CHECK(factorial_groth_jt_det(Partition({1}), 1, b, c, p) == ominus(b[0], c[0]));
    CHECK(factorial_groth_jt_det(Partition({2, 1}), 2, b, c, p) == factorial_grothendieck(Partition({2, 1}), 2, prefix(b, 2), c, p));
    CHECK_THROWS_AS(factorial_groth_jt_det(Partition({1, 1}), 1, b, c, p), std::invalid_argument);
}
