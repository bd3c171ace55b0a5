#include <catch2/catch_amalgamated.hpp>

#include "kfun/gfun.hpp"

using namespace kfun;

namespace {

Profile px(int K, int D) { return Profile::make(K, D); }

TPoly gp_staircase(int r, const Profile& p)
{
    TPoly f(1, p);
    for (int i = 1; i <= r; ++i) {
        f *= TPoly::x(i, p);
        for (int j = i + 1; j <= r; ++j) f *= oplus(TPoly::x(i, p), TPoly::x(j, p));
    }
    return f;
}

TPoly gq_staircase(int r, const Profile& p)
{
    TPoly f(1, p);
    for (int i = 1; i <= r; ++i)
        for (int j = i; j <= r; ++j) f *= oplus(TPoly::x(i, p), TPoly::x(j, p));
    return f;
}

} // namespace

TEST_CASE("series basics")
{
    Profile p = Profile::make(3, INF, 4);
    TSeries s = factor_binom(-1, p);
    CHECK(s.coeff({2}) == TPoly::beta(p).pow(2));
    CHECK(s.coeff({4}).is_zero());
    auto cp = cross_product(2, CrossKind::ZOminus, 3, {3, 3});
    detail::BVec one(4);
    one[0] = 1;
    int t[2] = {0, 0};
    CHECK(cp.m.at(detail::pack(t, 2)) == one);
    Alphabet b = alphabet_b(2, p);
    TSeries e = factor_equiv_pole(b, 3, p);
    CHECK(e.coeff({2}) == complete_sym(2, b, p));
}

TEST_CASE("single row coefficients")
{
    Profile p = Profile::make(4, 6);
    TSeries g = single_row(Fam::GQ, alphabet_x(2, p), 6, p);
    for (int m = 1; m <= 4; ++m) CHECK(g.coeff({-m}) == TPoly::beta(p).pow(m) * Rational(m % 2 ? -1 : 1));
    CHECK(g.coeff({0}) == TPoly(1, p));
    Profile py = Profile::make(3, INF, 5);
    TSeries q = single_row(Fam::gq, alphabet_y(1, py), 8, py);
    CHECK(q.coeff({0}) == TPoly(1, py));
    CHECK(q.coeff({1}).beta_part(0) == TPoly::y(1, py) * Rational(2));
}

TEST_CASE("staircase closed forms by symmetrization")
{
    Profile p = px(4, INF);
    for (int r = 1; r <= 3; ++r) {
        Alphabet b = alphabet_b(r + 1, p);
        CHECK(direct_sym(Fam::GP, staircase(r), r, b, p) == gp_staircase(r, p));
        CHECK(direct_sym(Fam::GQ, staircase(r), r, b, p) == gq_staircase(r, p));
    }
    CHECK(direct_sym(Fam::GQ, {}, 2, {}, p) == TPoly(1, p));
    CHECK_THROWS(direct_sym(Fam::GQ, {2, 1}, 1, alphabet_b(2, p), p));
}

TEST_CASE("extraction matches symmetrization")
{
    Profile p = px(3, 5);
    Alphabet b = alphabet_b(4, p);
    for (auto& la : strict_partitions_upto(4)) {
        int n = la.length() + 1;
        for (Fam f : {Fam::GP, Fam::GQ}) {
            TPoly d = direct_sym(f, la, n, b, p);
            TPoly e = extract_fn(f, la, b, alphabet_x(n, p), p);
            CHECK(d == e);
            TPoly d0 = direct_sym(f, la, n, alphabet_b_prefix(4, 0, p), p);
            CHECK(d0 == extract_fn(f, la, std::nullopt, alphabet_x(n, p), p));
        }
    }
}

TEST_CASE("gq extraction examples")
{
    Profile p = Profile::make(3, INF, 4);
    Alphabet y = alphabet_y(3, p);
    TPoly g1 = extract_fn(Fam::gq, {1}, std::nullopt, y, p);
    TSeries s = single_row(Fam::gq, y, 7, p);
    CHECK(g1 == s.coeff({1}));
    CHECK(g1.beta_part(0) == (y[0] + y[1] + y[2]) * Rational(2));
    Alphabet zero = alphabet_b_prefix(4, 0, p);
    CHECK(extract_fn(Fam::gq, {2, 1}, zero, y, p) == extract_fn(Fam::gq, {2, 1}, std::nullopt, y, p));
}

TEST_CASE("factorial grothendieck")
{
    Profile p = Profile::make(4);
    Alphabet c = alphabet_c(6, p);
    CHECK(factorial_grothendieck({}, 2, alphabet_x(2, p), c, p) == TPoly(1, p));
    CHECK(factorial_grothendieck({1}, 1, alphabet_x(1, p), c, p) == ominus(TPoly::x(1, p), c[0]));
    for (int r = 1; r <= 3; ++r)
        for (auto& la : partitions_in_box(r, 2))
            CHECK(factorial_grothendieck(la, r, alphabet_x(r, p), c, p) == factorial_grothendieck_sym(la, r, p, c));
}

TEST_CASE("cauchy kernel small cases")
{
    Profile p = Profile::make(3, 3, 3);
    CHECK(cauchy_kernel(0, 2, p) == TPoly(1, p));
    CHECK(cauchy_kernel(2, 0, p) == TPoly(1, p));
    TPoly k = cauchy_kernel(1, 1, p);
    TPoly x = TPoly::x(1, p), y = TPoly::y(1, p), be = TPoly::beta(p);
    // (1 - xbar y)/(1 - x y) = 1 + 2xy - beta x^2 y + ...
    Mono m = Mono::single(var_x(1)) + Mono::single(var_y(1));
    CHECK(k.coeff(m) == 2);
    CHECK(k.coeff(m + Mono::single(var_x(1)) + Mono::single(kBeta)) == -1);
}

TEST_CASE("vanishing at b_mu")
{
    Profile p = Profile::make(3);
    Alphabet b = alphabet_b(6, p);
    CHECK(extract_fn(Fam::GQ, {2}, b, bmu_alphabet({1}, b), p).is_zero());
    CHECK(!extract_fn(Fam::GP, {1}, b, bmu_alphabet({1}, b), p).is_zero());
    TPoly f = direct_sym(Fam::GQ, {2}, 2, b, p);
    CHECK(evaluate_at_bmu(f, 2, {1}, b).is_zero());
    CHECK(evaluate_at_bmu(TPoly(1, p), 2, {2, 1}, b) == TPoly(1, p));
    CHECK_THROWS(evaluate_at_bmu(f, 1, {2, 1}, b));
}

TEST_CASE("T operators")
{
    Profile p = Profile::make(3, INF, 3);
    for (int i = 1; i <= 3; ++i) CHECK(operator_T(i, TPoly(1, p), 2, RootType::B).is_zero());
    TPoly g = build_by_T({1}, Fam::gq, 2, p);
    TPoly e = extract_fn(Fam::gq, {1}, alphabet_b(3, p), alphabet_y(2, p), p);
    CHECK(g == e);
    TPoly f = g * TPoly::b(2, p) + TPoly::y(1, p);
    for (int i = 0; i <= 2; ++i) {
        TPoly t = operator_T(i, f, 2, RootType::B);
        CHECK(operator_T(i, t, 2, RootType::B) == TPoly::beta(p) * t);
    }
}
