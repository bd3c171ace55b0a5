#include <catch2/catch_amalgamated.hpp>

#include "kfun/conjecture.hpp"

#include <random>

using namespace kfun;

namespace {

FockState vac(const Profile& p) { return FockState::vacuum(p); }

ModeOp random_linear(std::mt19937_64& rng, const Profile& p)
{
    ModeOp o{"r", {}, {}};
    for (int t = 0; t < 3; ++t) {
        int m = int(rng() % 7) - 3;
        TPoly c(Rational(long(rng() % 9) - 4, long(rng() % 3) + 1), p);
        if (rng() % 2) c += TPoly::beta(p) * Rational(long(rng() % 5) - 2);
        o.add(m, c);
    }
    return o;
}

} // namespace

TEST_CASE("phi action examples")
{
    Profile p = Profile::make(2);
    CHECK(apply_phi(-1, vac(p)).is_zero());
    CHECK(apply_phi(0, apply_phi(0, vac(p))) == vac(p));
    FockState one = apply_phi(1, vac(p));
    CHECK(apply_phi(1, apply_phi(-1, one)) == one * TPoly(-2, p));
    CHECK(apply_phi(1, one).is_zero());
    CHECK_THROWS_AS(FockState::basis({1, 2}, p), std::invalid_argument);
}

TEST_CASE("anticommutation relations")
{
    Profile p = Profile::make(2);
    FockState s = FockState::basis({3, 1}, p) + FockState::basis({2, 0}, p) * TPoly::beta(p);
    for (int m = -4; m <= 4; ++m)
        for (int n = -4; n <= 4; ++n) {
            FockState ac = apply_phi(m, apply_phi(n, s)) + apply_phi(n, apply_phi(m, s));
            int want = m + n == 0 ? 2 * (m % 2 ? -1 : 1) : 0;
            CHECK(ac == s * TPoly(want, p));
        }
}

TEST_CASE("two point function")
{
    // phi_{-1} kills the vacuum; -2 sits on the other order
    CHECK(two_point(1, -1) == Rational(0));
    CHECK(two_point(-1, 1) == Rational(-2));
    CHECK(two_point(0, 0) == Rational(1));
    CHECK(two_point(3, -2) == Rational(0));
    CHECK(two_point(-2, 2) == Rational(2));
    CHECK(two_point(2, -2) == Rational(0));
    Profile p = Profile::make(1);
    for (int m = -3; m <= 3; ++m)
        for (int n = -3; n <= 3; ++n)
            CHECK(vev_direct({raw_phi(m, p), raw_phi(n, p)}, p) == TPoly(two_point(m, n), p));
}

TEST_CASE("four point vev")
{
    Profile p = Profile::make(1);
    std::vector<ModeOp> ops = {raw_phi(-2, p), raw_phi(-1, p), raw_phi(1, p), raw_phi(2, p)};
    CHECK(vev_direct(ops, p) == TPoly(-4, p));
    CHECK(vev_wick(ops, p) == TPoly(-4, p));
    std::vector<ModeOp> rev = {raw_phi(2, p), raw_phi(1, p), raw_phi(-1, p), raw_phi(-2, p)};
    CHECK(vev_direct(rev, p).is_zero());
    CHECK(vev_wick({raw_phi(0, p), raw_phi(1, p), raw_phi(-1, p)}, p).is_zero());
    CHECK(vev_direct({raw_phi(0, p)}, p).is_zero());
}

TEST_CASE("wick agrees with direct reduction")
{
    Profile p = Profile::make(2);
    std::mt19937_64 rng(11);
    for (int inst = 0; inst < 30; ++inst) {
        int r = 2 + 2 * int(rng() % 3);
        std::vector<ModeOp> ops;
        for (int i = 0; i < r; ++i) ops.push_back(random_linear(rng, p));
        CHECK(vev_wick(ops, p) == vev_direct(ops, p));
    }
    ModeOp nl{"nl", {}, TPoly(1, p)};
    CHECK_THROWS_AS(vev_wick({nl, raw_phi(0, p)}, p), std::invalid_argument);
}

TEST_CASE("mode builder examples")
{
    Profile p = Profile::make(3);
    ModeContext ctx{p, 12};
    Alphabet b = alphabet_b(kNumB, p);
    ModeOp f = mode_builder(ModeName::phi_round, 2, 0, b, ctx);
    for (int m = 2; m <= 5; ++m) {
        Rational half = 1;
        for (int t = 0; t < m - 2; ++t) half /= 2;
        CHECK(f.modes.at(m) == TPoly::beta(p).pow(m - 2) * (gen_binom(m, 2) * half));
    }
    CHECK(f.modes.size() == 4);
    for (int k : {0, -2})
        CHECK(mode_builder(ModeName::phi_square_k, 3, k, b, ctx) == mode_builder(ModeName::phi_square, 3, 0, b, ctx));
    CHECK(mode_name_from(mode_name_str(ModeName::Phi_square_kc)) == ModeName::Phi_square_kc);
    CHECK_THROWS_AS(mode_name_from("psi"), std::invalid_argument);
}

TEST_CASE("bosons and theta")
{
    Profile p = Profile::make(3);
    CHECK(apply_boson(1, vac(p)).is_zero());
    CHECK(apply_boson(3, vac(p)).is_zero());
    CHECK_FALSE(apply_boson(-1, vac(p)).is_zero());
    CHECK_THROWS_AS(apply_boson(2, vac(p)), std::invalid_argument);
    CHECK(apply_exp_theta(1, false, vac(p)) == vac(p));
    CHECK(apply_exp_theta(-1, false, vac(p)) == vac(p));
    FockState s = FockState::basis({2, 1}, p) + FockState::basis({3, 0}, p);
    CHECK(apply_exp_theta(-1, true, apply_exp_theta(1, true, s)) == s);
}

TEST_CASE("theta conjugation of modes matches the exponentials")
{
    Profile p = Profile::make(3);
    FockState s = FockState::basis({2, 1}, p) + FockState::basis({1}, p) * TPoly::beta(p);
    for (bool dual : {false, true})
        for (int sg : {1, -1})
            for (int n = -2; n <= 2; ++n) {
                ModeOp op = raw_phi(n, p);
                FockState lhs = apply_exp_theta(sg, dual, apply_op(op, apply_exp_theta(-sg, dual, s)));
                CHECK(lhs == apply_op(conjugate_theta(op, sg, dual, p), s));
            }
}

TEST_CASE("dual theta conjugation multiplies phi(beta)(z) by 1 + beta/z")
{
    Profile p = Profile::make(3);
    ModeContext ctx{p, 20};
    Alphabet b = alphabet_b(kNumB, p);
    for (int n = 0; n <= 3; ++n) {
        ModeOp lhs = conjugate_theta(mode_builder(ModeName::phi_round, n, 0, b, ctx), 1, true, p);
        ModeOp rhs = mode_builder(ModeName::phi_round, n, 0, b, ctx);
        rhs += mode_builder(ModeName::phi_round, n + 1, 0, b, ctx).scaled(TPoly::beta(p));
        ModeOp d = lhs;
        d += rhs.scaled(TPoly(-1, p));
        for (auto& [m, c] : d.modes) CHECK(c.is_zero());
        CHECK(d.modes.empty());
    }
}

TEST_CASE("state builder examples")
{
    Profile p = Profile::make(3);
    ModeContext ctx{p, 8};
    Alphabet b = alphabet_b(kNumB, p), zero = alphabet_b_prefix(kNumB, 0, p);
    CHECK(build_state({StateKind::gq, false}, StrictPartition(), b, ctx, {}) == vac(p));
    for (auto& la : strict_partitions_upto(3)) {
        CHECK(build_state({StateKind::gq, true}, la, zero, ctx, {}) == build_state({StateKind::gq, false}, la, zero, ctx, {}));
        CHECK(build_state({StateKind::GP, true}, la, b, ctx, {}).parity() == 0);
    }
}

TEST_CASE("hamiltonian vev examples")
{
    Profile py = Profile::make(2, INF, 3);
    Alphabet y = alphabet_y(2, py), b = alphabet_b(kNumB, py);
    CHECK(hamiltonian_vev(Side::y, y, vac(py), py) == TPoly(1, py));
    CHECK(fermion_function(Fam::gq, StrictPartition({1}), b, y, py, false) == extract_fn(Fam::gq, StrictPartition({1}), std::nullopt, y, py));
    Profile px = Profile::make(2, 3);
    Alphabet x = alphabet_x(2, px), bx = alphabet_b(kNumB, px);
    for (auto& la : strict_partitions_upto(3)) {
        CHECK(fermion_function(Fam::GP, la, bx, x, px, true) == extract_fn(Fam::GP, la, bx, x, px));
        CHECK(fermion_function(Fam::GQ, la, bx, x, px, true) == extract_fn(Fam::GQ, la, bx, x, px));
        CHECK(fermion_function(Fam::gq, la, b, y, py, true) == extract_fn(Fam::gq, la, b, y, py));
    }
}

TEST_CASE("duality pairing examples")
{
    Profile p = Profile::make(3);
    Alphabet b = alphabet_b(kNumB, p), c = alphabet_c(kNumC, p);
    CHECK(dual_inner(StrictPartition({1}), StrictPartition({1}), b, b, p) == TPoly(1, p));
    CHECK(dual_inner(StrictPartition({2}), StrictPartition({1}), b, b, p).is_zero());
    CHECK(dual_inner(StrictPartition({2, 1}), StrictPartition({3}), b, c, p).is_zero());
    for (auto& mu : strict_partitions_upto(4))
        for (auto& la : strict_partitions_upto(4)) {
            CHECK(dual_inner(mu, la, b, b, p) == TPoly(mu == la ? 1 : 0, p));
            CHECK(dual_inner_states(mu, la, b, c, p) == dual_inner(mu, la, b, c, p));
        }
}

TEST_CASE("conjecture harness at the empty partition")
{
    Profile p = Profile::make(3, INF, 3);
    auto rs = conjecture_suite(1, 2, p);
    REQUIRE(rs.size() == 2);
    CHECK(rs[0].inputs["lambda"] == "()");
    CHECK(rs[0].ok());
    CHECK(rs[0].extra["vev_matches"] == true);
    for (auto& r : rs) CHECK(r.ok());
    auto small = conjecture_suite(1, 2, Profile::make(4, INF, 4));
    CHECK(small[1].extra["vev_vs_reference"].contains("rows"));
}
