#include <catch2/catch_amalgamated.hpp>

#include "kfun/combinat.hpp"

using namespace kfun;

TEST_CASE("strict partitions parse and validate")
{
    CHECK(StrictPartition::parse("3,1").parts == std::vector<int>{3, 1});
    CHECK(StrictPartition::parse("").empty());
    CHECK_THROWS(StrictPartition::parse("2,2"));
    CHECK_THROWS(StrictPartition::parse("1,2"));
    CHECK(Partition({3, 1, 0, 0}).parts == std::vector<int>{3, 1});
    CHECK(strict_partitions_upto(6).size() == 1 + 1 + 1 + 2 + 2 + 3 + 4);
}

TEST_CASE("contents and weyl action examples")
{
    StrictPartition la{5, 3, 1};
    for (int c = 1; c <= 5; ++c) CHECK(content(Box{1, c}) == c - 1);
    CHECK(weyl_act(0, {}) == StrictPartition{1});
    CHECK(weyl_act(1, {2}) == StrictPartition{1});
    CHECK(weyl_act(1, {1}) == StrictPartition{2});
    CHECK(weyl_act(6, la) == la);
    CHECK(weyl_act(3, la) == StrictPartition{5, 4, 1});
}

TEST_CASE("weyl action is an involution")
{
    for (auto& la : strict_partitions_upto(6))
        for (int i = 0; i <= 7; ++i) CHECK(weyl_act(i, weyl_act(i, la)) == la);
}

TEST_CASE("w_lambda words")
{
    CHECK(w_lambda({1}) == CoxeterWordB{0});
    CHECK(w_lambda({2, 1}) == CoxeterWordB{0, 1, 0});
    CHECK(w_lambda({}).empty());
    for (auto& la : strict_partitions_upto(6)) {
        auto w = w_lambda(la);
        CHECK(int(w.size()) == la.size());
        CHECK(act_word(w, {}) == la);
        CHECK(signed_perm_of_word(w).length() == la.size());
    }
}

TEST_CASE("braid relations as actions")
{
    for (auto& la : strict_partitions_upto(6)) {
        CHECK(act_word({0, 1, 0, 1}, la) == act_word({1, 0, 1, 0}, la));
        for (int i = 1; i <= 5; ++i) {
            CHECK(act_word({i, i + 1, i}, la) == act_word({i + 1, i, i + 1}, la));
            for (int j = i + 2; j <= 7; ++j) CHECK(act_word({i, j}, la) == act_word({j, i}, la));
        }
        for (int j = 2; j <= 7; ++j) CHECK(act_word({0, j}, la) == act_word({j, 0}, la));
    }
}

TEST_CASE("relation of s_i to w_lambda")
{
    // s_0 w_(1) = id is lower
    CHECK(relation_of(0, {1}) == Relation::Lower);
    CHECK(relation_of(0, {}) == Relation::HigherGrassmannian);
    CHECK(relation_of(1, {}) == Relation::HigherOther);
    for (auto& la : strict_partitions_upto(5))
        for (int i = 0; i <= 5; ++i) {
            auto rel = relation_of(i, la);
            auto mu = weyl_act(i, la);
            if (rel == Relation::Lower) CHECK(mu.size() == la.size() - 1);
            if (rel == Relation::HigherGrassmannian) CHECK(mu.size() == la.size() + 1);
            if (rel == Relation::HigherOther) CHECK(mu == la);
        }
}

TEST_CASE("permutations")
{
    auto p = Permutation::parse("2,1,3");
    CHECK(p == Permutation::simple(1));
    CHECK(p.length() == 1);
    CHECK(Permutation::longest(4).length() == 6);
    for (auto& w : all_perms(4)) {
        CHECK(perm_of_word(w.reduced_word()) == w);
        CHECK(perm_of_word(w.reduced_word(false)) == w);
        CHECK(int(w.reduced_word().size()) == w.length());
        CHECK((w * w.inverse()) == Permutation::identity());
    }
}

TEST_CASE("grassmannian permutations")
{
    auto g = grassmannian(Partition{3, 1, 0}, 3);
    CHECK(g.word == std::vector<int>{2, 5, 4, 3});
    CHECK(grassmannian(Partition{}, 3).perm == Permutation::identity());
    CHECK(grassmannian(Partition{1}, 1).perm == Permutation::simple(1));
    CHECK_THROWS(grassmannian(Partition{2, 1}, 1));
    for (int r = 1; r <= 3; ++r)
        for (auto& la : partitions_in_box(r, 3)) {
            auto gp = grassmannian(la, r);
            CHECK(gp.perm.r_grassmannian(r));
            CHECK(gp.perm.length() == la.size());
            CHECK(int(gp.word.size()) == la.size());
        }
}

TEST_CASE("quotient permutations")
{
    CHECK(quotient_perm(staircase(3), staircase(3)) == Permutation::identity());
    CHECK(quotient_perm({1}, {2}) == Permutation::simple(1));
    CHECK(quotient_perm({2, 1}, {3, 1}) == Permutation::simple(2));
    CHECK_THROWS(quotient_perm({3, 1}, {2, 1}));
    auto subs = strict_subpartitions({5, 4, 3, 2, 1});
    int checked = 0;
    for (auto& la : subs)
        for (auto& mu : subs) {
            int r = la.length();
            if (mu.length() != r || !mu.contains(la) || !la.contains(staircase(r))) continue;
            CHECK(quotient_perm(la, mu).length() == mu.size() - la.size());
            ++checked;
        }
    CHECK(checked > 20);
}

TEST_CASE("rightmost bottom content")
{
    for (int r = 1; r <= 4; ++r) {
        CHECK(!rightmost_bottom_content(staircase(r), r).has_value());
        std::vector<int> p = staircase(r).parts;
        p[0] += 1;
        CHECK(rightmost_bottom_content(StrictPartition(p), r) == r);
    }
    // box (2,3) of the shifted diagram has content 1
    CHECK(rightmost_bottom_content({3, 2}, 2) == 1);
    CHECK_THROWS(rightmost_bottom_content({3}, 2));
}
