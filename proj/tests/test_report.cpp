#include <catch2/catch_amalgamated.hpp>

#include "kfun/suites.hpp"

using namespace kfun;

TEST_CASE("report json shape")
{
    Profile p = Profile::make(2, 3);
    TPoly x = TPoly::x(1, p);
    VerifyReport ok = compare("id", x, x, {{"lambda", "(1)"}}, p);
    auto j = to_json(ok);
    CHECK(j["status"] == "pass");
    CHECK(j["witness"].is_null());
    CHECK(j["caps"]["beta_order"] == 2);
    CHECK(j["caps"]["degree_x"] == 3);
    CHECK_FALSE(j["caps"].contains("degree_y"));
    CHECK_FALSE(j.contains("wall_time"));
    CHECK(to_json(ok, true).contains("wall_time"));

    VerifyReport bad = compare("id", x + TPoly::beta(p) * x, x, {}, p);
    CHECK(bad.status == Status::fail);
    REQUIRE(bad.witness);
    CHECK(bad.witness->monomial == mono_string((TPoly::beta(p) * x).terms().front().m));
    CHECK(bad.witness->lhs == Rational(1));
    CHECK(bad.witness->rhs == Rational(0));
    CHECK(to_json(bad)["witness"]["lhs"] == "1");
}

TEST_CASE("cap overflow becomes cap-limited, other errors propagate")
{
    Profile p = Profile::make(1);
    auto r = run_check("t", {}, p, [](VerifyReport&) { throw CapOverflow("window"); });
    CHECK(r.status == Status::cap_limited);
    CHECK(status_str(r.status) == "cap-limited");
    CHECK(r.note == "window");
    CHECK_THROWS_AS(run_check("t", {}, p, [](VerifyReport&) { throw std::out_of_range("index"); }), std::out_of_range);
}

TEST_CASE("reports sort by identity then inputs")
{
    Profile p = Profile::make(1);
    std::vector<VerifyReport> rs = {compare("b", TPoly(1, p), TPoly(1, p), {{"k", 2}}, p),
                                    compare("a", TPoly(1, p), TPoly(1, p), {{"k", 3}}, p),
                                    compare("b", TPoly(1, p), TPoly(1, p), {{"k", 1}}, p)};
    sort_reports(rs);
    CHECK(rs[0].identity == "a");
    CHECK(rs[1].inputs["k"] == 1);
    CHECK(rs[2].inputs["k"] == 2);
    CHECK(all_pass(rs));
}

TEST_CASE("worker pool keeps item order and reports errors")
{
    auto rs = detail::run_items(6, 3, [](size_t i) {
        if (i == 4) throw std::invalid_argument("boom");
        VerifyReport r;
        r.identity = std::to_string(i);
        return r;
    });
    for (size_t i = 0; i < 6; ++i) {
        if (i == 4) {
            CHECK(rs[i].identity == "error");
            CHECK(rs[i].status == Status::fail);
        } else CHECK(rs[i].identity == std::to_string(i));
    }
}

TEST_CASE("suites at small caps are deterministic and pass")
{
    SuiteConfig cfg;
    cfg.K = 1;
    cfg.max_size = 2;
    cfg.degree = 2;
    for (const char* name : {"duality", "contour", "vanishing", "knuth", "factorization"}) {
        const SuiteInfo* s = find_suite(name);
        REQUIRE(s);
        cfg.threads = 1;
        auto a = s->run(cfg);
        cfg.threads = 3;
        auto b = s->run(cfg);
        REQUIRE(a.size() == b.size());
        CHECK(all_pass(a));
        for (size_t i = 0; i < a.size(); ++i) CHECK(to_json(a[i]).dump() == to_json(b[i]).dump());
    }
    CHECK(find_suite("nope") == nullptr);
}

TEST_CASE("randomized and symbolic coincidence agree on status")
{
    SuiteConfig cfg;
    cfg.K = 2;
    cfg.mu_max = StrictPartition({3, 2});
    auto sym = suite_coincidence(cfg);
    cfg.randomized = true;
    cfg.seed = 5;
    auto rnd = suite_coincidence(cfg);
    REQUIRE(sym.size() == rnd.size());
    for (size_t i = 0; i < sym.size(); ++i) {
        CHECK(sym[i].inputs["lambda"] == rnd[i].inputs["lambda"]);
        CHECK(sym[i].status == rnd[i].status);
    }
}
