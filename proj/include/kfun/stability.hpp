#pragma once

#include "suites.hpp"

namespace kfun {

// one quantity from a suite, recomputed at K+2 and every finite degree cap +1;
// the larger result truncated back must equal the smaller one
struct StabilityProbe {
    std::string suite;
    std::string label;
    Profile small;
    std::function<TPoly(const Profile&)> f;
};

inline Profile enlarged(const Profile& p)
{
    Profile q = p.with_K(p.K + 2);
    for (int i = 0; i < 4; ++i)
        if (q.caps[i] < INF) q.caps[i] += 1;
    return q;
}

inline std::vector<StabilityProbe> stability_probes()
{
    using SP = StrictPartition;
    std::vector<StabilityProbe> v;
    auto B = [](const Profile& p) { return alphabet_b(kNumB, p); };
    auto C = [](const Profile& p) { return alphabet_c(kNumC, p); };

    for (auto [mu, la] : {std::pair{SP({3}), SP({1})}, std::pair{SP({3, 1}), SP({2, 1})}, std::pair{SP({4, 2}), SP({2, 1})}})
        v.push_back({"duality", mu.str() + " " + la.str(), Profile::make(3),
                     [=](const Profile& p) { return dual_inner(mu, la, B(p), C(p), p); }});

    v.push_back({"cauchy", "GQ-gp sum, 2+2 variables", Profile::make(2, 3, 3), [=](const Profile& p) {
                     Alphabet x = alphabet_x(2, p), b = alphabet_b_prefix(kNumB, 2, p);
                     TPoly s(0, p);
                     for (auto& la : strict_partitions_upto(p.caps[FX] + p.K, 2))
                         s += extract_fn(Fam::GQ, la, b, x, p) * set_zero(build_by_T(la, Fam::gp, 2, p), detail::b_slots_from(3));
                     return s;
                 }});
    v.push_back({"cauchy", "GP-gq sum, 2+2 variables", Profile::make(2, 3, 3), [=](const Profile& p) {
                     Alphabet x = alphabet_x(2, p), y = alphabet_y(2, p), b = alphabet_b_prefix(kNumB, 2, p);
                     TPoly s(0, p);
                     for (auto& la : strict_partitions_upto(p.caps[FX] + p.K, 2))
                         s += extract_fn(Fam::GP, la, b, x, p) * extract_fn(Fam::gq, la, b, y, p);
                     return s;
                 }});

    for (Fam fam : {Fam::GP, Fam::GQ, Fam::gq})
        v.push_back({"vev", fam_name(fam) + " (2,1) equivariant", x_side(fam) ? Profile::make(3, 4) : Profile::make(3, INF, 4),
                     [=](const Profile& p) {
                         Alphabet vars = x_side(fam) ? alphabet_x(3, p) : alphabet_y(3, p);
                         return fermion_function(fam, SP({2, 1}), B(p), vars, p, true);
                     }});
    v.push_back({"vev", "gp (2,1)", Profile::make(3, INF, 4),
                 [=](const Profile& p) { return fermion_function(Fam::gp, SP({2, 1}), B(p), alphabet_y(3, p), p, false); }});

    for (auto la : {SP({2, 1}), SP({3, 1})})
        v.push_back({"pfaffian-gq", la.str() + " equivariant", Profile::make(3, INF, 4),
                     [=](const Profile& p) { return gq_pfaffian(la, B(p), alphabet_y(3, p), p); }});

    v.push_back({"jacobi-trudi", "c_{(2,1),(4,2)}", Profile::make(3),
                 [=](const Profile& p) { return jt_coefficient(SP({2, 1}), SP({4, 2}), B(p), C(p), p); }});
    v.push_back({"jacobi-trudi", "gq_(1) expansion sum", Profile::make(2, INF, 3), [=](const Profile& p) {
                     Alphabet y = alphabet_y(2, p);
                     TPoly s(0, p);
                     for (auto& mu : strict_partitions_upto(p.caps[FY] + p.K, 1))
                         s += jt_coefficient(SP({1}), mu, B(p), C(p), p) * extract_fn(Fam::gq, mu, C(p), y, p);
                     return s;
                 }});

    v.push_back({"coincidence", "GQ solve (4,2) at (2,1)", Profile::make(3),
                 [=](const Profile& p) { return solve_coefficients(Fam::GQ, SP({4, 2}), B(p), C(p), p).at(SP({2, 1})); }});
    v.push_back({"coincidence", "groth (2,1) in (4,2)", Profile::make(3), [=](const Profile& p) {
                     GrothendieckTable t(p);
                     return groth_coefficient(SP({2, 1}), SP({4, 2}), t);
                 }});

    v.push_back({"grothendieck-symmetry", "[2,4,1,3] in S_4", Profile::make(2),
                 [=](const Profile& p) { return double_grothendieck(Permutation({2, 4, 1, 3}), 4, p); }});
    v.push_back({"grothendieck-symmetry", "G_(2,1) in 3 variables", Profile::make(2),
                 [=](const Profile& p) { return factorial_grothendieck(Partition({2, 1}), 3, prefix(B(p), 3), C(p), p); }});

    for (auto [la, mu] : {std::pair{SP({2, 1}), SP({3, 1})}, std::pair{SP({2, 1}), SP({2, 1})}})
        v.push_back({"vanishing", "GQ " + la.str() + " at " + mu.str(), Profile::make(2),
                     [=](const Profile& p) { return extract_fn(Fam::GQ, la, B(p), bmu_alphabet(mu, B(p)), p); }});

    v.push_back({"factorization", "GQ delta_2 + (1,1)", Profile::make(2),
                 [=](const Profile& p) { return direct_sym(Fam::GQ, plus_staircase(Partition({1, 1}), 2), 2, B(p), p); }});

    v.push_back({"demazure", "D_1 GP_(2,1), type B", Profile::make(2), [=](const Profile& p) {
                     return demazure_D(1, extract_fn(Fam::GP, SP({2, 1}), B(p), alphabet_x(3, p), p), 3, RootType::B);
                 }});
    v.push_back({"demazure", "T_0 gq_(2,1), type B", Profile::make(2, INF, 4), [=](const Profile& p) {
                     return operator_T(0, extract_fn(Fam::gq, SP({2, 1}), B(p), alphabet_y(3, p), p), 3, RootType::B);
                 }});

    v.push_back({"contour", "A=1 B=-2 m=2 n=1 d=1", Profile::make(2),
                 [=](const Profile& p) { return contour_lhs(1, -2, 2, 1, 1, B(p), C(p), p); }});

    v.push_back({"knuth", "GP (2,1), 2 x-variables", Profile::make(2, 4), [=](const Profile& p) {
                     TSeries s = single_row_x(Fam::GP, alphabet_x(2, p), 8, p);
                     Factor1 g = Factor1::from_series(s, -p.K, 8);
                     return knuth_sides(SP({2, 1}), {g, g}, p).pfaffian_side;
                 }});

    v.push_back({"conjecture", "gp_(2) by T", Profile::make(3, INF, 3),
                 [=](const Profile& p) { return build_by_T(SP({2}), Fam::gp, 3, p); }});
    v.push_back({"conjecture", "gp_(2) by Cauchy", Profile::make(3, INF, 3),
                 [=](const Profile& p) { return gp_by_cauchy(strict_partitions_upto(2), B(p), 3, p).at(SP({2})); }});
    v.push_back({"conjecture", "gp_(2) vev", Profile::make(3, INF, 3),
                 [=](const Profile& p) { return fermion_function(Fam::gp, SP({2}), B(p), alphabet_y(3, p), p, true); }});
    return v;
}

inline std::vector<VerifyReport> suite_stability(const SuiteConfig& cfg)
{
    auto probes = stability_probes();
    return detail::run_items(probes.size(), cfg.threads, [&](size_t i) {
        auto& pr = probes[i];
        Profile big = enlarged(pr.small);
        nlohmann::json in = {{"suite", pr.suite}, {"quantity", pr.label}, {"enlarged_caps", caps_json(big)}};
        return run_check("cap-stability", in, pr.small, [&](VerifyReport& r) {
            set_compare(r, pr.f(big).with_profile(pr.small), pr.f(pr.small));
        });
    });
}

} // namespace kfun
