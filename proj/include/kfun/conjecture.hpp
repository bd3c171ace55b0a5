#pragma once

#include "fermion.hpp"
#include "report.hpp"

namespace kfun {

// gp_nu(y|b) for every nu in the downward-closed set, read off from
// prod_i Omega(b_{nu_i}|y) = sum_{la in nu} GQ_la(b_nu|b) gp_la(y|b)
inline std::map<StrictPartition, TPoly> gp_by_cauchy(const std::vector<StrictPartition>& nus, const Alphabet& b,
                                                     int my, const Profile& prof)
{
    std::vector<StrictPartition> order = nus;
    std::sort(order.begin(), order.end(),
              [](auto& a, auto& z) { return a.size() != z.size() ? a.size() < z.size() : a < z; });
    std::map<StrictPartition, TPoly> gp;
    for (auto& nu : order) {
        Alphabet pt = bmu_alphabet(nu, b);
        TPoly rhs(1, prof);
        for (auto& v : pt) rhs *= omega_factor(v, my, prof);
        for (auto& [la, g] : gp)
            if (nu.contains(la)) rhs -= extract_fn(Fam::GQ, la, b, pt, prof) * g;
        TPoly diag = extract_fn(Fam::GQ, nu, b, pt, prof);
        gp[nu] = exact_divide(rhs, diag).with_profile(prof);
    }
    return gp;
}

struct ConjectureRoutes {
    TPoly by_T, by_cauchy, vev;
};

inline nlohmann::json monomial_diff_table(const TPoly& ref, const TPoly& vev, size_t limit)
{
    nlohmann::json rows = nlohmann::json::array();
    TPoly d = ref - vev;
    for (auto& t : d.terms()) {
        if (rows.size() >= limit) break;
        rows.push_back({{"monomial", mono_string(t.m)},
                        {"reference", ref.coeff(t.m).get_str()},
                        {"vev", vev.coeff(t.m).get_str()}});
    }
    return {{"differing_monomials", d.size()}, {"reference_monomials", ref.size()}, {"rows", rows}};
}

// the two reference routes must agree; the conjectural vev is only reported
inline VerifyReport conjecture_report(const StrictPartition& la, int my, const Profile& prof, const ConjectureRoutes& r,
                                      size_t diff_limit = 200)
{
    VerifyReport rep{"conjecture", {{"lambda", la.str()}, {"yvars", my}}, caps_json(prof)};
    set_compare(rep, r.by_T, r.by_cauchy);
    if (rep.status == Status::fail) rep.note = "reference routes disagree";
    rep.extra = {{"vev_matches", r.vev == r.by_T}, {"vev_vs_reference", monomial_diff_table(r.by_T, r.vev, diff_limit)}};
    return rep;
}

// all |la| <= max_size; the Cauchy solve is shared across the set
inline std::vector<VerifyReport> conjecture_suite(int max_size, int my, const Profile& prof)
{
    auto las = strict_partitions_upto(max_size);
    int bmax = 0;
    for (auto& la : las) bmax = std::max(bmax, la.empty() ? 0 : la.parts[0]);
    Alphabet b = alphabet_b(std::max(bmax + 1, 2), prof);
    Alphabet ys = alphabet_y(my, prof);
    std::map<StrictPartition, TPoly> cauchy;
    std::vector<VerifyReport> out;
    auto t0 = std::chrono::steady_clock::now();
    try {
        cauchy = gp_by_cauchy(las, b, my, prof);
    } catch (const CapOverflow& e) {
        VerifyReport r{"conjecture", {{"max_size", max_size}}, caps_json(prof), Status::cap_limited};
        r.note = e.what();
        return {r};
    }
    double shared = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (auto& la : las) {
        auto t1 = std::chrono::steady_clock::now();
        ConjectureRoutes r{build_by_T(la, Fam::gp, my, prof), cauchy.at(la), fermion_function(Fam::gp, la, b, ys, prof, true)};
        VerifyReport rep = conjecture_report(la, my, prof, r);
        rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count() + shared / las.size();
        out.push_back(std::move(rep));
    }
    return out;
}

} // namespace kfun
