#pragma once

#include "ring.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <optional>

namespace kfun {

enum class Status { pass, fail, cap_limited };

inline std::string status_str(Status s)
{
    switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    default: return "cap-limited";
    }
}

struct Witness {
    std::string monomial;
    Rational lhs, rhs;
};

struct VerifyReport {
    std::string identity;
    nlohmann::json inputs = nlohmann::json::object();
    nlohmann::json caps = nlohmann::json::object();
    Status status = Status::pass;
    std::optional<Witness> witness;
    std::string note;
    double wall_time = 0;
    std::optional<uint64_t> seed;
    nlohmann::json extra;

    bool ok() const { return status == Status::pass; }
};

inline nlohmann::json caps_json(const Profile& p)
{
    nlohmann::json j = nlohmann::json::object();
    if (p.bounded()) j["beta_order"] = p.K;
    const char* names[] = {"x", "y", "b", "c"};
    for (int f = 0; f < 4; ++f)
        if (p.caps[f] < INF) j[std::string("degree_") + names[f]] = p.caps[f];
    return j;
}

// wall time is left out unless asked for, so that reruns serialize identically
inline nlohmann::json to_json(const VerifyReport& r, bool timings = false)
{
    nlohmann::json j;
    j["identity"] = r.identity;
    j["inputs"] = r.inputs;
    j["caps"] = r.caps;
    j["status"] = status_str(r.status);
    if (r.witness)
        j["witness"] = {{"monomial", r.witness->monomial},
                        {"lhs", r.witness->lhs.get_str()},
                        {"rhs", r.witness->rhs.get_str()}};
    else j["witness"] = nullptr;
    if (!r.note.empty()) j["note"] = r.note;
    if (r.seed) j["seed"] = *r.seed;
    if (!r.extra.is_null()) j["detail"] = r.extra;
    if (timings) j["wall_time"] = r.wall_time;
    return j;
}

// first monomial, in term order, where the two sides differ
inline std::optional<Witness> first_difference(const TPoly& lhs, const TPoly& rhs)
{
    TPoly d = lhs - rhs;
    if (d.is_zero()) return std::nullopt;
    const Mono& m = d.terms().front().m;
    return Witness{mono_string(m), lhs.coeff(m), rhs.coeff(m)};
}

inline void set_compare(VerifyReport& r, const TPoly& lhs, const TPoly& rhs)
{
    r.witness = first_difference(lhs, rhs);
    if (r.witness) r.status = Status::fail;
}

inline VerifyReport compare(const std::string& id, const TPoly& lhs, const TPoly& rhs, nlohmann::json inputs,
                            const Profile& p)
{
    VerifyReport r{id, std::move(inputs), caps_json(p)};
    set_compare(r, lhs, rhs);
    return r;
}

// runs body, timing it; an overflowing window turns into cap-limited
inline VerifyReport run_check(const std::string& id, nlohmann::json inputs, const Profile& p,
                              const std::function<void(VerifyReport&)>& body)
{
    VerifyReport r{id, std::move(inputs), caps_json(p)};
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(r);
    } catch (const CapOverflow& e) {
        r.status = Status::cap_limited;
        r.note = e.what();
    }
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline bool all_pass(const std::vector<VerifyReport>& rs)
{
    return std::all_of(rs.begin(), rs.end(), [](auto& r) { return r.ok(); });
}

inline void sort_reports(std::vector<VerifyReport>& rs)
{
    std::stable_sort(rs.begin(), rs.end(), [](auto& a, auto& b) {
        return a.identity != b.identity ? a.identity < b.identity : a.inputs.dump() < b.inputs.dump();
    });
}

} // namespace kfun
