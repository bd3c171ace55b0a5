#include "kfun/kfun.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace kfun;
using nlohmann::json;

namespace {

enum Exit { ok = 0, failed = 1, usage = 2, cap_overflow = 3, internal = 4 };

struct Output {
    std::string format = "json";
    std::string path;
};

void emit(const Output& out, const json& j, const std::string& text)
{
    std::string s = out.format == "text" ? text : j.dump(2) + "\n";
    if (out.path.empty()) {
        std::cout << s;
        return;
    }
    std::ofstream f(out.path);
    if (!f) throw std::runtime_error("cannot write " + out.path);
    f << s;
}

std::string report_text(const VerifyReport& r)
{
    std::string s = status_str(r.status) + "  " + r.identity + " " + r.inputs.dump();
    if (r.witness) s += "  witness " + r.witness->monomial + ": " + r.witness->lhs.get_str() + " vs " + r.witness->rhs.get_str();
    if (!r.note.empty()) s += "  (" + r.note + ")";
    return s + "\n";
}

json reports_json(std::vector<VerifyReport> rs, bool timings)
{
    sort_reports(rs);
    json arr = json::array();
    size_t p = 0, f = 0, c = 0;
    for (auto& r : rs) {
        arr.push_back(to_json(r, timings));
        (r.status == Status::pass ? p : r.status == Status::fail ? f : c)++;
    }
    return {{"summary", {{"pass", p}, {"fail", f}, {"cap_limited", c}}}, {"reports", arr}};
}

std::string reports_text(std::vector<VerifyReport> rs)
{
    sort_reports(rs);
    std::string s;
    for (auto& r : rs) s += report_text(r);
    return s;
}

int exit_for(const std::vector<VerifyReport>& rs)
{
    bool cap = false;
    for (auto& r : rs) {
        if (r.status == Status::fail) return failed;
        if (r.status == Status::cap_limited) cap = true;
    }
    return cap ? cap_overflow : ok;
}

Alphabet b_alphabet(int bvars, const Profile& p) { return alphabet_b_prefix(kNumB, bvars, p); }

void add_output(CLI::App* c, Output& out)
{
    c->add_option("--format", out.format)->check(CLI::IsMember({"json", "text"}));
    c->add_option("--output,--report", out.path, "write to this file instead of stdout");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"kfun: factorial GP/GQ and dual gp/gq functions, truncated in beta"};
    app.require_subcommand(1);

    int K = 4, D = 5, nvars = 3, bvars = 0, max_size = -1, instances = -1, threads = threads_from_env(), widen = -1;
    uint64_t seed = 1;
    bool equivariant = false, randomized = false, timings = false;
    std::string family, partition, route = "extract", lambda, mu, mu_max, routes = "jt,groth,solve", check = "extraction", suite;
    Output out;

    auto* compute = app.add_subcommand("compute", "compute one function as a truncated polynomial");
    compute->add_option("family", family)->required()->check(CLI::IsMember({"GP", "GQ", "gp", "gq"}));
    compute->add_option("--partition", partition)->required();
    compute->add_option("--xvars,--yvars,--vars", nvars)->check(CLI::Range(0, kNumX));
    compute->add_option("--bvars", bvars, "symbolic b parameters; 0 gives the non-equivariant function")->check(CLI::Range(0, kNumB));
    compute->add_option("--beta-order", K)->check(CLI::NonNegativeNumber);
    compute->add_option("--degree", D)->check(CLI::NonNegativeNumber);
    compute->add_option("--route", route)->check(CLI::IsMember({"extract", "vev", "pfaffian", "t-word", "cauchy", "symmetrize"}));
    add_output(compute, out);

    auto* verify = app.add_subcommand("verify", "run an identity suite");
    std::vector<std::string> names;
    for (auto& s : suite_registry()) names.push_back(s.name);
    names.push_back("cap-stability");
    verify->add_option("suite", suite)->required()->check(CLI::IsMember(names));
    verify->add_option("--beta-order", K);
    verify->add_option("--degree", D);
    verify->add_option("--max-size", max_size);
    verify->add_option("--vars", nvars);
    verify->add_option("--mu-max", mu_max);
    verify->add_option("--instances", instances);
    verify->add_flag("--randomized", randomized, "evaluate b and c at random rationals");
    verify->add_option("--seed", seed);
    verify->add_option("--threads", threads)->check(CLI::PositiveNumber);
    verify->add_flag("--timings", timings, "include wall times (output is then not reproducible)");
    add_output(verify, out);

    auto* vev = app.add_subcommand("vev", "fermionic vacuum expectation value against extraction");
    vev->add_option("--family", family)->required()->check(CLI::IsMember({"GP", "GQ", "gp", "gq"}));
    vev->add_option("--partition", partition)->required();
    vev->add_flag("--equivariant", equivariant);
    vev->add_option("--vars", nvars);
    vev->add_option("--beta-order", K);
    vev->add_option("--degree", D);
    add_output(vev, out);

    auto* conj = app.add_subcommand("conjecture", "conjectural gp vacuum expectation value against two references");
    conj->add_option("--max-size", max_size);
    conj->add_option("--yvars,--vars", nvars);
    conj->add_option("--beta-order", K);
    conj->add_option("--degree", D);
    conj->add_flag("--timings", timings);
    add_output(conj, out);

    auto* pf = app.add_subcommand("pfaffian-gq", "Pfaffian formula for gq");
    pf->add_option("--partition", partition)->required();
    pf->add_flag("--equivariant", equivariant);
    pf->add_option("--yvars,--vars", nvars);
    pf->add_option("--beta-order", K);
    pf->add_option("--degree", D);
    pf->add_option("--widen", widen, "window beyond q <= la_j, p <= la_i; -1 uses the b-degree cap");
    pf->add_option("--check-against", check)->check(CLI::IsMember({"extraction", "none"}));
    add_output(pf, out);

    auto* co = app.add_subcommand("coeff", "expansion coefficient by several routes");
    co->add_option("--lambda", lambda)->required();
    co->add_option("--mu", mu)->required();
    co->add_option("--routes", routes, "comma list of jt, groth, solve, solve-gp");
    co->add_option("--beta-order", K);
    co->add_flag("--randomized", randomized);
    co->add_option("--seed", seed);
    add_output(co, out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }

    try {
        if (*compute) {
            Fam fam = fam_from_name(family);
            StrictPartition la = StrictPartition::parse(partition);
            bool xs = x_side(fam);
            Profile p = xs ? Profile::make(K, D) : Profile::make(K, INF, D);
            Alphabet vars = xs ? alphabet_x(nvars, p) : alphabet_y(nvars, p);
            Alphabet b = b_alphabet(bvars, p);
            std::optional<Alphabet> bb;
            if (bvars > 0) bb = b;
            TPoly v;
            if (route == "extract") v = extract_fn(fam, la, bb, vars, p);
            else if (route == "vev") v = fermion_function(fam, la, b, vars, p, bvars > 0);
            else if (route == "pfaffian") {
                if (fam != Fam::gq) throw std::invalid_argument("the pfaffian route computes gq only");
                v = gq_pfaffian(la, bb, vars, p);
            } else if (route == "t-word") {
                if (xs) throw std::invalid_argument("the t-word route computes gp or gq only");
                v = build_by_T(la, fam, nvars, p);
                if (bvars < kNumB) v = set_zero(v, detail::b_slots_from(bvars + 1));
            } else if (route == "cauchy") {
                if (fam != Fam::gp) throw std::invalid_argument("the cauchy route computes gp only");
                auto nus = strict_subpartitions(la);
                // the solve needs distinct points b_{nu_i}, so unused slots are zeroed afterwards
                v = gp_by_cauchy(nus, alphabet_b(kNumB, p), nvars, p).at(la);
                if (bvars < kNumB) v = set_zero(v, detail::b_slots_from(bvars + 1));
            } else {
                if (!xs) throw std::invalid_argument("the symmetrize route computes GP or GQ only");
                v = direct_sym(fam, la, nvars, b, p);
            }
            json j = {{"family", family}, {"partition", la.str()}, {"route", route}, {"vars", nvars}, {"bvars", bvars},
                      {"caps", caps_json(p)}, {"value", to_json(v)}, {"text", v.to_string()}};
            emit(out, j, v.to_string() + "\n");
            return ok;
        }
        if (*verify) {
            SuiteConfig cfg;
            // only explicitly given flags override the suite defaults
            if (verify->count("--beta-order")) cfg.K = K;
            if (verify->count("--degree")) cfg.degree = D;
            if (verify->count("--vars")) cfg.nvars = nvars;
            cfg.max_size = max_size;
            cfg.instances = instances;
            if (!mu_max.empty()) cfg.mu_max = StrictPartition::parse(mu_max);
            cfg.randomized = randomized;
            cfg.seed = seed;
            cfg.threads = threads;
            auto rs = suite == "cap-stability" ? suite_stability(cfg) : find_suite(suite)->run(cfg);
            for (auto& r : rs) r.seed = seed;
            json j = reports_json(rs, timings);
            j["suite"] = suite;
            emit(out, j, reports_text(rs));
            return exit_for(rs);
        }
        if (*vev) {
            Fam fam = fam_from_name(family);
            StrictPartition la = StrictPartition::parse(partition);
            bool xs = x_side(fam);
            Profile p = xs ? Profile::make(K, D) : Profile::make(K, INF, D);
            Alphabet vars = xs ? alphabet_x(nvars, p) : alphabet_y(nvars, p), b = alphabet_b(kNumB, p);
            json in = {{"family", family}, {"lambda", la.str()}, {"equivariant", equivariant}, {"vars", nvars}};
            TPoly value;
            VerifyReport r = run_check("vev", in, p, [&](VerifyReport& rep) {
                if (fam == Fam::gp && equivariant) {
                    // only conjectural for gp; compare against the T-word reference
                    value = fermion_function(fam, la, b, vars, p, true);
                    set_compare(rep, build_by_T(la, Fam::gp, nvars, p), value);
                    rep.note = "conjectural";
                    return;
                }
                std::optional<Alphabet> bb;
                if (equivariant) bb = b;
                value = fermion_function(fam, la, b, vars, p, equivariant);
                set_compare(rep, extract_fn(fam, la, bb, vars, p), value);
            });
            json j = to_json(r);
            j["value"] = to_json(value);
            emit(out, j, report_text(r));
            if (fam == Fam::gp && equivariant) return r.status == Status::cap_limited ? cap_overflow : ok;
            return exit_for({r});
        }
        if (*conj) {
            int N = max_size >= 0 ? max_size : 4;
            Profile p = Profile::make(K, INF, D);
            auto rs = conjecture_suite(N, nvars, p);
            json j = reports_json(rs, timings);
            size_t match = 0;
            for (auto& r : rs)
                if (r.extra.value("vev_matches", false)) ++match;
            j["vev_matches"] = match;
            j["partitions"] = rs.size();
            emit(out, j, reports_text(rs));
            // the reference routes must agree; the vev comparison never affects the exit code
            for (auto& r : rs)
                if (r.status == Status::cap_limited) return cap_overflow;
            return all_pass(rs) ? ok : failed;
        }
        if (*pf) {
            StrictPartition la = StrictPartition::parse(partition);
            Profile p = Profile::make(K, INF, D);
            Alphabet y = alphabet_y(nvars, p), b = alphabet_b(kNumB, p);
            std::optional<Alphabet> bb;
            if (equivariant) bb = b;
            json in = {{"lambda", la.str()}, {"equivariant", equivariant}, {"yvars", nvars}, {"widen", widen}};
            TPoly value;
            VerifyReport r = run_check("pfaffian-gq", in, p, [&](VerifyReport& rep) {
                value = gq_pfaffian(la, bb, y, p, {widen});
                if (check == "extraction") set_compare(rep, extract_fn(Fam::gq, la, bb, y, p), value);
            });
            json j = to_json(r);
            j["value"] = to_json(value);
            emit(out, j, check == "extraction" ? report_text(r) : value.to_string() + "\n");
            return exit_for({r});
        }
        if (*co) {
            StrictPartition la = StrictPartition::parse(lambda), m = StrictPartition::parse(mu);
            Profile p = Profile::make(K);
            Alphabet b = alphabet_b(kNumB, p), c = alphabet_c(kNumC, p);
            std::optional<Substitution> at;
            if (randomized) {
                auto [bv, cv] = detail::random_points(seed, p);
                at = detail::point_substitution(bv, cv);
                b = bv;
                c = cv;
            }
            std::vector<std::string> rl;
            for (size_t s = 0, e; s <= routes.size(); s = e + 1) {
                e = routes.find(',', s);
                if (e == std::string::npos) e = routes.size();
                rl.push_back(routes.substr(s, e - s));
            }
            json in = {{"lambda", la.str()}, {"mu", m.str()}, {"routes", routes}, {"mode", randomized ? "randomized" : "symbolic"}};
            json values = json::object();
            VerifyReport r = run_check("coincidence", in, p, [&](VerifyReport& rep) {
                std::optional<TPoly> first;
                for (auto& name : rl) {
                    TPoly v;
                    if (name == "jt") v = jt_coefficient(la, m, b, c, p);
                    else if (name == "groth") {
                        GrothendieckTable t(p, randomized ? std::optional<Alphabet>(c) : std::nullopt);
                        v = groth_coefficient(la, m, t);
                        if (at) v = substitute(v, *at).with_profile(p);
                    } else if (name == "solve" || name == "solve-gp") {
                        auto C = solve_coefficients(name == "solve" ? Fam::GQ : Fam::GP, m, b, c, p);
                        auto it = C.find(la);
                        v = it == C.end() ? TPoly(0, p) : it->second;
                    } else throw std::invalid_argument("unknown route " + name);
                    values[name] = to_json(v);
                    if (!first) first = v;
                    else if (rep.ok()) {
                        set_compare(rep, *first, v);
                        if (!rep.ok()) rep.note = rl.front() + " vs " + name;
                    }
                }
            });
            if (randomized) r.seed = seed;
            json j = to_json(r);
            j["values"] = values;
            emit(out, j, report_text(r));
            return exit_for({r});
        }
    } catch (const CapOverflow& e) {
        std::cerr << "cap overflow: " << e.what() << "\n";
        return cap_overflow;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return internal;
    }
    return ok;
}
