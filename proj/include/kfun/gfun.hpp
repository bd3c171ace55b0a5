#pragma once

#include "combinat.hpp"
#include "ring.hpp"
#include "series.hpp"

#include <optional>

namespace kfun {

enum class Fam { GP, GQ, gp, gq };

inline std::string fam_name(Fam f)
{
    switch (f) {
    case Fam::GP: return "GP";
    case Fam::GQ: return "GQ";
    case Fam::gp: return "gp";
    case Fam::gq: return "gq";
    }
    return "?";
}

inline Fam fam_from_name(const std::string& s)
{
    if (s == "GP") return Fam::GP;
    if (s == "GQ") return Fam::GQ;
    if (s == "gp") return Fam::gp;
    if (s == "gq") return Fam::gq;
    throw std::invalid_argument("unknown family: " + s);
}

inline bool x_side(Fam f) { return f == Fam::GP || f == Fam::GQ; }

struct SymFunc {
    TPoly f;
    Fam family = Fam::GQ;
    StrictPartition la;
    int nvars = 0;
    bool equivariant = false;
};

inline int slot_of(const TPoly& v)
{
    if (v.size() != 1 || v.terms()[0].c != 1 || v.terms()[0].m.total() != 1) return -1;
    for (int s = 0; s < kNumVars; ++s)
        if (v.terms()[0].m.get(s)) return s;
    return -1;
}

// b-alphabet of length n, padded with zeros when fewer symbolic parameters are wanted
inline Alphabet alphabet_b_prefix(int n, int symbolic, const Profile& p = Profile::unbounded())
{
    Alphabet a;
    for (int i = 1; i <= n; ++i) a.push_back(i <= symbolic ? TPoly::b(i, p) : TPoly(0, p));
    return a;
}

// ---- symmetrization ----

inline TPoly direct_sym(Fam fam, const StrictPartition& la, int n, const Alphabet& b, const Profile& prof)
{
    if (!x_side(fam)) throw std::invalid_argument("direct_sym: GP or GQ only");
    int r = la.length();
    if (n < r) throw std::invalid_argument("direct_sym: fewer variables than parts");
    if (n > kNumX) throw std::invalid_argument("direct_sym: too many variables");
    int d = n * (n - 1) / 2;
    int D = prof.caps[FX];
    Profile pn = D >= INF ? prof : prof.with_cap(FX, D + d);
    TPoly be = TPoly::beta(pn);
    Alphabet x = alphabet_x(n, pn), bb;
    for (auto& e : b) bb.push_back(e.with_profile(pn));
    TPoly N(1, pn);
    for (int i = 0; i < r; ++i) {
        N *= factorial_power(x[i], la.parts[i], bb, fam == Fam::GQ ? PowerKind::GQ : PowerKind::GP);
        for (int j = i + 1; j < n; ++j) N *= oplus(x[i], x[j]) * (TPoly(1, pn) + be * x[j]);
    }
    for (int i = r; i < n; ++i)
        for (int j = i + 1; j < n; ++j) N *= x[i] - x[j];
    TPoly A(0, pn);
    for (auto& w : all_perms(n)) {
        std::vector<std::pair<int, int>> mv;
        for (int i = 1; i <= n; ++i)
            if (w(i) != i) mv.push_back({var_x(i), var_x(w(i))});
        TPoly t = rename_vars(N, mv);
        if (w.length() & 1) A -= t;
        else A += t;
    }
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) A = divide_by_linear(A, var_x(i), var_x(j));
    Rational fact = 1;
    for (int k = 2; k <= n - r; ++k) fact *= k;
    return (A * Rational(1 / fact)).with_profile(prof);
}

// ---- single-row generating series ----

// prod_j (1+beta x_j)(1+beta x_j + x_j w)/(1 - x_j w), w-exponents up to wmax
inline TSeries gx_core(const Alphabet& xs, int wmax, const Profile& p)
{
    TPoly be = TPoly::beta(p), one(1, p);
    TSeries s = TSeries::constant(1, one, p);
    for (auto& x : xs) {
        if (x.is_zero()) continue;
        TSeries f(1, p, {0}, {wmax});
        f.add({0}, (one + be * x) * (one + be * x));
        f.add({1}, (one + be * x) * x);
        TSeries g(1, p, {0}, {wmax});
        for (int k = 0; k <= wmax; ++k) g.add({k}, x.pow(k));
        s = s * f * g;
    }
    return s.set_prec({wmax});
}

// GQ(u^{-1}) or GP(u^{-1}) as a series in w = u^{-1}; window [-K, wmax]
inline TSeries single_row_x(Fam fam, const Alphabet& xs, int wmax, const Profile& p)
{
    TSeries core = gx_core(xs, wmax + 2 * p.K, p);
    auto geo = [&](Rational base, Rational scale) {
        TSeries g(1, p, {-p.K}, {INF});
        for (int k = 0; k <= p.K; ++k) {
            g.add({-k}, TPoly::beta(p).pow(k) * scale);
            scale *= base;
        }
        return g;
    };
    TSeries s = geo(-1, 1) * core;
    if (fam == Fam::GP) s = geo(Rational(-1, 2), Rational(1, 2)) * s;
    return s;
}

// gq(z) or gp(z) as a series in z; window [0, zmax]
inline TSeries single_row_y(Fam fam, const Alphabet& ys, int zmax, const Profile& p)
{
    TSeries s = TSeries::constant(1, TPoly(1, p), p);
    for (auto& y : ys)
        if (!y.is_zero()) s = s * factor_kernel(y, zmax, p);
    s.set_prec({zmax});
    if (fam == Fam::gq) return s;
    // (2 + beta z)^{-1} (gq(z) + beta z + 1)
    TSeries t = s + TSeries::monomial({1}, TPoly::beta(p), p) + TSeries::constant(1, TPoly(1, p), p);
    TSeries inv(1, p, {0}, {INF});
    Rational c(1, 2);
    for (int k = 0; k <= p.K; ++k) {
        inv.add({k}, TPoly::beta(p).pow(k) * c);
        c *= Rational(-1, 2);
    }
    return (inv * t).set_prec({zmax});
}

inline TSeries single_row(Fam fam, const Alphabet& vars, int window, const Profile& p)
{
    return x_side(fam) ? single_row_x(fam, vars, window, p) : single_row_y(fam, vars, window, p);
}

// gq_n^{(k)}(y|b) for n in [lo, hi]
inline Factor1 gq_shifted(int k, const Alphabet& b, const std::vector<TPoly>& gqn, int lo, int hi, const Profile& p)
{
    Alphabet bk(b.begin(), b.begin() + std::min<int>(k, int(b.size())));
    if (k > int(b.size())) throw std::invalid_argument("gq_shifted: alphabet too short");
    TPoly pref(1, p);
    for (int l = 0; l + 1 < k; ++l) pref *= TPoly(1, p) + TPoly::beta(p) * b[l];
    int top = int(gqn.size()) - 1;
    std::vector<TPoly> h;
    for (int j = 0; j <= top - lo; ++j) h.push_back(complete_sym(j, bk, p));
    Factor1 f;
    f.lo = lo;
    for (int n = lo; n <= hi; ++n) {
        TPoly s(0, p);
        for (int j = std::max(0, -n); n + j <= top; ++j) s += h[j] * gqn[n + j];
        f.c.push_back(s * pref);
    }
    return f;
}

// ---- coefficient extraction ----

struct ExtractOptions {
    CrossKind xcross = CrossKind::UOminus;
    CrossKind ycross = CrossKind::ZOminus;
};

// x-side: vars are the x-alphabet (possibly specialized, e.g. b_mu); b may be empty (non-equivariant)
// y-side: vars are the y-alphabet; needs a finite y-cap
inline TPoly extract_fn(Fam fam, const StrictPartition& la, const std::optional<Alphabet>& b, const Alphabet& vars,
                        const Profile& prof, const ExtractOptions& opt = {})
{
    int r = la.length(), K = prof.K;
    if (!prof.bounded()) throw std::invalid_argument("extract_fn: beta order must be finite");
    if (r == 0) return TPoly(1, prof);
    if (x_side(fam)) {
        // total degree in (x, b) is at most |la| + K
        int D = la.size() + K;
        std::vector<Factor1> S;
        for (int i = 0; i < r; ++i) {
            int li = la.parts[i];
            TSeries s = single_row_x(fam, vars, D + li - 1, prof);
            if (b) {
                if (int(b->size()) < li - 1) throw std::invalid_argument("extract_fn: alphabet too short");
                for (int j = 0; j < li - 1; ++j) {
                    TSeries f(1, prof, {0}, {INF});
                    TPoly u = unit_inverse(TPoly(1, prof) + TPoly::beta(prof) * (*b)[j]);
                    f.add({0}, u);
                    f.add({1}, -(*b)[j] * u);
                    s = s * f;
                }
            }
            S.push_back(Factor1::from_series(s, -K, D + li - 1));
        }
        return extract_product(S, la.parts, opt.xcross, prof);
    }
    int D = prof.caps[FY];
    if (D >= INF) throw std::invalid_argument("extract_fn: y-side needs a finite degree cap");
    if (fam == Fam::gq) {
        // y + beta - (b, c) = |la| bounds the parameter degree
        int bcap = b ? std::max(0, D + K - la.size()) : 0;
        Profile pb = prof.with_cap(FB, std::min(prof.caps[FB], bcap)).with_cap(FC, std::min(prof.caps[FC], bcap));
        TSeries g = single_row_y(Fam::gq, vars, D + K, pb);
        std::vector<TPoly> gqn;
        for (int n = 0; n <= D + K; ++n) gqn.push_back(g.coeff({n}));
        std::vector<Factor1> S;
        for (int i = 0; i < r; ++i) {
            if (b) S.push_back(gq_shifted(la.parts[i], *b, gqn, -bcap, D + K, pb));
            else S.push_back(Factor1{0, gqn});
        }
        return extract_product(S, la.parts, opt.ycross, pb).with_profile(prof);
    }
    if (b) throw std::invalid_argument("extract_fn: equivariant gp has no extraction formula");
    // subset-sum formula
    TSeries g = single_row_y(Fam::gq, vars, D + K, prof);
    TPoly total(0, prof);
    for (uint32_t mask = 0; mask < (1u << r); ++mask) {
        std::vector<Factor1> S;
        std::vector<int> tgt;
        TPoly outside(1, prof);
        int a = 0;
        for (int i = 0; i < r; ++i) {
            if (mask & (1u << i)) {
                ++a;
                // gq(z) / ((2 + beta z)(1 + beta z)^{i - kappa}), i and kappa 1-based
                int shift = (i + 1) - a;
                TSeries f = g * factor_binom(-shift, prof);
                TSeries inv(1, prof, {0}, {INF});
                Rational c(1, 2);
                for (int k = 0; k <= K; ++k) {
                    inv.add({k}, TPoly::beta(prof).pow(k) * c);
                    c *= Rational(-1, 2);
                }
                f = f * inv;
                S.push_back(Factor1::from_series(f, 0, D + K));
                tgt.push_back(la.parts[i]);
            } else {
                int li = la.parts[i];
                Rational c = Rational(1, 2);
                for (int k = 0; k < li; ++k) c *= Rational(-1, 2);
                outside *= TPoly::beta(prof).pow(li) * c;
            }
        }
        if (outside.is_zero()) continue;
        TPoly t = extract_product(S, tgt, opt.ycross, prof) * outside;
        if ((r - a) & 1) total -= t;
        else total += t;
    }
    return total;
}

// ---- factorial Grothendieck polynomials ----

inline TPoly factorial_grothendieck(const Partition& la, int r, const Alphabet& x, const Alphabet& c, const Profile& prof)
{
    if (la.length() > r) throw std::invalid_argument("factorial_grothendieck: length exceeds r");
    if (int(x.size()) != r) throw std::invalid_argument("factorial_grothendieck: need r variables");
    if (r == 0) return TPoly(1, prof);
    Matrix M(r, std::vector<TPoly>(r));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            TPoly xi = x[i].truncated(prof);
            M[i][j] = factorial_power(xi, la.part(j + 1) + r - (j + 1), c, PowerKind::A) *
                      (TPoly(1, prof) + TPoly::beta(prof) * xi).pow(j);
        }
    TPoly num = determinant(M);
    std::vector<int> slots;
    for (auto& v : x) slots.push_back(slot_of(v));
    bool plain = std::find(slots.begin(), slots.end(), -1) == slots.end();
    if (plain) {
        for (int i = 0; i < r; ++i)
            for (int j = i + 1; j < r; ++j) num = divide_by_linear(num, slots[i], slots[j]);
        return num.with_profile(num.profile());
    }
    TPoly V(1, prof);
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) V *= x[i] - x[j];
    return exact_divide(num, V);
}

// symmetrization definition of G_la(x_1..x_r | c)
inline TPoly factorial_grothendieck_sym(const Partition& la, int r, const Profile& prof, const Alphabet& c)
{
    Alphabet x = alphabet_x(r, prof);
    TPoly N(1, prof);
    TPoly be = TPoly::beta(prof);
    for (int i = 0; i < r; ++i) {
        N *= factorial_power(x[i], la.part(i + 1) + r - (i + 1), c, PowerKind::A);
        for (int j = i + 1; j < r; ++j) N *= TPoly(1, prof) + be * x[j];
    }
    TPoly A(0, prof);
    for (auto& w : all_perms(r)) {
        std::vector<std::pair<int, int>> mv;
        for (int i = 1; i <= r; ++i)
            if (w(i) != i) mv.push_back({var_x(i), var_x(w(i))});
        TPoly t = rename_vars(N, mv);
        if (w.length() & 1) A -= t;
        else A += t;
    }
    for (int i = 1; i <= r; ++i)
        for (int j = i + 1; j <= r; ++j) A = divide_by_linear(A, var_x(i), var_x(j));
    return A;
}

// ---- Cauchy kernel ----

inline TPoly cauchy_kernel(int nx, int my, const Profile& prof)
{
    if (prof.caps[FX] >= INF || prof.caps[FY] >= INF) throw std::invalid_argument("cauchy_kernel: caps required");
    int kmax = std::min(prof.caps[FX], prof.caps[FY]);
    TPoly out(1, prof), one(1, prof), be = TPoly::beta(prof);
    for (int i = 1; i <= nx; ++i) {
        TPoly x = TPoly::x(i, prof);
        TPoly xinv = unit_inverse(one + be * x);
        for (int j = 1; j <= my; ++j) {
            TPoly xy = x * TPoly::y(j, prof);
            TPoly geo(0, prof);
            for (int k = 0; k <= kmax; ++k) geo += xy.pow(k);
            out *= (one + xy * xinv) * geo;
        }
    }
    return out;
}

// Omega(b|y) = prod_j (1 - bbar y_j)/(1 - b y_j)
inline TPoly omega_factor(const TPoly& b, int my, const Profile& prof)
{
    if (prof.caps[FY] >= INF) throw std::invalid_argument("omega_factor: y cap required");
    TPoly out(1, prof), one(1, prof);
    TPoly bbar = oneg(b.truncated(prof));
    for (int j = 1; j <= my; ++j) {
        TPoly y = TPoly::y(j, prof);
        TPoly geo(0, prof);
        for (int k = 0; k <= prof.caps[FY]; ++k) geo += (b * y).pow(k);
        out *= (one - bbar * y) * geo;
    }
    return out;
}

// substitute x = b_mu (x_i -> 0 beyond the length)
inline TPoly evaluate_at_bmu(const TPoly& f, int nvars, const StrictPartition& mu, const Alphabet& b)
{
    if (nvars < mu.length()) throw std::invalid_argument("evaluate_at_bmu: too few variables");
    Substitution s;
    for (int i = 1; i <= nvars; ++i) {
        if (i <= mu.length()) {
            if (mu.part(i) > int(b.size())) throw std::invalid_argument("evaluate_at_bmu: alphabet too short");
            s.push_back({var_x(i), b[mu.part(i) - 1]});
        } else s.push_back({var_x(i), TPoly(0)});
    }
    return substitute(f, s);
}

inline Alphabet bmu_alphabet(const StrictPartition& mu, const Alphabet& b)
{
    Alphabet a;
    for (int p : mu.parts) a.push_back(b.at(p - 1));
    return a;
}

// ---- divided-difference operators ----

enum class RootType { B, C };

inline TPoly ominus_b1_sub(const Profile& p) { return oneg(TPoly::b(1, p)); }

// s_i on b-parameters only
inline TPoly swap_b(const TPoly& f, int i) { return swap_vars(f, var_b(i), var_b(i + 1)); }

// x-side: D_i f; for i = 0 the active variable count drops by one
inline TPoly demazure_D(int i, const TPoly& f, int nx, RootType type, int* nx_out = nullptr)
{
    Profile p = f.profile();
    TPoly one(1, p), be = TPoly::beta(p);
    if (p.caps[FX] < INF || p.caps[FB] < INF) throw std::invalid_argument("demazure_D: x and b must be uncapped");
    if (i >= 1) {
        if (nx_out) *nx_out = nx;
        TPoly bi = TPoly::b(i, p), bj = TPoly::b(i + 1, p);
        // c = b_i (-) b_{i+1}; D f = (s f - (1 + beta c) f)/c
        TPoly c = ominus(bi, bj);
        TPoly num = swap_b(f, i) - (one + be * c) * f;
        return divide_by_linear(num * (one + be * bj), var_b(i), var_b(i + 1));
    }
    if (nx < 1) throw std::invalid_argument("demazure_D: no spare x slot");
    if (nx_out) *nx_out = nx - 1;
    TPoly nb = ominus_b1_sub(p);
    TPoly sf = substitute(f, {{var_x(nx), nb}, {var_b(1), nb}});
    TPoly fr = set_zero(f, {var_x(nx)});
    TPoly c = type == RootType::B ? nb : oplus(nb, nb);
    TPoly num = sf - (one + be * c) * fr;
    // divide by (-)b_1 = -b_1/(1+beta b_1)
    TPoly q = divide_by_var(num * (-(one + be * TPoly::b(1, p))), var_b(1));
    if (type == RootType::C) q = q * unit_inverse(TPoly(2, p) + be * nb);
    return q;
}

// y-side: T_i f
inline TPoly operator_T(int i, const TPoly& f, int my, RootType type)
{
    Profile p = f.profile();
    TPoly one(1, p), be = TPoly::beta(p);
    if (p.caps[FB] < INF) throw std::invalid_argument("operator_T: b must be uncapped");
    if (i >= 1) {
        TPoly num = swap_b(f, i) - f;
        // c = b_{i+1} (-) b_i = (b_{i+1} - b_i)/(1 + beta b_i)
        return divide_by_linear(num * (one + be * TPoly::b(i, p)), var_b(i + 1), var_b(i));
    }
    TPoly b1 = TPoly::b(1, p);
    TPoly sf = omega_factor(b1, my, p) * substitute(f, {{var_b(1), oneg(b1)}});
    TPoly q = divide_by_var(sf - f, var_b(1));
    if (type == RootType::C) q = q * unit_inverse(TPoly(2, p) + be * b1);
    return q;
}

inline TPoly build_by_T(const StrictPartition& la, Fam fam, int my, const Profile& p)
{
    if (x_side(fam)) throw std::invalid_argument("build_by_T: gp or gq only");
    RootType type = fam == Fam::gp ? RootType::C : RootType::B;
    CoxeterWordB w = w_lambda(la);
    TPoly f(1, p);
    for (auto it = w.rbegin(); it != w.rend(); ++it) f = operator_T(*it, f, my, type);
    return f;
}

} // namespace kfun
