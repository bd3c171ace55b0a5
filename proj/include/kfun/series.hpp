#pragma once

#include "ring.hpp"

#include <map>
#include <unordered_map>

namespace kfun {

// ---- TSeries: truncated Laurent series in r ordered variables over TPoly ----
//
// Exponents are stored in the expansion variable of each slot (v or v^{-1}).
// floor: declared lower bound of every exponent of the full series.
// prec:  coefficients are exact for exponent vectors with e_v <= prec_v for all v.

class TSeries {
public:
    using Key = std::vector<int>;

    TSeries() = default;
    TSeries(int nvars, const Profile& p, Key floor, Key prec)
        : n_(nvars), prof_(p), floor_(std::move(floor)), prec_(std::move(prec))
    {
        if (int(floor_.size()) != n_ || int(prec_.size()) != n_) throw std::invalid_argument("TSeries: bad window");
    }

    static TSeries constant(int nvars, const TPoly& c, const Profile& p)
    {
        TSeries s(nvars, p, Key(nvars, 0), Key(nvars, INF));
        s.add(Key(nvars, 0), c.truncated(p));
        return s;
    }
    static TSeries monomial(const Key& e, const TPoly& c, const Profile& p)
    {
        TSeries s(int(e.size()), p, e, Key(e.size(), INF));
        s.add(e, c.truncated(p));
        return s;
    }

    int nvars() const { return n_; }
    const Profile& profile() const { return prof_; }
    const Key& floor() const { return floor_; }
    const Key& prec() const { return prec_; }
    const std::map<Key, TPoly>& coeffs() const { return c_; }
    bool in_window(const Key& e) const
    {
        for (int v = 0; v < n_; ++v)
            if (e[v] > prec_[v]) return false;
        return true;
    }
    TSeries& set_prec(const Key& p)
    {
        for (int v = 0; v < n_; ++v) prec_[v] = std::min(prec_[v], p[v]);
        prune();
        return *this;
    }

    void add(const Key& e, const TPoly& c)
    {
        if (c.is_zero() || !in_window(e)) return;
        for (int v = 0; v < n_; ++v)
            if (e[v] < floor_[v]) throw std::logic_error("TSeries: term below declared floor");
        auto it = c_.find(e);
        if (it == c_.end()) c_.emplace(e, c);
        else {
            it->second += c;
            if (it->second.is_zero()) c_.erase(it);
        }
    }

    // coefficient; throws when the exponent lies beyond the exact window
    TPoly coeff(const Key& e) const
    {
        if (!in_window(e)) throw CapOverflow("TSeries: exponent outside retained window");
        auto it = c_.find(e);
        return it == c_.end() ? TPoly(0, prof_) : it->second;
    }

    friend TSeries operator+(const TSeries& a, const TSeries& b)
    {
        check_compat(a, b);
        Key fl(a.n_), pr(a.n_);
        for (int v = 0; v < a.n_; ++v) {
            fl[v] = std::min(a.floor_[v], b.floor_[v]);
            pr[v] = std::min(a.prec_[v], b.prec_[v]);
        }
        TSeries r(a.n_, a.prof_.meet(b.prof_), fl, pr);
        for (auto& [e, c] : a.c_) r.add(e, c.truncated(r.prof_));
        for (auto& [e, c] : b.c_) r.add(e, c.truncated(r.prof_));
        return r;
    }
    friend TSeries operator-(const TSeries& a, const TSeries& b) { return a + b * TPoly(-1); }

    friend TSeries operator*(const TSeries& a, const TPoly& s)
    {
        TSeries r(a.n_, a.prof_.meet(s.profile()), a.floor_, a.prec_);
        for (auto& [e, c] : a.c_) r.add(e, c * s);
        return r;
    }

    friend TSeries operator*(const TSeries& a, const TSeries& b)
    {
        check_compat(a, b);
        Key fl(a.n_), pr(a.n_);
        for (int v = 0; v < a.n_; ++v) {
            fl[v] = a.floor_[v] + b.floor_[v];
            pr[v] = std::min(sat_add(a.prec_[v], b.floor_[v]), sat_add(b.prec_[v], a.floor_[v]));
        }
        TSeries r(a.n_, a.prof_.meet(b.prof_), fl, pr);
        Key e(a.n_);
        for (auto& [ea, ca] : a.c_)
            for (auto& [eb, cb] : b.c_) {
                bool ok = true;
                for (int v = 0; v < a.n_ && ok; ++v) {
                    e[v] = ea[v] + eb[v];
                    ok = e[v] <= pr[v];
                }
                if (ok) r.add(e, ca * cb);
            }
        return r;
    }

    // (1 + X)^{-1} for X = *this - 1 with nonnegative floors and no unit part besides the constant
    TSeries inverse() const
    {
        for (int v = 0; v < n_; ++v)
            if (floor_[v] < 0) throw std::domain_error("TSeries::inverse: negative floor");
        Key zero(n_, 0);
        TPoly c0 = coeff(zero);
        Rational u = c0.constant_term();
        if (u == 0) throw std::domain_error("TSeries::inverse: constant term is not a unit");
        TPoly c0inv = unit_inverse(c0);
        TSeries X = *this * c0inv;
        X.add(zero, TPoly(-1, prof_));
        TSeries out = constant(n_, TPoly(1, prof_), prof_), pw = out;
        out.prec_ = prec_;
        for (int it = 0;; ++it) {
            if (it > 4096) throw std::runtime_error("TSeries::inverse: no convergence under caps");
            pw = pw * X * TPoly(-1);
            if (pw.c_.empty()) break;
            out = out + pw;
        }
        out.prec_ = prec_;
        return out * c0inv;
    }

    TSeries pow(int e) const
    {
        if (e < 0) return inverse().pow(-e);
        TSeries r = constant(n_, TPoly(1, prof_), prof_);
        for (int i = 0; i < e; ++i) r = r * *this;
        return r;
    }

private:
    static int sat_add(int a, int b) { return (a >= INF || b >= INF) ? INF : a + b; }
    static void check_compat(const TSeries& a, const TSeries& b)
    {
        if (a.n_ != b.n_) throw std::invalid_argument("TSeries: variable count mismatch");
    }
    void prune()
    {
        for (auto it = c_.begin(); it != c_.end();)
            it = in_window(it->first) ? std::next(it) : c_.erase(it);
    }

    int n_ = 0;
    Profile prof_;
    Key floor_, prec_;
    std::map<Key, TPoly> c_;
};

// ---- series factor registry (one variable unless noted) ----

// (1 + beta v)^A, binomial series under beta-nilpotency
inline TSeries factor_binom(int A, const Profile& p)
{
    TSeries s(1, p, {0}, {INF});
    Rational bin = 1;
    for (int l = 0; l <= std::min(p.K, A >= 0 ? A : p.K); ++l) {
        s.add({l}, TPoly::beta(p).pow(l) * bin);
        bin = bin * Rational(A - l) / Rational(l + 1);
    }
    return s;
}

// prod_{j<=k} z/(z-b_j) in powers of z^{-1}: sum_j h_j(b_1..b_k) z^{-j}
inline TSeries factor_equiv_pole(const Alphabet& b, int jmax, const Profile& p)
{
    TSeries s(1, p, {0}, {jmax});
    for (int j = 0; j <= jmax; ++j) s.add({j}, complete_sym(j, b, p));
    return s;
}

// (1 - y zbar)/(1 - y z) in powers of z, zbar = oneg(z)
inline TSeries factor_kernel(const TPoly& y, int zmax, const Profile& p)
{
    TPoly be = TPoly::beta(p);
    // zbar = -z (1 + beta z)^{-1}; numerator 1 + y z (1+beta z)^{-1}
    TSeries inv1 = factor_binom(-1, p);
    TSeries num = TSeries::constant(1, TPoly(1, p), p) + TSeries::monomial({1}, y, p) * inv1;
    TSeries den(1, p, {0}, {zmax});
    for (int k = 0; k <= zmax; ++k) den.add({k}, y.pow(k));
    TSeries r = num * den;
    return r.set_prec({zmax});
}

// ---- fast cross-factor engine ----
//
// The product of pairwise cross factors is a series in ratio coordinates
// t_1 = v_1, t_k = v_k / v_{k-1} (v = z on the z-side, v = u^{-1} on the u-side)
// whose coefficients are polynomials in beta alone.

enum class CrossKind {
    ZOminus, // (z_i (-) z_j)/(z_i (+) z_j)
    ZMinus,  // (z_i - z_j)/(z_i (+) z_j)
    UOminus, // (u_j (-) u_i)/(u_i (+) u_j)
    UMinus   // (u_j - u_i)/(u_j (+) u_i)
};

inline bool u_side(CrossKind k) { return k == CrossKind::UOminus || k == CrossKind::UMinus; }

namespace detail {

using BVec = std::vector<Rational>; // coefficients of beta^0..beta^K
constexpr int kKeyBias = 128;

inline uint64_t pack(const int* t, int r)
{
    uint64_t k = 0;
    for (int i = 0; i < r; ++i) k |= uint64_t(t[i] + kKeyBias) << (8 * i);
    return k;
}
inline void unpack(uint64_t k, int* t, int r)
{
    for (int i = 0; i < r; ++i) t[i] = int((k >> (8 * i)) & 0xff) - kKeyBias;
}

struct BSeries {
    int r, K;
    std::vector<int> tmax; // prune bound per coordinate
    bool slack;            // allow overshoot by the remaining beta budget
    std::unordered_map<uint64_t, BVec> m;

    bool keep(const int* t, int e) const
    {
        if (e > K) return false;
        for (int i = 0; i < r; ++i) {
            int lim = tmax[i] + (slack ? K - e : 0);
            if (t[i] > lim) return false;
            if (t[i] + kKeyBias < 0 || t[i] + kKeyBias > 255) throw std::overflow_error("cross engine: exponent range");
        }
        return true;
    }
    // multiply by the monomial c * beta^de * t^dt, accumulating into out
    void shift_into(BSeries& out, const std::vector<int>& dt, int de, const Rational& c) const
    {
        int t[8];
        for (auto& [k, v] : m) {
            unpack(k, t, r);
            for (int i = 0; i < r; ++i) t[i] += dt[i];
            int emin = -1;
            for (int e = 0; e + de <= K; ++e)
                if (v[e] != 0) { emin = e; break; }
            if (emin < 0 || !keep(t, emin + de)) continue;
            uint64_t key = pack(t, r);
            auto it = out.m.find(key);
            if (it == out.m.end()) it = out.m.emplace(key, BVec(K + 1)).first;
            for (int e = 0; e + de <= K; ++e)
                if (v[e] != 0 && keep(t, e + de)) it->second[e + de] += c * v[e];
        }
    }
    BSeries empty_like() const { return BSeries{r, K, tmax, slack, {}}; }
    void clean()
    {
        for (auto it = m.begin(); it != m.end();) {
            bool nz = false;
            for (auto& x : it->second)
                if (x != 0) nz = true;
            it = nz ? std::next(it) : m.erase(it);
        }
    }
};

struct Mon {
    std::vector<int> dt;
    int de;
    Rational c;
};

inline BSeries mul_poly(const BSeries& s, const std::vector<Mon>& poly)
{
    BSeries out = s.empty_like();
    for (auto& mo : poly) s.shift_into(out, mo.dt, mo.de, mo.c);
    out.clean();
    return out;
}

// s * (1 + X)^{-1}
inline BSeries mul_geometric(const BSeries& s, const std::vector<Mon>& X)
{
    std::vector<Mon> negX = X;
    for (auto& mo : negX) mo.c = -mo.c;
    BSeries acc = s, term = s;
    for (int it = 0;; ++it) {
        if (it > 4096) throw std::runtime_error("cross engine: no convergence");
        term = mul_poly(term, negX);
        if (term.m.empty()) break;
        for (auto& [k, v] : term.m) {
            auto jt = acc.m.find(k);
            if (jt == acc.m.end()) acc.m.emplace(k, v);
            else
                for (size_t e = 0; e < v.size(); ++e) jt->second[e] += v[e];
        }
    }
    acc.clean();
    return acc;
}

} // namespace detail

// product of cross factors over pairs i<j of r variables, pruned at tmax (ratio coordinates)
inline detail::BSeries cross_product(int r, CrossKind kind, int K, const std::vector<int>& tmax)
{
    using namespace detail;
    if (r > 8) throw std::invalid_argument("cross engine: too many variables");
    BSeries s{r, K, tmax, u_side(kind), {}};
    BVec one(K + 1);
    one[0] = 1;
    s.m.emplace(pack(std::vector<int>(r, 0).data(), r), one);
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            std::vector<int> zeta(r, 0), M(r, 0);
            for (int k = i + 1; k <= j; ++k) zeta[k] = 1;
            if (u_side(kind))
                for (int k = 0; k <= i; ++k) M[k] = -1; // beta / w_i
            else
                for (int k = 0; k <= j; ++k) M[k] = 1; // beta z_j
            std::vector<int> z0(r, 0);
            s = mul_poly(s, {{z0, 0, 1}, {zeta, 0, -1}});
            if (kind == CrossKind::ZOminus || kind == CrossKind::UOminus) s = mul_geometric(s, {{M, 1, 1}});
            s = mul_geometric(s, {{zeta, 0, 1}, {M, 1, 1}});
        }
    return s;
}

// single-variable factor with a finite exact window [lo, lo + c.size() - 1]
struct Factor1 {
    int lo = 0;
    std::vector<TPoly> c;
    int hi() const { return lo + int(c.size()) - 1; }
    const TPoly* at(int n) const
    {
        if (n < lo || n > hi() || c[n - lo].is_zero()) return nullptr;
        return &c[n - lo];
    }
    static Factor1 from_series(const TSeries& s, int lo, int hi)
    {
        if (s.nvars() != 1) throw std::invalid_argument("Factor1: series must have one variable");
        Factor1 f;
        f.lo = lo;
        for (int n = lo; n <= hi; ++n) f.c.push_back(s.coeff({n}));
        return f;
    }
};

// [v^target] prod_i S_i(v_i) * prod_{i<j} cross_ij, with v = z (z-side) or v = u^{-1} (u-side).
// Each S_i must vanish outside its window.
inline TPoly extract_product(const std::vector<Factor1>& S, const std::vector<int>& target, CrossKind kind,
                             const Profile& prof)
{
    int r = int(S.size());
    if (int(target.size()) != r) throw std::invalid_argument("extract_product: size mismatch");
    if (r == 0) return TPoly(1, prof);
    int K = prof.K;
    if (!prof.bounded()) throw std::invalid_argument("extract_product: beta order must be finite");
    bool us = u_side(kind);
    // a_m = target_m - n_m ranges over [target_m - hi_m, target_m - lo_m]
    std::vector<int> amin(r), amax(r);
    for (int m = 0; m < r; ++m) {
        amin[m] = target[m] - S[m].hi();
        amax[m] = target[m] - S[m].lo;
    }
    // T_1 = sum a = beta-degree (z-side) or minus it (u-side)
    int t1max = us ? 0 : K;
    std::vector<int> tmax(r), tmin(r);
    for (int k = 0; k < r; ++k) {
        int suf = 0, sufmin = 0, pre = 0;
        for (int m = k; m < r; ++m) {
            suf += amax[m];
            sufmin += amin[m];
        }
        for (int m = 0; m < k; ++m) pre += amin[m];
        tmax[k] = std::min(suf, t1max - pre);
        tmin[k] = sufmin;
    }
    tmax[0] = std::min(tmax[0], t1max);
    for (int k = 0; k < r; ++k)
        if (tmax[k] < (us ? -K : 0)) return TPoly(0, prof);
    detail::BSeries C = cross_product(r, kind, K, tmax);

    // collect admissible exponent vectors, sorted for prefix reuse
    std::vector<std::pair<std::vector<int>, const detail::BVec*>> items;
    int t[8];
    for (auto& [key, v] : C.m) {
        detail::unpack(key, t, r);
        bool ok = true;
        for (int k = 0; k < r && ok; ++k) ok = t[k] <= tmax[k] && t[k] >= tmin[k];
        if (!ok) continue;
        std::vector<int> a(r);
        for (int k = 0; k < r; ++k) a[k] = t[k] - (k + 1 < r ? t[k + 1] : 0);
        for (int k = 0; k < r && ok; ++k) ok = S[k].at(target[k] - a[k]) != nullptr;
        if (ok) items.push_back({a, &v});
    }
    std::sort(items.begin(), items.end(), [](auto& x, auto& y) { return x.first < y.first; });

    TPoly beta = TPoly::beta(prof);
    std::vector<TPoly> bpow(K + 1, TPoly(1, prof));
    for (int e = 1; e <= K; ++e) bpow[e] = bpow[e - 1] * beta;
    TPoly total(0, prof);
    std::vector<TPoly> prefix(r + 1, TPoly(1, prof));
    std::vector<int> last;
    for (auto& [a, bv] : items) {
        int common = 0;
        if (!last.empty())
            while (common < r - 1 && last[common] == a[common]) ++common;
        for (int k = common; k < r; ++k) prefix[k + 1] = prefix[k] * *S[k].at(target[k] - a[k]);
        last = a;
        const TPoly& P = prefix[r];
        if (P.is_zero()) continue;
        TPoly cb(0, prof);
        for (int e = 0; e <= K; ++e)
            if ((*bv)[e] != 0) cb += bpow[e] * (*bv)[e];
        total += P * cb;
    }
    return total;
}

} // namespace kfun
