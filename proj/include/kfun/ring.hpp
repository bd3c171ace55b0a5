#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

namespace kfun {

using Rational = mpq_class;

// variable layout: one byte exponent per slot
constexpr int kBeta = 0;
constexpr int kNumB = 10, kNumC = 9, kNumX = 6, kNumY = 6;
constexpr int kB0 = 1, kC0 = kB0 + kNumB, kX0 = kC0 + kNumC, kY0 = kX0 + kNumX;
constexpr int kNumVars = kY0 + kNumY;
static_assert(kNumVars == 32);

// a requested coefficient lies outside what the truncation retains
struct CapOverflow : std::out_of_range {
    using std::out_of_range::out_of_range;
};

inline int var_b(int i) { if (i < 1 || i > kNumB) throw std::out_of_range("b index"); return kB0 + i - 1; }
inline int var_c(int i) { if (i < 1 || i > kNumC) throw std::out_of_range("c index"); return kC0 + i - 1; }
inline int var_x(int i) { if (i < 1 || i > kNumX) throw std::out_of_range("x index"); return kX0 + i - 1; }
inline int var_y(int i) { if (i < 1 || i > kNumY) throw std::out_of_range("y index"); return kY0 + i - 1; }

inline std::string var_name(int v)
{
    if (v == kBeta) return "beta";
    if (v < kC0) return "b" + std::to_string(v - kB0 + 1);
    if (v < kX0) return "c" + std::to_string(v - kC0 + 1);
    if (v < kY0) return "x" + std::to_string(v - kX0 + 1);
    return "y" + std::to_string(v - kY0 + 1);
}

inline int var_from_name(const std::string& s)
{
    if (s == "beta") return kBeta;
    if (s.size() < 2) throw std::invalid_argument("bad variable " + s);
    int i = std::stoi(s.substr(1));
    switch (s[0]) {
    case 'b': return var_b(i);
    case 'c': return var_c(i);
    case 'x': return var_x(i);
    case 'y': return var_y(i);
    }
    throw std::invalid_argument("bad variable " + s);
}

enum Family { FX = 0, FY = 1, FB = 2, FC = 3 };
constexpr int INF = 1 << 28;

struct Profile {
    int K = INF;
    std::array<int, 4> caps{INF, INF, INF, INF};

    static Profile unbounded() { return {}; }
    static Profile make(int K, int dx = INF, int dy = INF, int db = INF, int dc = INF)
    {
        Profile p;
        p.K = K;
        p.caps = {dx, dy, db, dc};
        return p;
    }
    Profile meet(const Profile& o) const
    {
        Profile p;
        p.K = std::min(K, o.K);
        for (int i = 0; i < 4; ++i) p.caps[i] = std::min(caps[i], o.caps[i]);
        return p;
    }
    Profile with_K(int k) const { Profile p = *this; p.K = k; return p; }
    Profile with_cap(Family f, int d) const { Profile p = *this; p.caps[f] = d; return p; }
    bool bounded() const { return K < INF; }
    bool operator==(const Profile&) const = default;
};

struct Mono {
    std::array<uint64_t, 4> w{};

    int get(int v) const { return int((w[v >> 3] >> ((v & 7) * 8)) & 0xff); }
    void set(int v, int e)
    {
        if (e < 0 || e > 127) throw std::overflow_error("exponent out of range");
        uint64_t sh = uint64_t(v & 7) * 8;
        w[v >> 3] = (w[v >> 3] & ~(uint64_t(0xff) << sh)) | (uint64_t(e) << sh);
    }
    static Mono single(int v, int e = 1) { Mono m; m.set(v, e); return m; }

    Mono operator+(const Mono& o) const
    {
        Mono r;
        uint64_t hi = 0;
        for (int i = 0; i < 4; ++i) {
            r.w[i] = w[i] + o.w[i];
            hi |= r.w[i];
        }
        if (hi & 0x8080808080808080ULL) throw std::overflow_error("exponent overflow");
        return r;
    }
    bool divides(const Mono& o) const
    {
        for (int v = 0; v < kNumVars; ++v)
            if (get(v) > o.get(v)) return false;
        return true;
    }
    Mono operator-(const Mono& o) const
    {
        Mono r;
        for (int i = 0; i < 4; ++i) r.w[i] = w[i] - o.w[i];
        return r;
    }
    int sum(int lo, int hi) const
    {
        int s = 0;
        for (int v = lo; v < hi; ++v) s += get(v);
        return s;
    }
    int fam_deg(Family f) const
    {
        switch (f) {
        case FX: return sum(kX0, kX0 + kNumX);
        case FY: return sum(kY0, kY0 + kNumY);
        case FB: return sum(kB0, kB0 + kNumB);
        case FC: return sum(kC0, kC0 + kNumC);
        }
        return 0;
    }
    int total() const { return sum(0, kNumVars); }
    bool is_one() const { return !(w[0] | w[1] | w[2] | w[3]); }
    bool operator==(const Mono& o) const { return w == o.w; }
    // lex with the highest slot most significant; compatible with multiplication
    bool operator<(const Mono& o) const
    {
        for (int i = 3; i >= 0; --i)
            if (w[i] != o.w[i]) return w[i] < o.w[i];
        return false;
    }
};

struct MonoHash {
    size_t operator()(const Mono& m) const
    {
        uint64_t h = m.w[0] * 0x9E3779B97F4A7C15ULL;
        h ^= m.w[1] + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2);
        h ^= m.w[2] + 0x85EBCA77C2B2AE63ULL + (h << 6) + (h >> 2);
        h ^= m.w[3] + 0xC2B2AE3D27D4EB4FULL + (h << 6) + (h >> 2);
        return size_t(h);
    }
};

struct DegInfo {
    int k, dx, dy, db, dc;
    static DegInfo of(const Mono& m)
    {
        return {m.get(kBeta), m.fam_deg(FX), m.fam_deg(FY), m.fam_deg(FB), m.fam_deg(FC)};
    }
    bool fits(const Profile& p) const
    {
        return k <= p.K && dx <= p.caps[FX] && dy <= p.caps[FY] && db <= p.caps[FB] && dc <= p.caps[FC];
    }
};

class TPoly {
public:
    struct Term {
        Mono m;
        Rational c;
    };

    TPoly() = default;
    TPoly(long v) { if (v) terms_.push_back({Mono{}, Rational(v)}); }
    TPoly(const Rational& v) { if (v != 0) terms_.push_back({Mono{}, v}); }
    TPoly(long v, const Profile& p) : TPoly(v) { prof_ = p; }
    TPoly(const Rational& v, const Profile& p) : TPoly(v) { prof_ = p; }

    static TPoly monomial(const Mono& m, const Rational& c, const Profile& p = Profile::unbounded())
    {
        TPoly r;
        r.prof_ = p;
        if (c != 0 && DegInfo::of(m).fits(p)) r.terms_.push_back({m, c});
        return r;
    }
    static TPoly var(int v, const Profile& p = Profile::unbounded()) { return monomial(Mono::single(v), 1, p); }
    static TPoly beta(const Profile& p) { return var(kBeta, p); }
    static TPoly b(int i, const Profile& p = Profile::unbounded()) { return var(var_b(i), p); }
    static TPoly c(int i, const Profile& p = Profile::unbounded()) { return var(var_c(i), p); }
    static TPoly x(int i, const Profile& p = Profile::unbounded()) { return var(var_x(i), p); }
    static TPoly y(int i, const Profile& p = Profile::unbounded()) { return var(var_y(i), p); }

    const std::vector<Term>& terms() const { return terms_; }
    const Profile& profile() const { return prof_; }
    size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }
    Rational constant_term() const
    {
        if (!terms_.empty() && terms_[0].m.is_one()) return terms_[0].c;
        return 0;
    }
    Rational coeff(const Mono& m) const
    {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, const Mono& k) { return t.m < k; });
        if (it != terms_.end() && it->m == m) return it->c;
        return 0;
    }

    // truncate to the meet with p
    TPoly truncated(const Profile& p) const
    {
        TPoly r;
        r.prof_ = prof_.meet(p);
        r.terms_.reserve(terms_.size());
        for (auto& t : terms_)
            if (DegInfo::of(t.m).fits(r.prof_)) r.terms_.push_back(t);
        return r;
    }
    // replace the profile; only valid when narrowing or when the caller knows the data is exact
    TPoly with_profile(const Profile& p) const
    {
        TPoly r = truncated(p);
        r.prof_ = p;
        return r;
    }

    int max_deg(int v) const
    {
        int d = 0;
        for (auto& t : terms_) d = std::max(d, t.m.get(v));
        return d;
    }
    int max_fam_deg(Family f) const
    {
        int d = 0;
        for (auto& t : terms_) d = std::max(d, t.m.fam_deg(f));
        return d;
    }
    int min_fam_deg(Family f) const
    {
        int d = INF;
        for (auto& t : terms_) d = std::min(d, t.m.fam_deg(f));
        return d;
    }
    bool uses(int v) const
    {
        for (auto& t : terms_)
            if (t.m.get(v)) return true;
        return false;
    }

    // coefficient of beta^k, as a beta-free polynomial
    TPoly beta_part(int k) const
    {
        TPoly r;
        r.prof_ = prof_;
        for (auto& t : terms_)
            if (t.m.get(kBeta) == k) {
                Mono m = t.m;
                m.set(kBeta, 0);
                r.terms_.push_back({m, t.c});
            }
        std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& a, const Term& b) { return a.m < b.m; });
        return r;
    }

    TPoly operator-() const
    {
        TPoly r = *this;
        for (auto& t : r.terms_) t.c = -t.c;
        return r;
    }

    friend TPoly operator+(const TPoly& a, const TPoly& b) { return combine(a, b, 1); }
    friend TPoly operator-(const TPoly& a, const TPoly& b) { return combine(a, b, -1); }
    TPoly& operator+=(const TPoly& o) { return *this = *this + o; }
    TPoly& operator-=(const TPoly& o) { return *this = *this - o; }

    friend TPoly operator*(const TPoly& a, const Rational& s)
    {
        if (s == 0) {
            TPoly r;
            r.prof_ = a.prof_;
            return r;
        }
        TPoly r = a;
        for (auto& t : r.terms_) t.c *= s;
        return r;
    }
    friend TPoly operator*(const Rational& s, const TPoly& a) { return a * s; }

    friend TPoly operator*(const TPoly& a, const TPoly& b)
    {
        Profile p = a.prof_.meet(b.prof_);
        TPoly r;
        r.prof_ = p;
        if (a.is_zero() || b.is_zero()) return r;
        if (a.is_constant()) return (b * a.terms_[0].c).truncated(p);
        if (b.is_constant()) return (a * b.terms_[0].c).truncated(p);
        std::vector<DegInfo> da, db;
        da.reserve(a.size());
        db.reserve(b.size());
        for (auto& t : a.terms_) da.push_back(DegInfo::of(t.m));
        for (auto& t : b.terms_) db.push_back(DegInfo::of(t.m));
        std::unordered_map<Mono, Rational, MonoHash> acc;
        acc.reserve(a.size() * b.size() / 2 + 8);
        Rational tmp;
        for (size_t i = 0; i < a.size(); ++i) {
            const DegInfo& u = da[i];
            for (size_t j = 0; j < b.size(); ++j) {
                const DegInfo& v = db[j];
                if (u.k + v.k > p.K || u.dx + v.dx > p.caps[FX] || u.dy + v.dy > p.caps[FY] ||
                    u.db + v.db > p.caps[FB] || u.dc + v.dc > p.caps[FC])
                    continue;
                mpq_mul(tmp.get_mpq_t(), a.terms_[i].c.get_mpq_t(), b.terms_[j].c.get_mpq_t());
                Rational& slot = acc[a.terms_[i].m + b.terms_[j].m];
                slot += tmp;
            }
        }
        r.terms_.reserve(acc.size());
        for (auto& [m, c] : acc)
            if (c != 0) r.terms_.push_back({m, std::move(c)});
        std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& x, const Term& y) { return x.m < y.m; });
        return r;
    }
    TPoly& operator*=(const TPoly& o) { return *this = *this * o; }

    TPoly pow(int e) const
    {
        if (e < 0) throw std::invalid_argument("negative power");
        TPoly r(1, prof_), base = *this;
        while (e) {
            if (e & 1) r *= base;
            e >>= 1;
            if (e) base *= base;
        }
        return r;
    }

    // equality in the truncated ring given by the meet of both profiles
    friend bool operator==(const TPoly& a, const TPoly& b) { return (a - b).is_zero(); }
    friend bool operator!=(const TPoly& a, const TPoly& b) { return !(a == b); }

    // raw access for builders; caller must keep terms sorted and unique
    static TPoly from_sorted(std::vector<Term> t, const Profile& p)
    {
        TPoly r;
        r.prof_ = p;
        r.terms_ = std::move(t);
        return r;
    }
    static TPoly from_map(const std::map<Mono, Rational>& m, const Profile& p)
    {
        TPoly r;
        r.prof_ = p;
        for (auto& [k, v] : m)
            if (v != 0 && DegInfo::of(k).fits(p)) r.terms_.push_back({k, v});
        return r;
    }
    static TPoly from_unsorted(std::vector<Term> t, const Profile& p)
    {
        std::sort(t.begin(), t.end(), [](const Term& a, const Term& b) { return a.m < b.m; });
        TPoly r;
        r.prof_ = p;
        for (auto& x : t) {
            if (!DegInfo::of(x.m).fits(p)) continue;
            if (!r.terms_.empty() && r.terms_.back().m == x.m) r.terms_.back().c += x.c;
            else r.terms_.push_back(std::move(x));
        }
        std::erase_if(r.terms_, [](const Term& x) { return x.c == 0; });
        return r;
    }

    std::string to_string() const;

private:
    static TPoly combine(const TPoly& a, const TPoly& b, int sign)
    {
        Profile p = a.prof_.meet(b.prof_);
        bool ta = !(p == a.prof_), tb = !(p == b.prof_);
        TPoly r;
        r.prof_ = p;
        r.terms_.reserve(a.size() + b.size());
        size_t i = 0, j = 0;
        auto ok_a = [&](size_t k) { return !ta || DegInfo::of(a.terms_[k].m).fits(p); };
        auto ok_b = [&](size_t k) { return !tb || DegInfo::of(b.terms_[k].m).fits(p); };
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a.terms_[i].m < b.terms_[j].m)) {
                if (ok_a(i)) r.terms_.push_back(a.terms_[i]);
                ++i;
            } else if (i == a.size() || b.terms_[j].m < a.terms_[i].m) {
                if (ok_b(j)) r.terms_.push_back({b.terms_[j].m, sign > 0 ? b.terms_[j].c : Rational(-b.terms_[j].c)});
                ++j;
            } else {
                Rational c = sign > 0 ? Rational(a.terms_[i].c + b.terms_[j].c) : Rational(a.terms_[i].c - b.terms_[j].c);
                if (c != 0 && ok_a(i)) r.terms_.push_back({a.terms_[i].m, std::move(c)});
                ++i;
                ++j;
            }
        }
        return r;
    }

    std::vector<Term> terms_;
    Profile prof_;
};

inline std::string mono_string(const Mono& m)
{
    std::string s;
    for (int v = 0; v < kNumVars; ++v) {
        int e = m.get(v);
        if (!e) continue;
        if (!s.empty()) s += "*";
        s += var_name(v);
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s.empty() ? "1" : s;
}

inline std::string TPoly::to_string() const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& t : terms_) {
        Rational c = t.c;
        bool neg = c < 0;
        if (neg) c = -c;
        os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
        first = false;
        if (t.m.is_one()) os << c.get_str();
        else if (c == 1) os << mono_string(t.m);
        else os << c.get_str() << "*" << mono_string(t.m);
    }
    return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const TPoly& p) { return os << p.to_string(); }

using Alphabet = std::vector<TPoly>;

inline Alphabet alphabet_b(int n, const Profile& p = Profile::unbounded())
{
    Alphabet a;
    for (int i = 1; i <= n; ++i) a.push_back(TPoly::b(i, p));
    return a;
}
inline Alphabet alphabet_c(int n, const Profile& p = Profile::unbounded())
{
    Alphabet a;
    for (int i = 1; i <= n; ++i) a.push_back(TPoly::c(i, p));
    return a;
}
inline Alphabet alphabet_x(int n, const Profile& p = Profile::unbounded())
{
    Alphabet a;
    for (int i = 1; i <= n; ++i) a.push_back(TPoly::x(i, p));
    return a;
}
inline Alphabet alphabet_y(int n, const Profile& p = Profile::unbounded())
{
    Alphabet a;
    for (int i = 1; i <= n; ++i) a.push_back(TPoly::y(i, p));
    return a;
}
inline Alphabet negated(const Alphabet& a)
{
    Alphabet r;
    for (auto& t : a) r.push_back(-t);
    return r;
}

// ---- substitution ----

using Substitution = std::vector<std::pair<int, TPoly>>;

// simultaneous substitution v -> poly; result profile is the meet of all inputs
inline TPoly substitute(const TPoly& f, const Substitution& s)
{
    if (s.empty()) return f;
    Profile p = f.profile();
    for (auto& [v, q] : s) p = p.meet(q.profile());
    Mono mask;
    for (auto& [v, q] : s) mask.set(v, 127);
    // group by the exponent pattern on substituted slots
    std::map<Mono, std::vector<TPoly::Term>> groups;
    for (auto& t : f.terms()) {
        Mono pat, rest = t.m;
        for (auto& [v, q] : s) {
            pat.set(v, t.m.get(v));
            rest.set(v, 0);
        }
        groups[pat].push_back({rest, t.c});
    }
    std::vector<std::vector<TPoly>> powers(s.size());
    for (size_t i = 0; i < s.size(); ++i) powers[i].push_back(TPoly(1, p));
    auto power = [&](size_t i, int e) -> const TPoly& {
        while (int(powers[i].size()) <= e) powers[i].push_back(powers[i].back() * s[i].second);
        return powers[i][e];
    };
    TPoly out(0, p);
    for (auto& [pat, ts] : groups) {
        TPoly factor(1, p);
        for (size_t i = 0; i < s.size(); ++i) {
            int e = pat.get(s[i].first);
            if (e) factor = factor * power(i, e);
            if (factor.is_zero()) break;
        }
        if (factor.is_zero()) continue;
        out += TPoly::from_unsorted(ts, p) * factor;
    }
    return out;
}

// permutation of variable slots: perm maps old slot -> new slot (only listed slots move)
inline TPoly rename_vars(const TPoly& f, const std::vector<std::pair<int, int>>& moves)
{
    std::vector<TPoly::Term> ts;
    ts.reserve(f.size());
    for (auto& t : f.terms()) {
        Mono m = t.m;
        for (auto& [a, b] : moves) m.set(a, 0);
        for (auto& [a, b] : moves) m.set(b, m.get(b) + t.m.get(a));
        ts.push_back({m, t.c});
    }
    return TPoly::from_unsorted(std::move(ts), f.profile());
}

inline TPoly swap_vars(const TPoly& f, int a, int b) { return rename_vars(f, {{a, b}, {b, a}}); }

inline TPoly set_zero(const TPoly& f, const std::vector<int>& vars)
{
    std::vector<TPoly::Term> ts;
    for (auto& t : f.terms()) {
        bool keep = true;
        for (int v : vars)
            if (t.m.get(v)) keep = false;
        if (keep) ts.push_back(t);
    }
    return TPoly::from_sorted(std::move(ts), f.profile());
}

// ---- units and the formal group law ----

inline TPoly unit_inverse(const TPoly& v)
{
    Rational u = v.constant_term();
    if (u == 0) throw std::domain_error("unit_inverse: constant term is zero");
    TPoly rest = v - TPoly(u);
    for (auto& t : rest.terms())
        if (t.m.get(kBeta) == 0) throw std::domain_error("unit_inverse: not of the form unit + beta*w");
    if (!rest.is_zero() && !v.profile().bounded()) throw std::domain_error("unit_inverse: unbounded beta order");
    Rational ui = 1 / u;
    TPoly q = rest * (-ui);
    TPoly out(1, v.profile()), pw(1, v.profile());
    while (true) {
        pw = pw * q;
        if (pw.is_zero()) break;
        out += pw;
    }
    return out * ui;
}

inline TPoly oplus(const TPoly& a, const TPoly& b)
{
    Profile p = a.profile().meet(b.profile());
    return a + b + TPoly::beta(p) * a * b;
}

inline TPoly ominus(const TPoly& a, const TPoly& b)
{
    Profile p = a.profile().meet(b.profile());
    return (a - b) * unit_inverse(TPoly(1, p) + TPoly::beta(p) * b);
}

inline TPoly oneg(const TPoly& a) { return ominus(TPoly(0, a.profile()), a); }

// ---- symmetric functions of an alphabet ----

inline TPoly elem_sym(int j, const Alphabet& A, const Profile& p = Profile::unbounded())
{
    if (j < 0 || j > int(A.size())) return TPoly(0, p);
    std::vector<TPoly> e(j + 1, TPoly(0, p));
    e[0] = TPoly(1, p);
    for (auto& a : A)
        for (int k = j; k >= 1; --k) e[k] = e[k] + e[k - 1] * a;
    return e[j];
}

inline TPoly complete_sym(int j, const Alphabet& A, const Profile& p = Profile::unbounded())
{
    if (j < 0) return TPoly(0, p);
    std::vector<TPoly> h(j + 1, TPoly(0, p));
    h[0] = TPoly(1, p);
    for (auto& a : A)
        for (int k = 1; k <= j; ++k) h[k] = h[k] + h[k - 1] * a;
    return h[j];
}

// [t^p] prod(1 - c t) / prod(1 - b t)
inline TPoly supersym_h(int p, const Alphabet& bs, const Alphabet& cs, const Profile& pr = Profile::unbounded())
{
    TPoly s(0, pr);
    if (p < 0) return s;
    for (int k = 0; k <= std::min<int>(p, int(cs.size())); ++k) {
        TPoly t = complete_sym(p - k, bs, pr) * elem_sym(k, cs, pr);
        if (k & 1) s -= t;
        else s += t;
    }
    return s;
}

enum class PowerKind { GQ, GP, A };

inline TPoly factorial_power(const TPoly& x, int k, const Alphabet& b, PowerKind kind)
{
    Profile p = x.profile();
    auto a_part = [&](int m) {
        if (m > int(b.size())) throw std::invalid_argument("factorial_power: alphabet too short");
        TPoly r(1, p);
        for (int i = 0; i < m; ++i) r = r * ominus(x, b[i]);
        return r;
    };
    switch (kind) {
    case PowerKind::A:
        if (k < 0) throw std::invalid_argument("factorial_power: negative k");
        return a_part(k);
    case PowerKind::GP:
        if (k < 1) throw std::invalid_argument("factorial_power: k < 1");
        return x * a_part(k - 1);
    case PowerKind::GQ:
        if (k < 1) throw std::invalid_argument("factorial_power: k < 1");
        return oplus(x, x) * a_part(k - 1);
    }
    return {};
}

// ---- exact division ----

// divide by the single variable v
inline TPoly divide_by_var(const TPoly& f, int v)
{
    std::vector<TPoly::Term> ts;
    ts.reserve(f.size());
    for (auto& t : f.terms()) {
        int e = t.m.get(v);
        if (!e) throw std::domain_error("exact_divide: not divisible by " + var_name(v));
        Mono m = t.m;
        m.set(v, e - 1);
        ts.push_back({m, t.c});
    }
    return TPoly::from_sorted(std::move(ts), f.profile());
}

// divide by (v_i - v_j), synthetic division in v_i
inline TPoly divide_by_linear(const TPoly& f, int vi, int vj)
{
    int d = f.max_deg(vi);
    std::vector<std::vector<TPoly::Term>> layer(d + 1);
    for (auto& t : f.terms()) {
        Mono m = t.m;
        int e = m.get(vi);
        m.set(vi, 0);
        layer[e].push_back({m, t.c});
    }
    Profile unb = Profile::unbounded();
    TPoly vjp = TPoly::var(vj, unb);
    std::vector<TPoly> q(d + 1);
    TPoly carry(0, unb);
    // f_k = q_{k-1} - v_j q_k
    for (int k = d; k >= 1; --k) {
        TPoly fk = TPoly::from_unsorted(layer[k], unb);
        q[k - 1] = fk + vjp * carry;
        carry = q[k - 1];
    }
    TPoly rem = TPoly::from_unsorted(layer[0], unb) + vjp * carry;
    if (!rem.is_zero()) throw std::domain_error("exact_divide: not divisible by linear factor");
    std::vector<TPoly::Term> ts;
    for (int k = 0; k < d; ++k)
        for (auto& t : q[k].terms()) {
            Mono m = t.m;
            m.set(vi, m.get(vi) + k);
            ts.push_back({m, t.c});
        }
    return TPoly::from_unsorted(std::move(ts), f.profile());
}

namespace detail {

// multivariate long division by a beta-free divisor, ignoring caps
inline TPoly long_divide(const TPoly& f, const TPoly& g)
{
    if (g.is_zero()) throw std::domain_error("exact_divide: division by zero");
    const auto& lt = g.terms().back();
    std::map<Mono, Rational> rem;
    for (auto& t : f.terms()) rem[t.m] = t.c;
    std::vector<TPoly::Term> q;
    while (!rem.empty()) {
        auto it = std::prev(rem.end());
        if (!lt.m.divides(it->first)) throw std::domain_error("exact_divide: not divisible");
        Mono qm = it->first - lt.m;
        Rational qc = it->second / lt.c;
        q.push_back({qm, qc});
        for (auto& t : g.terms()) {
            Mono m = t.m + qm;
            auto jt = rem.find(m);
            if (jt == rem.end()) rem.emplace(m, -qc * t.c);
            else {
                jt->second -= qc * t.c;
                if (jt->second == 0) rem.erase(jt);
            }
        }
    }
    return TPoly::from_unsorted(std::move(q), Profile::unbounded());
}

inline TPoly times_beta_power(const TPoly& f, int k)
{
    std::vector<TPoly::Term> ts;
    for (auto& t : f.terms()) {
        Mono m = t.m;
        m.set(kBeta, m.get(kBeta) + k);
        ts.push_back({m, t.c});
    }
    return TPoly::from_unsorted(std::move(ts), Profile::unbounded());
}

} // namespace detail

// q with q*g = f in the truncated ring; graded in beta with a beta-free leading part
inline TPoly exact_divide(const TPoly& f, const TPoly& g)
{
    Profile p = f.profile().meet(g.profile());
    TPoly g0 = g.beta_part(0).with_profile(Profile::unbounded());
    if (g0.is_zero()) throw std::domain_error("exact_divide: divisor has no beta-free part");
    int kf = f.max_deg(kBeta), kg = g.max_deg(kBeta);
    int kmax = p.bounded() ? p.K : kf;
    std::vector<TPoly> gl(kg + 1), Q;
    for (int l = 0; l <= kg; ++l) gl[l] = g.beta_part(l).with_profile(Profile::unbounded());
    for (int k = 0; k <= kmax; ++k) {
        TPoly num = f.beta_part(k).with_profile(Profile::unbounded());
        for (int l = 1; l <= std::min(k, kg); ++l) num -= gl[l] * Q[k - l];
        Q.push_back(num.is_zero() ? num : detail::long_divide(num, g0));
    }
    TPoly q(0, Profile::unbounded());
    for (int k = 0; k <= kmax; ++k) q += detail::times_beta_power(Q[k], k);
    q = q.with_profile(p);
    if (!p.bounded() && !(q * g - f).is_zero()) throw std::domain_error("exact_divide: not divisible");
    if (p.bounded() && !(q * g == f)) throw std::domain_error("exact_divide: not divisible");
    return q;
}

// ---- determinant ----

using Matrix = std::vector<std::vector<TPoly>>;

inline TPoly determinant(const Matrix& M)
{
    int n = int(M.size());
    if (n == 0) return TPoly(1);
    for (auto& row : M)
        if (int(row.size()) != n) throw std::invalid_argument("determinant: not square");
    if (n > 20) throw std::invalid_argument("determinant: too large");
    // Laplace along rows, memoized on the set of used columns
    std::unordered_map<uint32_t, TPoly> memo;
    std::function<TPoly(int, uint32_t)> rec = [&](int row, uint32_t used) -> TPoly {
        if (row == n) return TPoly(1);
        auto it = memo.find(used);
        if (it != memo.end()) return it->second;
        TPoly s;
        bool init = false;
        int sign = 1;
        for (int c = 0; c < n; ++c) {
            if (used & (1u << c)) continue;
            if (!M[row][c].is_zero()) {
                TPoly t = M[row][c] * rec(row + 1, used | (1u << c));
                if (!init) { s = sign > 0 ? t : -t; init = true; }
                else s = sign > 0 ? s + t : s - t;
            }
            sign = -sign;
        }
        if (!init) s = TPoly(0, M[row][0].profile());
        memo.emplace(used, s);
        return s;
    };
    return rec(0, 0);
}

// ---- JSON ----

inline nlohmann::json to_json(const TPoly& f)
{
    std::vector<int> used;
    for (int v = 0; v < kNumVars; ++v)
        if (f.uses(v)) used.push_back(v);
    nlohmann::json j;
    j["vars"] = nlohmann::json::array();
    for (int v : used) j["vars"].push_back(var_name(v));
    j["terms"] = nlohmann::json::array();
    for (auto& t : f.terms()) {
        nlohmann::json e = nlohmann::json::array();
        for (int v : used) e.push_back(t.m.get(v));
        j["terms"].push_back({{"exp", e}, {"num", t.c.get_num().get_str()}, {"den", t.c.get_den().get_str()}});
    }
    return j;
}

inline TPoly from_json(const nlohmann::json& j, const Profile& p = Profile::unbounded())
{
    std::vector<int> vars;
    for (auto& s : j.at("vars")) vars.push_back(var_from_name(s.get<std::string>()));
    std::vector<TPoly::Term> ts;
    for (auto& t : j.at("terms")) {
        Mono m;
        auto& e = t.at("exp");
        for (size_t i = 0; i < vars.size(); ++i) m.set(vars[i], e.at(i).get<int>());
        Rational c(mpz_class(t.at("num").get<std::string>()), mpz_class(t.at("den").get<std::string>()));
        c.canonicalize();
        ts.push_back({m, c});
    }
    return TPoly::from_unsorted(std::move(ts), p);
}

} // namespace kfun
