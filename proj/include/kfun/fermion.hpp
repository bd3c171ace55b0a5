#pragma once

#include "pfaff.hpp"

#include <map>

namespace kfun {

// strictly decreasing, entries >= 0
using Modes = std::vector<int>;

inline int energy_of(const Modes& m)
{
    int e = 0;
    for (int x : m) e += x;
    return e;
}

struct Truncation {
    int energy_cap = INF;
    // prune on energy + beta-degree instead of energy alone
    bool beta_weighted = false;
};

class FockState {
public:
    FockState() = default;
    explicit FockState(const Profile& p, Truncation t = {}) : prof_(p), trunc_(t) {}
    static FockState vacuum(const Profile& p, Truncation t = {})
    {
        FockState s(p, t);
        s.add({}, TPoly(1, p));
        return s;
    }
    static FockState basis(const Modes& m, const Profile& p, Truncation t = {})
    {
        FockState s(p, t);
        s.add(m, TPoly(1, p));
        return s;
    }

    const std::map<Modes, TPoly>& terms() const { return terms_; }
    const Profile& profile() const { return prof_; }
    const Truncation& truncation() const { return trunc_; }
    size_t truncation_events() const { return dropped_; }
    bool is_zero() const { return terms_.empty(); }

    // 0 even, 1 odd, -1 mixed or empty
    int parity() const
    {
        int p = -1;
        for (auto& [k, v] : terms_) {
            int q = int(k.size() % 2);
            if (p >= 0 && p != q) return -1;
            p = q;
        }
        return p;
    }
    int max_energy() const
    {
        int e = 0;
        for (auto& [k, v] : terms_) e = std::max(e, energy_of(k));
        return e;
    }
    int max_mode() const
    {
        int e = 0;
        for (auto& [k, v] : terms_)
            if (!k.empty()) e = std::max(e, k[0]);
        return e;
    }
    TPoly coeff(const Modes& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? TPoly(0, prof_) : it->second;
    }
    TPoly vacuum_coeff() const { return coeff({}); }

    void add(const Modes& m, const TPoly& c)
    {
        for (size_t i = 0; i + 1 < m.size(); ++i)
            if (m[i] <= m[i + 1]) throw std::invalid_argument("FockState: key not strictly decreasing");
        if (!m.empty() && m.back() < 0) throw std::invalid_argument("FockState: negative mode in key");
        TPoly v = prune(m, c);
        if (v.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) terms_.emplace(m, v);
        else {
            it->second += v;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    FockState empty_like() const { return FockState(prof_, trunc_); }
    FockState with_truncation(Truncation t) const
    {
        FockState s(prof_, t);
        for (auto& [k, v] : terms_) s.add(k, v);
        s.dropped_ += dropped_;
        return s;
    }

    friend FockState operator+(const FockState& a, const FockState& b)
    {
        FockState s = a;
        for (auto& [k, v] : b.terms_) s.add(k, v);
        s.dropped_ += b.dropped_;
        return s;
    }
    friend FockState operator-(const FockState& a, const FockState& b) { return a + b * TPoly(-1); }
    friend FockState operator*(const FockState& a, const TPoly& c)
    {
        FockState s = a.empty_like();
        s.dropped_ = a.dropped_;
        if (c.is_zero()) return s;
        for (auto& [k, v] : a.terms_) s.add(k, v * c);
        return s;
    }
    friend bool operator==(const FockState& a, const FockState& b) { return (a - b).is_zero(); }

    void note_dropped(size_t n) { dropped_ += n; }

private:
    TPoly prune(const Modes& m, const TPoly& c)
    {
        int E = energy_of(m);
        if (!trunc_.beta_weighted) {
            if (E > trunc_.energy_cap) {
                if (!c.is_zero()) ++dropped_;
                return TPoly(0, prof_);
            }
            return c;
        }
        if (E > trunc_.energy_cap) {
            if (!c.is_zero()) ++dropped_;
            return TPoly(0, prof_);
        }
        std::vector<TPoly::Term> keep;
        bool cut = false;
        for (auto& t : c.terms()) {
            if (t.m.get(kBeta) + E <= trunc_.energy_cap) keep.push_back(t);
            else cut = true;
        }
        if (cut) ++dropped_;
        return TPoly::from_sorted(std::move(keep), c.profile());
    }

    std::map<Modes, TPoly> terms_;
    Profile prof_;
    Truncation trunc_;
    size_t dropped_ = 0;
};

// phi_n applied to the basis vector m: returns sign and new key; sign 0 means zero
inline std::pair<int, Modes> phi_on_basis(int n, const Modes& m)
{
    if (n < 0) {
        // anticommute to the mode -n, which it contracts with
        for (size_t j = 0; j < m.size(); ++j)
            if (m[j] == -n) {
                Modes out = m;
                out.erase(out.begin() + j);
                int s = (j % 2 ? -1 : 1) * 2 * (n % 2 ? -1 : 1);
                return {s, out};
            }
        return {0, {}};
    }
    size_t j = 0;
    while (j < m.size() && m[j] > n) ++j;
    int s = j % 2 ? -1 : 1;
    if (j < m.size() && m[j] == n) {
        if (n > 0) return {0, {}};
        Modes out = m;
        out.erase(out.begin() + j);
        return {s, out};
    }
    Modes out = m;
    out.insert(out.begin() + j, n);
    return {s, out};
}

inline FockState apply_phi(int n, const FockState& s)
{
    FockState out = s.empty_like();
    out.note_dropped(s.truncation_events());
    for (auto& [k, v] : s.terms()) {
        auto [sg, key] = phi_on_basis(n, k);
        if (sg) out.add(key, v * Rational(sg));
    }
    return out;
}

// <vac| phi_m phi_n |vac>
inline Rational two_point(int m, int n)
{
    if (n > 0) return m + n == 0 ? Rational(2 * (m % 2 ? -1 : 1)) : Rational(0);
    if (n == 0) return m == 0 ? 1 : 0;
    return 0;
}

// ---- mode operators ----

enum class ModeName {
    phi,          // raw phi_n
    phi_round,    // phi^{(beta)}_n
    phi_square,   // phi^{[beta]}_n
    Phi_round,    // Phi^{(beta)}_n
    Phi_square,   // Phi^{[beta]}_n
    phi_round_k,  // phi^{(beta)(k)}_n
    Phi_round_k,  // Phi^{(beta)(k)}_n
    phi_square_k, // phi^{[beta](k)}_n
    Phi_square_kc // Phi^{[beta](k)}_n with the constant subtracted
};

inline std::string mode_name_str(ModeName n)
{
    switch (n) {
    case ModeName::phi: return "phi";
    case ModeName::phi_round: return "phi(b)";
    case ModeName::phi_square: return "phi[b]";
    case ModeName::Phi_round: return "Phi(b)";
    case ModeName::Phi_square: return "Phi[b]";
    case ModeName::phi_round_k: return "phi(b)(k)";
    case ModeName::Phi_round_k: return "Phi(b)(k)";
    case ModeName::phi_square_k: return "phi[b](k)";
    case ModeName::Phi_square_kc: return "Phi[b](k)-const";
    }
    return "?";
}

inline ModeName mode_name_from(const std::string& s)
{
    for (ModeName n : {ModeName::phi, ModeName::phi_round, ModeName::phi_square, ModeName::Phi_round,
                       ModeName::Phi_square, ModeName::phi_round_k, ModeName::Phi_round_k, ModeName::phi_square_k,
                       ModeName::Phi_square_kc})
        if (mode_name_str(n) == s) return n;
    throw std::invalid_argument("unknown mode name " + s);
}

// sum_m c_m phi_m + scalar
struct ModeOp {
    std::string name;
    std::map<int, TPoly> modes;
    TPoly scalar;

    bool linear() const { return scalar.is_zero(); }
    void add(int m, const TPoly& c)
    {
        if (c.is_zero()) return;
        auto it = modes.find(m);
        if (it == modes.end()) modes.emplace(m, c);
        else {
            it->second += c;
            if (it->second.is_zero()) modes.erase(it);
        }
    }
    ModeOp& operator+=(const ModeOp& o)
    {
        for (auto& [m, c] : o.modes) add(m, c);
        scalar = scalar.is_zero() ? o.scalar : (o.scalar.is_zero() ? scalar : scalar + o.scalar);
        return *this;
    }
    ModeOp scaled(const TPoly& c) const
    {
        ModeOp r{name, {}, {}};
        for (auto& [m, v] : modes) r.add(m, v * c);
        if (!scalar.is_zero()) r.scalar = scalar * c;
        return r;
    }
    bool operator==(const ModeOp& o) const
    {
        ModeOp d = *this;
        d += o.scaled(TPoly(-1));
        return d.modes.empty() && d.scalar.is_zero();
    }
};

inline ModeOp raw_phi(int n, const Profile& p) { return ModeOp{"phi", {{n, TPoly(1, p)}}, {}}; }

inline FockState apply_op(const ModeOp& op, const FockState& s)
{
    FockState out = s.empty_like();
    out.note_dropped(s.truncation_events());
    for (auto& [k, v] : s.terms()) {
        for (auto& [m, c] : op.modes) {
            auto [sg, key] = phi_on_basis(m, k);
            if (sg) out.add(key, c * v * Rational(sg));
        }
        if (!op.scalar.is_zero()) out.add(k, op.scalar * v);
    }
    return out;
}

// the anti-automorphism phi_n -> (-1)^n phi_{-n}
inline ModeOp star(const ModeOp& op)
{
    ModeOp r{op.name + "*", {}, op.scalar};
    for (auto& [m, c] : op.modes) r.add(-m, m % 2 ? -c : c);
    return r;
}

struct ModeContext {
    Profile prof;
    int index_cap = INF; // largest index kept in infinite positive tails
};

namespace detail {

inline TPoly half_beta_pow(int k, const Profile& p, int sign = 1)
{
    Rational c = 1;
    for (int i = 0; i < k; ++i) c *= Rational(sign, 2);
    return TPoly::beta(p).pow(k) * c;
}

} // namespace detail

inline ModeOp mode_builder(ModeName name, int n, int k, const Alphabet& b, const ModeContext& ctx)
{
    const Profile& p = ctx.prof;
    int K = p.K;
    if (!p.bounded()) throw std::invalid_argument("mode_builder: beta order must be finite");
    ModeOp op{mode_name_str(name), {}, {}};
    switch (name) {
    case ModeName::phi: op.add(n, TPoly(1, p)); break;
    case ModeName::phi_round:
        if (n >= 0) {
            for (int m = n; m <= n + K; ++m) op.add(m, detail::half_beta_pow(m - n, p) * gen_binom(m, n));
        } else {
            int N = -n;
            for (int m = std::max(1, N - K); m <= N; ++m)
                op.add(-m, detail::half_beta_pow(N - m, p) * gen_binom(-m, N - m));
        }
        break;
    case ModeName::phi_square:
        if (n >= 1) {
            for (int m = std::max(1, n - K); m <= n; ++m)
                op.add(m, detail::half_beta_pow(n - m, p) * gen_binom(-m, n - m));
        } else {
            int N = -n;
            for (int m = N; m <= N + K; ++m) op.add(-m, detail::half_beta_pow(m - N, p) * gen_binom(m, N));
        }
        break;
    case ModeName::Phi_round:
        for (int j = 0; j <= K; ++j)
            op += mode_builder(ModeName::phi_round, n + j, 0, b, ctx).scaled(detail::half_beta_pow(j, p, -1) * Rational(1, 2));
        break;
    case ModeName::Phi_square:
        for (int j = 0; j <= K; ++j)
            op += mode_builder(ModeName::phi_square, n - j, 0, b, ctx).scaled(detail::half_beta_pow(j, p, -1) * Rational(1, 2));
        break;
    case ModeName::phi_round_k:
    case ModeName::Phi_round_k: {
        ModeName base = name == ModeName::phi_round_k ? ModeName::phi_round : ModeName::Phi_round;
        if (k <= 1) {
            // k <= 0 falls back to the lowercase field
            op = mode_builder(k <= 0 ? ModeName::phi_round : base, n, 0, b, ctx);
            break;
        }
        Alphabet bs = prefix(b, k - 1);
        TPoly pre(1, p);
        for (auto& bj : bs) pre *= unit_inverse(TPoly(1, p) + TPoly::beta(p) * bj);
        for (int j = 0; j <= k - 1; ++j) {
            TPoly e = elem_sym(j, bs, p) * (j % 2 ? Rational(-1) : Rational(1));
            op += mode_builder(base, n - j, 0, b, ctx).scaled(pre * e);
        }
        break;
    }
    case ModeName::phi_square_k:
    case ModeName::Phi_square_kc: {
        bool conj = name == ModeName::Phi_square_kc;
        ModeName base = conj ? ModeName::Phi_square : ModeName::phi_square;
        if (k <= 0 && !conj) {
            op = mode_builder(ModeName::phi_square, n, 0, b, ctx);
            break;
        }
        Alphabet bs = k > 0 ? prefix(b, k) : Alphabet{};
        TPoly pre(1, p);
        for (int l = 0; l + 1 < k; ++l) pre *= TPoly(1, p) + TPoly::beta(p) * bs[l];
        if (ctx.index_cap >= INF) throw std::invalid_argument("mode_builder: infinite tail needs an index cap");
        for (int j = 0; n + j <= ctx.index_cap; ++j) {
            TPoly h = complete_sym(j, bs, p);
            if (h.is_zero()) {
                if (bs.empty()) break;
                continue;
            }
            ModeOp t = mode_builder(base, n + j, 0, b, ctx);
            if (conj) t.scalar = detail::half_beta_pow(n + j, p, -1) * Rational(-1, 2);
            op += t.scaled(pre * h);
        }
        break;
    }
    }
    op.name = mode_name_str(name);
    return op;
}

// ---- theta conjugation ----

// coefficients of ((1 + t)/(1 - t))^s, t = beta z / 2, as polynomials in beta
inline std::vector<TPoly> theta_kernel(int s, const Profile& p)
{
    std::vector<TPoly> g;
    for (int k = 0; k <= p.K; ++k) {
        Rational c = 0;
        for (int a = 0; a <= k; ++a) {
            Rational v = gen_binom(s, a) * gen_binom(-s, k - a);
            c += (k - a) % 2 ? Rational(-v) : v;
        }
        g.push_back(detail::half_beta_pow(k, p) * c);
    }
    return g;
}

// e^{s theta} op e^{-s theta} (dual: theta*)
inline ModeOp conjugate_theta(const ModeOp& op, int s, bool dual, const Profile& p)
{
    if (s == 0) return op;
    auto g = theta_kernel(s, p);
    ModeOp r{op.name, {}, op.scalar};
    for (auto& [m, c] : op.modes)
        for (int k = 0; k < int(g.size()); ++k) {
            if (g[k].is_zero()) continue;
            r.add(dual ? m + k : m - k, c * g[k]);
        }
    return r;
}

// ---- bosons and exponentials ----

// b_n = 1/4 sum_i (-1)^i phi_{-i-n} phi_i
inline FockState apply_boson(int n, const FockState& s)
{
    if (n % 2 == 0) throw std::invalid_argument("apply_boson: n must be odd");
    FockState out = s.empty_like();
    out.note_dropped(s.truncation_events());
    int M = s.max_mode() + std::abs(n) + 1;
    for (auto& [k, v] : s.terms())
        for (int i = -M; i <= M; ++i) {
            auto [s1, k1] = phi_on_basis(i, k);
            if (!s1) continue;
            auto [s2, k2] = phi_on_basis(-i - n, k1);
            if (!s2) continue;
            int sg = s1 * s2 * (i % 2 ? -1 : 1);
            out.add(k2, v * Rational(sg, 4));
        }
    return out;
}

// e^{sign theta} s, or e^{sign theta*} s when dual
inline FockState apply_exp_theta(int sign, bool dual, const FockState& s)
{
    const Profile& p = s.profile();
    if (!p.bounded()) throw std::invalid_argument("apply_exp_theta: beta order must be finite");
    auto theta = [&](const FockState& v) {
        FockState out = v.empty_like();
        out.note_dropped(v.truncation_events());
        for (int n = 1; n <= p.K; n += 2) {
            TPoly c = detail::half_beta_pow(n, p) * Rational(2 * sign, n);
            if (c.is_zero()) continue;
            out = out + apply_boson(dual ? -n : n, v) * c;
        }
        return out;
    };
    FockState acc = s, term = s;
    for (int k = 1; k <= p.K + 1; ++k) {
        term = theta(term) * TPoly(Rational(1, k), p);
        if (term.is_zero()) break;
        acc = acc + term;
    }
    return acc;
}

// ---- expectation values ----

inline TPoly vev_direct(const std::vector<ModeOp>& ops, const Profile& p, Truncation t = {})
{
    FockState s = FockState::vacuum(p, t);
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) s = apply_op(*it, s);
    return s.vacuum_coeff();
}

inline TPoly pair_vev(const ModeOp& a, const ModeOp& b, const Profile& p)
{
    TPoly s(0, p);
    for (auto& [m, c] : a.modes) {
        if (m > 0) continue;
        auto it = b.modes.find(-m);
        if (it != b.modes.end()) s += c * it->second * two_point(m, -m);
    }
    return s;
}

inline TPoly vev_wick(const std::vector<ModeOp>& ops, const Profile& p)
{
    for (auto& o : ops)
        if (!o.linear()) throw std::invalid_argument("vev_wick: non-linear operator " + o.name);
    int r = int(ops.size());
    if (r % 2) return TPoly(0, p);
    SkewMatrix A(r, p);
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) A.set(i, j, pair_vev(ops[i], ops[j], p));
    return pfaffian(A).with_profile(p);
}

// ---- Hamiltonians ----

enum class Side { x, y };

// q(z) with e^{H} phi(z) e^{-H} = q(z) phi(z); coefficients q_0..q_N
inline std::vector<TPoly> hamiltonian_q(Side side, const Alphabet& vars, int N, const Profile& p)
{
    std::vector<TPoly> q(N + 1, TPoly(0, p));
    q[0] = TPoly(1, p);
    auto mul_ratio = [&](const TPoly& u, int sgn) {
        // q *= ((1 + u z)/(1 - u z))^{sgn}
        std::vector<TPoly> up(N + 1, TPoly(0, p));
        up[0] = TPoly(1, p);
        for (int k = 1; k <= N; ++k) up[k] = up[k - 1] * u;
        std::vector<TPoly> f(N + 1, TPoly(0, p));
        f[0] = TPoly(1, p);
        for (int k = 1; k <= N; ++k) f[k] = up[k] * Rational(sgn > 0 ? 2 : (k % 2 ? -2 : 2));
        std::vector<TPoly> r(N + 1, TPoly(0, p));
        for (int a = 0; a <= N; ++a) {
            if (q[a].is_zero()) continue;
            for (int k = 0; a + k <= N; ++k)
                if (!f[k].is_zero()) r[a + k] += q[a] * f[k];
        }
        q = r;
    };
    TPoly half_beta = TPoly::beta(p) * Rational(1, 2);
    for (auto& v : vars) {
        if (side == Side::y) {
            mul_ratio(v + half_beta, 1);
            mul_ratio(half_beta, -1);
        } else {
            mul_ratio(v * unit_inverse(TPoly(1, p) + half_beta * v), 1);
        }
    }
    return q;
}

// Q_{m,n} = <vac| e^H phi_m phi_n |vac>
class HamiltonianTable {
public:
    HamiltonianTable(Side side, const Alphabet& vars, int N, const Profile& p)
        : p_(p), N_(N), q_(hamiltonian_q(side, vars, 2 * N + 2, p))
    {
    }
    const TPoly& qk(int k) const
    {
        static const TPoly zero;
        if (k < 0) return zero;
        if (k >= int(q_.size())) throw CapOverflow("hamiltonian table: index beyond window");
        return q_[k];
    }
    TPoly Q(int m, int n)
    {
        auto key = std::make_pair(m, n);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        TPoly s(0, p_);
        for (int k = 0; k <= n; ++k) {
            if (m + k < 0) continue;
            TPoly t = qk(m + k) * qk(n - k);
            s += k == 0 ? t : t * Rational(k % 2 ? -2 : 2);
        }
        memo_.emplace(key, s);
        return s;
    }
    // <vac| e^H phi_{m_1} ... phi_{m_k} |vac>
    TPoly basis_value(const Modes& m)
    {
        if (m.empty()) return TPoly(1, p_);
        if (m.size() % 2) return TPoly(0, p_);
        if (auto it = bmemo_.find(m); it != bmemo_.end()) return it->second;
        int r = int(m.size());
        SkewMatrix A(r, p_);
        for (int i = 0; i < r; ++i)
            for (int j = i + 1; j < r; ++j) A.set(i, j, Q(m[i], m[j]));
        TPoly v = pfaffian(A).with_profile(p_);
        bmemo_.emplace(m, v);
        return v;
    }
    // <vac| e^H (sum of linear ops) |vac> by Wick
    TPoly ops_value(const std::vector<ModeOp>& ops)
    {
        int r = int(ops.size());
        if (r % 2) return TPoly(0, p_);
        SkewMatrix A(r, p_);
        for (int i = 0; i < r; ++i)
            for (int j = i + 1; j < r; ++j) {
                TPoly s(0, p_);
                for (auto& [a, ca] : ops[i].modes)
                    for (auto& [b, cb] : ops[j].modes) {
                        if (b < 0) continue;
                        TPoly q = Q(a, b);
                        if (!q.is_zero()) s += ca * cb * q;
                    }
                A.set(i, j, s);
            }
        return pfaffian(A).with_profile(p_);
    }

private:
    Profile p_;
    int N_;
    std::vector<TPoly> q_;
    std::map<std::pair<int, int>, TPoly> memo_;
    std::map<Modes, TPoly> bmemo_;
};

// <vac| e^{H(vars)} |state> through the Pfaffian of two-point functions
inline TPoly hamiltonian_vev(Side side, const Alphabet& vars, const FockState& s, const Profile& p)
{
    HamiltonianTable T(side, vars, s.max_energy() + 1, p);
    TPoly out(0, p);
    for (auto& [k, v] : s.terms()) {
        if (k.size() % 2) continue;
        TPoly b = T.basis_value(k);
        if (!b.is_zero()) out += v * b;
    }
    return out;
}

// the same value by expanding e^H with bosons; small inputs only
inline TPoly hamiltonian_vev_bosonic(Side side, const Alphabet& vars, const FockState& s, const Profile& p)
{
    int E = s.max_energy();
    std::vector<TPoly> pn(E + 1, TPoly(0, p));
    TPoly half_beta = TPoly::beta(p) * Rational(1, 2);
    for (int n = 1; n <= E; n += 2) {
        for (auto& v : vars) {
            if (side == Side::y) pn[n] += (v + half_beta).pow(n) - half_beta.pow(n);
            else pn[n] += (v * unit_inverse(TPoly(1, p) + half_beta * v)).pow(n);
        }
    }
    auto H = [&](const FockState& v) {
        FockState out = v.empty_like();
        for (int n = 1; n <= E; n += 2) out = out + apply_boson(n, v) * (pn[n] * Rational(2, n));
        return out;
    };
    TPoly total = s.vacuum_coeff();
    FockState term = s;
    for (int k = 1; k <= E; ++k) {
        term = H(term) * TPoly(Rational(1, k), p);
        if (term.is_zero()) break;
        total += term.vacuum_coeff();
    }
    return total;
}

// ---- state vectors ----

enum class StateKind { gq, GP, GQ, gp };

struct StateSpec {
    StateKind kind;
    bool equivariant;
};

inline StateKind state_kind(Fam f)
{
    switch (f) {
    case Fam::GP: return StateKind::GP;
    case Fam::GQ: return StateKind::GQ;
    case Fam::gp: return StateKind::gp;
    default: return StateKind::gq;
    }
}

// the operator factors of the state, left to right; exponent tokens are implied by the kind
inline std::vector<ModeOp> state_factors(StateSpec spec, const StrictPartition& la, const Alphabet& b,
                                         const ModeContext& ctx)
{
    std::vector<ModeOp> ops;
    const Profile& p = ctx.prof;
    std::vector<int> parts = la.parts;
    if (spec.kind != StateKind::gp && parts.size() % 2) parts.push_back(0);
    for (int li : parts) {
        int k = spec.equivariant ? li : 0;
        switch (spec.kind) {
        case StateKind::gq: ops.push_back(mode_builder(ModeName::phi_square_k, li, k, b, ctx)); break;
        case StateKind::GQ: ops.push_back(mode_builder(ModeName::phi_round_k, li, k, b, ctx)); break;
        case StateKind::GP:
            ops.push_back(li == 0 ? mode_builder(ModeName::phi_round, 0, 0, b, ctx)
                                  : mode_builder(ModeName::Phi_round_k, li, spec.equivariant ? li : 1, b, ctx));
            break;
        case StateKind::gp:
            if (spec.equivariant) ops.push_back(mode_builder(ModeName::Phi_square_kc, li, li, b, ctx));
            else {
                ModeOp o = mode_builder(ModeName::Phi_square, li, 0, b, ctx);
                o.scalar = detail::half_beta_pow(li, p, -1) * Rational(-1, 2);
                ops.push_back(o);
            }
            break;
        }
    }
    return ops;
}

inline FockState build_state(StateSpec spec, const StrictPartition& la, const Alphabet& b, const ModeContext& ctx,
                             Truncation t)
{
    const Profile& p = ctx.prof;
    auto ops = state_factors(spec, la, b, ctx);
    if (spec.kind == StateKind::gp) {
        FockState s = FockState::vacuum(p, t) + apply_phi(0, FockState::vacuum(p, t));
        for (int j = int(ops.size()) - 1; j >= 0; --j) {
            // the equivariant state has no e^{-theta} next to (phi_0 + 1)
            if (!(spec.equivariant && j == int(ops.size()) - 1)) s = apply_exp_theta(-1, false, s);
            s = apply_op(ops[j], s);
        }
        return s;
    }
    bool dual = spec.kind != StateKind::gq;
    int sign = dual ? 1 : -1;
    FockState s = FockState::vacuum(p, t);
    for (int j = int(ops.size()) - 1; j >= 0; --j) {
        s = apply_exp_theta(sign, dual, s);
        s = apply_op(ops[j], s);
    }
    return s;
}

// ---- family values through the fermionic route ----

// truncation contract for the family at profile prof (y-cap for gq/gp, x-cap for GP/GQ)
inline TPoly fermion_function(Fam fam, const StrictPartition& la, const Alphabet& b, const Alphabet& vars,
                              const Profile& prof, bool equivariant)
{
    int K = prof.K;
    bool xs = x_side(fam);
    int D = prof.caps[xs ? FX : FY];
    if (!prof.bounded() || D >= INF) throw std::invalid_argument("fermion_function: caps must be finite");
    Profile pb = prof;
    if (equivariant) {
        // energy + b-degree - beta-degree = |la| on the x-side, energy + beta-degree - b-degree = |la| on the y-side
        int bcap = xs ? la.size() + K : std::max(0, D + K - la.size());
        pb = prof.with_cap(FB, std::min(prof.caps[FB], bcap));
    }
    int W = xs ? D : D + K;
    ModeContext ctx{pb, W};
    Truncation t{W, !xs};
    FockState s = build_state({state_kind(fam), equivariant}, la, b, ctx, t);
    return hamiltonian_vev(xs ? Side::x : Side::y, vars, s, pb).with_profile(prof);
}

// ---- duality pairing ----

// <mu|_{(GP,c)} |la>_{(gq,b)} by Wick's theorem after moving the exponentials to the vacuum
inline TPoly dual_inner(const StrictPartition& mu, const StrictPartition& la, const Alphabet& b, const Alphabet& c,
                        const Profile& prof)
{
    int K = prof.K;
    if (!prof.bounded()) throw std::invalid_argument("dual_inner: beta order must be finite");
    int bdeg = mu.size() - la.size() + K;
    if (bdeg < 0) return TPoly(0, prof);
    Profile p = prof.with_cap(FB, std::min(prof.caps[FB], bdeg)).with_cap(FC, std::min(prof.caps[FC], bdeg));
    int W = (mu.empty() ? 0 : mu.parts[0]) + K;
    ModeContext ctx{p, W};
    auto A = state_factors({StateKind::GP, true}, mu, c, ctx);
    auto B = state_factors({StateKind::gq, true}, la, b, ctx);
    std::vector<ModeOp> ops;
    int ra = int(A.size()), rb = int(B.size());
    for (int j = ra - 1; j >= 0; --j) ops.push_back(conjugate_theta(star(A[j]), ra - j, false, p));
    for (int j = 0; j < rb; ++j) ops.push_back(conjugate_theta(B[j], ra - j, false, p));
    return vev_wick(ops, p).with_profile(prof);
}

// the same pairing by explicit state vectors
inline TPoly dual_inner_states(const StrictPartition& mu, const StrictPartition& la, const Alphabet& b,
                               const Alphabet& c, const Profile& prof)
{
    int K = prof.K;
    int bdeg = mu.size() - la.size() + K;
    if (bdeg < 0) return TPoly(0, prof);
    Profile p = prof.with_cap(FB, std::min(prof.caps[FB], bdeg)).with_cap(FC, std::min(prof.caps[FC], bdeg));
    int W = mu.size() + K;
    ModeContext ctx{p, W};
    FockState s = build_state({StateKind::gq, true}, la, b, ctx, Truncation{W, true});
    auto A = state_factors({StateKind::GP, true}, mu, c, ctx);
    s = s.with_truncation({});
    for (auto& a : A) {
        s = apply_op(star(a), s);
        s = apply_exp_theta(1, false, s);
    }
    return s.vacuum_coeff().with_profile(prof);
}

} // namespace kfun
