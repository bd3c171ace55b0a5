#pragma once

#include "gfun.hpp"

#include <map>

namespace kfun {

// binom(n, k) with binom(-n, k) = (-1)^k binom(n + k - 1, k)
inline Rational gen_binom(int n, int k)
{
    if (k < 0) return 0;
    Rational r = 1;
    for (int t = 0; t < k; ++t) r = r * Rational(n - t) / Rational(t + 1);
    return r;
}

inline TPoly d_lambda(const StrictPartition& la, const Alphabet& b, const Profile& p)
{
    TPoly d(1, p);
    for (int li : la.parts) {
        if (li - 1 > int(b.size())) throw std::invalid_argument("d_lambda: alphabet too short");
        for (int l = 0; l < li - 1; ++l) d *= TPoly(1, p) + TPoly::beta(p) * b[l];
    }
    return d;
}

inline Alphabet prefix(const Alphabet& a, int n)
{
    if (n > int(a.size())) throw std::invalid_argument("alphabet too short");
    return Alphabet(a.begin(), a.begin() + std::max(0, n));
}

// sum_k beta^k binom(i-j, k) h_{mu_i - la_j + k}(b_1..b_{la_j}; -c_1..-c_{mu_i - 1}), 1-based i, j
inline TPoly jt_entry(int i, int j, const StrictPartition& la, const StrictPartition& mu, const Alphabet& b,
                      const Alphabet& c, const Profile& p)
{
    Alphabet bs = prefix(b, la.part(j)), cs = prefix(c, mu.part(i) - 1);
    TPoly s(0, p);
    for (int k = 0; k <= p.K; ++k) {
        Rational bn = gen_binom(i - j, k);
        if (bn == 0) continue;
        s += TPoly::beta(p).pow(k) * supersym_h(mu.part(i) - la.part(j) + k, bs, cs, p) * bn;
    }
    return s;
}

inline TPoly jt_coefficient(const StrictPartition& la, const StrictPartition& mu, const Alphabet& b,
                            const Alphabet& c, const Profile& p)
{
    if (!p.bounded()) throw std::invalid_argument("jt_coefficient: beta order must be finite");
    int r = la.length();
    if (mu.length() != r) return TPoly(0, p);
    Matrix D(r, std::vector<TPoly>(r));
    for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= r; ++j) D[i - 1][j - 1] = jt_entry(i, j, la, mu, b, c, p);
    return d_lambda(la, b, p) * unit_inverse(d_lambda(mu, c, p)) * determinant(D);
}

// pi_i = partial_i o (1 + beta b_{i+1}) on the b-variables
inline TPoly pi_op(int i, const TPoly& f)
{
    Profile p = f.profile();
    TPoly g = (TPoly(1, p) + TPoly::beta(p) * TPoly::b(i + 1, p)) * f;
    return divide_by_linear(g - swap_b(g, i), var_b(i), var_b(i + 1));
}

// c may be given as values (the pi_i act on b only)
inline TPoly groth_top_cell(int n, const Profile& p, const Alphabet* c = nullptr)
{
    TPoly f(1, p);
    for (int i = 1; i < n; ++i)
        for (int j = 1; i + j <= n; ++j) f *= ominus(TPoly::b(i, p), c ? c->at(j - 1) : TPoly::c(j, p));
    return f;
}

// G_w along the given reduced word a_1..a_k of w0 w, applying pi_{a_1} first
inline TPoly double_grothendieck_word(const Permutation& w, int n, const std::vector<int>& word, const Profile& p)
{
    if (w.support() > n) throw std::invalid_argument("double_grothendieck: permutation outside S_n");
    if (perm_of_word(word) != Permutation::longest(n) * w || int(word.size()) != (Permutation::longest(n) * w).length())
        throw std::invalid_argument("double_grothendieck: not a reduced word of w0 w");
    TPoly f = groth_top_cell(n, p);
    for (int a : word) f = pi_op(a, f);
    return f;
}

// memoized descent from the top cell of S_n, n = support of w
class GrothendieckTable {
public:
    explicit GrothendieckTable(const Profile& p, std::optional<Alphabet> c = std::nullopt) : p_(p), c_(std::move(c))
    {
        if (!p.bounded()) throw std::invalid_argument("GrothendieckTable: beta order must be finite");
    }
    const Profile& profile() const { return p_; }
    const TPoly& get(const Permutation& w) { return get(w, std::max(1, w.support())); }
    const TPoly& get(const Permutation& w, int n)
    {
        auto key = std::make_pair(n, w.w);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        TPoly val;
        if (w == Permutation::longest(n)) val = groth_top_cell(n, p_, c_ ? &*c_ : nullptr);
        else {
            int i = 1;
            while (w(i) > w(i + 1)) ++i;
            // w s_i is longer, and pi_i G_{w s_i} = G_w
            val = pi_op(i, get(w * Permutation::simple(i), n));
        }
        return memo_.emplace(key, std::move(val)).first->second;
    }

private:
    Profile p_;
    std::optional<Alphabet> c_;
    std::map<std::pair<int, std::vector<int>>, TPoly> memo_;
};

inline TPoly double_grothendieck(const Permutation& w, int n, const Profile& p)
{
    if (w.support() > n) throw std::invalid_argument("double_grothendieck: permutation outside S_n");
    GrothendieckTable t(p);
    return t.get(w, std::max(n, 1));
}

struct ScopeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline TPoly groth_coefficient(const StrictPartition& la, const StrictPartition& mu, GrothendieckTable& table)
{
    int r = la.length();
    if (mu.length() != r || !mu.contains(la)) throw ScopeError("groth_coefficient: need la inside mu of equal length");
    if (!la.contains(staircase(r))) throw ScopeError("groth_coefficient: staircase not contained in la");
    Permutation v = quotient_perm(la, mu);
    TPoly out = table.get(v);
    if (auto i = rightmost_bottom_content(la, r)) out = out + TPoly::beta(table.profile()) * table.get(v * Permutation::simple(*i));
    return out;
}

// C^{X}_{mu la}(c, b) for all la inside mu with l(la) = l(mu), from the expansion
// X_mu(x|c) = sum_la C_{mu la} X_la(x|b) evaluated at x = b_nu (triangular by vanishing).
// Evaluations X_la(b_nu|b) are kept across calls.
class ExpansionSolver {
public:
    ExpansionSolver(Fam fam, Alphabet b, Alphabet c, const Profile& p) : fam_(fam), b_(std::move(b)), c_(std::move(c)), p_(p)
    {
        if (!x_side(fam)) throw std::invalid_argument("solve_coefficients: GP or GQ only");
    }

    std::map<StrictPartition, TPoly> solve(const StrictPartition& mu)
    {
        int r = mu.length();
        std::vector<StrictPartition> nus;
        for (auto& nu : strict_subpartitions(mu))
            if (nu.length() == r) nus.push_back(nu);
        std::sort(nus.begin(), nus.end(), [](auto& a, auto& z) { return a.size() != z.size() ? a.size() < z.size() : a < z; });
        std::map<StrictPartition, TPoly> C;
        for (auto& nu : nus) {
            TPoly rhs = extract_fn(fam_, mu, c_, bmu_alphabet(nu, b_), p_);
            for (auto& [la, cl] : C)
                if (nu.contains(la)) rhs -= cl * at(la, nu);
            C[nu] = exact_divide(rhs, at(nu, nu));
        }
        return C;
    }

    // X_la(b_nu | b)
    const TPoly& at(const StrictPartition& la, const StrictPartition& nu)
    {
        auto key = std::make_pair(la, nu);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        return memo_.emplace(key, extract_fn(fam_, la, b_, bmu_alphabet(nu, b_), p_)).first->second;
    }

private:
    Fam fam_;
    Alphabet b_, c_;
    Profile p_;
    std::map<std::pair<StrictPartition, StrictPartition>, TPoly> memo_;
};

inline std::map<StrictPartition, TPoly> solve_coefficients(Fam fam, const StrictPartition& mu, const Alphabet& b,
                                                           const Alphabet& c, const Profile& p)
{
    return ExpansionSolver(fam, b, c, p).solve(mu);
}

// [u^{m+d} w^n] (1+beta w)^A (1+beta/u)^B prod_{k<m}(1 - u c_k) / prod_{k<=n}(1 - b_k/w) * uw/(1-uw)
inline TPoly contour_lhs(int A, int B, int m, int n, int d, const Alphabet& b, const Alphabet& c, const Profile& p)
{
    int K = p.K;
    Alphabet cs = prefix(c, m - 1), bs = prefix(b, n);
    TPoly be = TPoly::beta(p);
    // P(u) = (1+beta/u)^B prod(1 - u c_k), exponents in [-K, m-1]
    std::map<int, TPoly> P;
    for (int j = 0; j <= K; ++j)
        for (int e = 0; e <= m - 1; ++e) {
            TPoly t = be.pow(j) * elem_sym(e, cs, p) * gen_binom(B, j) * Rational(e % 2 ? -1 : 1);
            if (!t.is_zero()) P[e - j] += t;
        }
    TPoly total(0, p);
    int M = m + d;
    for (auto& [a, pa] : P) {
        int k = M - a;
        if (k < 1) continue;
        int e = n - k;
        // [w^e] (1+beta w)^A prod(1 - b_k/w)^{-1} = sum_j binom(A, j) beta^j h_{j - e}(b)
        TPoly q(0, p);
        for (int j = std::max(0, e); j <= K; ++j) q += be.pow(j) * complete_sym(j - e, bs, p) * gen_binom(A, j);
        total += pa * q;
    }
    return total;
}

inline TPoly contour_rhs(int A, int B, int m, int n, int d, const Alphabet& b, const Alphabet& c, const Profile& p)
{
    Alphabet cs = prefix(c, m - 1), bs = prefix(b, n);
    TPoly s(0, p);
    for (int l = 0; l <= p.K; ++l) s += TPoly::beta(p).pow(l) * supersym_h(l - n + m + d, bs, cs, p) * gen_binom(A + B, l);
    return s;
}

inline StrictPartition plus_staircase(const Partition& eta, int r)
{
    std::vector<int> v;
    for (int i = 1; i <= r; ++i) v.push_back(eta.part(i) + r + 1 - i);
    return StrictPartition(v);
}

// the determinant side of the factorial Grothendieck Jacobi-Trudi formula
inline TPoly factorial_groth_jt_det(const Partition& eta, int r, const Alphabet& b, const Alphabet& c, const Profile& p)
{
    if (eta.length() > r) throw std::invalid_argument("factorial_groth_jt: length exceeds r");
    return jt_coefficient(staircase(r), plus_staircase(eta, r), b, c, p);
}

// non-equivariant determinants
inline TPoly jt_coefficient_gq_noneq(const StrictPartition& la, const StrictPartition& mu, const Alphabet& b,
                                     const Profile& p)
{
    int r = la.length();
    if (mu.length() != r) return TPoly(0, p);
    Matrix D(r, std::vector<TPoly>(r));
    for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= r; ++j) {
            TPoly s(0, p);
            for (int k = 0; k <= p.K; ++k)
                s += TPoly::beta(p).pow(k) * complete_sym(mu.part(i) - la.part(j) + k, prefix(b, la.part(j)), p) *
                     gen_binom(i - j, k);
            D[i - 1][j - 1] = s;
        }
    return d_lambda(la, b, p) * determinant(D);
}

inline TPoly jt_coefficient_gp_noneq(const StrictPartition& la, const StrictPartition& mu, const Alphabet& b,
                                     const Profile& p)
{
    int r = la.length();
    if (mu.length() != r) return TPoly(0, p);
    Matrix D(r, std::vector<TPoly>(r));
    for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= r; ++j) {
            TPoly s(0, p);
            for (int k = 0; k <= p.K; ++k)
                s += TPoly::beta(p).pow(k) * elem_sym(la.part(i) - mu.part(j) + k, negated(prefix(b, la.part(i) - 1)), p) *
                     gen_binom(i - j, k);
            D[i - 1][j - 1] = s;
        }
    return unit_inverse(d_lambda(la, b, p)) * determinant(D);
}

} // namespace kfun
