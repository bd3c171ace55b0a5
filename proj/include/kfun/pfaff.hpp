#pragma once

#include "coeff.hpp"
#include "report.hpp"

#include <bit>
#include <unordered_map>

namespace kfun {

// upper triangle stored row-major; a(j, i) = -a(i, j)
class SkewMatrix {
public:
    SkewMatrix() = default;
    explicit SkewMatrix(int n, const Profile& p = Profile::unbounded()) : n_(n), a_(n * n, TPoly(0, p)) {}
    int size() const { return n_; }
    void set(int i, int j, const TPoly& v)
    {
        if (i == j) throw std::invalid_argument("SkewMatrix: diagonal is zero");
        if (i < j) a_[i * n_ + j] = v;
        else a_[j * n_ + i] = -v;
    }
    TPoly get(int i, int j) const
    {
        if (i == j) return TPoly(0, a_.empty() ? Profile::unbounded() : a_[0].profile());
        return i < j ? a_[i * n_ + j] : -a_[j * n_ + i];
    }
    const TPoly& upper(int i, int j) const { return a_[i * n_ + j]; }
    Matrix dense() const
    {
        Matrix M(n_, std::vector<TPoly>(n_));
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) M[i][j] = get(i, j);
        return M;
    }

private:
    int n_ = 0;
    std::vector<TPoly> a_;
};

// expansion along the first remaining index, memoized on the remaining set
inline TPoly pfaffian(const SkewMatrix& A)
{
    int n = A.size();
    if (n % 2) throw std::invalid_argument("pfaffian: odd size");
    if (n == 0) return TPoly(1);
    if (n > 30) throw std::invalid_argument("pfaffian: too large");
    std::unordered_map<uint32_t, TPoly> memo;
    std::function<TPoly(uint32_t)> rec = [&](uint32_t rest) -> TPoly {
        if (!rest) return TPoly(1);
        if (auto it = memo.find(rest); it != memo.end()) return it->second;
        int i = std::countr_zero(rest);
        uint32_t r1 = rest & ~(1u << i);
        TPoly s(0, A.upper(0, 1).profile());
        int sign = 1;
        for (int j = i + 1; j < n; ++j) {
            if (!(r1 & (1u << j))) continue;
            const TPoly& a = A.upper(i, j);
            if (!a.is_zero()) {
                TPoly t = a * rec(r1 & ~(1u << j));
                s = sign > 0 ? s + t : s - t;
            }
            sign = -sign;
        }
        memo.emplace(rest, s);
        return s;
    };
    return rec(n == 32 ? ~0u : ((1u << n) - 1));
}

// coefficients a^{i,j}_{p,q} of (1+beta z_i)^{1-i} (1+beta z_j)^{1-j} (z_i - z_j)/(z_i (+) z_j),
// expanded with |z_j| << |z_i|; i, j are 1-based
inline TPoly a_coeff(int i, int j, int p, int q, const Profile& prof)
{
    if (!prof.bounded()) throw std::invalid_argument("a_coeff: beta order must be finite");
    if (q < 0 || p < -q) return TPoly(0, prof);
    // (1 - s)/(1 + s + beta z_j), s = z_j / z_i: coefficient of s^a (beta z_j)^b
    auto cab = [](int a, int b) {
        Rational v = gen_binom(a + b, b);
        if (a >= 1) v += gen_binom(a + b - 1, b);
        return (a + b) % 2 ? Rational(-v) : v;
    };
    int K = prof.K;
    TPoly out(0, prof);
    for (int a = 0; a <= q; ++a) {
        int k = p + a; // from (1+beta z_i)^{1-i}
        if (k < 0 || k > K) continue;
        for (int l = 0; a + l <= q && k + l <= K; ++l) {
            int b = q - a - l;
            int e = b + k + l;
            if (e > K) continue;
            Rational v = cab(a, b) * gen_binom(1 - i, k) * gen_binom(1 - j, l);
            if (v != 0) out += TPoly::beta(prof).pow(e) * v;
        }
    }
    return out;
}

struct ACoeffTable {
    int i, j;
    std::map<std::pair<int, int>, TPoly> a;
};

inline ACoeffTable a_coeffs(int i, int j, int pmax, int qmax, const Profile& prof)
{
    if (i >= j) throw std::invalid_argument("a_coeffs: need i < j");
    ACoeffTable t{i, j, {}};
    for (int q = 0; q <= qmax; ++q)
        for (int p = -q; p <= pmax; ++p) {
            TPoly v = a_coeff(i, j, p, q, prof);
            if (!v.is_zero()) t.a.emplace(std::make_pair(p, q), v);
        }
    return t;
}

// Pf(G^{i,j}_{la_i, la_j}) against the direct extraction of
// prod_i G^i(u_i) prod_{i<j} (u_j - u_i)/(u_j (+) u_i), with G^i given in w = u^{-1}
struct KnuthSides {
    TPoly pfaffian_side, extraction_side;
};

inline KnuthSides knuth_sides(const StrictPartition& la, const std::vector<Factor1>& G, const Profile& prof)
{
    int r = la.length();
    if (r % 2) throw std::invalid_argument("knuth_check: length must be even");
    if (int(G.size()) != r) throw std::invalid_argument("knuth_check: one series per row");
    SkewMatrix A(r, prof);
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
            A.set(i, j, extract_product({G[i], G[j]}, {la.parts[i], la.parts[j]}, CrossKind::UMinus, prof));
    return {pfaffian(A), extract_product(G, la.parts, CrossKind::UMinus, prof)};
}

struct PfaffianOptions {
    // extra room beyond the bounds q <= la_j, p <= la_i; those bounds suffice only without b,
    // since equivariant rows have terms g_n with n < 0. -1 picks the b-degree cap
    int widen = -1;
};

// the entry sum_{q<=la_j+widen} sum_{-q<=p<=la_i+widen} a_{pq} g^i_{la_i-p} g^j_{la_j-q}
inline TPoly gq_pfaffian_entry(int i, int j, int li, int lj, const Factor1& gi, const Factor1& gj,
                               const Profile& prof, int widen)
{
    if (li - (-lj - widen) > gi.hi() || lj + widen > gj.hi()) throw CapOverflow("gq_pfaffian: window overflow");
    TPoly s(0, prof);
    for (int q = 0; q <= lj + widen; ++q) {
        const TPoly* g2 = gj.at(lj - q);
        if (!g2) continue;
        for (int p = -q; p <= li + widen; ++p) {
            const TPoly* g1 = gi.at(li - p);
            if (!g1) continue;
            TPoly a = a_coeff(i, j, p, q, prof);
            if (!a.is_zero()) s += a * *g1 * *g2;
        }
    }
    return s;
}

// Pfaffian formula for gq_la(y|b); b = nullopt gives the non-equivariant function
inline TPoly gq_pfaffian(const StrictPartition& la, const std::optional<Alphabet>& b, const Alphabet& ys,
                         const Profile& prof, const PfaffianOptions& opt = {})
{
    int K = prof.K, D = prof.caps[FY];
    if (!prof.bounded() || D >= INF) throw std::invalid_argument("gq_pfaffian: needs finite beta order and y-degree");
    if (la.empty()) return TPoly(1, prof);
    std::vector<int> parts = la.parts;
    if (parts.size() % 2) parts.push_back(0);
    int r = int(parts.size());
    int bcap = b ? std::max(0, D + K - la.size()) : 0;
    int widen = opt.widen < 0 ? bcap : opt.widen;
    Profile pb = prof.with_cap(FB, std::min(prof.caps[FB], bcap)).with_cap(FC, std::min(prof.caps[FC], bcap));
    int top = parts[0] + parts[1] + 2 * widen + D + K;
    TSeries g = single_row_y(Fam::gq, ys, top, pb);
    std::vector<TPoly> gqn;
    for (int n = 0; n <= top; ++n) gqn.push_back(g.coeff({n}));
    std::vector<Factor1> rows;
    for (int k : parts) {
        if (b && k > 0) rows.push_back(gq_shifted(k, *b, gqn, -bcap - widen, top, pb));
        else rows.push_back(Factor1{0, gqn});
    }
    SkewMatrix A(r, pb);
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
            A.set(i, j, gq_pfaffian_entry(i + 1, j + 1, parts[i], parts[j], rows[i], rows[j], pb, widen));
    return pfaffian(A).with_profile(prof);
}

} // namespace kfun
