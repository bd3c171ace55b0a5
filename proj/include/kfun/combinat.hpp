#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kfun {

inline std::vector<int> parse_int_list(const std::string& s)
{
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stoi(tok));
    }
    return out;
}

inline std::string join_ints(const std::vector<int>& v)
{
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

struct StrictPartition {
    std::vector<int> parts;

    StrictPartition() = default;
    StrictPartition(std::initializer_list<int> l) : StrictPartition(std::vector<int>(l)) {}
    explicit StrictPartition(std::vector<int> p) : parts(std::move(p))
    {
        for (size_t i = 0; i < parts.size(); ++i) {
            if (parts[i] <= 0) throw std::invalid_argument("strict partition: non-positive part");
            if (i && parts[i] >= parts[i - 1]) throw std::invalid_argument("strict partition: not strictly decreasing");
        }
    }
    static StrictPartition parse(const std::string& s) { return StrictPartition(parse_int_list(s)); }

    int length() const { return int(parts.size()); }
    int size() const { return std::accumulate(parts.begin(), parts.end(), 0); }
    bool empty() const { return parts.empty(); }
    int operator[](int i) const { return i < length() ? parts[i] : 0; }
    // part i counted from 1, zero beyond the length
    int part(int i) const { return i >= 1 && i <= length() ? parts[i - 1] : 0; }
    bool contains(const StrictPartition& o) const
    {
        if (o.length() > length()) return false;
        for (int i = 0; i < o.length(); ++i)
            if (o.parts[i] > parts[i]) return false;
        return true;
    }
    std::string str() const { return "(" + join_ints(parts) + ")"; }
    auto operator<=>(const StrictPartition&) const = default;
};

inline StrictPartition staircase(int r)
{
    std::vector<int> p;
    for (int i = r; i >= 1; --i) p.push_back(i);
    return StrictPartition(p);
}

// all strict partitions of size <= n, ordered by size then reverse lex
inline std::vector<StrictPartition> strict_partitions_upto(int n, int max_len = 1 << 20)
{
    std::vector<StrictPartition> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int rem, int maxpart) {
        out.push_back(StrictPartition(cur));
        if (int(cur.size()) >= max_len) return;
        for (int p = std::min(rem, maxpart); p >= 1; --p) {
            cur.push_back(p);
            rec(rem - p, p - 1);
            cur.pop_back();
        }
    };
    rec(n, n);
    std::stable_sort(out.begin(), out.end(), [](const StrictPartition& a, const StrictPartition& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.parts > b.parts;
    });
    return out;
}

// strict partitions contained in mu (as shifted diagrams)
inline std::vector<StrictPartition> strict_subpartitions(const StrictPartition& mu)
{
    std::vector<StrictPartition> out;
    for (auto& p : strict_partitions_upto(mu.size(), mu.length()))
        if (mu.contains(p)) out.push_back(p);
    return out;
}

struct Partition {
    std::vector<int> parts;

    Partition() = default;
    Partition(std::initializer_list<int> l) : Partition(std::vector<int>(l)) {}
    explicit Partition(std::vector<int> p) : parts(std::move(p))
    {
        for (size_t i = 0; i < parts.size(); ++i) {
            if (parts[i] < 0) throw std::invalid_argument("partition: negative part");
            if (i && parts[i] > parts[i - 1]) throw std::invalid_argument("partition: not weakly decreasing");
        }
        while (!parts.empty() && parts.back() == 0) parts.pop_back();
    }
    static Partition parse(const std::string& s) { return Partition(parse_int_list(s)); }
    int length() const { return int(parts.size()); }
    int size() const { return std::accumulate(parts.begin(), parts.end(), 0); }
    int part(int i) const { return i >= 1 && i <= length() ? parts[i - 1] : 0; }
    bool contains(const Partition& o) const
    {
        if (o.length() > length()) return false;
        for (int i = 0; i < o.length(); ++i)
            if (o.parts[i] > parts[i]) return false;
        return true;
    }
    std::string str() const { return "(" + join_ints(parts) + ")"; }
    auto operator<=>(const Partition&) const = default;
};

// partitions with at most r parts, each at most m
inline std::vector<Partition> partitions_in_box(int r, int m)
{
    std::vector<Partition> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int i, int maxpart) {
        if (i == r) {
            out.push_back(Partition(cur));
            return;
        }
        for (int p = maxpart; p >= 0; --p) {
            cur.push_back(p);
            rec(i + 1, p);
            cur.pop_back();
        }
    };
    rec(0, m);
    return out;
}

// ---- shifted diagrams and the hyperoctahedral action ----

struct Box {
    int row, col;
    int content() const { return col - row; }
    bool operator==(const Box&) const = default;
};

inline int content(const Box& b) { return b.content(); }

inline std::optional<Box> addable(const StrictPartition& la, int i)
{
    int l = la.length();
    for (int k = 1; k <= l; ++k)
        if (la.part(k) == i && (k == 1 || la.part(k) + 1 < la.part(k - 1))) return Box{k, k + la.part(k)};
    if (i == 0 && (l == 0 || la.part(l) >= 2)) return Box{l + 1, l + 1};
    return std::nullopt;
}

inline std::optional<Box> removable(const StrictPartition& la, int i)
{
    int l = la.length();
    for (int k = 1; k <= l; ++k)
        if (la.part(k) - 1 == i && (k == l || la.part(k) - 1 > la.part(k + 1))) return Box{k, k + la.part(k) - 1};
    return std::nullopt;
}

inline StrictPartition weyl_act(int i, const StrictPartition& la)
{
    std::vector<int> p = la.parts;
    if (auto b = addable(la, i)) {
        if (b->row > la.length()) p.push_back(1);
        else ++p[b->row - 1];
        return StrictPartition(p);
    }
    if (auto b = removable(la, i)) {
        if (--p[b->row - 1] == 0) p.pop_back();
        return StrictPartition(p);
    }
    return la;
}

using CoxeterWordB = std::vector<int>;

inline CoxeterWordB w_lambda(const StrictPartition& la)
{
    CoxeterWordB w;
    for (int k = la.length(); k >= 1; --k)
        for (int j = la.part(k) - 1; j >= 0; --j) w.push_back(j);
    return w;
}

// apply a word right to left
inline StrictPartition act_word(const CoxeterWordB& w, StrictPartition la)
{
    for (auto it = w.rbegin(); it != w.rend(); ++it) la = weyl_act(*it, la);
    return la;
}

// signed permutations of 1..n, window notation; s_0 negates the value 1
struct SignedPerm {
    std::vector<int> w;

    static SignedPerm identity(int n)
    {
        SignedPerm p;
        for (int i = 1; i <= n; ++i) p.w.push_back(i);
        return p;
    }
    int n() const { return int(w.size()); }
    void grow(int n)
    {
        while (int(w.size()) < n) w.push_back(int(w.size()) + 1);
    }
    // left multiplication acts on values
    SignedPerm left(int i) const
    {
        SignedPerm p = *this;
        p.grow(i + 1);
        for (int& v : p.w) {
            if (i == 0) {
                if (v == 1) v = -1;
                else if (v == -1) v = 1;
            } else if (std::abs(v) == i) v = v > 0 ? i + 1 : -(i + 1);
            else if (std::abs(v) == i + 1) v = v > 0 ? i : -i;
        }
        return p;
    }
    // right multiplication acts on positions
    SignedPerm right(int i) const
    {
        SignedPerm p = *this;
        p.grow(i + 1);
        if (i == 0) p.w[0] = -p.w[0];
        else std::swap(p.w[i - 1], p.w[i]);
        return p;
    }
    int length() const
    {
        int inv = 0, neg = 0;
        for (int a = 0; a < n(); ++a) {
            for (int b = a + 1; b < n(); ++b)
                if (w[a] > w[b]) ++inv;
            if (w[a] < 0) neg -= w[a];
        }
        return inv + neg;
    }
    // minimal length coset representative for W / S_infinity
    bool grassmannian() const
    {
        for (int a = 0; a + 1 < n(); ++a)
            if (w[a] > w[a + 1]) return false;
        return true;
    }
    bool operator==(const SignedPerm& o) const
    {
        int m = std::max(n(), o.n());
        SignedPerm a = *this, b = o;
        a.grow(m);
        b.grow(m);
        return a.w == b.w;
    }
};

inline SignedPerm signed_perm_of_word(const CoxeterWordB& word)
{
    SignedPerm p = SignedPerm::identity(1);
    for (int i : word) p = p.right(i);
    return p;
}

enum class Relation { Lower, HigherGrassmannian, HigherOther };

// position of s_i w relative to w for w = w_lambda
inline Relation relation_of(int i, const StrictPartition& la)
{
    SignedPerm w = signed_perm_of_word(w_lambda(la));
    SignedPerm sw = w.left(i);
    if (sw.length() < w.length()) return Relation::Lower;
    return sw.grassmannian() ? Relation::HigherGrassmannian : Relation::HigherOther;
}

// ---- type A permutations ----

struct Permutation {
    std::vector<int> w; // one-line, values 1..n

    Permutation() = default;
    explicit Permutation(std::vector<int> v) : w(std::move(v))
    {
        std::vector<int> s = w;
        std::sort(s.begin(), s.end());
        for (size_t i = 0; i < s.size(); ++i)
            if (s[i] != int(i) + 1) throw std::invalid_argument("permutation: not a bijection");
        normalize();
    }
    static Permutation identity() { return Permutation(); }
    static Permutation parse(const std::string& s) { return Permutation(parse_int_list(s)); }
    static Permutation simple(int i)
    {
        Permutation p;
        p.w.resize(i + 1);
        std::iota(p.w.begin(), p.w.end(), 1);
        std::swap(p.w[i - 1], p.w[i]);
        return p;
    }
    static Permutation longest(int n)
    {
        Permutation p;
        for (int i = n; i >= 1; --i) p.w.push_back(i);
        p.normalize();
        return p;
    }
    void normalize()
    {
        while (!w.empty() && w.back() == int(w.size())) w.pop_back();
    }
    int operator()(int i) const { return i <= int(w.size()) ? w[i - 1] : i; }
    int support() const { return int(w.size()); }
    Permutation operator*(const Permutation& o) const
    {
        int n = std::max(support(), o.support());
        Permutation p;
        for (int i = 1; i <= n; ++i) p.w.push_back((*this)(o(i)));
        p.normalize();
        return p;
    }
    Permutation inverse() const
    {
        Permutation p;
        p.w.resize(w.size());
        for (size_t i = 0; i < w.size(); ++i) p.w[w[i] - 1] = int(i) + 1;
        return p;
    }
    int length() const
    {
        int inv = 0;
        for (size_t a = 0; a < w.size(); ++a)
            for (size_t b = a + 1; b < w.size(); ++b)
                if (w[a] > w[b]) ++inv;
        return inv;
    }
    bool right_descent(int i) const { return (*this)(i) > (*this)(i + 1); }
    // reduced word a_1..a_k with w = s_{a_1}...s_{a_k}, peeling right descents
    std::vector<int> reduced_word(bool leftmost = true) const
    {
        std::vector<int> rev;
        Permutation p = *this;
        while (p.support() > 0) {
            int n = p.support(), pick = -1;
            if (leftmost) {
                for (int i = 1; i < n && pick < 0; ++i)
                    if (p.right_descent(i)) pick = i;
            } else {
                for (int i = n - 1; i >= 1 && pick < 0; --i)
                    if (p.right_descent(i)) pick = i;
            }
            rev.push_back(pick);
            p = p * simple(pick);
        }
        return {rev.rbegin(), rev.rend()};
    }
    bool r_grassmannian(int r) const
    {
        int n = std::max(support(), r + 1);
        for (int i = 1; i < n; ++i)
            if (i != r && (*this)(i) > (*this)(i + 1)) return false;
        return true;
    }
    std::string str() const { return "[" + join_ints(w) + "]"; }
    bool operator==(const Permutation& o) const { return w == o.w; }
    bool operator<(const Permutation& o) const { return w < o.w; }
};

inline Permutation perm_of_word(const std::vector<int>& word)
{
    Permutation p;
    for (int i : word) p = p * Permutation::simple(i);
    return p;
}

// every reduced word of w, sorted
inline std::vector<std::vector<int>> reduced_words(const Permutation& w)
{
    if (w.support() == 0) return {{}};
    std::vector<std::vector<int>> out;
    for (int i = 1; i < w.support(); ++i)
        if (w.right_descent(i))
            for (auto& u : reduced_words(w * Permutation::simple(i))) {
                u.push_back(i);
                out.push_back(std::move(u));
            }
    std::sort(out.begin(), out.end());
    return out;
}

// all permutations of S_n
inline std::vector<Permutation> all_perms(int n)
{
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    std::vector<Permutation> out;
    do out.push_back(Permutation(v));
    while (std::next_permutation(v.begin(), v.end()));
    return out;
}

struct GrassmannianPerm {
    Permutation perm;
    std::vector<int> word;
};

inline GrassmannianPerm grassmannian(const Partition& la, int r)
{
    if (la.length() > r) throw std::invalid_argument("grassmannian: length exceeds r");
    std::vector<int> word;
    for (int i = r; i >= 1; --i) {
        int li = la.part(i);
        for (int t = r - i + li; t >= r - i + 1; --t) word.push_back(t);
    }
    GrassmannianPerm g{perm_of_word(word), word};
    for (int i = 1; i <= r; ++i)
        if (g.perm(i) - i != la.part(r - i + 1)) throw std::logic_error("grassmannian: dictionary mismatch");
    return g;
}

inline Partition minus_staircase(const StrictPartition& la, int r)
{
    std::vector<int> p;
    for (int i = 1; i <= r; ++i) {
        int d = la.part(i) - (r + 1 - i);
        if (d < 0) throw std::invalid_argument("staircase not contained");
        p.push_back(d);
    }
    return Partition(p);
}

inline Permutation quotient_perm(const StrictPartition& la, const StrictPartition& mu)
{
    int r = la.length();
    if (mu.length() != r || !mu.contains(la)) throw std::invalid_argument("quotient_perm: containment violated");
    Partition lp = minus_staircase(la, r), mp = minus_staircase(mu, r);
    return grassmannian(mp, r).perm * grassmannian(lp, r).perm.inverse();
}

inline std::optional<int> rightmost_bottom_content(const StrictPartition& la, int r)
{
    if (la.length() < r) throw std::invalid_argument("staircase not contained");
    for (int i = 1; i <= r; ++i)
        if (la.part(i) < r + 1 - i) throw std::invalid_argument("staircase not contained");
    int bottom = 0;
    for (int i = 1; i <= la.length(); ++i)
        if (la.part(i) > (i <= r ? r + 1 - i : 0)) bottom = i;
    if (!bottom) return std::nullopt;
    // row bottom spans columns bottom..bottom+la_bottom-1
    return la.part(bottom) - 1;
}

} // namespace kfun
