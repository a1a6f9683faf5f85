#pragma once
// Symmetric groups in one-line notation, reduced words, minimal coset
// representatives, polynomials in z_1..z_n and divided differences.

#include "affzig/scalars.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace affzig {

/// Permutation of {1..n} in one-line notation: p[k-1] = p(k).
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> one_line) : p_(std::move(one_line)) { validate(); }

    static Permutation identity(int n) {
        std::vector<int> v(n);
        std::iota(v.begin(), v.end(), 1);
        return Permutation(std::move(v), true);
    }
    /// The simple transposition s_i = (i, i+1) in S_n.
    static Permutation simple(int n, int i) {
        if (i < 1 || i >= n) throw std::out_of_range("simple transposition index out of range");
        auto w = identity(n);
        std::swap(w.p_[i - 1], w.p_[i]);
        return w;
    }
    static Permutation from_word(int n, const std::vector<int>& word) {
        auto w = identity(n);
        for (int r : word) w = w * simple(n, r);
        return w;
    }

    int size() const { return static_cast<int>(p_.size()); }
    int operator()(int k) const { return p_.at(k - 1); }
    const std::vector<int>& one_line() const { return p_; }

    /// Composition (a*b)(k) = a(b(k)).
    friend Permutation operator*(const Permutation& a, const Permutation& b) {
        if (a.size() != b.size()) throw std::invalid_argument("permutation sizes differ");
        std::vector<int> r(a.size());
        for (int k = 0; k < a.size(); ++k) r[k] = a.p_[b.p_[k] - 1];
        return Permutation(std::move(r), true);
    }
    Permutation inverse() const {
        std::vector<int> r(p_.size());
        for (int k = 0; k < size(); ++k) r[p_[k] - 1] = k + 1;
        return Permutation(std::move(r), true);
    }
    /// Number of inversions.
    int length() const {
        int c = 0;
        for (int a = 0; a < size(); ++a)
            for (int b = a + 1; b < size(); ++b)
                if (p_[a] > p_[b]) ++c;
        return c;
    }
    bool is_identity() const {
        for (int k = 0; k < size(); ++k)
            if (p_[k] != k + 1) return false;
        return true;
    }
    /// ℓ(s_i w) < ℓ(w), i.e. the value i+1 occurs before i.
    bool has_left_descent(int i) const { return position_of(i + 1) < position_of(i); }
    /// ℓ(w s_i) < ℓ(w).
    bool has_right_descent(int i) const { return p_.at(i - 1) > p_.at(i); }

    /// s_i * w: swaps the values i and i+1.
    Permutation left_mul_simple(int i) const {
        Permutation r = *this;
        for (auto& v : r.p_) {
            if (v == i) v = i + 1;
            else if (v == i + 1) v = i;
        }
        return r;
    }

    auto operator<=>(const Permutation&) const = default;
    bool operator==(const Permutation&) const = default;

    std::string to_string() const {
        std::string s = "[";
        for (int k = 0; k < size(); ++k) s += (k ? "," : "") + std::to_string(p_[k]);
        return s + "]";
    }

private:
    Permutation(std::vector<int> v, bool) : p_(std::move(v)) {}
    int position_of(int value) const {
        for (int k = 0; k < size(); ++k)
            if (p_[k] == value) return k;
        throw std::out_of_range("value not in permutation");
    }
    void validate() const {
        std::vector<bool> seen(p_.size() + 1, false);
        for (int v : p_) {
            if (v < 1 || v > size() || seen[v]) throw std::invalid_argument("not a permutation");
            seen[v] = true;
        }
    }
    std::vector<int> p_;
};

/// Lexicographically least reduced word: repeatedly strip the smallest left descent.
inline std::vector<int> reduced_word(const Permutation& w) {
    std::vector<int> word;
    Permutation cur = w;
    while (!cur.is_identity()) {
        for (int i = 1; i < cur.size(); ++i) {
            if (cur.has_left_descent(i)) {
                word.push_back(i);
                cur = cur.left_mul_simple(i);
                break;
            }
        }
    }
    return word;
}

/// Minimal-length representatives of the left cosets w(S_block)^n in S_{n·block}:
/// the permutations increasing on each block of positions. Sorted by one-line notation.
inline std::vector<Permutation> min_coset_reps(int n, int block) {
    if (n < 0 || block < 0) throw std::invalid_argument("negative coset parameters");
    int N = n * block;
    std::vector<Permutation> out;
    if (N == 0) {
        out.push_back(Permutation::identity(0));
        return out;
    }
    // Assign each value 1..N to a block; blocks fill in increasing order.
    std::vector<int> owner(N, 0), fill(n, 0);
    std::vector<int> one_line(N);
    auto rec = [&](auto&& self, int value) -> void {
        if (value > N) {
            std::vector<int> pos(n, 0);
            for (int v = 1; v <= N; ++v) {
                int b = owner[v - 1];
                one_line[b * block + pos[b]++] = v;
            }
            out.emplace_back(one_line);
            return;
        }
        for (int b = 0; b < n; ++b) {
            if (fill[b] == block) continue;
            owner[value - 1] = b;
            ++fill[b];
            self(self, value + 1);
            --fill[b];
        }
    };
    rec(rec, 1);
    std::sort(out.begin(), out.end());
    return out;
}

/// Left place-permutation action on tuples: (w·v)_k = v_{w^{-1}(k)}.
template <class T>
std::vector<T> act_perm(const Permutation& w, const std::vector<T>& v) {
    if (static_cast<int>(v.size()) != w.size()) throw std::invalid_argument("tuple size mismatch");
    std::vector<T> r(v.size());
    for (int k = 1; k <= w.size(); ++k) r[w(k) - 1] = v[k - 1];
    return r;
}

using Exponents = std::vector<int>;

/// Polynomial in z_1..z_n with each z_i of degree d.
class ZPoly {
public:
    ZPoly() = default;
    ZPoly(int n, int d) : n_(n), d_(d) {}
    static ZPoly monomial(int n, int d, Exponents t, Scalar c = 1) {
        ZPoly p(n, d);
        if (static_cast<int>(t.size()) != n) throw std::invalid_argument("exponent length mismatch");
        p.terms_.add(t, c);
        return p;
    }
    static ZPoly constant(int n, int d, Scalar c) { return monomial(n, d, Exponents(n, 0), c); }
    static ZPoly variable(int n, int d, int i) {
        Exponents t(n, 0);
        t.at(i - 1) = 1;
        return monomial(n, d, t);
    }

    int nvars() const { return n_; }
    int generator_degree() const { return d_; }
    const LinComb<Exponents>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add(const Exponents& t, Scalar c) { terms_.add(t, c); }

    friend ZPoly operator+(ZPoly a, const ZPoly& b) {
        a.terms_ += b.terms_;
        return a;
    }
    friend ZPoly operator-(ZPoly a, const ZPoly& b) {
        a.terms_ -= b.terms_;
        return a;
    }
    friend ZPoly operator*(const ZPoly& a, const ZPoly& b) {
        ZPoly r(a.n_, a.d_);
        for (const auto& [ta, ca] : a.terms_)
            for (const auto& [tb, cb] : b.terms_) {
                Exponents t(ta.size());
                for (std::size_t k = 0; k < t.size(); ++k) t[k] = ta[k] + tb[k];
                r.terms_.add(t, ca * cb);
            }
        return r;
    }
    ZPoly scaled(Scalar c) const {
        ZPoly r(n_, d_);
        r.terms_ = terms_.scaled(c);
        return r;
    }
    friend bool operator==(const ZPoly& a, const ZPoly& b) { return a.terms_ == b.terms_; }

    /// Terms in graded lexicographic order (total degree, then exponent vector).
    std::vector<std::pair<Exponents, Scalar>> sorted_terms() const {
        std::vector<std::pair<Exponents, Scalar>> v(terms_.begin(), terms_.end());
        std::stable_sort(v.begin(), v.end(), [](const auto& x, const auto& y) {
            int sx = std::accumulate(x.first.begin(), x.first.end(), 0);
            int sy = std::accumulate(y.first.begin(), y.first.end(), 0);
            return sx < sy;
        });
        return v;
    }

private:
    int n_ = 0;
    int d_ = 1;
    LinComb<Exponents> terms_;
};

/// z_i ↦ z_{w(i)} on exponent vectors, which is the tuple action.
inline Exponents act_perm_exponents(const Permutation& w, const Exponents& t) { return act_perm(w, t); }

inline ZPoly act_perm(const Permutation& w, const ZPoly& f) {
    ZPoly r(f.nvars(), f.generator_degree());
    for (const auto& [t, c] : f.terms()) r.add(act_perm(w, t), c);
    return r;
}

/// ∇_i on a single monomial, accumulated into out with coefficient c.
inline void divided_difference_monomial(int i, const Exponents& t, Scalar c, LinComb<Exponents>& out) {
    int a = t.at(i - 1), b = t.at(i);
    if (a == b) return;
    // (z_i^a z_{i+1}^b − z_i^b z_{i+1}^a)/(z_i − z_{i+1}) for a > b is
    // z_i^b z_{i+1}^b Σ_{k=0}^{a−b−1} z_i^{a−b−1−k} z_{i+1}^k; a < b flips the sign.
    int lo = std::min(a, b), hi = std::max(a, b);
    Scalar sign = a > b ? Scalar(1) : Scalar(-1);
    Exponents u = t;
    for (int k = 0; k < hi - lo; ++k) {
        u[i - 1] = lo + (hi - lo - 1 - k);
        u[i] = lo + k;
        out.add(u, c * sign);
    }
}

inline ZPoly divided_difference(int i, const ZPoly& f) {
    if (i < 1 || i >= f.nvars()) throw std::out_of_range("divided difference index out of range");
    ZPoly r(f.nvars(), f.generator_degree());
    LinComb<Exponents> acc;
    for (const auto& [t, c] : f.terms()) divided_difference_monomial(i, t, c, acc);
    for (const auto& [t, c] : acc) r.add(t, c);
    return r;
}

}  // namespace affzig
