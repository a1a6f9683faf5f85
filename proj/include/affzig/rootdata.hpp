#pragma once
// Untwisted affine ADE Cartan data, the null root, KLR words, the sign
// tables ε, ξ, μ and the KLR polynomials Q_ij.

#include "affzig/linalg.hpp"
#include "affzig/scalars.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace affzig {

using Word = std::vector<int>;
using Edge = std::pair<int, int>;

/// Simple graph on vertices {first_vertex..first_vertex+count-1}.
struct Graph {
    int first_vertex = 1;
    int count = 0;
    std::vector<Edge> edges;  // each undirected edge once, with first < second

    std::vector<int> vertices() const {
        std::vector<int> v;
        for (int k = 0; k < count; ++k) v.push_back(first_vertex + k);
        return v;
    }
    bool adjacent(int i, int j) const {
        for (auto [a, b] : edges)
            if ((a == i && b == j) || (a == j && b == i)) return true;
        return false;
    }
    std::vector<int> neighbors(int i) const {
        std::vector<int> r;
        for (auto [a, b] : edges) {
            if (a == i) r.push_back(b);
            if (b == i) r.push_back(a);
        }
        std::sort(r.begin(), r.end());
        return r;
    }
    bool connected() const {
        if (count == 0) return false;
        std::set<int> seen{first_vertex};
        std::vector<int> stack{first_vertex};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int u : neighbors(v))
                if (seen.insert(u).second) stack.push_back(u);
        }
        return static_cast<int>(seen.size()) == count;
    }
    bool is_tree() const { return connected() && static_cast<int>(edges.size()) == count - 1; }

    /// Path 1-2-…-n.
    static Graph path(int n) {
        Graph g{1, n, {}};
        for (int k = 1; k < n; ++k) g.edges.emplace_back(k, k + 1);
        return g;
    }
    /// Parses "1-2,2-3" on vertices 1..max.
    static Graph from_edge_list(const std::string& s) {
        Graph g{1, 0, {}};
        std::size_t pos = 0;
        int maxv = 0;
        while (pos < s.size()) {
            std::size_t comma = s.find(',', pos);
            std::string item = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            std::size_t dash = item.find('-');
            if (dash == std::string::npos) throw std::invalid_argument("edge '" + item + "' is not of the form i-j");
            int a = std::stoi(item.substr(0, dash)), b = std::stoi(item.substr(dash + 1));
            if (a < 1 || b < 1) throw std::invalid_argument("graph vertices are numbered from 1");
            if (a == b) throw std::invalid_argument("loops are not allowed");
            g.edges.emplace_back(std::min(a, b), std::max(a, b));
            maxv = std::max({maxv, a, b});
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        g.count = maxv;
        std::sort(g.edges.begin(), g.edges.end());
        if (std::adjacent_find(g.edges.begin(), g.edges.end()) != g.edges.end())
            throw std::invalid_argument("repeated edge");
        return g;
    }
};

/// Untwisted affine type X_ℓ^(1) with affine vertex 0.
class AffineType {
public:
    static AffineType build(char family, int ell) {
        AffineType t;
        t.family_ = static_cast<char>(std::toupper(static_cast<unsigned char>(family)));
        t.ell_ = ell;
        auto& e = t.edges_;
        switch (t.family_) {
            case 'A':
                if (ell < 1) throw std::invalid_argument("type A needs rank at least 1");
                if (ell == 1) {
                    e = {{0, 1}};
                } else {
                    for (int k = 0; k < ell; ++k) e.emplace_back(k, k + 1);
                    e.emplace_back(0, ell);
                }
                break;
            case 'D':
                if (ell < 4) throw std::invalid_argument("type D needs rank at least 4");
                e = {{0, 2}, {1, 2}};
                for (int k = 2; k <= ell - 2; ++k) e.emplace_back(k, k + 1);
                e.emplace_back(ell - 2, ell);
                break;
            case 'E':
                if (ell == 6) e = {{0, 2}, {1, 3}, {2, 4}, {3, 4}, {4, 5}, {5, 6}};
                else if (ell == 7) e = {{0, 1}, {1, 3}, {2, 4}, {3, 4}, {4, 5}, {5, 6}, {6, 7}};
                else if (ell == 8) e = {{0, 8}, {1, 3}, {2, 4}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}};
                else throw std::invalid_argument("type E needs rank 6, 7 or 8");
                break;
            default:
                throw std::invalid_argument(std::string("unsupported family '") + family + "'");
        }
        for (auto& [a, b] : e)
            if (a > b) std::swap(a, b);
        std::sort(e.begin(), e.end());
        int n = ell + 1;
        t.cartan_.assign(n, std::vector<int>(n, 0));
        for (int i = 0; i < n; ++i) t.cartan_[i][i] = 2;
        for (auto [a, b] : e) {
            int v = (t.family_ == 'A' && ell == 1) ? -2 : -1;
            t.cartan_[a][b] = t.cartan_[b][a] = v;
        }
        return t;
    }
    /// Parses "A2", "D4", "E8".
    static AffineType parse(const std::string& s) {
        if (s.size() < 2 || !std::isalpha(static_cast<unsigned char>(s[0])))
            throw std::invalid_argument("type must look like A2, D4 or E6");
        for (std::size_t k = 1; k < s.size(); ++k)
            if (!std::isdigit(static_cast<unsigned char>(s[k]))) throw std::invalid_argument("type must look like A2, D4 or E6");
        return build(s[0], std::stoi(s.substr(1)));
    }

    char family() const { return family_; }
    int ell() const { return ell_; }
    int vertex_count() const { return ell_ + 1; }
    std::string name() const { return std::string(1, family_) + std::to_string(ell_); }
    bool is_a1() const { return family_ == 'A' && ell_ == 1; }
    int c(int i, int j) const { return cartan_.at(i).at(j); }
    const std::vector<std::vector<int>>& cartan() const { return cartan_; }
    const std::vector<Edge>& edges() const { return edges_; }
    bool adjacent(int i, int j) const { return i != j && c(i, j) < 0; }

    /// Finite diagram Γ on I' = {1..ℓ}.
    Graph finite_graph() const {
        Graph g{1, ell_, {}};
        for (auto [a, b] : edges_)
            if (a != 0 && b != 0) g.edges.emplace_back(a, b);
        return g;
    }

private:
    char family_ = 'A';
    int ell_ = 1;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> cartan_;
};

inline AffineType build_affine_type(char family, int ell) { return AffineType::build(family, ell); }

/// Primitive positive integer vector spanning the kernel of the transposed Cartan matrix.
inline std::vector<int> null_root(const AffineType& t) {
    int n = t.vertex_count();
    RatMatrix m(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = t.c(j, i);
    auto ker = kernel_basis(m, n);
    if (ker.size() != 1) throw std::logic_error("affine Cartan matrix must have a one-dimensional kernel");
    std::vector<int> v;
    bool negative = ker[0][0] < 0;
    for (auto& x : ker[0]) v.push_back(static_cast<int>(negative ? -x : x));
    for (int x : v)
        if (x <= 0) throw std::logic_error("null root must be positive");
    return v;
}

inline int height(const std::vector<int>& weight) {
    int h = 0;
    for (int x : weight) h += x;
    return h;
}

/// Weight Σ α_{i_k} of a word as a coefficient vector over I.
inline std::vector<int> word_weight(const Word& w, int vertex_count) {
    std::vector<int> r(vertex_count, 0);
    for (int i : w) r.at(i) += 1;
    return r;
}

inline Word concat(const Word& a, const Word& b) {
    Word r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

/// Signs ε_ij on edges, ξ_i on I', μ_ji on finite edges.
class SignTable {
public:
    int eps(int i, int j) const {
        auto it = eps_.find({i, j});
        if (it == eps_.end()) throw std::out_of_range("ε is only defined on edges");
        return it->second;
    }
    int xi(int i) const { return xi_.at(i); }
    int mu(int j, int i) const {
        auto it = mu_.find({j, i});
        if (it == mu_.end()) throw std::out_of_range("μ is only defined on finite edges");
        return it->second;
    }
    const std::map<Edge, int>& eps_map() const { return eps_; }
    const std::map<int, int>& xi_map() const { return xi_; }
    const std::map<Edge, int>& mu_map() const { return mu_; }

    /// ε from the given orientation; ξ and μ from their defining rules.
    static SignTable from_eps(const AffineType& t, const std::map<Edge, int>& eps) {
        SignTable s;
        if (!t.is_a1()) {
            for (auto [a, b] : t.edges()) {
                auto ia = eps.find({a, b}), ib = eps.find({b, a});
                if (ia == eps.end() || ib == eps.end()) throw std::invalid_argument("orientation misses an edge");
                if (std::abs(ia->second) != 1 || ia->second * ib->second != -1)
                    throw std::invalid_argument("inconsistent orientation: need ε_ij ε_ji = −1");
            }
            s.eps_ = eps;
        }
        int l = t.ell();
        int xi1 = 1;
        if (t.family() == 'A' && l > 1) {
            for (int k = 1; k <= l; ++k) xi1 *= s.eps(k, k - 1);
            xi1 *= s.eps(0, l);
        } else if (t.family() == 'D') {
            xi1 = (l % 2 == 0) ? 1 : -1;
        } else if (t.family() == 'E') {
            xi1 = -1;
        }
        // Propagate along the finite tree: neighbours get opposite signs.
        Graph g = t.finite_graph();
        s.xi_[1] = xi1;
        std::vector<int> stack{1};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int u : g.neighbors(v)) {
                if (s.xi_.count(u)) {
                    if (s.xi_[u] != -s.xi_[v]) throw std::logic_error("finite diagram is not bipartite");
                    continue;
                }
                s.xi_[u] = -s.xi_[v];
                stack.push_back(u);
            }
        }
        for (auto [a, b] : g.edges) {
            for (auto [j, i] : {Edge{a, b}, Edge{b, a}}) s.mu_[{j, i}] = s.xi_[i] == 1 ? s.eps(j, i) : 1;
        }
        return s;
    }

    /// Default orientation ε_ij = +1 for i < j; a nonzero seed flips edges pseudo-randomly.
    static SignTable build(const AffineType& t, std::uint64_t orientation_seed = 0) {
        std::map<Edge, int> eps;
        std::uint64_t state = orientation_seed;
        for (auto [a, b] : t.edges()) {
            int sign = 1;
            if (orientation_seed != 0) {
                state = state * 6364136223846793005ULL + 1442695040888963407ULL;
                sign = ((state >> 33) & 1) ? -1 : 1;
            }
            eps[{a, b}] = sign;
            eps[{b, a}] = -sign;
        }
        return from_eps(t, eps);
    }

private:
    std::map<Edge, int> eps_;
    std::map<int, int> xi_;
    std::map<Edge, int> mu_;
};

inline SignTable build_sign_table(const AffineType& t, std::uint64_t orientation_seed = 0) {
    return SignTable::build(t, orientation_seed);
}

/// Two-variable polynomial in (u, v), keyed by exponent pairs.
using Poly2 = LinComb<std::pair<int, int>>;
/// Three-variable polynomial in (y_r, y_{r+1}, y_{r+2}).
using Poly3 = LinComb<std::array<int, 3>>;

inline Poly2 q_polynomial(const AffineType& t, const SignTable& s, int i, int j) {
    Poly2 q;
    if (i == j) return q;
    if (t.is_a1()) {
        // (u−v)(v−u) = −u² + 2uv − v².
        q.add({2, 0}, -1);
        q.add({1, 1}, 2);
        q.add({0, 2}, -1);
        return q;
    }
    if (t.c(i, j) == 0) {
        q.add({0, 0}, 1);
        return q;
    }
    int e = s.eps(i, j);
    q.add({-t.c(i, j), 0}, e);
    q.add({0, -t.c(j, i)}, -e);
    return q;
}

/// (Q_ij(c, b) − Q_ij(a, b))/(c − a) in variables (a, b, c), by exact division.
inline Poly3 braid_error_polynomial(const AffineType& t, const SignTable& s, int i, int j) {
    Poly3 r;
    for (const auto& [ex, coef] : q_polynomial(t, s, i, j)) {
        auto [p, q] = ex;
        // (c^p − a^p)/(c − a) = Σ_{k<p} c^k a^{p−1−k}.
        for (int k = 0; k < p; ++k) r.add({p - 1 - k, q, k}, coef);
    }
    return r;
}

}  // namespace affzig
