#pragma once
// The defining relations of the affine zigzag algebra on generators
// e_i, c_r, z_r, a_r^{i,j}, s_t, tested in any model that can apply
// generators to vectors.

#include "affzig/affinize.hpp"
#include "affzig/rootdata.hpp"
#include "affzig/scalars.hpp"

#include <functional>
#include <random>
#include <string>
#include <vector>

namespace affzig {

struct ZigGen {
    enum Kind { E, C, Z, A, S } kind;
    std::vector<int> idx;  // E: the multi-index i; C, Z: {r}; A: {r, i, j}; S: {t}

    static ZigGen e(std::vector<int> i) { return {E, std::move(i)}; }
    static ZigGen c(int r) { return {C, {r}}; }
    static ZigGen z(int r) { return {Z, {r}}; }
    static ZigGen a(int r, int i, int j) { return {A, {r, i, j}}; }
    static ZigGen s(int t) { return {S, {t}}; }

    std::string to_string() const {
        auto join = [](const std::vector<int>& v, std::size_t from) {
            std::string s;
            for (std::size_t k = from; k < v.size(); ++k) s += (k > from ? "," : "") + std::to_string(v[k]);
            return s;
        };
        switch (kind) {
            case E: return "e_(" + join(idx, 0) + ")";
            case C: return "c_" + std::to_string(idx[0]);
            case Z: return "z_" + std::to_string(idx[0]);
            case A: return "a_" + std::to_string(idx[0]) + "^{" + join(idx, 1) + "}";
            case S: return "s_" + std::to_string(idx[0]);
        }
        return "?";
    }
};

/// Linear combination of generator words; each word is read left to right as a product.
struct ZigExpr {
    std::vector<std::pair<Scalar, std::vector<ZigGen>>> terms;

    static ZigExpr word(std::vector<ZigGen> w, Scalar c = 1) { return ZigExpr{{{c, std::move(w)}}}; }
    static ZigExpr zero() { return ZigExpr{}; }
    static ZigExpr identity() { return word({}); }
    ZigExpr& add(const ZigExpr& o, Scalar c = 1) {
        for (const auto& [k, w] : o.terms) terms.emplace_back(k * c, w);
        return *this;
    }
    /// Product this·o.
    ZigExpr then_right(std::vector<ZigGen> suffix) const {
        ZigExpr r;
        for (const auto& [k, w] : terms) {
            auto w2 = w;
            w2.insert(w2.end(), suffix.begin(), suffix.end());
            r.terms.emplace_back(k, std::move(w2));
        }
        return r;
    }
    std::string to_string() const {
        if (terms.empty()) return "0";
        std::string s;
        for (const auto& [k, w] : terms) {
            if (!s.empty()) s += " + ";
            s += "(" + std::to_string(k.value()) + ")";
            for (const auto& g : w) s += " " + g.to_string();
            if (w.empty()) s += " 1";
        }
        return s;
    }
};

struct ZigRelation {
    std::string family;
    ZigExpr lhs, rhs;
};

namespace detail {
inline void multi_indices(const std::vector<int>& verts, int n, std::vector<int>& cur,
                          std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == n) {
        out.push_back(cur);
        return;
    }
    for (int v : verts) {
        cur.push_back(v);
        multi_indices(verts, n, cur, out);
        cur.pop_back();
    }
}
}  // namespace detail

inline std::vector<std::vector<int>> vertex_tuples(const Graph& g, int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    detail::multi_indices(g.vertices(), n, cur, out);
    return out;
}

/// All relation instances of the affine zigzag presentation for Γ and rank n.
inline std::vector<ZigRelation> zig_relations(const Graph& g, int n) {
    std::vector<ZigRelation> R;
    auto tuples = vertex_tuples(g, n);
    std::vector<std::pair<int, int>> arrows;
    for (auto [a, b] : g.edges) {
        arrows.emplace_back(a, b);
        arrows.emplace_back(b, a);
    }
    using G = ZigGen;
    auto W = [](std::vector<G> w, Scalar c = 1) { return ZigExpr::word(std::move(w), c); };
    // (E1)
    {
        ZigExpr sum;
        for (const auto& i : tuples) sum.add(W({G::e(i)}));
        R.push_back({"E1 sum of idempotents", sum, ZigExpr::identity()});
    }
    for (const auto& i : tuples)
        for (const auto& j : tuples) R.push_back({"E1 orthogonality", W({G::e(i), G::e(j)}), i == j ? W({G::e(i)}) : ZigExpr::zero()});
    for (int r = 1; r <= n; ++r)
        for (const auto& i : tuples) R.push_back({"E1 c_r e_i", W({G::c(r), G::e(i)}), W({G::e(i), G::c(r)})});
    // (E2)
    for (int r = 1; r <= n; ++r)
        for (int t = 1; t <= n; ++t) {
            if (t == r) continue;
            for (auto [i, j] : arrows) {
                for (auto [k, l] : arrows)
                    R.push_back({"E2 a a", W({G::a(r, i, j), G::a(t, k, l)}), W({G::a(t, k, l), G::a(r, i, j)})});
                R.push_back({"E2 a c", W({G::a(r, i, j), G::c(t)}), W({G::c(t), G::a(r, i, j)})});
            }
            R.push_back({"E2 c c", W({G::c(r), G::c(t)}), W({G::c(t), G::c(r)})});
        }
    // (E3)
    for (int r = 1; r <= n; ++r)
        for (auto [i, j] : arrows)
            for (const auto& ii : tuples) {
                auto left = ii;
                left[r - 1] = i;
                R.push_back({"E3 a e", W({G::a(r, i, j), G::e(ii)}),
                             ii[r - 1] == j ? W({G::e(left), G::a(r, i, j)}) : ZigExpr::zero()});
                auto right = ii;
                right[r - 1] = j;
                R.push_back({"E3 e a", W({G::e(ii), G::a(r, i, j)}),
                             ii[r - 1] == i ? W({G::a(r, i, j), G::e(right)}) : ZigExpr::zero()});
            }
    // (E4)
    for (int r = 1; r <= n; ++r) {
        for (auto [i, j] : arrows)
            for (auto [k, l] : arrows)
                for (const auto& ii : tuples) {
                    bool nz = j == k && i == l && ii[r - 1] == l;
                    R.push_back({"E4 a a e", W({G::a(r, i, j), G::a(r, k, l), G::e(ii)}),
                                 nz ? W({G::c(r), G::e(ii)}) : ZigExpr::zero()});
                }
        R.push_back({"E4 c^2", W({G::c(r), G::c(r)}), ZigExpr::zero()});
        for (auto [i, j] : arrows) {
            R.push_back({"E4 c a", W({G::c(r), G::a(r, i, j)}), ZigExpr::zero()});
            R.push_back({"E4 a c", W({G::a(r, i, j), G::c(r)}), ZigExpr::zero()});
        }
    }
    // Symmetric group relations.
    auto sw = [](int r, int t) { return t == r ? r + 1 : (t == r + 1 ? r : t); };
    for (int r = 1; r < n; ++r) {
        for (const auto& ii : tuples) {
            auto si = ii;
            std::swap(si[r - 1], si[r]);
            R.push_back({"s e", W({G::s(r), G::e(ii)}), W({G::e(si), G::s(r)})});
        }
        for (int t = 1; t <= n; ++t) {
            for (auto [i, j] : arrows) R.push_back({"s a", W({G::s(r), G::a(t, i, j)}), W({G::a(sw(r, t), i, j), G::s(r)})});
            R.push_back({"s c", W({G::s(r), G::c(t)}), W({G::c(sw(r, t)), G::s(r)})});
        }
        R.push_back({"s^2", W({G::s(r), G::s(r)}), ZigExpr::identity()});
        for (int t = r + 2; t < n; ++t) R.push_back({"s far", W({G::s(r), G::s(t)}), W({G::s(t), G::s(r)})});
        if (r + 1 < n)
            R.push_back({"s braid", W({G::s(r), G::s(r + 1), G::s(r)}), W({G::s(r + 1), G::s(r), G::s(r + 1)})});
    }
    for (int r = 1; r <= n; ++r) {
        for (int t = 1; t <= n; ++t) R.push_back({"z z", W({G::z(r), G::z(t)}), W({G::z(t), G::z(r)})});
        for (int t = 1; t <= n; ++t) {
            for (auto [i, j] : arrows) R.push_back({"z a", W({G::z(r), G::a(t, i, j)}), W({G::a(t, i, j), G::z(r)})});
            R.push_back({"z c", W({G::z(r), G::c(t)}), W({G::c(t), G::z(r)})});
        }
        for (const auto& ii : tuples) R.push_back({"z e", W({G::z(r), G::e(ii)}), W({G::e(ii), G::z(r)})});
    }
    // (s_r z_t − z_{s_r t} s_r) e_i.
    for (int r = 1; r < n; ++r)
        for (int t = 1; t <= n; ++t)
            for (const auto& ii : tuples) {
                ZigExpr lhs = W({G::s(r), G::z(t), G::e(ii)});
                lhs.add(W({G::z(sw(r, t)), G::s(r), G::e(ii)}), -1);
                int sign = (r == t) - (r + 1 == t);
                ZigExpr rhs;
                if (sign != 0) {
                    int ir = ii[r - 1], ir1 = ii[r];
                    if (ir == ir1) {
                        rhs.add(W({G::c(r), G::e(ii)}, sign));
                        rhs.add(W({G::c(r + 1), G::e(ii)}, sign));
                    } else if (g.adjacent(ir, ir1)) {
                        rhs.add(W({G::a(r, ir1, ir), G::a(r + 1, ir, ir1), G::e(ii)}, sign));
                    }
                }
                R.push_back({"s z e", lhs, rhs});
            }
    return R;
}

/// Outcome of checking relations in a model.
struct RelationReport {
    std::size_t checked = 0;
    std::size_t failed = 0;
    std::string first_failure;
    bool ok() const { return failed == 0; }
};

/// Checks lhs·v = rhs·v for every relation and test vector. apply(g, v) applies one generator.
template <class Vec, class Apply, class Add, class Equal>
RelationReport check_relations_on(const std::vector<ZigRelation>& rels, const std::vector<Vec>& vectors,
                                  const Apply& apply, const Add& add_scaled, const Equal& equal, const Vec& zero) {
    RelationReport rep;
    auto eval = [&](const ZigExpr& e, const Vec& v) {
        Vec acc = zero;
        for (const auto& [c, w] : e.terms) {
            Vec x = v;
            for (auto it = w.rbegin(); it != w.rend(); ++it) x = apply(*it, x);
            acc = add_scaled(acc, x, c);
        }
        return acc;
    };
    for (const auto& rel : rels)
        for (std::size_t k = 0; k < vectors.size(); ++k) {
            ++rep.checked;
            if (!equal(eval(rel.lhs, vectors[k]), eval(rel.rhs, vectors[k]))) {
                if (rep.failed++ == 0)
                    rep.first_failure = rel.family + ": " + rel.lhs.to_string() + " = " + rel.rhs.to_string() +
                                        " on test vector #" + std::to_string(k);
            }
        }
    return rep;
}

/// The generator as an element of H_n(Z(Γ)); H must be an affinization of a zigzag algebra.
inline AffElement zig_generator(const Affinization& H, const ZigGen& g) {
    const SymAlg& Z = H.algebra();
    switch (g.kind) {
        case ZigGen::E: {
            std::vector<AElem> slots;
            for (int i : g.idx) slots.push_back(Z.basis(Z.e(i)));
            return H.from_tensor(H.tensor_of(slots));
        }
        case ZigGen::C: {
            AElem c;
            for (int i : Z.graph().vertices()) c.add(Z.basis(Z.cyc(i)));
            return H.slot(g.idx[0], c);
        }
        case ZigGen::Z: return H.z(g.idx[0]);
        case ZigGen::A: return H.slot(g.idx[0], Z.basis(Z.arrow(g.idx[1], g.idx[2])));
        case ZigGen::S: return H.s(g.idx[0]);
    }
    throw std::logic_error("unknown generator");
}

}  // namespace affzig
