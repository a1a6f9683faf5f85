#pragma once
// Checks the KLR relations of R_θ as operator identities in a module.
//
// A model supplies
//   Vec idem(const Word&, const Vec&), Vec y(int, const Vec&), Vec psi(int, const Vec&),
//   Vec add(const Vec&, const Vec&, Scalar), bool equal(const Vec&, const Vec&), Vec zero().

#include "affzig/rootdata.hpp"
#include "affzig/scalars.hpp"
#include "affzig/zigpres.hpp"

#include <functional>
#include <string>
#include <vector>

namespace affzig {

namespace detail {
template <class Model, class Vec>
Vec apply_y_poly(const Model& m, const std::vector<int>& vars, const std::vector<int>& exps, const Vec& v) {
    Vec x = v;
    for (std::size_t k = 0; k < vars.size(); ++k)
        for (int e = 0; e < exps[k]; ++e) x = m.y(vars[k], x);
    return x;
}
}  // namespace detail

/// For every word i in `words` and each vector v = 1_i v from vectors_for(i), checks
/// (KLR idempotents), commutation of y's, the y–ψ relation, ψ_r², far commutation and the braid relation.
template <class Model, class Vec>
RelationReport check_klr_relations(const AffineType& t, const SignTable& s, int strands, const std::vector<Word>& words,
                                   const std::function<std::vector<Vec>(const Word&)>& vectors_for, const Model& m) {
    RelationReport rep;
    auto check = [&](bool ok, const std::string& what, const Word& i) {
        ++rep.checked;
        if (ok) return;
        if (rep.failed++ == 0) {
            std::string w;
            for (int x : i) w += std::to_string(x);
            rep.first_failure = what + " at word " + w;
        }
    };
    auto swapped = [](Word w, int r) {
        std::swap(w[r - 1], w[r]);
        return w;
    };
    for (const Word& i : words) {
        for (const Vec& v : vectors_for(i)) {
            check(m.equal(m.idem(i, v), v), "1_i v = v", i);
            for (const Word& j : words)
                if (j != i) check(m.equal(m.idem(j, v), m.zero()), "1_j 1_i = 0", i);
            for (int r = 1; r <= strands; ++r) {
                Vec yv = m.y(r, v);
                check(m.equal(m.idem(i, yv), yv), "y_r 1_i = 1_i y_r", i);
                for (int u = r + 1; u <= strands; ++u)
                    check(m.equal(m.y(r, m.y(u, v)), m.y(u, m.y(r, v))), "y_r y_t = y_t y_r", i);
            }
            for (int r = 1; r < strands; ++r) {
                Word si = swapped(i, r);
                Vec pv = m.psi(r, v);
                check(m.equal(m.idem(si, pv), pv), "psi_r 1_i = 1_{s_r i} psi_r", i);
                bool same = i[r - 1] == i[r];
                for (int u = 1; u <= strands; ++u) {
                    int su = u == r ? r + 1 : (u == r + 1 ? r : u);
                    Vec lhs = m.add(m.y(u, pv), m.psi(r, m.y(su, v)), -1);
                    int sign = same ? (u == r + 1) - (u == r) : 0;
                    check(m.equal(lhs, m.add(m.zero(), v, sign)), "y_t psi_r - psi_r y_{s_r t}", i);
                }
                Vec q = m.zero();
                for (const auto& [ex, c] : q_polynomial(t, s, i[r - 1], i[r]))
                    q = m.add(q, detail::apply_y_poly(m, {r, r + 1}, {ex.first, ex.second}, v), c);
                check(m.equal(m.psi(r, pv), q), "psi_r^2 = Q(y_r, y_{r+1})", i);
                for (int u = r + 2; u < strands; ++u)
                    check(m.equal(m.psi(r, m.psi(u, v)), m.psi(u, m.psi(r, v))), "psi_r psi_t = psi_t psi_r", i);
                if (r + 1 < strands) {
                    Vec a = m.psi(r + 1, m.psi(r, m.psi(r + 1, v)));
                    Vec b = m.psi(r, m.psi(r + 1, m.psi(r, v)));
                    Vec rhs = m.zero();
                    if (i[r - 1] == i[r + 1])
                        for (const auto& [ex, c] : braid_error_polynomial(t, s, i[r - 1], i[r]))
                            rhs = m.add(rhs, detail::apply_y_poly(m, {r, r + 1, r + 2}, {ex[0], ex[1], ex[2]}, v), c);
                    check(m.equal(m.add(a, b, -1), rhs), "braid relation", i);
                }
            }
        }
    }
    return rep;
}

}  // namespace affzig
