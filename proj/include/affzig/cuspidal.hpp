#pragma once
// The minuscule semicuspidal algebra C_δ through its faithful module V:
// the basis y_1^b (y_1−y_d)^m ψ_w 1_i, multiplication, the level-one
// subalgebra and its isomorphism with the zigzag algebra.

#include "affzig/coxeter.hpp"
#include "affzig/affinize.hpp"
#include "affzig/cuspwords.hpp"
#include "affzig/klr.hpp"
#include "affzig/linalg.hpp"
#include "affzig/rootdata.hpp"
#include "affzig/scalars.hpp"
#include "affzig/symalg.hpp"
#include "affzig/zigpres.hpp"

#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace affzig {

/// Basis monomial (z^z x^x)_{row,col} of V; row and col index G^δ.
struct VKey {
    int row = 0, col = 0, z = 0, x = 0;
    auto operator<=>(const VKey&) const = default;
};
using VVector = LinComb<VKey>;

/// Basis element y_1^b (y_1−y_d)^m ψ_w 1_source with w·source = target.
struct CdKey {
    int b = 0, m = 0, target = 0, source = 0;
    auto operator<=>(const CdKey&) const = default;
};
using CdElement = LinComb<CdKey>;

/// KLR generators of R_δ acting on V.
class CuspidalAlgebra {
public:
    enum class Component { Zero, Full, Shifted };

    CuspidalAlgebra(const AffineType& t, const SignTable& s, Ring ring = Ring::integers())
        : type_(t), signs_(s), ring_(ring), words_(std::make_shared<CuspWordData>(t)),
          cache_(std::make_shared<Cache>()) {}
    explicit CuspidalAlgebra(const AffineType& t, Ring ring = Ring::integers())
        : CuspidalAlgebra(t, SignTable::build(t), ring) {}

    const AffineType& type() const { return type_; }
    const SignTable& signs() const { return signs_; }
    Ring ring() const { return ring_; }
    const CuspWordData& words() const { return *words_; }
    int d() const { return words_->d(); }
    Scalar one(std::int64_t v = 1) const { return ring_.is_field() ? Scalar(v, ring_) : Scalar(v); }

    // ---- the module V ----

    /// k[z,x]/x² when last letters agree, q·k[z] when they are adjacent, else 0.
    Component component(int row, int col) const {
        int a = words_->last(row), b = words_->last(col);
        if (a == b) return Component::Full;
        if (type_.c(a, b) == -1) return Component::Shifted;
        return Component::Zero;
    }
    bool allowed(const VKey& k) const {
        if (k.z < 0 || k.x < 0) return false;
        switch (component(k.row, k.col)) {
            case Component::Full: return k.x < 2;
            case Component::Shifted: return k.x < 1;
            case Component::Zero: return false;
        }
        return false;
    }
    int degree(const VKey& k) const {
        return 2 * k.z + 2 * k.x + (component(k.row, k.col) == Component::Shifted ? 1 : 0);
    }
    /// All basis monomials with z-exponent ≤ zmax.
    std::vector<VKey> v_basis(int zmax) const {
        std::vector<VKey> out;
        for (int r = 0; r < words_->size(); ++r)
            for (int c = 0; c < words_->size(); ++c)
                for (int z = 0; z <= zmax; ++z)
                    for (int x = 0; x < 2; ++x)
                        if (allowed({r, c, z, x})) out.push_back({r, c, z, x});
        return out;
    }
    VVector vec(const VKey& k, Scalar c = 1) const {
        VVector v;
        if (allowed(k)) v.add(k, one() * c);
        return v;
    }

    VVector zero() const { return {}; }
    VVector add(const VVector& a, const VVector& b, Scalar c) const {
        VVector r = a;
        r.add(b, one() * c);
        return r;
    }
    bool equal(const VVector& a, const VVector& b) const { return a == b; }

    /// 1_k projects on rows with word k.
    VVector idem(const Word& k, const VVector& v) const {
        auto idx = words_->find(k);
        VVector r;
        if (!idx) return r;
        for (const auto& [key, c] : v)
            if (key.row == *idx) r.add(key, c);
        return r;
    }
    VVector idem_index(int k, const VVector& v) const {
        VVector r;
        for (const auto& [key, c] : v)
            if (key.row == k) r.add(key, c);
        return r;
    }
    /// y_r multiplies by z − δ_{r,d} x.
    VVector y(int r, const VVector& v) const {
        if (r < 1 || r > d()) throw std::out_of_range("y index out of range");
        VVector out;
        for (const auto& [k, c] : v) {
            VKey a = k;
            ++a.z;
            if (allowed(a)) out.add(a, c);
            if (r == d()) {
                VKey b = k;
                ++b.x;
                if (allowed(b)) out.add(b, -c);
            }
        }
        return out;
    }
    VVector psi(int r, const VVector& v) const {
        if (r < 1 || r >= d()) throw std::out_of_range("psi index out of range");
        VVector out;
        if (type_.is_a1()) return out;
        for (const auto& [k, c] : v) {
            const Word& i = words_->word(k.row);
            int jd = words_->last(k.col);
            int id = i.back();
            if (is_admissible_at(type_, i, r)) {
                auto ni = words_->find(swap_at(i, r));
                if (!ni) throw std::logic_error("admissible swap left G^delta");
                VKey a{*ni, k.col, k.z, k.x};
                if (allowed(a)) out.add(a, c);
            } else if (r == d() - 1 && (id == jd || i[d() - 2] == jd)) {
                auto ni = words_->find(swap_at(i, r));
                if (!ni) throw std::logic_error("crossing the last two strands left G^delta");
                if (id == jd) {
                    VKey a{*ni, k.col, k.z, k.x};
                    if (allowed(a)) out.add(a, c);
                } else {
                    VKey a{*ni, k.col, k.z, k.x + 1};
                    if (allowed(a)) out.add(a, c * one(signs_.eps(id, jd)));
                }
            }
        }
        return out;
    }
    /// Applies ψ_{r_1} ⋯ ψ_{r_k} (rightmost first).
    VVector psi_word(const std::vector<int>& letters, VVector v) const {
        for (auto it = letters.rbegin(); it != letters.rend(); ++it) v = psi(*it, v);
        return v;
    }

    // ---- connecting permutations ----

    /// Cached connection target ← source, with the reduced word used to lift ψ_w.
    struct Lift {
        Connection conn;
        std::vector<int> word;
    };
    const Lift* lift(int target, int source) const {
        std::lock_guard<std::mutex> lock(cache_->mu);
        auto key = std::make_pair(target, source);
        auto it = cache_->lifts.find(key);
        if (it == cache_->lifts.end()) {
            std::optional<Lift> l;
            if (auto c = words_->connect(target, source)) l = Lift{*c, reduced_word(c->w)};
            it = cache_->lifts.emplace(key, std::move(l)).first;
        }
        return it->second ? &*it->second : nullptr;
    }
    PsiClass classify(const Permutation& u, int source) const { return classify_psi(*words_, u, words_->word(source)); }

    // ---- the basis of C_δ ----

    bool is_basis_key(const CdKey& k) const {
        if (k.b < 0 || k.m < 0 || k.m > 1) return false;
        if (k.target < 0 || k.source < 0 || k.target >= words_->size() || k.source >= words_->size()) return false;
        const Lift* l = lift(k.target, k.source);
        return l && k.m + l->conn.degree <= 1;
    }
    int degree(const CdKey& k) const {
        const Lift* l = lift(k.target, k.source);
        if (!l) throw std::invalid_argument("not a basis element");
        return 2 * k.b + 2 * k.m + l->conn.degree;
    }
    /// All basis elements with b ≤ b_max, ordered by (b, source, target, m).
    std::vector<CdKey> basis(int b_max) const {
        std::vector<CdKey> out;
        for (int b = 0; b <= b_max; ++b)
            for (int s = 0; s < words_->size(); ++s)
                for (int t = 0; t < words_->size(); ++t)
                    for (int m = 0; m < 2; ++m)
                        if (is_basis_key({b, m, t, s})) out.push_back({b, m, t, s});
        return out;
    }
    /// Basis elements of degree exactly D.
    std::vector<CdKey> basis_in_degree(int D) const {
        std::vector<CdKey> out;
        for (const auto& k : basis(D / 2))
            if (degree(k) == D) out.push_back(k);
        return out;
    }
    /// Σ over (m, w, i) of q^{2m + deg ψ_w 1_i} / (1 − q²).
    GradedDim formula_dimension(int D) const {
        QPoly num(3, 0);
        for (const auto& k : basis(0)) ++num[degree(k)];
        return series_of_rational(num, {2}, D);
    }
    GradedDim enumerated_dimension(int D) const {
        GradedDim g(D);
        for (const auto& k : basis(D / 2))
            if (degree(k) <= D) ++g.at(degree(k));
        return g;
    }

    /// X·v for a basis element X.
    VVector act(const CdKey& k, const VVector& v) const {
        const Lift* l = lift(k.target, k.source);
        if (!l) throw std::invalid_argument("not a basis element");
        VVector x = idem_index(k.source, v);
        x = psi_word(l->word, x);
        for (int e = 0; e < k.m; ++e) x = add(y(1, x), y(d(), x), -1);
        for (int e = 0; e < k.b; ++e) x = y(1, x);
        return x;
    }
    VVector act(const CdElement& e, const VVector& v) const {
        VVector r;
        for (const auto& [k, c] : e) r.add(act(k, v), c);
        return r;
    }
    /// X·1_{source,source}: the column image that identifies C_δ 1_i with V_{·,i}.
    VVector column_image(const CdElement& e) const {
        VVector r;
        for (const auto& [k, c] : e) r.add(act(k, vec({k.source, k.source, 0, 0})), c);
        return r;
    }
    /// Inverse of column_image: reads basis coordinates off (z^b x^m)_{t,s}.
    CdElement from_column(const VVector& v) const {
        CdElement r;
        for (const auto& [k, c] : v) {
            CdKey key{k.z, k.x, k.row, k.col};
            if (!is_basis_key(key)) throw std::logic_error("column vector outside the image of the basis");
            r.add(key, c);
        }
        return r;
    }

    CdElement element(const CdKey& k, Scalar c = 1) const {
        if (!is_basis_key(k)) throw std::invalid_argument("not a basis element");
        return CdElement(k, one() * c);
    }
    CdElement idempotent(int i) const { return element({0, 0, i, i}); }

    /// x·y, computed by acting with x on the column image of y.
    CdElement multiply(const CdElement& x, const CdElement& yv) const {
        CdElement r;
        for (const auto& [k, c] : yv) {
            VVector v = act(x, vec({k.target, k.source, k.b, k.m}));
            r.add(from_column(v), c);
        }
        return r;
    }

    /// Images of generators as elements: y_r 1_i, ψ_r 1_i and 1_i.
    CdElement gen_y(int r, int i) const { return from_column(y(r, vec({i, i, 0, 0}))); }
    CdElement gen_psi(int r, int i) const { return from_column(psi(r, vec({i, i, 0, 0}))); }

    // ---- checks ----

    /// KLR relations on V, tested on every monomial with z ≤ zmax.
    RelationReport check_klr(int zmax) const {
        auto vb = v_basis(zmax);
        std::map<int, std::vector<VVector>> by_row;
        for (const auto& k : vb) by_row[k.row].push_back(vec(k));
        std::function<std::vector<VVector>(const Word&)> vf = [&](const Word& w) {
            auto it = by_row.find(words_->index(w));
            return it == by_row.end() ? std::vector<VVector>{} : it->second;
        };
        return check_klr_relations<CuspidalAlgebra, VVector>(type_, signs_, d(), words_->all(), vf, *this);
    }

    /// y_1 = ⋯ = y_{d−1}, (y_1 − y_d)² = 0 and y_1 central, on monomials with z ≤ zmax.
    RelationReport check_cy(int zmax) const {
        RelationReport rep;
        auto note = [&](bool ok, const std::string& what) {
            ++rep.checked;
            if (!ok && rep.failed++ == 0) rep.first_failure = what;
        };
        for (const auto& k : v_basis(zmax)) {
            VVector v = vec(k);
            VVector y1 = y(1, v);
            for (int r = 2; r < d(); ++r) note(equal(y(r, v), y1), "y_1 = y_r");
            VVector diff = add(y1, y(d(), v), -1);
            note(add(y(1, diff), y(d(), diff), -1).empty(), "(y_1 - y_d)^2 = 0");
            for (int r = 1; r <= d(); ++r) note(equal(y(1, y(r, v)), y(r, y1)), "y_1 y_r = y_r y_1");
            for (int r = 1; r < d(); ++r) note(equal(y(1, psi(r, v)), psi(r, y1)), "y_1 psi_r = psi_r y_1");
            for (int i = 0; i < words_->size(); ++i)
                note(equal(y(1, idem_index(i, v)), idem_index(i, y1)), "y_1 1_i = 1_i y_1");
        }
        return rep;
    }

    /// (y_1 − y_d) ψ_u 1_i acts as 0 whenever ψ_u 1_i has degree one.
    RelationReport check_cypsi(int zmax) const {
        RelationReport rep;
        auto vb = v_basis(zmax);
        for (int s = 0; s < words_->size(); ++s)
            for (int t = 0; t < words_->size(); ++t) {
                const Lift* l = lift(t, s);
                if (!l || l->conn.degree != 1) continue;
                for (const auto& k : vb) {
                    if (k.row != s) continue;
                    VVector x = psi_word(l->word, vec(k));
                    x = add(y(1, x), y(d(), x), -1);
                    ++rep.checked;
                    if (!x.empty() && rep.failed++ == 0)
                        rep.first_failure = "(y_1-y_d) psi_u 1_i nonzero for target " + std::to_string(t) +
                                            " source " + std::to_string(s);
                }
            }
        return rep;
    }

    /// Rank of the action matrices of basis elements with b ≤ b_max on monomials with z ≤ zmax.
    std::size_t faithfulness_rank(int b_max, int zmax, std::size_t* count = nullptr) const {
        auto vb = v_basis(zmax);
        std::map<std::pair<std::size_t, VKey>, std::int64_t> columns;
        auto col_of = [&](std::size_t in, const VKey& out) {
            return columns.try_emplace({in, out}, static_cast<std::int64_t>(columns.size())).first->second;
        };
        ModPEchelon ech(ring_.is_field() ? ring_.modulus : kRankPrime);
        auto bs = basis(b_max);
        for (const auto& k : bs) {
            SparseRow row;
            for (std::size_t a = 0; a < vb.size(); ++a)
                for (const auto& [o, c] : act(k, vec(vb[a]))) row.emplace_back(col_of(a, o), c.value());
            std::sort(row.begin(), row.end());
            ech.insert(row);
        }
        if (count) *count = bs.size();
        return ech.rank();
    }

    /// dim_q 1_{b^i} C_δ 1_{b^j} counted from the basis.
    GradedDim hom_dimension(int i, int j, int D) const {
        GradedDim g(D);
        int ti = words_->b_index(i), sj = words_->b_index(j);
        for (const auto& k : basis(D / 2))
            if (k.target == ti && k.source == sj && degree(k) <= D) ++g.at(degree(k));
        return g;
    }
    /// (1+q²)/(1−q²) for i = j, q/(1−q²) for neighbors, 0 otherwise.
    GradedDim hom_formula(int i, int j, int D) const {
        if (i == j) return series_of_rational({1, 0, 1}, {2}, D);
        if (type_.c(i, j) == -1) return series_of_rational({0, 1}, {2}, D);
        return GradedDim(D);
    }

    // ---- level one and the zigzag algebra ----

    /// Basis {(y_1−y_d)^m ψ_w 1_i} of the level-one quotient.
    std::vector<CdKey> lambda0_basis() const { return basis(0); }
    /// Level-one basis elements between special words.
    std::vector<CdKey> special_lambda0_basis() const {
        std::vector<CdKey> out;
        for (const auto& k : basis(0))
            if (is_special(k.target) && is_special(k.source)) out.push_back(k);
        return out;
    }
    bool is_special(int idx) const {
        for (const auto& [i, w] : words_->bwords())
            if (words_->b_index(i) == idx) return true;
        return false;
    }
    int special_label(int idx) const {
        for (const auto& [i, w] : words_->bwords())
            if (words_->b_index(i) == idx) return i;
        throw std::invalid_argument("not a special word");
    }

    /// The zigzag algebra of the finite diagram over the same ring.
    SymAlg zigzag() const { return zigzag_algebra(type_.finite_graph(), ring_); }

    /// φ: 1_i ↦ e_i, (y_1−y_d)1_i ↦ ξ_i c e_i, ψ_{j,i}1_i ↦ μ_{ji} a^{j,i}; y_1 ↦ z is the returned power.
    std::pair<int, AElem> phi_basis(const CdKey& k, const SymAlg& Z) const {
        if (!is_special(k.target) || !is_special(k.source)) throw std::invalid_argument("phi needs special words");
        int j = special_label(k.target), i = special_label(k.source);
        AElem r;
        if (i == j) {
            if (k.m == 0) r.add(Z.e(i), one());
            else r.add(Z.cyc(i), one(signs_.xi(i)));
        } else {
            r.add(Z.arrow(j, i), one(signs_.mu(j, i)));
        }
        return {k.b, r};
    }
    /// φ on the level-one part (b = 0).
    AElem zigisom_phi(const CdElement& x, const SymAlg& Z) const {
        AElem r;
        for (const auto& [k, c] : x) {
            if (k.b != 0) throw std::invalid_argument("zigisom_phi is defined on the level-one part");
            r.add(phi_basis(k, Z).second, c);
        }
        return r;
    }

private:
    struct Cache {
        std::mutex mu;
        std::map<std::pair<int, int>, std::optional<Lift>> lifts;
    };
    AffineType type_;
    SignTable signs_;
    Ring ring_;
    std::shared_ptr<const CuspWordData> words_;
    std::shared_ptr<Cache> cache_;
};

/// Outcome of the zigzag isomorphism check.
struct ZigIsomReport {
    std::string type;
    int source_dim = 0, target_dim = 0;
    bool bijective = false;
    std::size_t products = 0, product_failures = 0;
    std::size_t affine_products = 0, affine_failures = 0;
    std::string first_failure;
    bool ok() const { return bijective && product_failures == 0 && affine_failures == 0; }
};

/// Checks that φ is a bijection onto Z, multiplicative on level-one basis pairs, and that
/// y_1^b ↦ z^b extends it multiplicatively into k[z] ⊗ Z for b ≤ b_max.
inline ZigIsomReport verify_zigisom(const CuspidalAlgebra& C, int b_max = 2) {
    ZigIsomReport rep;
    rep.type = C.type().name();
    SymAlg Z = C.zigzag();
    auto lb = C.special_lambda0_basis();
    rep.source_dim = static_cast<int>(lb.size());
    rep.target_dim = Z.dim();
    std::set<int> hit;
    bool unit_images = true;
    for (const auto& k : lb) {
        AElem img = C.zigisom_phi(C.element(k), Z);
        if (img.size() != 1) unit_images = false;
        for (const auto& [idx, c] : img) {
            hit.insert(idx);
            if (!(c == C.one() || c == C.one(-1))) unit_images = false;
        }
    }
    rep.bijective = unit_images && static_cast<int>(hit.size()) == Z.dim() && rep.source_dim == Z.dim();
    auto fail = [&](const std::string& why) {
        if (rep.first_failure.empty()) rep.first_failure = why;
    };
    for (const auto& x : lb)
        for (const auto& y : lb) {
            ++rep.products;
            CdElement xy = C.multiply(C.element(x), C.element(y));
            AElem lhs = C.zigisom_phi(xy, Z);
            AElem rhs = Z.mul(C.zigisom_phi(C.element(x), Z), C.zigisom_phi(C.element(y), Z));
            if (!(lhs == rhs)) {
                ++rep.product_failures;
                fail("phi(xy) != phi(x)phi(y) on level-one basis pair");
            }
        }
    Affinization H(Z, 1);
    auto Phi = [&](const CdElement& e) {
        AffElement r;
        for (const auto& [k, c] : e) {
            auto [b, img] = C.phi_basis(k, Z);
            for (const auto& [idx, s] : img) r.add(AffKey{{b}, {idx}, Permutation::identity(1)}, c * s);
        }
        return r;
    };
    std::vector<CdKey> ab;
    for (const auto& k : C.basis(b_max))
        if (C.is_special(k.target) && C.is_special(k.source)) ab.push_back(k);
    for (const auto& x : ab)
        for (const auto& y : ab) {
            ++rep.affine_products;
            CdElement xy = C.multiply(C.element(x), C.element(y));
            if (!(Phi(xy) == H.multiply(Phi(C.element(x)), Phi(C.element(y))))) {
                ++rep.affine_failures;
                fail("extended phi not multiplicative");
            }
        }
    return rep;
}

}  // namespace affzig
