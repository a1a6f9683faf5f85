#pragma once
// The affinization H_n(A) of a graded symmetric algebra A: elements in the
// normal-form basis f ⊗ a ⊗ w, multiplication through the action on V,
// center, the antiautomorphism ν̂, Jucys–Murphy elements, the wreath
// surjection β_c and cyclotomic quotients.

#include "affzig/coxeter.hpp"
#include "affzig/linalg.hpp"
#include "affzig/scalars.hpp"
#include "affzig/symalg.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace affzig {

/// Basis element f ⊗ a ⊗ w: monomial exponents, tuple of A-basis indices, permutation.
struct AffKey {
    Exponents t;
    std::vector<int> a;
    Permutation w;
    auto operator<=>(const AffKey&) const = default;
    bool operator==(const AffKey&) const = default;
};

using AffElement = LinComb<AffKey>;
/// Element of A^{⊗n}: combination of basis tuples.
using TensorElem = LinComb<std::vector<int>>;

class Affinization {
public:
    Affinization(SymAlg algebra, int n) : A_(std::make_shared<const SymAlg>(std::move(algebra))), n_(n) {
        if (n < 1) throw std::invalid_argument("rank n must be at least 1");
        zw_ = A_->top_degree() > 0 ? A_->top_degree() : 1;
    }

    const SymAlg& algebra() const { return *A_; }
    int n() const { return n_; }
    /// Degree of each z_i: d = deg Δ(1), or weight 1 when d = 0 (filtration by z-degree).
    int z_weight() const { return zw_; }
    bool z_graded() const { return A_->top_degree() > 0; }
    Scalar one_scalar() const { return A_->scalar(1); }

    int degree(const AffKey& k) const {
        int s = 0;
        for (int x : k.t) s += x * zw_;
        for (int b : k.a) s += A_->degree(b);
        return s;
    }
    /// Degree of a homogeneous element, or nullopt if it is zero or inhomogeneous.
    std::optional<int> degree(const AffElement& x) const {
        std::optional<int> d;
        for (const auto& [k, c] : x) {
            int e = degree(k);
            if (d && *d != e) return std::nullopt;
            d = e;
        }
        return d;
    }

    // ---- tensors in A^{⊗n} ----
    TensorElem tensor_of(const std::vector<AElem>& slots) const {
        if (static_cast<int>(slots.size()) != n_) throw std::invalid_argument("tensor needs n slots");
        TensorElem r(std::vector<int>{}, one_scalar());
        for (const auto& s : slots) {
            TensorElem next;
            for (const auto& [tup, c] : r)
                for (const auto& [b, cb] : s) {
                    auto t = tup;
                    t.push_back(b);
                    next.add(t, c * cb);
                }
            r = std::move(next);
        }
        return r;
    }
    /// x in slot r (1-based), unit elsewhere.
    TensorElem slot_tensor(int r, const AElem& x) const {
        check_slot(r);
        std::vector<AElem> slots(n_, A_->unit());
        slots[r - 1] = x;
        return tensor_of(slots);
    }
    TensorElem unit_tensor() const { return tensor_of(std::vector<AElem>(n_, A_->unit())); }
    TensorElem tensor_mul(const TensorElem& x, const TensorElem& y) const {
        TensorElem r;
        for (const auto& [a, ca] : x)
            for (const auto& [b, cb] : y) r.add(tuple_mul(a, b), ca * cb);
        return r;
    }
    TensorElem tuple_mul(const std::vector<int>& a, const std::vector<int>& b) const {
        std::vector<AElem> slots(n_);
        for (int r = 0; r < n_; ++r) slots[r] = A_->product(a[r], b[r]);
        return tensor_of(slots);
    }
    /// Δ_{i,j}: Δ(1) placed in slots i and j, unit elsewhere.
    TensorElem delta_tensor(int i, int j) const {
        check_slot(i);
        check_slot(j);
        if (i == j) throw std::invalid_argument("Δ_{i,j} needs distinct slots");
        TensorElem r;
        for (const auto& [xy, c] : A_->distinguished_element()) {
            std::vector<AElem> slots(n_, A_->unit());
            slots[i - 1] = A_->basis(xy.first);
            slots[j - 1] = A_->basis(xy.second);
            r.add(tensor_of(slots), c);
        }
        return r;
    }

    // ---- elements ----
    AffElement from_tensor(const TensorElem& x, const Exponents& t, const Permutation& w) const {
        AffElement r;
        for (const auto& [tup, c] : x) r.add(AffKey{t, tup, w}, c);
        return r;
    }
    AffElement from_tensor(const TensorElem& x) const { return from_tensor(x, zero_exps(), Permutation::identity(n_)); }
    AffElement one() const { return from_tensor(unit_tensor()); }
    AffElement zmono(const Exponents& t) const { return from_tensor(unit_tensor(), t, Permutation::identity(n_)); }
    AffElement z(int i) const {
        check_slot(i);
        Exponents t = zero_exps();
        t[i - 1] = 1;
        return zmono(t);
    }
    AffElement perm(const Permutation& w) const { return from_tensor(unit_tensor(), zero_exps(), w); }
    AffElement s(int j) const {
        check_simple(j);
        return perm(Permutation::simple(n_, j));
    }
    AffElement slot(int r, const AElem& x) const { return from_tensor(slot_tensor(r, x)); }
    AffElement key(const AffKey& k) const { return AffElement(k, one_scalar()); }
    Exponents zero_exps() const { return Exponents(n_, 0); }

    // ---- action on V ----
    AffElement act_s(int j, const AffElement& v) const {
        check_simple(j);
        AffElement r;
        Permutation sj = Permutation::simple(n_, j);
        for (const auto& [k, c] : v) {
            r.add(AffKey{act_perm(sj, k.t), act_perm(sj, k.a), sj * k.w}, c);
            if (k.t[j - 1] == k.t[j]) continue;
            LinComb<Exponents> nabla;
            divided_difference_monomial(j, k.t, c, nabla);
            if (nabla.empty()) continue;
            TensorElem corr = tensor_mul(delta_tensor(j, j + 1), TensorElem(k.a, one_scalar()));
            for (const auto& [t2, c2] : nabla)
                for (const auto& [tup, c3] : corr) r.add(AffKey{t2, tup, k.w}, c2 * c3);
        }
        return r;
    }
    AffElement act_z(const Exponents& t, const AffElement& v) const {
        AffElement r;
        for (const auto& [k, c] : v) {
            AffKey k2 = k;
            for (int i = 0; i < n_; ++i) k2.t[i] += t[i];
            r.add(k2, c);
        }
        return r;
    }
    AffElement act_tensor(const TensorElem& x, const AffElement& v) const {
        AffElement r;
        for (const auto& [k, c] : v)
            for (const auto& [tup, cx] : x)
                for (const auto& [prod, cp] : tuple_mul(tup, k.a)) r.add(AffKey{k.t, prod, k.w}, c * cx * cp);
        return r;
    }

    /// Generator of H_n(A) for gen_action.
    struct GenZ {
        int i;
    };
    struct GenS {
        int j;
    };
    struct GenA {
        TensorElem a;
    };
    using Generator = std::variant<GenZ, GenS, GenA>;

    AffElement gen_action(const Generator& g, const AffElement& v) const {
        if (auto* gz = std::get_if<GenZ>(&g)) {
            check_slot(gz->i);
            Exponents t = zero_exps();
            t[gz->i - 1] = 1;
            return act_z(t, v);
        }
        if (auto* gs = std::get_if<GenS>(&g)) return act_s(gs->j, v);
        return act_tensor(std::get<GenA>(g).a, v);
    }

    /// x·y: x acts on y ∈ V ≅ H_n(A), each term f a w applied as w (rightmost letter first), then a, then f.
    AffElement multiply(const AffElement& x, const AffElement& y) const {
        AffElement out;
        for (const auto& [k, c] : x) {
            check_key(k);
            AffElement r = y;
            auto word = reduced_word(k.w);
            for (auto it = word.rbegin(); it != word.rend(); ++it) r = act_s(*it, r);
            r = act_tensor(TensorElem(k.a, one_scalar()), r);
            r = act_z(k.t, r);
            out.add(r, c);
        }
        return out;
    }

    // ---- center ----
    bool is_central(const AffElement& x) const {
        for (const auto& g : generators())
            if (!(multiply(g, x) == multiply(x, g))) return false;
        return true;
    }
    /// z_i, s_j and every single-slot basis element.
    std::vector<AffElement> generators() const {
        std::vector<AffElement> g;
        for (int i = 1; i <= n_; ++i) g.push_back(z(i));
        for (int j = 1; j < n_; ++j) g.push_back(s(j));
        for (int r = 1; r <= n_; ++r)
            for (int b = 0; b < A_->dim(); ++b) g.push_back(slot(r, A_->basis(b)));
        return g;
    }

    struct CenterElement {
        int degree;
        AffElement element;
    };
    /// Basis of (k[z] ⊗ Z(A)^{⊗n})^{S_n} in degrees ≤ D: S_n-orbit sums of
    /// (monomial, tuple of center basis elements). Every member is checked central.
    std::vector<CenterElement> center_space(int D) const {
        if (D < 0) throw std::invalid_argument("degree cutoff must be nonnegative");
        auto zb = A_->center_basis();
        std::vector<int> zdeg;
        for (const auto& x : zb) zdeg.push_back(A_->degree(x.begin()->first));
        std::vector<CenterElement> out;
        auto perms = all_perms();
        // Enumerate pairs (t, c) of degree ≤ D.
        std::vector<std::pair<Exponents, std::vector<int>>> pairs;
        Exponents t(n_, 0);
        std::vector<int> cidx(n_, 0);
        auto rec_c = [&](auto&& self, int pos, int deg) -> void {
            if (pos == n_) {
                pairs.emplace_back(t, cidx);
                return;
            }
            for (int k = 0; k < static_cast<int>(zb.size()); ++k)
                if (deg + zdeg[k] <= D) {
                    cidx[pos] = k;
                    self(self, pos + 1, deg + zdeg[k]);
                }
        };
        auto rec_t = [&](auto&& self, int pos, int deg) -> void {
            if (pos == n_) {
                rec_c(rec_c, 0, deg);
                return;
            }
            for (int e = 0; deg + e * zw_ <= D; ++e) {
                t[pos] = e;
                self(self, pos + 1, deg + e * zw_);
            }
            t[pos] = 0;
        };
        rec_t(rec_t, 0, 0);
        std::set<std::pair<Exponents, std::vector<int>>> seen;
        for (const auto& p : pairs) {
            if (seen.count(p)) continue;
            std::set<std::pair<Exponents, std::vector<int>>> orbit;
            for (const auto& w : perms) orbit.insert({act_perm(w, p.first), act_perm(w, p.second)});
            AffElement sum;
            for (const auto& q : orbit) {
                seen.insert(q);
                std::vector<AElem> slots;
                for (int k : q.second) slots.push_back(zb[k]);
                sum.add(from_tensor(tensor_of(slots), q.first, Permutation::identity(n_)));
            }
            int deg = 0;
            for (int e : p.first) deg += e * zw_;
            for (int k : p.second) deg += zdeg[k];
            if (!is_central(sum)) throw std::logic_error("invariant element failed the centrality check");
            out.push_back({deg, std::move(sum)});
        }
        std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.degree < b.degree; });
        return out;
    }

    // ---- antiautomorphism ----
    /// ν̂: fixes z_i and s_j, applies ν slot-wise, reverses products.
    AffElement nu_hat(const AffElement& x) const {
        if (!A_->has_nu()) throw std::logic_error("algebra has no declared antiautomorphism ν");
        AffElement out;
        for (const auto& [k, c] : x) {
            std::vector<AElem> slots;
            for (int b : k.a) slots.push_back(A_->nu_basis(b));
            // ν̂(f a w) = w^{-1} ν(a) f.
            AffElement r = multiply(perm(k.w.inverse()), multiply(from_tensor(tensor_of(slots)), zmono(k.t)));
            out.add(r, c);
        }
        return out;
    }

    // ---- Jucys–Murphy elements and the wreath surjection ----
    /// l_r = −Σ_{t<r} Δ_{t,r} (t, r).
    AffElement jucys_murphy(int r) const {
        check_slot(r);
        AffElement out;
        for (int t = 1; t < r; ++t) {
            std::vector<int> one_line(n_);
            for (int k = 1; k <= n_; ++k) one_line[k - 1] = k;
            std::swap(one_line[t - 1], one_line[r - 1]);
            out.add(from_tensor(delta_tensor(t, r), zero_exps(), Permutation(one_line)), -one_scalar());
        }
        return out;
    }
    /// Σ_slots m(Δ(1)).
    AffElement default_c() const {
        AffElement out;
        AElem m = A_->delta_product();
        for (int r = 1; r <= n_; ++r) out.add(from_tensor(slot_tensor(r, m)));
        return out;
    }
    /// Throws unless c is a symmetric central tensor homogeneous of degree d.
    void validate_c(const AffElement& c) const {
        for (const auto& [k, v] : c) {
            if (!k.w.is_identity() || k.t != zero_exps()) throw std::invalid_argument("c must lie in A^{⊗n}");
            int deg = 0;
            for (int b : k.a) deg += A_->degree(b);
            if (deg != A_->top_degree()) throw std::invalid_argument("c must be homogeneous of degree d");
        }
        for (int r = 1; r <= n_; ++r)
            for (int b = 0; b < A_->dim(); ++b) {
                auto g = slot(r, A_->basis(b));
                if (!(multiply(g, c) == multiply(c, g))) throw std::invalid_argument("c is not central in A^{⊗n}");
            }
        for (int j = 1; j < n_; ++j)
            if (!(multiply(s(j), c) == multiply(c, s(j)))) throw std::invalid_argument("c is not S_n-symmetric");
    }
    /// β_c: identity on A ≀ S_n, z_r ↦ l_r + c.
    AffElement beta_c(const AffElement& x, const AffElement& c) const {
        validate_c(c);
        return beta_c_unchecked(x, c);
    }
    AffElement beta_c_unchecked(const AffElement& x, const AffElement& c) const {
        std::vector<AffElement> images;
        for (int r = 1; r <= n_; ++r) images.push_back(jucys_murphy(r) + c);
        AffElement out;
        for (const auto& [k, coef] : x) {
            AffElement r = one();
            for (int i = 0; i < n_; ++i)
                for (int e = 0; e < k.t[i]; ++e) r = multiply(r, images[i]);
            r = multiply(r, from_tensor(TensorElem(k.a, one_scalar())));
            r = multiply(r, perm(k.w));
            out.add(r, coef);
        }
        return out;
    }

    // ---- enumeration ----
    /// All basis keys of degree exactly k (for d = 0: z-weight exactly k).
    std::vector<AffKey> basis_in_degree(int k) const {
        std::vector<AffKey> out;
        auto perms = all_perms();
        std::vector<std::vector<int>> tuples;
        std::vector<int> tup(n_);
        std::vector<int> tdeg;
        auto rec_a = [&](auto&& self, int pos, int deg) -> void {
            if (deg > k) return;
            if (pos == n_) {
                tuples.push_back(tup);
                tdeg.push_back(deg);
                return;
            }
            for (int b = 0; b < A_->dim(); ++b) {
                tup[pos] = b;
                self(self, pos + 1, deg + A_->degree(b));
            }
        };
        rec_a(rec_a, 0, 0);
        for (std::size_t ti = 0; ti < tuples.size(); ++ti) {
            int rest = k - tdeg[ti];
            if (rest % zw_ != 0) continue;
            int m = rest / zw_;
            for (const auto& t : compositions(m, n_))
                for (const auto& w : perms) out.push_back(AffKey{t, tuples[ti], w});
        }
        std::sort(out.begin(), out.end());
        return out;
    }
    /// n!(dim_q A/(1 − q^{z-weight}))^n through degree D.
    GradedDim formula_dimension(int D) const {
        GradedDim a(A_->graded_dim(), D);
        GradedDim geo = series_of_rational({1}, {zw_}, D);
        std::int64_t fact = 1;
        for (int k = 2; k <= n_; ++k) fact *= k;
        return (a * geo).pow(n_).scaled(fact);
    }
    GradedDim enumerated_dimension(int D) const {
        GradedDim g(D);
        for (int k = 0; k <= D; ++k) g.at(k) = static_cast<std::int64_t>(basis_in_degree(k).size());
        return g;
    }

    std::vector<Permutation> all_perms() const {
        std::vector<int> v(n_);
        for (int k = 0; k < n_; ++k) v[k] = k + 1;
        std::vector<Permutation> out;
        do {
            out.emplace_back(v);
        } while (std::next_permutation(v.begin(), v.end()));
        return out;
    }
    static std::vector<Exponents> compositions(int m, int parts) {
        std::vector<Exponents> out;
        Exponents cur(parts, 0);
        auto rec = [&](auto&& self, int pos, int left) -> void {
            if (pos == parts - 1) {
                cur[pos] = left;
                out.push_back(cur);
                return;
            }
            for (int e = left; e >= 0; --e) {
                cur[pos] = e;
                self(self, pos + 1, left - e);
            }
        };
        if (parts == 0) {
            if (m == 0) out.push_back({});
            return out;
        }
        rec(rec, 0, m);
        return out;
    }

    void check_slot(int r) const {
        if (r < 1 || r > n_) throw std::out_of_range("slot index out of range");
    }
    void check_simple(int j) const {
        if (j < 1 || j >= n_) throw std::out_of_range("simple transposition index out of range");
    }
    void check_key(const AffKey& k) const {
        if (static_cast<int>(k.t.size()) != n_ || static_cast<int>(k.a.size()) != n_ || k.w.size() != n_)
            throw std::invalid_argument("element does not belong to this affinization");
    }

private:
    std::shared_ptr<const SymAlg> A_;
    int n_;
    int zw_;
};

/// Raised when the spanning-set rewriting revisits a term it is still reducing.
struct ReductionCycle : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Result of the C3 consistency battery.
struct C3Evidence {
    bool terminated = true;
    std::string witness;  // first failure, if any
    std::size_t spanning_size = 0;
    std::size_t associativity_trials = 0, associativity_failures = 0;
    std::size_t confluence_trials = 0, confluence_failures = 0;
    bool module_certificate = false;  // operators on the spanning set satisfy every defining relation
    std::size_t relation_checks = 0;
    bool consistent() const {
        return terminated && associativity_failures == 0 && confluence_failures == 0 && module_certificate;
    }
};

/// H_n(A)/(Π_j (z_1 − c^(j))) on the spanning set {z^t a w : t_k < l}.
class CyclotomicQuotient {
public:
    CyclotomicQuotient(const Affinization& H, std::vector<AffElement> params, bool validate = true)
        : H_(H), params_(std::move(params)), l_(static_cast<int>(params_.size())) {
        if (l_ < 1) throw std::invalid_argument("level must be at least 1");
        if (validate)
            for (const auto& c : params_) H_.validate_c(c);
        // P(z_1) = Σ_k z_1^k b_k with b_k ∈ A^{⊗n}.
        AffElement p = H_.one();
        for (const auto& c : params_) p = H_.multiply(p, H_.z(1) - c);
        coeff_.assign(l_ + 1, TensorElem());
        for (const auto& [k, v] : p) {
            for (int i = 1; i < H_.n(); ++i)
                if (k.t[i] != 0) throw std::logic_error("cyclotomic polynomial involves z_r with r > 1");
            coeff_.at(k.t[0]).add(k.a, v);
        }
        if (!(coeff_[l_] == H_.unit_tensor())) throw std::logic_error("cyclotomic polynomial is not monic");
        // Spanning set.
        for (int deg = 0;; ++deg) {
            bool any = false;
            for (const auto& t : Affinization::compositions(deg, H_.n())) {
                if (*std::max_element(t.begin(), t.end()) >= l_) continue;
                any = true;
                std::vector<int> tup(H_.n());
                auto rec = [&](auto&& self, int pos) -> void {
                    if (pos == H_.n()) {
                        for (const auto& w : H_.all_perms()) spanning_.push_back(AffKey{t, tup, w});
                        return;
                    }
                    for (int b = 0; b < H_.algebra().dim(); ++b) {
                        tup[pos] = b;
                        self(self, pos + 1);
                    }
                };
                rec(rec, 0);
            }
            if (!any) break;
        }
        std::sort(spanning_.begin(), spanning_.end());
        for (std::size_t k = 0; k < spanning_.size(); ++k) index_[spanning_[k]] = k;
    }

    /// Default parameters c^(j) = (j − 1)·Σ_slots m(Δ(1)).
    static std::vector<AffElement> default_params(const Affinization& H, int l) {
        std::vector<AffElement> out;
        AffElement c = H.default_c();
        for (int j = 1; j <= l; ++j) out.push_back(c.scaled(j - 1));
        return out;
    }

    int level() const { return l_; }
    const std::vector<AffKey>& spanning_set() const { return spanning_; }
    bool in_span(const AffKey& k) const { return index_.count(k) > 0; }

    /// Constructive rewriting into the span of the spanning set.
    AffElement reduce(const AffElement& x) const {
        AffElement out;
        for (const auto& [k, c] : x) out.add(reduce_key(k), c);
        return out;
    }
    AffElement multiply(const AffElement& x, const AffElement& y) const { return reduce(H_.multiply(x, y)); }

    /// Consistency battery for the spanning set at this instance.
    C3Evidence c3_evidence(std::size_t trials, std::uint64_t seed) const {
        C3Evidence ev;
        ev.spanning_size = spanning_.size();
        try {
            std::mt19937_64 rng(seed);
            std::uniform_int_distribution<std::size_t> pick(0, spanning_.size() - 1);
            for (std::size_t k = 0; k < trials; ++k) {
                AffElement x = H_.key(spanning_[pick(rng)]), y = H_.key(spanning_[pick(rng)]),
                           z = H_.key(spanning_[pick(rng)]);
                ++ev.associativity_trials;
                if (!(multiply(multiply(x, y), z) == multiply(x, multiply(y, z)))) {
                    if (ev.associativity_failures++ == 0) ev.witness = "associativity fails";
                }
            }
            build_operators();
            for (std::size_t k = 0; k < trials; ++k) {
                AffKey h = random_key(rng);
                ++ev.confluence_trials;
                if (!(reduce(H_.key(h)) == evaluate_by_operators(h, rng))) {
                    if (ev.confluence_failures++ == 0) ev.witness = "reduction orders disagree";
                }
            }
            std::string bad;
            ev.relation_checks = check_module_relations(bad);
            ev.module_certificate = bad.empty();
            if (!bad.empty() && ev.witness.empty()) ev.witness = bad;
        } catch (const ReductionCycle& e) {
            ev.terminated = false;
            ev.witness = e.what();
        }
        return ev;
    }

    /// Dimension, available when the module certificate holds.
    std::optional<std::size_t> certified_dimension() const {
        build_operators();
        std::string bad;
        check_module_relations(bad);
        if (!bad.empty()) return std::nullopt;
        return spanning_.size();
    }

private:
    using Dense = std::vector<Scalar>;

    AffElement reduce_key(const AffKey& k) const {
        auto it = memo_.find(k);
        if (it != memo_.end()) return it->second;
        if (!active_.insert(k).second) throw ReductionCycle("cyclic reduction at a spanning-set rewrite");
        AffElement out;
        int p = -1;
        for (int r = 0; r < H_.n(); ++r)
            if (k.t[r] >= l_) {
                p = r;
                break;
            }
        if (p < 0) {
            out = H_.key(k);
        } else if (p == 0) {
            // z_1^l ≡ −Σ_{j<l} z_1^j b_j.
            for (int j = 0; j < l_; ++j) {
                Exponents t = k.t;
                t[0] = k.t[0] - l_ + j;
                TensorElem ba = H_.tensor_mul(coeff_[j], TensorElem(k.a, H_.one_scalar()));
                out.add(reduce(H_.from_tensor(ba, t, k.w)), -H_.one_scalar());
            }
        } else {
            // f a w = s_i·(ˢf ˢa s_i w) − ∇_i(ˢf) Δ_{i,i+1} ˢa s_i w with i = p.
            int i = p;
            Permutation si = Permutation::simple(H_.n(), i);
            AffKey swapped{act_perm(si, k.t), act_perm(si, k.a), si * k.w};
            out = reduce(H_.act_s(i, reduce_key(swapped)));
            LinComb<Exponents> nabla;
            divided_difference_monomial(i, swapped.t, H_.one_scalar(), nabla);
            TensorElem corr = H_.tensor_mul(H_.delta_tensor(i, i + 1), TensorElem(swapped.a, H_.one_scalar()));
            AffElement sub;
            for (const auto& [t2, c2] : nabla)
                for (const auto& [tup, c3] : corr) sub.add(AffKey{t2, tup, swapped.w}, c2 * c3);
            out.add(reduce(sub), -H_.one_scalar());
        }
        active_.erase(k);
        memo_.emplace(k, out);
        return out;
    }

    AffKey random_key(std::mt19937_64& rng) const {
        int n = H_.n();
        std::uniform_int_distribution<int> e(0, l_ + 1), b(0, H_.algebra().dim() - 1);
        AffKey k{Exponents(n), std::vector<int>(n), Permutation::identity(n)};
        for (int r = 0; r < n; ++r) {
            k.t[r] = e(rng);
            k.a[r] = b(rng);
        }
        auto perms = H_.all_perms();
        k.w = perms[std::uniform_int_distribution<std::size_t>(0, perms.size() - 1)(rng)];
        return k;
    }

    // Operators G ↦ reduce(G · s) on the spanning set, as sparse columns.
    void build_operators() const {
        if (ops_built_) return;
        int n = H_.n();
        std::vector<AffElement> gens;
        for (int i = 1; i <= n; ++i) gens.push_back(H_.z(i));
        for (int j = 1; j < n; ++j) gens.push_back(H_.s(j));
        for (int r = 1; r <= n; ++r)
            for (int b = 0; b < H_.algebra().dim(); ++b) gens.push_back(H_.slot(r, H_.algebra().basis(b)));
        ops_.clear();
        for (const auto& g : gens) {
            std::vector<std::vector<std::pair<std::size_t, Scalar>>> cols(spanning_.size());
            for (std::size_t k = 0; k < spanning_.size(); ++k) {
                AffElement img = reduce(H_.multiply(g, H_.key(spanning_[k])));
                for (const auto& [key, c] : img) cols[k].emplace_back(index_.at(key), c);
            }
            ops_.push_back(std::move(cols));
        }
        ops_built_ = true;
    }
    std::size_t op_z(int i) const { return i - 1; }
    std::size_t op_s(int j) const { return H_.n() + j - 1; }
    std::size_t op_a(int r, int b) const {
        return H_.n() + (H_.n() - 1) + (r - 1) * H_.algebra().dim() + b;
    }

    Dense apply_op(std::size_t op, const Dense& v) const {
        Dense out(v.size(), H_.one_scalar() - H_.one_scalar());
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (v[k].is_zero()) continue;
            for (const auto& [row, c] : ops_[op][k]) out[row] += c * v[k];
        }
        return out;
    }
    Dense apply_ops(const std::vector<std::size_t>& word, Dense v) const {
        for (auto it = word.rbegin(); it != word.rend(); ++it) v = apply_op(*it, v);
        return v;
    }
    Dense apply_tensor(const TensorElem& x, const Dense& v) const {
        Dense out(v.size(), zero());
        for (const auto& [tup, c] : x) {
            std::vector<std::size_t> word;
            for (int r = 1; r <= H_.n(); ++r) word.push_back(op_a(r, tup[r - 1]));
            Dense img = apply_ops(word, v);
            for (std::size_t k = 0; k < v.size(); ++k) out[k] += c * img[k];
        }
        return out;
    }
    Scalar zero() const { return H_.one_scalar() - H_.one_scalar(); }
    Dense to_dense(const AffElement& x) const {
        Dense v(spanning_.size(), zero());
        for (const auto& [k, c] : x) v.at(index_.at(k)) += c;
        return v;
    }
    AffElement from_dense(const Dense& v) const {
        AffElement x;
        for (std::size_t k = 0; k < v.size(); ++k) x.add(spanning_[k], v[k]);
        return x;
    }

    /// h·1 through the operators along a random reduced word and random z-order.
    AffElement evaluate_by_operators(const AffKey& h, std::mt19937_64& rng) const {
        std::vector<std::size_t> word;
        std::vector<std::size_t> zs;
        for (int i = 1; i <= H_.n(); ++i)
            for (int e = 0; e < h.t[i - 1]; ++e) zs.push_back(op_z(i));
        std::shuffle(zs.begin(), zs.end(), rng);
        word = zs;
        for (int r = 1; r <= H_.n(); ++r) word.push_back(op_a(r, h.a[r - 1]));
        // Random reduced word: repeatedly strip a random left descent.
        Permutation cur = h.w;
        while (!cur.is_identity()) {
            std::vector<int> desc;
            for (int i = 1; i < cur.size(); ++i)
                if (cur.has_left_descent(i)) desc.push_back(i);
            int i = desc[std::uniform_int_distribution<std::size_t>(0, desc.size() - 1)(rng)];
            word.push_back(op_s(i));
            cur = cur.left_mul_simple(i);
        }
        return from_dense(apply_ops(word, to_dense(H_.one())));
    }

    /// Checks every defining relation of the quotient on the operators; returns the number checked.
    std::size_t check_module_relations(std::string& bad) const {
        build_operators();
        int n = H_.n();
        const SymAlg& A = H_.algebra();
        std::size_t checks = 0;
        std::size_t N = spanning_.size();
        auto fail = [&](const std::string& what, std::size_t k) {
            if (bad.empty()) bad = what + " fails on spanning element #" + std::to_string(k);
        };
        for (std::size_t k = 0; k < N; ++k) {
            Dense v(N, zero());
            v[k] = H_.one_scalar();
            auto rel = [&](const Dense& lhs, const Dense& rhs, const std::string& what) {
                ++checks;
                if (lhs != rhs) fail(what, k);
            };
            for (int i = 1; i <= n; ++i)
                for (int j = i + 1; j <= n; ++j)
                    rel(apply_ops({op_z(i), op_z(j)}, v), apply_ops({op_z(j), op_z(i)}, v), "z_i z_j = z_j z_i");
            for (int r = 1; r <= n; ++r) {
                Dense u(N, zero());
                for (const auto& [b, c] : A.unit()) {
                    Dense img = apply_op(op_a(r, b), v);
                    for (std::size_t q = 0; q < N; ++q) u[q] += c * img[q];
                }
                rel(u, v, "unit of A in each slot");
                for (int b = 0; b < A.dim(); ++b) {
                    for (int b2 = 0; b2 < A.dim(); ++b2) {
                        Dense prod(N, zero());
                        for (const auto& [c, cc] : A.product(b, b2)) {
                            Dense img = apply_op(op_a(r, c), v);
                            for (std::size_t q = 0; q < N; ++q) prod[q] += cc * img[q];
                        }
                        rel(apply_ops({op_a(r, b), op_a(r, b2)}, v), prod, "slot multiplication");
                        for (int r2 = r + 1; r2 <= n; ++r2)
                            rel(apply_ops({op_a(r, b), op_a(r2, b2)}, v), apply_ops({op_a(r2, b2), op_a(r, b)}, v),
                                "distinct slots commute");
                    }
                    for (int i = 1; i <= n; ++i)
                        rel(apply_ops({op_z(i), op_a(r, b)}, v), apply_ops({op_a(r, b), op_z(i)}, v), "(AZ)");
                    for (int j = 1; j < n; ++j) {
                        int rr = r == j ? j + 1 : (r == j + 1 ? j : r);
                        rel(apply_ops({op_s(j), op_a(r, b)}, v), apply_ops({op_a(rr, b), op_s(j)}, v), "(AS)");
                    }
                }
            }
            for (int j = 1; j < n; ++j) {
                rel(apply_ops({op_s(j), op_s(j)}, v), v, "s_j^2 = 1");
                for (int j2 = j + 1; j2 < n; ++j2) {
                    if (j2 == j + 1)
                        rel(apply_ops({op_s(j), op_s(j2), op_s(j)}, v), apply_ops({op_s(j2), op_s(j), op_s(j2)}, v),
                            "braid relation");
                    else
                        rel(apply_ops({op_s(j), op_s(j2)}, v), apply_ops({op_s(j2), op_s(j)}, v), "far commutation");
                }
                for (int t = 1; t <= n; ++t) {
                    int st = t == j ? j + 1 : (t == j + 1 ? j : t);
                    Dense lhs = apply_ops({op_s(j), op_z(t)}, v);
                    Dense sub = apply_ops({op_z(st), op_s(j)}, v);
                    for (std::size_t q = 0; q < N; ++q) lhs[q] -= sub[q];
                    Dense rhs(N, zero());
                    if (t == j || t == j + 1) {
                        rhs = apply_tensor(H_.delta_tensor(j, j + 1), v);
                        if (t == j + 1)
                            for (auto& x : rhs) x = -x;
                    }
                    rel(lhs, rhs, "(SZ)");
                }
            }
            // Cyclotomic relation Σ_k b_k z_1^k = 0.
            Dense p(N, zero());
            Dense zk = v;
            for (int j = 0; j <= l_; ++j) {
                Dense img = apply_tensor(coeff_[j], zk);
                for (std::size_t q = 0; q < N; ++q) p[q] += img[q];
                zk = apply_op(op_z(1), zk);
            }
            rel(p, Dense(N, zero()), "cyclotomic relation");
        }
        // Cyclic vector: every spanning element is itself applied to 1.
        Dense one = to_dense(H_.one());
        for (std::size_t k = 0; k < N; ++k) {
            const AffKey& h = spanning_[k];
            std::vector<std::size_t> word;
            for (int i = 1; i <= n; ++i)
                for (int e = 0; e < h.t[i - 1]; ++e) word.push_back(op_z(i));
            for (int r = 1; r <= n; ++r) word.push_back(op_a(r, h.a[r - 1]));
            for (int i : reduced_word(h.w)) word.push_back(op_s(i));
            ++checks;
            Dense img = apply_ops(word, one);
            Dense expect(N, zero());
            expect[k] = H_.one_scalar();
            if (img != expect) fail("spanning element is not its own image of 1", k);
        }
        return checks;
    }

    Affinization H_;
    std::vector<AffElement> params_;
    int l_;
    std::vector<TensorElem> coeff_;
    std::vector<AffKey> spanning_;
    std::map<AffKey, std::size_t> index_;
    mutable std::map<AffKey, AffElement> memo_;
    mutable std::set<AffKey> active_;
    mutable std::vector<std::vector<std::vector<std::pair<std::size_t, Scalar>>>> ops_;
    mutable bool ops_built_ = false;
};

}  // namespace affzig
