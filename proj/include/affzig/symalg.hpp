#pragma once
// Finite graded symmetric algebras given by structure constants, with the
// zigzag algebra, the ground ring and the dual numbers as instances.

#include "affzig/linalg.hpp"
#include "affzig/rootdata.hpp"
#include "affzig/scalars.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace affzig {

/// Element of A: a combination of basis indices.
using AElem = LinComb<int>;
/// Element of A ⊗ A.
using A2Elem = LinComb<std::pair<int, int>>;

class SymAlg {
public:
    enum class Kind { Custom, Ground, DualNumbers, Zigzag };

    SymAlg() = default;

    /// Builds from raw data and validates every symmetric-algebra axiom.
    static SymAlg from_data(std::string name, std::vector<std::string> labels, std::vector<int> degrees,
                            std::vector<std::vector<AElem>> mult, AElem unit, std::vector<Scalar> trace,
                            std::optional<std::vector<AElem>> nu = std::nullopt, Ring ring = Ring::integers()) {
        SymAlg a;
        a.name_ = std::move(name);
        a.labels_ = std::move(labels);
        a.degrees_ = std::move(degrees);
        a.mult_ = std::move(mult);
        a.unit_ = std::move(unit);
        a.trace_ = std::move(trace);
        a.nu_ = std::move(nu);
        a.ring_ = ring;
        a.finalize();
        return a;
    }

    const std::string& name() const { return name_; }
    Kind kind() const { return kind_; }
    Ring ring() const { return ring_; }
    int dim() const { return static_cast<int>(labels_.size()); }
    const std::string& label(int b) const { return labels_.at(b); }
    const std::vector<std::string>& labels() const { return labels_; }
    int degree(int b) const { return degrees_.at(b); }
    const std::vector<int>& degrees() const { return degrees_; }
    /// Degree d of the trace form, which is the degree of Δ(1).
    int top_degree() const { return top_degree_; }
    const AElem& unit() const { return unit_; }
    const AElem& product(int a, int b) const { return mult_.at(a).at(b); }
    Scalar trace(int b) const { return trace_.at(b); }
    const std::vector<Scalar>& trace_vector() const { return trace_; }
    bool has_nu() const { return nu_.has_value(); }
    const Graph& graph() const { return graph_; }

    Scalar scalar(std::int64_t v) const { return ring_.is_field() ? Scalar(v, ring_) : Scalar(v); }

    AElem basis(int b) const { return AElem(b, scalar(1)); }
    AElem mul(const AElem& x, const AElem& y) const {
        AElem r;
        for (const auto& [a, ca] : x)
            for (const auto& [b, cb] : y) r.add(mult_[a][b], ca * cb);
        return r;
    }
    Scalar trace(const AElem& x) const {
        Scalar s = scalar(0);
        for (const auto& [b, c] : x) s += c * trace_[b];
        return s;
    }
    /// The antiautomorphism ν, extended linearly.
    AElem nu(const AElem& x) const {
        if (!nu_) throw std::logic_error("algebra " + name_ + " has no declared antiautomorphism");
        AElem r;
        for (const auto& [b, c] : x) r.add((*nu_)[b], c);
        return r;
    }
    const AElem& nu_basis(int b) const {
        if (!nu_) throw std::logic_error("algebra " + name_ + " has no declared antiautomorphism");
        return (*nu_)[b];
    }

    /// Δ(1) = Σ_b b^∨ ⊗ b, with b^∨ the dual basis for the trace form.
    const A2Elem& distinguished_element() const { return delta_; }
    /// m(Δ(1)).
    AElem delta_product() const {
        AElem r;
        for (const auto& [ab, c] : delta_) r.add(mult_[ab.first][ab.second], c);
        return r;
    }

    /// Basis of the center, computed degree by degree as the kernel of the commutator map.
    std::vector<AElem> center_basis() const {
        std::vector<AElem> out;
        std::map<int, std::vector<int>> by_degree;
        for (int b = 0; b < dim(); ++b) by_degree[degrees_[b]].push_back(b);
        for (const auto& [deg, idx] : by_degree) {
            // Rows indexed by (generator g, output basis c); columns by idx.
            RatMatrix m;
            for (int g = 0; g < dim(); ++g) {
                std::vector<std::vector<Rational>> rows(dim(), std::vector<Rational>(idx.size(), 0));
                for (std::size_t k = 0; k < idx.size(); ++k) {
                    AElem comm = mult_[idx[k]][g] - mult_[g][idx[k]];
                    for (const auto& [c, v] : comm) rows[c][k] += signed_value(v);
                }
                for (auto& r : rows) m.push_back(std::move(r));
            }
            for (const auto& v : kernel_basis(m, idx.size())) {
                AElem x;
                for (std::size_t k = 0; k < idx.size(); ++k)
                    if (v[k] != 0) x.add(idx[k], scalar(static_cast<std::int64_t>(v[k])));
                out.push_back(std::move(x));
            }
        }
        return out;
    }
    bool is_central(const AElem& x) const {
        for (int g = 0; g < dim(); ++g)
            if (!(mul(x, basis(g)) == mul(basis(g), x))) return false;
        return true;
    }

    /// Graded dimension as a polynomial in q.
    QPoly graded_dim() const {
        QPoly p(top_degree_ + 1, 0);
        for (int d : degrees_) {
            if (d >= static_cast<int>(p.size())) p.resize(d + 1, 0);
            ++p[d];
        }
        return p;
    }

    /// Zigzag index lookups; only valid for zigzag instances.
    int e(int i) const { return lookup(e_index_, i, "e"); }
    int cyc(int i) const { return lookup(c_index_, i, "c"); }
    int arrow(int i, int j) const {
        auto it = a_index_.find({i, j});
        if (it == a_index_.end()) throw std::out_of_range("no arrow a^{" + std::to_string(i) + "," + std::to_string(j) + "}");
        return it->second;
    }
    bool has_arrow(int i, int j) const { return a_index_.count({i, j}) > 0; }

    friend SymAlg ground_ring(Ring);
    friend SymAlg dual_numbers(Ring);
    friend SymAlg zigzag_algebra(const Graph&, Ring);

private:
    static std::int64_t signed_value(Scalar s) {
        if (s.modulus() && s.value() > s.modulus() / 2) return s.value() - s.modulus();
        return s.value();
    }
    static int lookup(const std::map<int, int>& m, int i, const char* what) {
        auto it = m.find(i);
        if (it == m.end()) throw std::out_of_range(std::string("no basis element ") + what + std::to_string(i));
        return it->second;
    }

    void finalize() {
        int n = dim();
        if (static_cast<int>(degrees_.size()) != n || static_cast<int>(trace_.size()) != n ||
            static_cast<int>(mult_.size()) != n)
            throw std::invalid_argument("algebra data has inconsistent sizes");
        for (auto& row : mult_)
            if (static_cast<int>(row.size()) != n) throw std::invalid_argument("structure table is not square");
        // Homogeneity of the product.
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (const auto& [c, v] : mult_[a][b])
                    if (degrees_[c] != degrees_[a] + degrees_[b])
                        throw std::invalid_argument("product " + labels_[a] + "*" + labels_[b] + " is not homogeneous");
        // Unit laws.
        for (int b = 0; b < n; ++b)
            if (!(mul(unit_, basis(b)) == basis(b)) || !(mul(basis(b), unit_) == basis(b)))
                throw std::invalid_argument("unit law fails at " + labels_[b]);
        // Associativity.
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (!(mul(mult_[a][b], basis(c)) == mul(basis(a), mult_[b][c])))
                        throw std::invalid_argument("associativity fails at (" + labels_[a] + "," + labels_[b] + "," + labels_[c] + ")");
        // Trace supported in a single degree.
        top_degree_ = -1;
        for (int b = 0; b < n; ++b) {
            if (trace_[b].is_zero()) continue;
            if (top_degree_ >= 0 && degrees_[b] != top_degree_)
                throw std::invalid_argument("trace form is not homogeneous");
            top_degree_ = degrees_[b];
        }
        if (top_degree_ < 0) throw std::invalid_argument("trace form is zero");
        // Symmetry of the form.
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (!(trace(mult_[a][b]) == trace(mult_[b][a])))
                    throw std::invalid_argument("trace is not symmetric on (" + labels_[a] + "," + labels_[b] + ")");
        compute_delta();
        if (nu_) check_nu();
    }

    void compute_delta() {
        int n = dim();
        RatMatrix gram(n, std::vector<Rational>(n));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) gram[a][b] = signed_value(trace(mult_[a][b]));
        Rational det = determinant(gram);
        if (det == 0) throw std::invalid_argument("trace form is degenerate: not a symmetric algebra");
        if (!ring_.is_field() && det != 1 && det != -1)
            throw std::invalid_argument("Gram determinant is not a unit over the integers: not a symmetric algebra");
        BigInt detnum = boost::multiprecision::numerator(det);
        if (ring_.is_field() && detnum % ring_.modulus == 0)
            throw std::invalid_argument("Gram matrix is singular modulo " + std::to_string(ring_.modulus));
        RatMatrix inv = rational_inverse(gram);
        delta_ = A2Elem();
        // Δ(1) = Σ_{a,c} (G^{-1})_{ac} b_c ⊗ b_a.
        for (int a = 0; a < n; ++a)
            for (int c = 0; c < n; ++c) {
                const Rational& x = inv[a][c];
                if (x == 0) continue;
                delta_.add({c, a}, to_scalar(x));
            }
    }
    Scalar to_scalar(const Rational& x) const {
        BigInt num = boost::multiprecision::numerator(x), den = boost::multiprecision::denominator(x);
        if (!ring_.is_field()) {
            if (den != 1) throw std::logic_error("non-integral dual basis");
            return Scalar(static_cast<std::int64_t>(num));
        }
        BigInt p = ring_.modulus;
        std::int64_t nn = static_cast<std::int64_t>(((num % p) + p) % p);
        std::int64_t dd = static_cast<std::int64_t>(((den % p) + p) % p);
        return Scalar(nn, ring_) * Scalar(dd, ring_).inverse();
    }
    void check_nu() const {
        int n = dim();
        if (static_cast<int>(nu_->size()) != n) throw std::invalid_argument("ν has the wrong size");
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (!(nu(mult_[a][b]) == mul(nu(basis(b)), nu(basis(a)))))
                    throw std::invalid_argument("ν is not anti-multiplicative");
        if (!(nu(unit_) == unit_)) throw std::invalid_argument("ν does not fix the unit");
    }

    std::string name_;
    Kind kind_ = Kind::Custom;
    Ring ring_;
    std::vector<std::string> labels_;
    std::vector<int> degrees_;
    std::vector<std::vector<AElem>> mult_;
    AElem unit_;
    std::vector<Scalar> trace_;
    std::optional<std::vector<AElem>> nu_;
    int top_degree_ = 0;
    A2Elem delta_;
    Graph graph_;
    std::map<int, int> e_index_, c_index_;
    std::map<Edge, int> a_index_;
};

/// The ground ring k in degree 0 with tr = identity.
inline SymAlg ground_ring(Ring ring = Ring::integers()) {
    auto one = [&](std::int64_t v) { return ring.is_field() ? Scalar(v, ring) : Scalar(v); };
    std::vector<std::vector<AElem>> mult{{AElem(0, one(1))}};
    SymAlg a = SymAlg::from_data("k", {"1"}, {0}, mult, AElem(0, one(1)), {one(1)},
                                 std::vector<AElem>{AElem(0, one(1))}, ring);
    a.kind_ = SymAlg::Kind::Ground;
    return a;
}

/// k[c]/(c²) with c in degree 2, tr(1) = 0 and tr(c) = 1.
inline SymAlg dual_numbers(Ring ring = Ring::integers()) {
    auto one = [&](std::int64_t v) { return ring.is_field() ? Scalar(v, ring) : Scalar(v); };
    std::vector<std::vector<AElem>> mult(2, std::vector<AElem>(2));
    mult[0][0] = AElem(0, one(1));
    mult[0][1] = AElem(1, one(1));
    mult[1][0] = AElem(1, one(1));
    SymAlg a = SymAlg::from_data("dualnumbers", {"1", "c"}, {0, 2}, mult, AElem(0, one(1)), {one(0), one(1)},
                                 std::vector<AElem>{AElem(0, one(1)), AElem(1, one(1))}, ring);
    a.kind_ = SymAlg::Kind::DualNumbers;
    return a;
}

/// Zigzag algebra Z(Γ). Basis order: e_i, then arrows a^{i,j} (sorted by (i,j)), then ce_i.
/// a^{i,j} = e_i a^{i,j} e_j and a^{i,j} a^{j,i} = ce_i. A single vertex gives k[c]/(c²).
inline SymAlg zigzag_algebra(const Graph& g, Ring ring = Ring::integers()) {
    if (!g.connected()) throw std::invalid_argument("zigzag graph must be connected");
    for (auto [a, b] : g.edges)
        if (a == b) throw std::invalid_argument("zigzag graph must have no loops");
    auto one = [&](std::int64_t v) { return ring.is_field() ? Scalar(v, ring) : Scalar(v); };
    std::vector<std::string> labels;
    std::vector<int> degrees;
    std::map<int, int> e_index, c_index;
    std::map<Edge, int> a_index;
    auto verts = g.vertices();
    for (int i : verts) {
        e_index[i] = static_cast<int>(labels.size());
        labels.push_back("e" + std::to_string(i));
        degrees.push_back(0);
    }
    std::vector<Edge> arrows;
    for (auto [a, b] : g.edges) {
        arrows.emplace_back(a, b);
        arrows.emplace_back(b, a);
    }
    std::sort(arrows.begin(), arrows.end());
    for (auto [i, j] : arrows) {
        a_index[{i, j}] = static_cast<int>(labels.size());
        labels.push_back("a" + std::to_string(i) + "," + std::to_string(j));
        degrees.push_back(1);
    }
    for (int i : verts) {
        c_index[i] = static_cast<int>(labels.size());
        labels.push_back("c" + std::to_string(i));
        degrees.push_back(2);
    }
    int n = static_cast<int>(labels.size());
    std::vector<std::vector<AElem>> mult(n, std::vector<AElem>(n));
    for (int i : verts) {
        for (int j : verts)
            if (i == j) {
                mult[e_index[i]][e_index[i]] = AElem(e_index[i], one(1));
                mult[e_index[i]][c_index[i]] = AElem(c_index[i], one(1));
                mult[c_index[i]][e_index[i]] = AElem(c_index[i], one(1));
            }
        for (auto [k, l] : arrows) {
            if (k == i) mult[e_index[i]][a_index[{k, l}]] = AElem(a_index[{k, l}], one(1));
            if (l == i) mult[a_index[{k, l}]][e_index[i]] = AElem(a_index[{k, l}], one(1));
        }
    }
    for (auto [i, j] : arrows) mult[a_index[{i, j}]][a_index[{j, i}]] = AElem(c_index[i], one(1));
    AElem unit;
    for (int i : verts) unit.add(e_index[i], one(1));
    std::vector<Scalar> trace(n, one(0));
    for (int i : verts) trace[c_index[i]] = one(1);
    std::vector<AElem> nu(n);
    for (int i : verts) {
        nu[e_index[i]] = AElem(e_index[i], one(1));
        nu[c_index[i]] = AElem(c_index[i], one(1));
    }
    for (auto [i, j] : arrows) nu[a_index[{i, j}]] = AElem(a_index[{j, i}], one(1));
    std::string name = "zigzag(" + std::to_string(g.count) + " vertices";
    for (auto [a, b] : g.edges) name += "," + std::to_string(a) + "-" + std::to_string(b);
    name += ")";
    SymAlg alg = SymAlg::from_data(name, labels, degrees, mult, unit, trace, nu, ring);
    alg.kind_ = SymAlg::Kind::Zigzag;
    alg.graph_ = g;
    alg.e_index_ = e_index;
    alg.c_index_ = c_index;
    alg.a_index_ = a_index;
    return alg;
}

/// Distinguished element of A, as a free function.
inline const A2Elem& distinguished_element(const SymAlg& a) { return a.distinguished_element(); }
inline std::vector<AElem> center_basis(const SymAlg& a) { return a.center_basis(); }

}  // namespace affzig
