#pragma once
// JSON forms of the library's data: graded dimensions, permutations, words,
// symmetric algebras, affinization elements, C_δ elements and induced vectors.

#include "affzig/affinize.hpp"
#include "affzig/coxeter.hpp"
#include "affzig/cuspidal.hpp"
#include "affzig/cuspwords.hpp"
#include "affzig/induced.hpp"
#include "affzig/scalars.hpp"
#include "affzig/symalg.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace affzig::json_io {

using json = nlohmann::ordered_json;

inline json scalar(Scalar s) { return s.value(); }

inline json graded_dim(const GradedDim& g) { return json{{"coefficients", g.coeffs()}, {"degree", g.degree()}}; }

inline json permutation(const Permutation& w) { return w.one_line(); }
inline Permutation permutation_from(const json& j) { return Permutation(j.get<std::vector<int>>()); }

inline json word(const Word& w) { return w; }

// ---- symmetric algebras ----

/// {name, basis, degrees, unit, trace, structure: dense table [a][b] of coefficient vectors}.
inline json symalg(const SymAlg& A) {
    json table = json::array();
    for (int a = 0; a < A.dim(); ++a) {
        json row = json::array();
        for (int b = 0; b < A.dim(); ++b) {
            std::vector<std::int64_t> dense(A.dim(), 0);
            for (const auto& [k, c] : A.product(a, b)) dense[k] = c.value();
            row.push_back(dense);
        }
        table.push_back(row);
    }
    std::vector<std::int64_t> unit(A.dim(), 0), trace;
    for (const auto& [k, c] : A.unit()) unit[k] = c.value();
    for (const auto& t : A.trace_vector()) trace.push_back(t.value());
    return json{{"name", A.name()},   {"basis", A.labels()}, {"degrees", A.degrees()},
                {"unit", unit},       {"trace", trace},      {"structure", table}};
}

inline SymAlg symalg_from(const json& j, Ring ring = Ring::integers()) {
    auto labels = j.at("basis").get<std::vector<std::string>>();
    auto degrees = j.at("degrees").get<std::vector<int>>();
    const int n = static_cast<int>(labels.size());
    if (static_cast<int>(degrees.size()) != n) throw std::invalid_argument("degrees and basis differ in length");
    auto mk = [&](std::int64_t v) { return ring.is_field() ? Scalar(v, ring) : Scalar(v); };
    auto dense = [&](const json& v) {
        auto xs = v.get<std::vector<std::int64_t>>();
        if (static_cast<int>(xs.size()) != n) throw std::invalid_argument("coefficient vector has wrong length");
        AElem e;
        for (int k = 0; k < n; ++k)
            if (xs[k] != 0) e.add(k, mk(xs[k]));
        return e;
    };
    std::vector<std::vector<AElem>> mult(n, std::vector<AElem>(n));
    const json& table = j.at("structure");
    if (static_cast<int>(table.size()) != n) throw std::invalid_argument("structure table has wrong size");
    for (int a = 0; a < n; ++a) {
        if (static_cast<int>(table[a].size()) != n) throw std::invalid_argument("structure table has wrong size");
        for (int b = 0; b < n; ++b) mult[a][b] = dense(table[a][b]);
    }
    std::vector<Scalar> trace;
    for (auto v : j.at("trace").get<std::vector<std::int64_t>>()) trace.push_back(mk(v));
    return SymAlg::from_data(j.value("name", std::string("custom")), labels, degrees, mult, dense(j.at("unit")), trace,
                             std::nullopt, ring);
}

// ---- affinization elements ----

/// Term list of {exponents, tensor (basis labels), permutation, coefficient}.
inline json aff_element(const Affinization& H, const AffElement& x) {
    json out = json::array();
    for (const auto& [k, c] : x) {
        std::vector<std::string> labels;
        for (int b : k.a) labels.push_back(H.algebra().label(b));
        out.push_back(json{{"exponents", k.t}, {"tensor", labels}, {"permutation", permutation(k.w)},
                           {"coefficient", scalar(c)}});
    }
    return out;
}

inline AffElement aff_element_from(const Affinization& H, const json& j) {
    const SymAlg& A = H.algebra();
    auto label_index = [&](const std::string& s) {
        for (int b = 0; b < A.dim(); ++b)
            if (A.label(b) == s) return b;
        throw std::invalid_argument("unknown basis label '" + s + "'");
    };
    AffElement out;
    for (const auto& term : j) {
        AffKey k;
        k.t = term.at("exponents").get<Exponents>();
        for (const auto& s : term.at("tensor")) k.a.push_back(label_index(s.get<std::string>()));
        k.w = permutation_from(term.at("permutation"));
        if (static_cast<int>(k.t.size()) != H.n() || static_cast<int>(k.a.size()) != H.n() || k.w.size() != H.n())
            throw std::invalid_argument("term does not match the rank n");
        out.add(k, A.scalar(term.at("coefficient").get<std::int64_t>()));
    }
    return out;
}

// ---- C_δ elements ----

/// List of {b, m, target, source, coefficient}, target and source as words.
inline json cd_element(const CuspidalAlgebra& C, const CdElement& x) {
    json out = json::array();
    for (const auto& [k, c] : x)
        out.push_back(json{{"b", k.b},
                           {"m", k.m},
                           {"target", word(C.words().word(k.target))},
                           {"source", word(C.words().word(k.source))},
                           {"coefficient", scalar(c)}});
    return out;
}

inline CdElement cd_element_from(const CuspidalAlgebra& C, const json& j) {
    CdElement out;
    for (const auto& term : j) {
        auto idx = [&](const char* key) {
            auto w = term.at(key).get<Word>();
            auto f = C.words().find(w);
            if (!f) throw std::invalid_argument(std::string(key) + " word is not in G^δ");
            return *f;
        };
        CdKey k{term.at("b").get<int>(), term.at("m").get<int>(), idx("target"), idx("source")};
        if (!C.is_basis_key(k)) throw std::invalid_argument("term is not a basis element of C_δ");
        out.add(k, C.one(term.at("coefficient").get<std::int64_t>()));
    }
    return out;
}

// ---- induced vectors ----

/// List of {permutation, factors: [C_δ terms], coefficient}.
inline json in_vector(const InducedModule& M, const InVector& v) {
    const CuspidalAlgebra& C = M.cusp();
    json out = json::array();
    for (const auto& [k, c] : v) {
        json factors = json::array();
        for (const auto& f : k.f) factors.push_back(cd_element(C, CdElement(f, C.one())).at(0));
        for (auto& f : factors) f.erase("coefficient");
        out.push_back(json{{"permutation", permutation(k.u)}, {"factors", factors}, {"coefficient", scalar(c)}});
    }
    return out;
}

}  // namespace affzig::json_io
