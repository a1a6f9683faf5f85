#pragma once
// Verification suites with uniform reports, shared by the command-line tool.

#include "affzig/affinize.hpp"
#include "affzig/cuspidal.hpp"
#include "affzig/cuspwords.hpp"
#include "affzig/induced.hpp"
#include "affzig/json_io.hpp"
#include "affzig/rootdata.hpp"
#include "affzig/scalars.hpp"
#include "affzig/symalg.hpp"
#include "affzig/zigpres.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace affzig {

/// Inputs shared by all suites.
struct SuiteConfig {
    std::string type = "A2";
    int n = 2;
    int deg = 4;
    int bmax = 3;
    int l = 2;
    Ring ring = Ring::integers();
    std::uint64_t seed = 0;
    bool include_e_types = false;
    std::function<SymAlg()> algebra;  // for the affinization suites
    std::string algebra_name;
};

struct SuiteCase {
    std::string name;
    bool equal = true;
    std::string lhs, rhs;
};

struct SuiteResult {
    std::string suite, title, target;
    bool evidence = false;  // conjecture runs report but never fail
    bool ok = true;
    std::vector<std::string> summary;
    std::vector<SuiteCase> cases;
    bool passed() const { return evidence || ok; }

    json_io::json to_json() const {
        json_io::json cs = json_io::json::array();
        for (const auto& c : cases)
            cs.push_back({{"case", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"equal", c.equal}});
        return {{"suite", suite}, {"title", title}, {"target", target}, {"evidence", evidence},
                {"ok", ok},       {"summary", summary}, {"cases", cs}};
    }
    std::string to_text() const {
        std::string s = "== " + title + " [" + target + "] ==\n";
        for (const auto& line : summary) s += "  " + line + "\n";
        for (const auto& c : cases)
            if (!c.equal) s += "  FAIL " + c.name + "\n    lhs: " + c.lhs + "\n    rhs: " + c.rhs + "\n";
        s += std::string(evidence ? "EVIDENCE " : (ok ? "PASS " : "FAIL ")) + suite + " " + target + "\n";
        return s;
    }
};

/// Names accepted by run_suite, in report order.
inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"wordfacts", "cdelta",  "zigisom", "sigmaprime", "psisigma",
                                                "scommute",  "mainthm", "center",  "jm",         "c3"};
    return names;
}

namespace detail {
inline void add_relation(SuiteResult& r, const std::string& what, const RelationReport& rep) {
    r.summary.push_back(what + ": " + std::to_string(rep.checked - rep.failed) + "/" + std::to_string(rep.checked));
    r.cases.push_back({what, rep.ok(), rep.first_failure, ""});
    r.ok = r.ok && rep.ok();
}
inline void add_check(SuiteResult& r, const std::string& what, bool ok, const std::string& lhs = "",
                      const std::string& rhs = "") {
    r.summary.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    r.cases.push_back({what, ok, ok ? "" : lhs, ok ? "" : rhs});
    r.ok = r.ok && ok;
}
inline void add_identity(SuiteResult& r, const IdentityReport& rep) {
    r.summary.push_back(std::to_string(rep.cases.size() - rep.failures()) + "/" + std::to_string(rep.cases.size()) +
                        " cases equal");
    for (const auto& c : rep.cases) r.cases.push_back({c.name, c.equal, c.lhs, c.rhs});
    r.ok = r.ok && rep.ok();
}
inline std::string counts(const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? " " : "") + std::to_string(v[k]);
    return s;
}
}  // namespace detail

/// True for suites that run the C_δ or induced-module engines.
inline bool uses_engine(const std::string& suite) {
    return suite == "cdelta" || suite == "zigisom" || suite == "sigmaprime" || suite == "psisigma" ||
           suite == "scommute" || suite == "mainthm";
}

inline SuiteResult run_suite(const std::string& suite, const SuiteConfig& cfg) {
    SuiteResult r;
    r.suite = suite;
    auto need_type = [&] {
        AffineType t = AffineType::parse(cfg.type);
        if (uses_engine(suite) && t.family() == 'E' && !cfg.include_e_types)
            throw std::invalid_argument("E-type engine runs are long-running; pass --include-e-types");
        r.target = t.name();
        return t;
    };
    auto algebra = [&] {
        if (!cfg.algebra) throw std::invalid_argument("suite needs an algebra");
        r.target = cfg.algebra_name + " n=" + std::to_string(cfg.n);
        return cfg.algebra();
    };

    if (suite == "wordfacts") {
        r.title = "semicuspidal word facts";
        AffineType t = need_type();
        auto rep = check_wordfacts(t);
        for (const auto& f : rep.items) {
            r.summary.push_back("(" + f.item + ") " + status_name(f.status) + " " + f.description + " [" +
                                std::to_string(f.cases) + " cases]");
            r.cases.push_back({"(" + f.item + ")", f.status != WordFact::Fail, f.witness, ""});
        }
        r.ok = rep.ok();
    } else if (suite == "cdelta") {
        r.title = "minuscule imaginary semicuspidal algebra on its faithful module";
        AffineType t = need_type();
        CuspidalAlgebra C(t, SignTable::build(t, cfg.seed), cfg.ring);
        detail::add_relation(r, "KLR relations on V", C.check_klr(1));
        detail::add_relation(r, "y-action formulas", C.check_cy(2));
        detail::add_relation(r, "psi-action formulas", C.check_cypsi(2));
        std::size_t count = 0;
        std::size_t rank = C.faithfulness_rank(cfg.bmax, 0, &count);
        detail::add_check(r, "basis with b <= " + std::to_string(cfg.bmax) + " acts independently (rank " +
                                 std::to_string(rank) + "/" + std::to_string(count) + ")",
                          rank == count);
        GradedDim f = C.formula_dimension(cfg.deg), e = C.enumerated_dimension(cfg.deg);
        detail::add_check(r, "graded dimension " + f.to_string(), f == e, e.to_string(), f.to_string());
        bool homs = true;
        std::string bad;
        for (const auto& [i, wi] : C.words().bwords())
            for (const auto& [j, wj] : C.words().bwords())
                if (!(C.hom_dimension(i, j, cfg.deg) == C.hom_formula(i, j, cfg.deg))) {
                    homs = false;
                    bad = "1_" + std::to_string(i) + " C 1_" + std::to_string(j);
                }
        detail::add_check(r, "Hom dimensions between special idempotents", homs, bad);
    } else if (suite == "zigisom") {
        r.title = "level-one part isomorphic to the zigzag algebra";
        AffineType t = need_type();
        CuspidalAlgebra C(t, SignTable::build(t, cfg.seed), cfg.ring);
        auto rep = verify_zigisom(C, cfg.bmax);
        detail::add_check(r, "bijective on bases (" + std::to_string(rep.source_dim) + " -> " +
                                 std::to_string(rep.target_dim) + ")",
                          rep.bijective);
        detail::add_check(r, "multiplicative on " + std::to_string(rep.products) + " level-one pairs",
                          rep.product_failures == 0, rep.first_failure);
        detail::add_check(r, "extends to k[z] (x) Z on " + std::to_string(rep.affine_products) + " pairs",
                          rep.affine_failures == 0, rep.first_failure);
    } else if (suite == "sigmaprime" || suite == "psisigma") {
        AffineType t = need_type();
        CuspidalAlgebra C(t, SignTable::build(t, cfg.seed), cfg.ring);
        auto rep = suite == "sigmaprime" ? verify_sigmaprime(C) : verify_psisigma(C);
        r.title = rep.title;
        detail::add_identity(r, rep);
    } else if (suite == "scommute") {
        AffineType t = need_type();
        if (cfg.n < 2) throw std::invalid_argument("scommute needs n >= 2");
        CuspidalAlgebra C(t, SignTable::build(t, cfg.seed), cfg.ring);
        auto rep = verify_scommute(C, cfg.n);
        r.title = rep.title;
        r.target += " n=" + std::to_string(cfg.n);
        detail::add_identity(r, rep);
    } else if (suite == "mainthm") {
        r.title = "endomorphisms of the induced module form the affine zigzag algebra";
        AffineType t = need_type();
        CuspidalAlgebra C(t, SignTable::build(t, cfg.seed), cfg.ring);
        auto rep = verify_mainthm(C, cfg.n, cfg.deg);
        r.target += " n=" + std::to_string(cfg.n) + " D=" + std::to_string(cfg.deg);
        detail::add_relation(r, "(a) presentation relations on generators v_i", rep.relations);
        detail::add_check(r, "(b) basis rank per degree " + detail::counts(rep.dims.rank), rep.dims.independent(),
                          detail::counts(rep.dims.rank), detail::counts(rep.dims.basis_count));
        detail::add_check(r, "(c) dimension " + rep.dims.counted().to_string() + " matches both formulas",
                          rep.dims.dimension_ok(), rep.dims.counted().to_string(), rep.dims.formula.to_string());
        detail::add_check(r, "zigzag dimension l + 2(l-1)q + lq^2", rep.dims.zigzag_identity);
    } else if (suite == "center") {
        r.title = "center of the affinization";
        SymAlg A = algebra();
        Affinization H(A, cfg.n);
        auto cs = H.center_space(cfg.deg);
        std::vector<std::size_t> per(cfg.deg + 1, 0);
        bool central = true;
        for (const auto& c : cs) {
            ++per[c.degree];
            central = central && H.is_central(c.element);
        }
        detail::add_check(r, "center dimensions per degree " + detail::counts(per) + ", every member central",
                          central);
    } else if (suite == "jm") {
        r.title = "Jucys-Murphy elements and the wreath surjection";
        SymAlg A = algebra();
        Affinization H(A, cfg.n);
        bool comm = true, cent = true, mult = true;
        std::vector<AffElement> l;
        for (int k = 1; k <= cfg.n; ++k) l.push_back(H.jucys_murphy(k));
        for (int a = 0; a < cfg.n; ++a)
            for (int b = 0; b < cfg.n; ++b) comm = comm && H.multiply(l[a], l[b]) == H.multiply(l[b], l[a]);
        for (int k = 0; k < cfg.n; ++k)
            for (int s = 1; s <= cfg.n; ++s)
                for (int b = 0; b < A.dim(); ++b) {
                    auto g = H.slot(s, A.basis(b));
                    cent = cent && H.multiply(g, l[k]) == H.multiply(l[k], g);
                }
        AffElement c = H.default_c();
        auto gens = H.generators();
        for (const auto& x : gens)
            for (const auto& y : gens)
                mult = mult && H.beta_c(H.multiply(x, y), c) == H.multiply(H.beta_c(x, c), H.beta_c(y, c));
        bool kills = H.beta_c(H.z(1) - c, c).empty();
        detail::add_check(r, "l_r pairwise commute", comm);
        detail::add_check(r, "l_r centralize A^(x)n", cent);
        detail::add_check(r, "beta_c multiplicative on generator pairs", mult);
        detail::add_check(r, "beta_c(z_1 - c) = 0", kills);
    } else if (suite == "c3") {
        r.title = "cyclotomic spanning set consistency (conjecture evidence)";
        r.evidence = true;
        SymAlg A = algebra();
        Affinization H(A, cfg.n);
        CyclotomicQuotient Q(H, CyclotomicQuotient::default_params(H, cfg.l));
        r.target += " l=" + std::to_string(cfg.l);
        C3Evidence ev = Q.c3_evidence(200, cfg.seed + 1);
        r.ok = ev.consistent();
        r.summary.push_back("spanning set size " + std::to_string(ev.spanning_size));
        r.summary.push_back("rewriting terminated: " + std::string(ev.terminated ? "yes" : "no"));
        r.summary.push_back("associativity " + std::to_string(ev.associativity_trials - ev.associativity_failures) +
                            "/" + std::to_string(ev.associativity_trials));
        r.summary.push_back("reduction orders agree " +
                            std::to_string(ev.confluence_trials - ev.confluence_failures) + "/" +
                            std::to_string(ev.confluence_trials));
        r.summary.push_back("module certificate: " + std::string(ev.module_certificate ? "holds" : "fails") + " (" +
                            std::to_string(ev.relation_checks) + " relation checks)");
        r.summary.push_back(std::string("consistent: ") + (ev.consistent() ? "yes" : "no") +
                            (ev.witness.empty() ? "" : " (" + ev.witness + ")"));
    } else {
        throw std::invalid_argument("unknown suite '" + suite + "'");
    }
    return r;
}

}  // namespace affzig
