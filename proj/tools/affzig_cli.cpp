// Command-line front end: dimension tables, basis dumps, word and C_δ
// utilities, affinization arithmetic and the verification suites.

#include "affzig/affinize.hpp"
#include "affzig/cuspidal.hpp"
#include "affzig/cuspwords.hpp"
#include "affzig/induced.hpp"
#include "affzig/json_io.hpp"
#include "affzig/report.hpp"
#include "affzig/rootdata.hpp"
#include "affzig/symalg.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace affzig;
using json = json_io::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitMismatch = 2;
constexpr int kExitUsage = 64;

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Parsed flags, validated before any computation.
struct RunConfig {
    std::string type = "A2";
    int n = 2;
    int deg = -1;
    int bmax = 3;
    int l = 2;
    std::string ring = "int";
    std::uint64_t seed = 0;
    std::string format = "text";
    bool include_e_types = false;
    unsigned jobs = 1;
    std::string algebra;
    std::string graph;
    std::string edges;
};

Graph parse_graph(const std::string& spec) {
    if (spec.rfind("path:", 0) == 0) {
        int n = std::stoi(spec.substr(5));
        if (n < 1) throw UsageError("path graph needs at least one vertex");
        return Graph::path(n);
    }
    return Graph::from_edge_list(spec);
}

Graph config_graph(const RunConfig& c) {
    if (!c.edges.empty()) return Graph::from_edge_list(c.edges);
    if (!c.graph.empty()) return parse_graph(c.graph);
    return AffineType::parse(c.type).finite_graph();
}

/// k | dualnumbers | zigzag | zigzag:<graph> | file:<path.json>.
std::pair<std::string, std::function<SymAlg()>> parse_algebra(const RunConfig& c, Ring ring) {
    const std::string& s = c.algebra;
    if (s == "k" || s == "ground") return {"k", [ring] { return ground_ring(ring); }};
    if (s == "dualnumbers" || s == "dual") return {"dualnumbers", [ring] { return dual_numbers(ring); }};
    if (s == "zigzag" || s.rfind("zigzag:", 0) == 0) {
        Graph g = s == "zigzag" ? config_graph(c) : parse_graph(s.substr(7));
        std::string name = s == "zigzag" ? (c.graph.empty() && c.edges.empty() ? "zigzag(" + c.type + ")" : "zigzag")
                                         : "zigzag(" + s.substr(7) + ")";
        return {name, [g, ring] { return zigzag_algebra(g, ring); }};
    }
    if (s.rfind("file:", 0) == 0) {
        std::string path = s.substr(5);
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot read algebra file " + path);
        json j = json::parse(in);
        return {j.value("name", std::string("custom")), [j, ring] { return json_io::symalg_from(j, ring); }};
    }
    throw UsageError("unknown algebra '" + s + "' (expected k, dualnumbers, zigzag[:graph] or file:path)");
}

AffineType parse_type(const std::string& s) {
    try {
        return AffineType::parse(s);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
}

json parse_json_arg(const std::string& s) {
    if (!s.empty() && s[0] == '@') {
        std::ifstream in(s.substr(1));
        if (!in) throw std::runtime_error("cannot read " + s.substr(1));
        return json::parse(in);
    }
    return json::parse(s);
}

void emit(const RunConfig& c, const json& j, const std::string& text) {
    if (c.format == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

std::string word_text(const Word& w) {
    std::string s;
    for (int x : w) s += std::to_string(x);
    return s;
}

// ---- dims ----

int cmd_dims(const RunConfig& c, bool with_end) {
    Ring ring = Ring::parse(c.ring);
    AffineType t = parse_type(c.type);
    int D = c.deg < 0 ? 4 : c.deg;
    Graph g = t.finite_graph();
    SymAlg Z = zigzag_algebra(g, ring);
    GradedDim zf(QPoly{static_cast<std::int64_t>(g.vertices().size()), 2 * static_cast<std::int64_t>(g.edges.size()),
                       static_cast<std::int64_t>(g.vertices().size())},
                 D);
    GradedDim ze(Z.graded_dim(), D);
    CuspidalAlgebra C(t, SignTable::build(t, c.seed), ring);
    GradedDim cf = C.formula_dimension(D), ce = C.enumerated_dimension(D);
    Affinization H(Z, c.n);
    GradedDim hf = H.formula_dimension(D), he = H.enumerated_dimension(D);
    bool ok = zf == ze && cf == ce && hf == he;
    std::vector<std::pair<std::string, GradedDim>> cols{{"zigzag formula", zf}, {"zigzag basis", ze},
                                                        {"C_delta formula", cf}, {"C_delta basis", ce},
                                                        {"H_n(Z) formula", hf},  {"H_n(Z) basis", he}};
    if (with_end) {
        if (t.family() == 'E' && !c.include_e_types) throw UsageError("E-type engine runs need --include-e-types");
        InducedModule M(C, c.n);
        auto e = end_dimension(M, D);
        cols.push_back({"End formula", e.formula});
        cols.push_back({"End basis rank", [&] {
                            GradedDim r(D);
                            for (int k = 0; k <= D; ++k) r.at(k) = static_cast<std::int64_t>(e.rank[k]);
                            return r;
                        }()});
        ok = ok && e.independent() && e.dimension_ok();
    }
    json j{{"type", t.name()}, {"n", c.n}, {"degree", D}, {"match", ok}};
    json jc = json::object();
    for (const auto& [name, gd] : cols) jc[name] = json_io::graded_dim(gd);
    j["columns"] = jc;
    std::ostringstream os;
    os << "graded dimensions for " << t.name() << ", n=" << c.n << "\n";
    os << "deg";
    for (const auto& [name, gd] : cols) os << " | " << name;
    os << "\n";
    for (int k = 0; k <= D; ++k) {
        os << k;
        for (const auto& [name, gd] : cols) os << " | " << gd[k];
        os << "\n";
    }
    os << "C_delta: " << cf.to_string() << "\n";
    os << (ok ? "all columns match\n" : "MISMATCH between formula and basis columns\n");
    emit(c, j, os.str());
    return ok ? kExitOk : kExitMismatch;
}

// ---- words ----

/// G^δ listing, optionally cached under AFFZIG_CACHE_DIR.
json gdelta_json(const AffineType& t) {
    const char* dir = std::getenv("AFFZIG_CACHE_DIR");
    std::filesystem::path file;
    if (dir && *dir) {
        file = std::filesystem::path(dir) / ("gdelta-" + t.name() + ".json");
        std::ifstream in(file);
        if (in) {
            try {
                json j = json::parse(in);
                if (j.value("type", std::string()) == t.name()) return j;
            } catch (const json::exception&) {
            }
        }
    }
    CuspWordData cw(t);
    json comps = json::object();
    for (const auto& [i, ws] : cw.components()) {
        json arr = json::array();
        for (const auto& w : ws) arr.push_back(json_io::word(w));
        comps[std::to_string(i)] = arr;
    }
    json b = json::object();
    for (const auto& [i, w] : cw.bwords()) b[std::to_string(i)] = json_io::word(w);
    json j{{"type", t.name()}, {"d", cw.d()}, {"size", cw.size()}, {"bwords", b}, {"components", comps}};
    if (!file.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(file.parent_path(), ec);
        std::ofstream out(file);
        if (out) out << j.dump() << "\n";
    }
    return j;
}

std::string gdelta_text(const json& j) {
    std::ostringstream os;
    os << "G^delta for " << j["type"].get<std::string>() << " (d=" << j["d"] << ", " << j["size"] << " words)\n";
    for (const auto& [i, ws] : j["components"].items()) {
        os << "G^" << i << " (" << ws.size() << "):";
        for (const auto& w : ws) os << " " << word_text(w.get<Word>());
        os << "\n";
    }
    return os.str();
}

int cmd_words(const RunConfig& c, bool list, bool facts) {
    AffineType t = parse_type(c.type);
    if (!list && !facts) throw UsageError("words needs --list or --check-wordfacts");
    int code = kExitOk;
    if (list) {
        json j = gdelta_json(t);
        emit(c, j, gdelta_text(j));
    }
    if (facts) {
        SuiteConfig sc;
        sc.type = c.type;
        auto r = run_suite("wordfacts", sc);
        emit(c, r.to_json(), r.to_text());
        if (!r.passed()) code = kExitVerify;
    }
    return code;
}

// ---- dump ----

int cmd_dump(const RunConfig& c, const std::string& what) {
    Ring ring = Ring::parse(c.ring);
    if (what == "zigzag" || what == "symalg") {
        SymAlg A = what == "zigzag" ? zigzag_algebra(config_graph(c), ring)
                                    : parse_algebra(c, ring).second();
        std::cout << json_io::symalg(A).dump(2) << "\n";
        return kExitOk;
    }
    AffineType t = parse_type(c.type);
    if (what == "bwords") {
        CuspWordData cw(t);
        json j = json::object();
        for (const auto& [i, w] : cw.bwords()) j[std::to_string(i)] = json_io::word(w);
        std::cout << json{{"type", t.name()}, {"d", cw.d()}, {"bwords", j}}.dump(2) << "\n";
    } else if (what == "gdelta") {
        std::cout << gdelta_json(t).dump(2) << "\n";
    } else if (what == "cbasis") {
        CuspidalAlgebra C(t, SignTable::build(t, c.seed), ring);
        json arr = json::array();
        for (const auto& k : C.basis(c.bmax)) {
            json e = json_io::cd_element(C, C.element(k)).at(0);
            e.erase("coefficient");
            e["degree"] = C.degree(k);
            arr.push_back(e);
        }
        std::cout << json{{"type", t.name()}, {"bmax", c.bmax}, {"basis", arr}}.dump(2) << "\n";
    } else if (what == "endbasis") {
        if (t.family() == 'E' && !c.include_e_types) throw UsageError("E-type engine runs need --include-e-types");
        CuspidalAlgebra C(t, SignTable::build(t, c.seed), ring);
        int D = c.deg < 0 ? 4 : c.deg;
        json arr = json::array();
        for (const auto& b : end_basis(C, c.n, D))
            arr.push_back(json{{"z", b.t}, {"c", b.u}, {"i", b.i}, {"w", json_io::permutation(b.w)}, {"j", b.j},
                               {"degree", b.degree}});
        std::cout << json{{"type", t.name()}, {"n", c.n}, {"degree", D}, {"basis", arr}}.dump(2) << "\n";
    } else {
        throw UsageError("unknown dump target '" + what + "' (bwords, gdelta, cbasis, endbasis, zigzag, symalg)");
    }
    return kExitOk;
}

// ---- cdelta ----

int cmd_cdelta(const RunConfig& c, const std::string& op, const std::string& x, const std::string& y) {
    Ring ring = Ring::parse(c.ring);
    AffineType t = parse_type(c.type);
    if (t.family() == 'E' && !c.include_e_types) throw UsageError("E-type engine runs need --include-e-types");
    CuspidalAlgebra C(t, SignTable::build(t, c.seed), ring);
    if (op == "basis") {
        json arr = json::array();
        std::ostringstream os;
        os << "C_delta basis for " << t.name() << " with b <= " << c.bmax << "\n";
        for (const auto& k : C.basis(c.bmax)) {
            json e = json_io::cd_element(C, C.element(k)).at(0);
            e.erase("coefficient");
            e["degree"] = C.degree(k);
            arr.push_back(e);
            os << "y1^" << k.b << " (y1-yd)^" << k.m << " psi 1_" << word_text(C.words().word(k.source)) << " -> "
               << word_text(C.words().word(k.target)) << "  deg " << C.degree(k) << "\n";
        }
        os << arr.size() << " elements\n";
        emit(c, json{{"type", t.name()}, {"bmax", c.bmax}, {"basis", arr}}, os.str());
        return kExitOk;
    }
    if (op == "mul") {
        if (x.empty() || y.empty()) throw UsageError("cdelta mul needs --x and --y");
        auto p = C.multiply(json_io::cd_element_from(C, parse_json_arg(x)), json_io::cd_element_from(C, parse_json_arg(y)));
        std::cout << json_io::cd_element(C, p).dump(2) << "\n";
        return kExitOk;
    }
    if (op == "zigisom-check") {
        SuiteConfig sc;
        sc.type = c.type;
        sc.ring = ring;
        sc.seed = c.seed;
        sc.bmax = c.bmax;
        sc.include_e_types = c.include_e_types;
        auto r = run_suite("zigisom", sc);
        emit(c, r.to_json(), r.to_text());
        return r.passed() ? kExitOk : kExitVerify;
    }
    throw UsageError("unknown cdelta operation '" + op + "'");
}

// ---- affinize ----

int cmd_affinize(const RunConfig& c, const std::string& op, const std::string& x, const std::string& y) {
    Ring ring = Ring::parse(c.ring);
    auto [name, make] = parse_algebra(c, ring);
    Affinization H(make(), c.n);
    if (op == "mul") {
        if (x.empty() || y.empty()) throw UsageError("affinize mul needs --x and --y");
        auto p = H.multiply(json_io::aff_element_from(H, parse_json_arg(x)), json_io::aff_element_from(H, parse_json_arg(y)));
        std::cout << json_io::aff_element(H, p).dump(2) << "\n";
        return kExitOk;
    }
    if (op == "center") {
        int D = c.deg < 0 ? 4 : c.deg;
        json arr = json::array();
        std::ostringstream os;
        os << "center of H_" << c.n << "(" << name << ") in degrees <= " << D << "\n";
        for (const auto& e : H.center_space(D)) {
            arr.push_back(json{{"degree", e.degree}, {"element", json_io::aff_element(H, e.element)}});
            os << "deg " << e.degree << ": " << e.element.size() << " terms\n";
        }
        os << arr.size() << " basis elements\n";
        emit(c, json{{"algebra", name}, {"n", c.n}, {"degree", D}, {"center", arr}}, os.str());
        return kExitOk;
    }
    if (op == "cyclotomic") {
        CyclotomicQuotient Q(H, CyclotomicQuotient::default_params(H, c.l));
        auto dim = Q.certified_dimension();
        json j{{"algebra", name}, {"n", c.n}, {"level", c.l}, {"spanning_size", Q.spanning_set().size()},
               {"certified", dim.has_value()}};
        std::ostringstream os;
        os << "cyclotomic quotient of H_" << c.n << "(" << name << ") at level " << c.l << ": spanning set "
           << Q.spanning_set().size() << ", " << (dim ? "certified basis" : "no module certificate") << "\n";
        emit(c, j, os.str());
        return kExitOk;
    }
    throw UsageError("unknown affinize operation '" + op + "'");
}

// ---- verify ----

int cmd_verify(const RunConfig& c, const std::vector<std::string>& suites) {
    if (suites.empty()) throw UsageError("verify needs at least one suite");
    Ring ring = Ring::parse(c.ring);
    for (const auto& s : suites)
        if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
            throw UsageError("unknown suite '" + s + "'");
    std::vector<std::string> types;
    {
        std::stringstream ss(c.type);
        std::string item;
        while (std::getline(ss, item, ',')) types.push_back(parse_type(item).name());
    }
    struct Task {
        std::string suite;
        SuiteConfig cfg;
        SuiteResult result;
        std::string error;
    };
    std::vector<Task> tasks;
    for (const auto& s : suites) {
        bool needs_algebra = s == "center" || s == "jm" || s == "c3";
        for (const auto& ty : needs_algebra ? std::vector<std::string>{types.front()} : types) {
            SuiteConfig sc;
            sc.type = ty;
            sc.n = c.n;
            sc.deg = c.deg < 0 ? 4 : c.deg;
            sc.bmax = c.bmax;
            sc.l = c.l;
            sc.ring = ring;
            sc.seed = c.seed;
            sc.include_e_types = c.include_e_types;
            if (needs_algebra) {
                RunConfig rc = c;
                rc.type = ty;
                if (rc.algebra.empty()) rc.algebra = "zigzag";
                auto [name, make] = parse_algebra(rc, ring);
                sc.algebra = make;
                sc.algebra_name = name;
            }
            if (uses_engine(s) && AffineType::parse(ty).family() == 'E' && !c.include_e_types)
                throw UsageError("E-type engine runs are long-running; pass --include-e-types");
            tasks.push_back({s, sc, {}, {}});
        }
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k; (k = next++) < tasks.size();) {
            try {
                tasks[k].result = run_suite(tasks[k].suite, tasks[k].cfg);
            } catch (const std::exception& e) {
                tasks[k].error = e.what();
            }
        }
    };
    unsigned jobs = std::max(1u, std::min<unsigned>(c.jobs, static_cast<unsigned>(tasks.size())));
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < jobs; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    bool all = true;
    json reports = json::array();
    std::string text;
    for (auto& t : tasks) {
        if (!t.error.empty()) {
            all = false;
            reports.push_back(json{{"suite", t.suite}, {"target", t.cfg.type}, {"error", t.error}, {"ok", false}});
            text += "ERROR " + t.suite + " " + t.cfg.type + ": " + t.error + "\n";
            continue;
        }
        all = all && t.result.passed();
        reports.push_back(t.result.to_json());
        text += t.result.to_text();
    }
    emit(c, json{{"reports", reports}, {"ok", all}}, text);
    return all ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    for (auto& a : args) {
        if (a == "--A") a = "--algebra";
        else if (a.rfind("--A=", 0) == 0) a = "--algebra=" + a.substr(4);
    }
    std::reverse(args.begin(), args.end());

    RunConfig cfg;
    CLI::App app{"affzig: affine zigzag algebras and semicuspidal KLR computations"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");
    auto common = [&](CLI::App* sub) {
        sub->add_option("--type", cfg.type, "affine type such as A2, D4, E6 (comma list for verify)");
        sub->add_option("--n", cfg.n, "rank n")->check(CLI::Range(1, 6));
        sub->add_option("--deg", cfg.deg, "degree cutoff")->check(CLI::Range(0, 40));
        sub->add_option("--bmax", cfg.bmax, "largest power of y_1 in C_delta bases")->check(CLI::Range(0, 20));
        sub->add_option("--ring", cfg.ring, "coefficient ring: int or mod:p");
        sub->add_option("--seed", cfg.seed, "sign-orientation seed");
        sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "json"}));
        sub->add_flag("--include-e-types", cfg.include_e_types, "allow long-running E-type engine runs");
        sub->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::Range(1u, 256u));
        sub->add_option("--algebra", cfg.algebra, "k, dualnumbers, zigzag[:graph] or file:path.json");
        sub->add_option("--graph", cfg.graph, "graph: path:n or an edge list 1-2,2-3");
        sub->add_option("--edges", cfg.edges, "graph as an edge list 1-2,2-3");
        sub->add_option("--l", cfg.l, "cyclotomic level")->check(CLI::Range(1, 8));
    };

    bool with_end = false, list = false, facts = false;
    std::string dump_what, op, x, y;
    std::vector<std::string> suites;

    auto* dims = app.add_subcommand("dims", "graded dimensions: closed formulas beside basis counts");
    common(dims);
    dims->add_flag("--end", with_end, "add the endomorphism-algebra columns of the induced module");
    auto* dump = app.add_subcommand("dump", "emit bases as JSON");
    common(dump);
    dump->add_option("what", dump_what, "bwords, gdelta, cbasis, endbasis, zigzag or symalg")->required();
    auto* words = app.add_subcommand("words", "semicuspidal words");
    common(words);
    words->add_flag("--list", list, "list G^delta by component");
    words->add_flag("--check-wordfacts", facts, "check the word facts");
    auto* cdelta = app.add_subcommand("cdelta", "the algebra C_delta");
    common(cdelta);
    cdelta->add_option("op", op, "basis, mul or zigisom-check")->required();
    cdelta->add_option("--x", x, "left factor as JSON or @file");
    cdelta->add_option("--y", y, "right factor as JSON or @file");
    auto* affinize = app.add_subcommand("affinize", "the affinization H_n(A)");
    common(affinize);
    affinize->add_option("op", op, "mul, center or cyclotomic")->required();
    affinize->add_option("--x", x, "left factor as JSON or @file");
    affinize->add_option("--y", y, "right factor as JSON or @file");
    auto* verify = app.add_subcommand("verify", "run verification suites");
    common(verify);
    verify->add_option("suites", suites, "wordfacts cdelta zigisom sigmaprime psisigma scommute mainthm center jm c3")
        ->required();

    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        Ring::parse(cfg.ring);
        if (affinize->parsed() && cfg.algebra.empty()) cfg.algebra = "zigzag";
        if (dims->parsed()) return cmd_dims(cfg, with_end);
        if (dump->parsed()) return cmd_dump(cfg, dump_what);
        if (words->parsed()) return cmd_words(cfg, list, facts);
        if (cdelta->parsed()) return cmd_cdelta(cfg, op, x, y);
        if (affinize->parsed()) return cmd_affinize(cfg, op, x, y);
        if (verify->parsed()) return cmd_verify(cfg, suites);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "usage error: malformed JSON argument: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerify;
    }
    return kExitUsage;
}
