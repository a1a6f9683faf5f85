#pragma once
// Homogeneous words of weight δ: the special words b^i, their admissible
// components G^i, neighbor sequences, connecting permutations and the
// homogeneous module on a component.

#include "affzig/coxeter.hpp"
#include "affzig/rootdata.hpp"
#include "affzig/scalars.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace affzig {

/// The tabulated special word b^i for i ∈ I' = {1..ℓ}.
inline Word b_word(const AffineType& t, int i) {
    int l = t.ell();
    if (i < 1 || i > l) throw std::out_of_range("b^i needs a finite vertex i");
    Word w{0};
    auto up = [&](int a, int b) {
        for (int k = a; k <= b; ++k) w.push_back(k);
    };
    auto down = [&](int a, int b) {
        for (int k = a; k >= b; --k) w.push_back(k);
    };
    auto digits = [&](const char* s) {
        for (const char* p = s; *p; ++p) w.push_back(*p - '0');
    };
    switch (t.family()) {
        case 'A':
            up(1, i - 1);
            down(l, i);
            break;
        case 'D':
            if (i <= l - 2) {
                up(2, l);
                down(l - 2, i + 1);
                up(1, i);
            } else if (i == l - 1) {
                up(2, l - 2);
                w.push_back(l);
                up(1, l - 1);
            } else {
                up(2, l - 1);
                up(1, l - 2);
                w.push_back(l);
            }
            break;
        case 'E': {
            static const char* e6[] = {"265431", "136542", "126543", "123654", "123465", "123456"};
            static const char* e7[] = {"2765431", "1376542", "1276543", "1237654", "1234765", "1234576", "1234567"};
            static const char* e8[] = {"28765431", "13876542", "12876543", "12387654",
                                       "12348765", "12345876", "12345687", "12345678"};
            w.clear();
            if (l == 6) {
                digits("024354");
                digits(e6[i - 1]);
            } else if (l == 7) {
                digits("01342546354");
                digits(e7[i - 1]);
            } else {
                digits("0876542314356425764354");
                digits(e8[i - 1]);
            }
            break;
        }
        default:
            throw std::invalid_argument("no special words for this family");
    }
    return w;
}

/// Repeated letters must be separated by two positions holding neighbors (c = −1).
inline bool is_homogeneous(const AffineType& t, const Word& w) {
    int d = static_cast<int>(w.size());
    for (int r = 0; r < d; ++r)
        for (int s = r + 1; s < d; ++s) {
            if (w[r] != w[s]) continue;
            int count = 0;
            for (int k = r + 1; k < s; ++k)
                if (t.c(w[r], w[k]) == -1) ++count;
            if (count < 2) return false;
        }
    return true;
}

/// s_r is w-admissible iff c_{w_r, w_{r+1}} = 0 (r is 1-based).
inline bool is_admissible_at(const AffineType& t, const Word& w, int r) {
    return t.c(w.at(r - 1), w.at(r)) == 0;
}

/// A permutation is w-admissible iff every pair of strands it crosses carries commuting letters.
inline bool is_admissible(const AffineType& t, const Permutation& p, const Word& w) {
    for (int a = 1; a <= p.size(); ++a)
        for (int b = a + 1; b <= p.size(); ++b)
            if (p(a) > p(b) && t.c(w[a - 1], w[b - 1]) != 0) return false;
    return true;
}

inline Word swap_at(const Word& w, int r) {
    Word v = w;
    std::swap(v.at(r - 1), v.at(r));
    return v;
}

/// Con(w): closure under admissible simple transpositions, sorted.
inline std::vector<Word> connected_component(const AffineType& t, const Word& w) {
    std::set<Word> seen{w};
    std::deque<Word> queue{w};
    while (!queue.empty()) {
        Word cur = queue.front();
        queue.pop_front();
        for (int r = 1; r < static_cast<int>(cur.size()); ++r) {
            if (!is_admissible_at(t, cur, r)) continue;
            Word next = swap_at(cur, r);
            if (seen.insert(next).second) queue.push_back(next);
        }
    }
    return {seen.begin(), seen.end()};
}

struct NeighborSeq {
    std::string full;     // over {0, N, S}
    std::string reduced;  // 0s removed
};

/// nbr_t(w): for r ≤ t, S if w_r = w_t, N if c_{w_r,w_t} < 0, else 0.
inline NeighborSeq neighbor_sequence(const AffineType& t, const Word& w, int pos) {
    if (pos < 1 || pos > static_cast<int>(w.size())) throw std::out_of_range("neighbor sequence position");
    NeighborSeq n;
    for (int r = 1; r <= pos; ++r) {
        char ch = '0';
        if (w[r - 1] == w[pos - 1]) ch = 'S';
        else if (t.c(w[r - 1], w[pos - 1]) < 0) ch = 'N';
        n.full += ch;
        if (ch != '0') n.reduced += ch;
    }
    return n;
}

/// The permutation w with w·source = target that keeps equal letters in order, if any.
inline std::optional<Permutation> order_preserving_match(const Word& target, const Word& source) {
    if (target.size() != source.size()) return std::nullopt;
    int d = static_cast<int>(source.size());
    std::map<int, std::vector<int>> slots;
    for (int k = 0; k < d; ++k) slots[target[k]].push_back(k + 1);
    std::map<int, std::size_t> used;
    std::vector<int> one_line(d);
    for (int k = 0; k < d; ++k) {
        auto& v = slots[source[k]];
        std::size_t& u = used[source[k]];
        if (u >= v.size()) return std::nullopt;
        one_line[k] = v[u++];
    }
    for (auto& [letter, v] : slots)
        if (used[letter] != v.size()) return std::nullopt;
    return Permutation(one_line);
}

/// All permutations w with w·source = target.
inline std::vector<Permutation> all_matching_permutations(const Word& target, const Word& source) {
    std::vector<Permutation> out;
    if (target.size() != source.size()) return out;
    int d = static_cast<int>(source.size());
    std::vector<int> one_line(d, 0);
    std::vector<bool> taken(d + 1, false);
    auto rec = [&](auto&& self, int k) -> void {
        if (k == d) {
            out.emplace_back(one_line);
            return;
        }
        for (int p = 1; p <= d; ++p) {
            if (taken[p] || target[p - 1] != source[k]) continue;
            taken[p] = true;
            one_line[k] = p;
            self(self, k + 1);
            taken[p] = false;
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end());
    return out;
}

/// A connecting permutation with its shape certificate.
struct Connection {
    Permutation w;
    int degree = 0;        // 0 for an admissible w, 1 for the crossing shape
    Permutation w1, w2;    // degree 1: w = w1 s_{d−1} w2
    Word middle;           // degree 1: w2·source
};

/// The special words, the components G^i and G^δ of a type.
class CuspWordData {
public:
    explicit CuspWordData(const AffineType& t) : type_(t) {
        d_ = height(null_root(t));
        for (int i = 1; i <= t.ell(); ++i) {
            Word b = b_word(t, i);
            if (static_cast<int>(b.size()) != d_) throw std::logic_error("special word has wrong length");
            bwords_[i] = b;
            // BFS with parent pointers.
            std::vector<Word>& comp = components_[i];
            std::deque<Word> queue{b};
            parent_[b] = {b, 0};
            while (!queue.empty()) {
                Word cur = queue.front();
                queue.pop_front();
                comp.push_back(cur);
                for (int r = 1; r < d_; ++r) {
                    if (!is_admissible_at(t, cur, r)) continue;
                    Word next = swap_at(cur, r);
                    if (parent_.count(next)) continue;
                    parent_[next] = {cur, r};
                    queue.push_back(next);
                }
            }
            std::sort(comp.begin(), comp.end());
            for (const auto& w : comp) {
                if (component_of_.count(w)) throw std::logic_error("components G^i overlap");
                component_of_[w] = i;
            }
        }
        for (auto& [i, comp] : components_) all_.insert(all_.end(), comp.begin(), comp.end());
        std::sort(all_.begin(), all_.end());
        for (std::size_t k = 0; k < all_.size(); ++k) index_[all_[k]] = static_cast<int>(k);
        const int l = t.ell();
        bidx_.assign(l + 1, -1);
        for (int i = 1; i <= l; ++i) bidx_[i] = index_.at(bwords_.at(i));
    }

    const AffineType& type() const { return type_; }
    int d() const { return d_; }
    const Word& b(int i) const { return bwords_.at(i); }
    int b_index(int i) const { return bidx_.at(i); }
    const std::map<int, Word>& bwords() const { return bwords_; }
    const std::vector<Word>& component(int i) const { return components_.at(i); }
    const std::map<int, std::vector<Word>>& components() const { return components_; }
    /// G^δ sorted lexicographically; indices refer to this order.
    const std::vector<Word>& all() const { return all_; }
    int size() const { return static_cast<int>(all_.size()); }
    const Word& word(int idx) const { return all_.at(idx); }
    bool contains(const Word& w) const { return index_.count(w) != 0; }
    int index(const Word& w) const {
        auto it = index_.find(w);
        if (it == index_.end()) throw std::out_of_range("word not in G^δ");
        return it->second;
    }
    std::optional<int> find(const Word& w) const {
        auto it = index_.find(w);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    int component_of(const Word& w) const { return component_of_.at(w); }
    int last(int idx) const { return all_.at(idx).back(); }

    /// Admissible letters leading from b^{component} to w along BFS parents, leftmost applied last.
    std::vector<int> admissible_path(const Word& w) const {
        std::vector<int> letters;
        Word cur = w;
        for (;;) {
            auto it = parent_.find(cur);
            if (it == parent_.end()) throw std::out_of_range("word not in G^δ");
            if (it->second.second == 0) break;
            letters.push_back(it->second.second);
            cur = it->second.first;
        }
        return letters;
    }

    /// The unique connecting permutation target ← source, certified, or nullopt
    /// when the last letters are neither equal nor adjacent.
    std::optional<Connection> connect(const Word& target, const Word& source) const {
        if (!contains(target) || !contains(source)) return std::nullopt;
        int a = target.back(), b = source.back();
        auto m = order_preserving_match(target, source);
        if (!m) return std::nullopt;
        if (a == b) {
            if (!is_admissible(type_, *m, source)) throw std::logic_error("connecting permutation not admissible");
            return Connection{*m, 0, {}, {}, {}};
        }
        if (type_.is_a1() || type_.c(a, b) != -1) return std::nullopt;
        auto sh = crossing_shape(*m, source);
        if (!sh) throw std::logic_error("connecting permutation lacks a crossing decomposition");
        return sh;
    }
    std::optional<Connection> connect(int target_idx, int source_idx) const {
        return connect(word(target_idx), word(source_idx));
    }

    /// Decomposes w = w1 s_{d−1} w2 with w2 source-admissible and w1 admissible after the crossing.
    std::optional<Connection> crossing_shape(const Permutation& w, const Word& source) const {
        if (!contains(source) || d_ < 2) return std::nullopt;
        Permutation sd = Permutation::simple(d_, d_ - 1);
        for (const Word& mid : component(component_of(source))) {
            auto w2 = order_preserving_match(mid, source);
            if (!w2 || !is_admissible(type_, *w2, source)) continue;
            Permutation w1 = w * w2->inverse() * sd;
            Word crossed = swap_at(mid, d_ - 1);
            if (!is_admissible(type_, w1, crossed)) continue;
            return Connection{w, 1, w1, *w2, mid};
        }
        return std::nullopt;
    }

private:
    AffineType type_;
    int d_ = 0;
    std::map<int, Word> bwords_;
    std::map<int, std::vector<Word>> components_;
    std::vector<Word> all_;
    std::map<Word, int> index_;
    std::map<Word, int> component_of_;
    std::map<Word, std::pair<Word, int>> parent_;
    std::vector<int> bidx_;
};

/// Classification of ψ_u 1_i in C_δ as zero, degree 0 or degree 1.
struct PsiClass {
    enum Kind { Zero, Deg0, Deg1 } kind = Zero;
    int target = -1;  // index of u·i in G^δ
};

inline PsiClass classify_psi(const CuspWordData& cw, const Permutation& u, const Word& i) {
    if (!cw.contains(i) || u.size() != cw.d()) return {};
    Word j = act_perm(u, i);
    if (!cw.contains(j)) return {};
    auto c = cw.connect(j, i);
    if (!c || c->w != u) return {};
    return {c->degree == 0 ? PsiClass::Deg0 : PsiClass::Deg1, cw.index(j)};
}

/// The module on Con(w) with y acting by 0 and ψ_r by admissible swaps.
class HomogeneousModule {
public:
    using Vec = LinComb<int>;

    HomogeneousModule(const AffineType& t, const Word& w) : type_(t) {
        if (!is_homogeneous(t, w)) throw std::invalid_argument("word is not homogeneous");
        basis_ = connected_component(t, w);
        for (std::size_t k = 0; k < basis_.size(); ++k) index_[basis_[k]] = static_cast<int>(k);
    }
    const std::vector<Word>& basis() const { return basis_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    int index(const Word& w) const { return index_.at(w); }

    Vec idem(const Word& k, const Vec& v) const {
        Vec r;
        for (const auto& [b, c] : v)
            if (basis_[b] == k) r.add(b, c);
        return r;
    }
    Vec y(int, const Vec&) const { return {}; }
    Vec zero() const { return {}; }
    Vec add(const Vec& a, const Vec& b, Scalar c) const {
        Vec r = a;
        r.add(b, c);
        return r;
    }
    bool equal(const Vec& a, const Vec& b) const { return a == b; }
    Vec psi(int r, const Vec& v) const {
        Vec out;
        for (const auto& [b, c] : v)
            if (is_admissible_at(type_, basis_[b], r)) out.add(index_.at(swap_at(basis_[b], r)), c);
        return out;
    }

private:
    AffineType type_;
    std::vector<Word> basis_;
    std::map<Word, int> index_;
};

/// Outcome of one numbered word fact.
struct WordFact {
    enum Status { Pass, Fail, NotApplicable };
    WordFact() = default;
    WordFact(std::string i, std::string d) : item(std::move(i)), description(std::move(d)) {}
    std::string item;
    std::string description;
    Status status = Pass;
    std::size_t cases = 0;
    std::string witness;
};

struct WordFactsReport {
    std::string type;
    std::vector<WordFact> items;
    bool ok() const {
        return std::all_of(items.begin(), items.end(), [](const WordFact& f) { return f.status != WordFact::Fail; });
    }
};

namespace detail {
inline std::string word_string(const Word& w) {
    std::string s;
    for (int x : w) s += std::to_string(x);
    return s;
}
inline bool reduced_shape(const std::string& s, const std::string& tail) {
    std::size_t p = 0;
    while (s.compare(p, 3, "NSN") == 0 && s.size() - p > tail.size()) p += 3;
    return s.substr(p) == tail;
}
inline void fail(WordFact& f, const std::string& why) {
    if (f.status != WordFact::Fail) f.witness = why;
    f.status = WordFact::Fail;
}
}  // namespace detail

/// Exhaustive check of the eight facts about semicuspidal words.
inline WordFactsReport check_wordfacts(const AffineType& t) {
    using detail::fail;
    using detail::word_string;
    CuspWordData cw(t);
    const int d = cw.d();
    WordFactsReport rep;
    rep.type = t.name();
    auto delta = null_root(t);

    WordFact f1{"i", "every word of G^delta is homogeneous of weight delta"};
    for (const auto& w : cw.all()) {
        ++f1.cases;
        if (!is_homogeneous(t, w)) fail(f1, "not homogeneous: " + word_string(w));
        if (word_weight(w, t.vertex_count()) != delta) fail(f1, "wrong weight: " + word_string(w));
    }
    rep.items.push_back(f1);

    WordFact f2{"ii", "words start at 0, end at their component label, with neighbors at both ends"};
    for (const auto& [i, comp] : cw.components())
        for (const auto& w : comp) {
            ++f2.cases;
            bool good = w.front() == 0 && w.back() == i && t.c(w[0], w[1]) < 0 && t.c(w[d - 2], w[d - 1]) < 0;
            if (!good) fail(f2, "endpoint condition fails: " + word_string(w));
        }
    rep.items.push_back(f2);

    WordFact f3{"iii", "reduced neighbor sequences have the shapes (NSN)^a NS and (NSN)^a NNS"};
    if (t.is_a1()) {
        f3.status = WordFact::NotApplicable;
    } else {
        for (const auto& w : cw.all())
            for (int pos = 2; pos <= d; ++pos) {
                ++f3.cases;
                auto ns = neighbor_sequence(t, w, pos);
                if (!detail::reduced_shape(ns.reduced, pos < d ? "NS" : "NNS"))
                    fail(f3, word_string(w) + " at t=" + std::to_string(pos) + ": " + ns.reduced);
            }
    }
    rep.items.push_back(f3);

    WordFact f4{"iv", "for r < d-1, s_r i lies in G^delta exactly when s_r is admissible"};
    for (const auto& w : cw.all())
        for (int r = 1; r < d - 1; ++r) {
            ++f4.cases;
            if (cw.contains(swap_at(w, r)) != is_admissible_at(t, w, r))
                fail(f4, word_string(w) + " at r=" + std::to_string(r));
        }
    rep.items.push_back(f4);

    // Admissible maps and w1 s_{d-1} w2 maps never reorder equal letters, so the
    // order-preserving match is the only candidate and uniqueness is automatic.
    WordFact f5{"v", "within G^i each pair of words is joined by a unique admissible permutation"};
    for (const auto& [i, comp] : cw.components())
        for (const auto& target : comp)
            for (const auto& source : comp) {
                ++f5.cases;
                auto m = order_preserving_match(target, source);
                if (!m || !is_admissible(t, *m, source))
                    fail(f5, "no admissible map " + word_string(source) + " -> " + word_string(target));
            }
    rep.items.push_back(f5);

    auto crossing_ok = [&](const Word& target, const Word& source) {
        auto m = order_preserving_match(target, source);
        return m && cw.crossing_shape(*m, source).has_value();
    };
    const Graph g = t.finite_graph();
    WordFact f6{"vi", "adjacent special words b^j -> b^i are joined by a unique w1 s_{d-1} w2"};
    WordFact f7{"vii", "adjacent components G^j -> G^i are joined by unique w1 s_{d-1} w2 maps"};
    for (auto [a, b] : g.edges)
        for (auto [i, j] : {Edge{a, b}, Edge{b, a}}) {
            ++f6.cases;
            if (!crossing_ok(cw.b(i), cw.b(j)))
                fail(f6, "no map b^" + std::to_string(j) + " -> b^" + std::to_string(i));
            for (const auto& target : cw.component(i))
                for (const auto& source : cw.component(j)) {
                    ++f7.cases;
                    if (!crossing_ok(target, source))
                        fail(f7, "no map " + word_string(source) + " -> " + word_string(target));
                }
        }
    rep.items.push_back(f6);
    rep.items.push_back(f7);

    WordFact f8{"viii", "s_{d-1} i lies in G^{i_{d-1}}"};
    if (t.is_a1()) {
        f8.status = WordFact::NotApplicable;
    } else {
        for (const auto& w : cw.all()) {
            ++f8.cases;
            Word s = swap_at(w, d - 1);
            if (!cw.contains(s) || cw.component_of(s) != w[d - 2]) fail(f8, word_string(w));
        }
    }
    rep.items.push_back(f8);
    return rep;
}

inline std::string status_name(WordFact::Status s) {
    switch (s) {
        case WordFact::Pass: return "pass";
        case WordFact::Fail: return "FAIL";
        case WordFact::NotApplicable: return "n/a";
    }
    return "?";
}

}  // namespace affzig
