#include "affzig/rootdata.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <array>

using namespace affzig;

namespace {

std::vector<AffineType> all_types() {
    std::vector<AffineType> out;
    for (int l = 1; l <= 8; ++l) out.push_back(AffineType::build('A', l));
    for (int l = 4; l <= 8; ++l) out.push_back(AffineType::build('D', l));
    for (int l = 6; l <= 8; ++l) out.push_back(AffineType::build('E', l));
    return out;
}

/// Smallest positive integer vector with entries ≤ bound in the kernel of the Cartan matrix, by exhaustive search.
std::vector<int> kernel_by_search(const AffineType& t, int bound) {
    const int n = t.vertex_count();
    std::vector<int> v(n, 1);
    std::vector<int> best;
    while (true) {
        bool zero = true;
        for (int i = 0; i < n && zero; ++i) {
            int s = 0;
            for (int j = 0; j < n; ++j) s += t.c(i, j) * v[j];
            zero = s == 0;
        }
        if (zero) {
            int h = 0, hb = 0;
            for (int x : v) h += x;
            for (int x : best) hb += x;
            if (best.empty() || h < hb) best = v;
        }
        int k = n - 1;
        while (k >= 0 && v[k] == bound) v[k--] = 1;
        if (k < 0) break;
        ++v[k];
    }
    return best;
}

}  // namespace

TEST(AffineType, TypeA2IsATriangle) {
    AffineType t = build_affine_type('A', 2);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) EXPECT_EQ(t.c(i, j), i == j ? 2 : -1);
}

TEST(AffineType, TypeA1HasDoubleBond) {
    AffineType t = build_affine_type('A', 1);
    EXPECT_EQ(t.c(0, 1), -2);
    EXPECT_EQ(t.c(1, 0), -2);
    EXPECT_TRUE(t.is_a1());
}

TEST(AffineType, TypeD4HasCentralVertexTwo) {
    AffineType t = build_affine_type('D', 4);
    for (int j : {0, 1, 3, 4}) EXPECT_TRUE(t.adjacent(2, j));
    for (int i : {0, 1, 3, 4})
        for (int j : {0, 1, 3, 4}) EXPECT_FALSE(t.adjacent(i, j));
}

TEST(AffineType, RejectsUnsupportedFamilies) {
    EXPECT_THROW(build_affine_type('D', 3), std::invalid_argument);
    EXPECT_THROW(build_affine_type('E', 5), std::invalid_argument);
    EXPECT_THROW(build_affine_type('B', 3), std::invalid_argument);
    EXPECT_THROW(AffineType::parse("A"), std::invalid_argument);
    EXPECT_EQ(AffineType::parse("E6").name(), "E6");
}

TEST(AffineType, CartanShapeAndFiniteTree) {
    for (const auto& t : all_types()) {
        const int n = t.vertex_count();
        for (int i = 0; i < n; ++i) {
            EXPECT_EQ(t.c(i, i), 2);
            for (int j = 0; j < n; ++j) {
                EXPECT_EQ(t.c(i, j), t.c(j, i));
                if (i != j) {
                    if (t.is_a1()) {
                        EXPECT_EQ(t.c(i, j), -2);
                    } else {
                        EXPECT_TRUE(t.c(i, j) == 0 || t.c(i, j) == -1);
                    }
                }
            }
        }
        Graph g = t.finite_graph();
        EXPECT_EQ(g.count, t.ell());
        EXPECT_TRUE(g.is_tree()) << t.name();
    }
}

TEST(NullRoot, TypeAIsAllOnes) {
    for (int l = 1; l <= 6; ++l) {
        AffineType t = build_affine_type('A', l);
        auto d = null_root(t);
        EXPECT_EQ(d, kernel_by_search(t, 2));
        EXPECT_EQ(d, std::vector<int>(l + 1, 1));
        EXPECT_EQ(height(d), l + 1);
    }
}

TEST(NullRoot, TypeD4) {
    AffineType t = build_affine_type('D', 4);
    auto oracle_root = kernel_by_search(t, 3);
    EXPECT_EQ(oracle_root, (std::vector<int>{1, 1, 2, 1, 1}));
    EXPECT_EQ(null_root(t), oracle_root);
    EXPECT_EQ(height(null_root(t)), 6);
}

TEST(NullRoot, MatchesSearchForSmallExceptionalAndD) {
    EXPECT_EQ(null_root(build_affine_type('D', 5)), kernel_by_search(build_affine_type('D', 5), 2));
    EXPECT_EQ(null_root(build_affine_type('E', 6)), kernel_by_search(build_affine_type('E', 6), 3));
    EXPECT_EQ(height(null_root(build_affine_type('E', 6))), 12);
    EXPECT_EQ(height(null_root(build_affine_type('E', 7))), 18);
    EXPECT_EQ(height(null_root(build_affine_type('E', 8))), 30);
}

TEST(NullRoot, IsAnnihilatedByTheCartanMatrix) {
    for (const auto& t : all_types()) {
        auto d = null_root(t);
        EXPECT_EQ(d[0], 1) << t.name();
        for (int i = 0; i < t.vertex_count(); ++i) {
            int s = 0;
            for (int j = 0; j < t.vertex_count(); ++j) s += t.c(i, j) * d[j];
            EXPECT_EQ(s, 0) << t.name();
        }
    }
}

TEST(Words, WeightIsAdditiveAndHeightIsLength) {
    oracle::Gen gen(41);
    for (int trial = 0; trial < 200; ++trial) {
        int n = gen.uniform(2, 7);
        Word a(gen.uniform(0, 6)), b(gen.uniform(0, 6));
        for (auto& x : a) x = gen.uniform(0, n - 1);
        for (auto& x : b) x = gen.uniform(0, n - 1);
        auto wa = word_weight(a, n), wb = word_weight(b, n), wab = word_weight(concat(a, b), n);
        for (int i = 0; i < n; ++i) EXPECT_EQ(wab[i], wa[i] + wb[i]);
        EXPECT_EQ(height(wab), static_cast<int>(a.size() + b.size()));
    }
}

TEST(SignTable, XiOfVertexOne) {
    EXPECT_EQ(build_sign_table(build_affine_type('D', 5)).xi(1), -1);
    EXPECT_EQ(build_sign_table(build_affine_type('E', 7)).xi(1), -1);
    for (int l = 4; l <= 8; ++l) EXPECT_EQ(build_sign_table(build_affine_type('D', l)).xi(1), l % 2 == 0 ? 1 : -1);
}

TEST(SignTable, InvariantsHoldForEveryTypeAndOrientation) {
    for (const auto& t : all_types()) {
        for (std::uint64_t seed : {0ULL, 1ULL, 7ULL, 12345ULL}) {
            SignTable s = build_sign_table(t, seed);
            if (!t.is_a1()) {
                for (auto [a, b] : t.edges()) EXPECT_EQ(s.eps(a, b) * s.eps(b, a), -1);
                if (seed == 0) {
                    for (auto [a, b] : t.edges()) EXPECT_EQ(s.eps(a, b), 1);
                }
            }
            Graph g = t.finite_graph();
            for (auto [a, b] : g.edges) {
                EXPECT_EQ(s.xi(a) * s.xi(b), -1);
                for (auto [i, j] : {Edge{a, b}, Edge{b, a}}) {
                    EXPECT_EQ(s.mu(j, i), s.xi(i) == 1 ? s.eps(j, i) : 1);
                    EXPECT_EQ(s.mu(i, j) * s.mu(j, i), s.eps(j, i) * s.xi(i)) << t.name();
                }
            }
        }
    }
}

TEST(SignTable, RejectsInconsistentOrientation) {
    AffineType t = build_affine_type('A', 2);
    std::map<Edge, int> eps{{{0, 1}, 1}, {{1, 0}, 1}, {{1, 2}, 1}, {{2, 1}, -1}, {{0, 2}, 1}, {{2, 0}, -1}};
    EXPECT_THROW(SignTable::from_eps(t, eps), std::invalid_argument);
    eps.erase({1, 0});
    EXPECT_THROW(SignTable::from_eps(t, eps), std::invalid_argument);
}

TEST(QPolynomial, CaseFormulas) {
    AffineType a2 = build_affine_type('A', 2), d4 = build_affine_type('D', 4), a1 = build_affine_type('A', 1);
    SignTable s2 = build_sign_table(a2), s4 = build_sign_table(d4), s1 = build_sign_table(a1);
    EXPECT_TRUE(q_polynomial(a2, s2, 1, 1).empty());
    Poly2 one;
    one.add({0, 0}, 1);
    EXPECT_EQ(q_polynomial(d4, s4, 0, 1), one);
    Poly2 a1q;  // (u − v)(v − u)
    a1q.add({2, 0}, -1);
    a1q.add({1, 1}, 2);
    a1q.add({0, 2}, -1);
    EXPECT_EQ(q_polynomial(a1, s1, 0, 1), a1q);
    EXPECT_EQ(q_polynomial(a1, s1, 1, 0), a1q);
    Poly2 adj;  // ε_01 (u − v) with ε_01 = 1
    adj.add({1, 0}, 1);
    adj.add({0, 1}, -1);
    EXPECT_EQ(q_polynomial(a2, s2, 0, 1), adj);
}

TEST(QPolynomial, IsSymmetricUnderSwap) {
    for (const auto& t : all_types()) {
        SignTable s = build_sign_table(t, 3);
        for (int i = 0; i < t.vertex_count(); ++i)
            for (int j = 0; j < t.vertex_count(); ++j) {
                Poly2 swapped;
                for (const auto& [e, c] : q_polynomial(t, s, j, i)) swapped.add({e.second, e.first}, c);
                EXPECT_EQ(q_polynomial(t, s, i, j), swapped);
            }
    }
}

TEST(BraidErrorPolynomial, TimesDifferenceRecoversQDifference) {
    // (c − a)·R(a, b, c) = Q(c, b) − Q(a, b).
    for (const auto& t : {build_affine_type('A', 1), build_affine_type('A', 3), build_affine_type('D', 4)}) {
        SignTable s = build_sign_table(t);
        for (int i = 0; i < t.vertex_count(); ++i)
            for (int j = 0; j < t.vertex_count(); ++j) {
                Poly3 lhs;
                for (const auto& [e, c] : braid_error_polynomial(t, s, i, j)) {
                    lhs.add({e[0], e[1], e[2] + 1}, c);
                    lhs.add({e[0] + 1, e[1], e[2]}, -c);
                }
                Poly3 rhs;
                for (const auto& [e, c] : q_polynomial(t, s, i, j)) {
                    rhs.add({0, e.second, e.first}, c);
                    rhs.add({e.first, e.second, 0}, -c);
                }
                EXPECT_EQ(lhs, rhs);
            }
    }
}
