#include "affzig/affinize.hpp"
#include "affzig/linalg.hpp"
#include "affzig/zigpres.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace affzig;

namespace {

SymAlg zig2() { return zigzag_algebra(Graph::path(2)); }

std::vector<SymAlg> grid_algebras() { return {ground_ring(), dual_numbers(), zig2()}; }

AffKey random_key(oracle::Gen& gen, const Affinization& H, int max_exp) {
    AffKey k;
    for (int i = 0; i < H.n(); ++i) {
        k.t.push_back(gen.uniform(0, max_exp));
        k.a.push_back(gen.uniform(0, H.algebra().dim() - 1));
    }
    k.w = gen.pick(oracle::all_permutations(H.n()));
    return k;
}

AffElement random_vector(oracle::Gen& gen, const Affinization& H) {
    AffElement v;
    int terms = gen.uniform(1, 3);
    for (int k = 0; k < terms; ++k) v.add(random_key(gen, H, 2), gen.uniform(-2, 2));
    return v;
}

/// Coordinates of a list of elements against the union of their supports.
RatMatrix coordinates(const std::vector<AffElement>& xs) {
    std::map<AffKey, std::size_t> index;
    for (const auto& x : xs)
        for (const auto& [k, c] : x) index.try_emplace(k, index.size());
    RatMatrix m;
    for (const auto& x : xs) {
        std::vector<Rational> row(index.size(), 0);
        for (const auto& [k, c] : x) row[index[k]] = c.value();
        m.push_back(row);
    }
    return m;
}

std::size_t rank_of(const std::vector<AffElement>& xs) {
    if (xs.empty()) return 0;
    RatMatrix m = coordinates(xs);
    return rational_rank(m, m.front().size());
}

/// Dimension of the centralizer of all generators inside the span of the degree-k basis.
std::size_t center_dimension_by_kernel(const Affinization& H, int k) {
    auto keys = H.basis_in_degree(k);
    std::map<std::pair<std::size_t, AffKey>, std::size_t> rows;
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> cols(keys.size());
    auto gens = H.generators();
    for (std::size_t x = 0; x < keys.size(); ++x) {
        AffElement v = H.key(keys[x]);
        for (std::size_t g = 0; g < gens.size(); ++g) {
            AffElement comm = H.multiply(gens[g], v) - H.multiply(v, gens[g]);
            for (const auto& [key, c] : comm) {
                auto [it, ins] = rows.try_emplace({g, key}, rows.size());
                cols[x].emplace_back(it->second, c);
            }
        }
    }
    RatMatrix m(rows.size(), std::vector<Rational>(keys.size(), 0));
    for (std::size_t x = 0; x < keys.size(); ++x)
        for (auto [r, c] : cols[x]) m[r][x] = c.value();
    return keys.size() - (rows.empty() ? 0 : rational_rank(m, keys.size()));
}

}  // namespace

TEST(GenAction, SimpleTranspositionOnUnitOverGroundRing) {
    Affinization H(ground_ring(), 2);
    EXPECT_EQ(H.gen_action(Affinization::GenS{1}, H.one()), H.s(1));
}

TEST(GenAction, DegenerateAffineHeckeRelation) {
    Affinization H(ground_ring(), 2);
    EXPECT_EQ(H.gen_action(Affinization::GenS{1}, H.z(1)), H.multiply(H.z(2), H.s(1)) + H.one());
    EXPECT_EQ(H.multiply(H.s(1), H.z(1)) - H.multiply(H.z(2), H.s(1)), H.one());
}

TEST(GenAction, ZigzagCorrectionTermIsDistinguishedElementOnIdempotent) {
    SymAlg Z = zig2();
    Affinization H(Z, 2);
    TensorElem e11 = H.tensor_of({Z.basis(Z.e(1)), Z.basis(Z.e(1))});
    AffElement v = H.from_tensor(e11, {1, 0}, Permutation::identity(2));
    AffElement got = H.gen_action(Affinization::GenS{1}, v);
    // Oracle: Δ(1)(e_1 ⊗ e_1) keeps the terms of Δ(1) whose factors both end at vertex 1.
    TensorElem corr = H.tensor_of({Z.basis(Z.e(1)), Z.basis(Z.cyc(1))}) + H.tensor_of({Z.basis(Z.cyc(1)), Z.basis(Z.e(1))});
    AffElement expected = H.from_tensor(e11, {0, 1}, Permutation::simple(2, 1)) + H.from_tensor(corr);
    EXPECT_EQ(got, expected);
}

TEST(GenAction, RejectsOutOfRangeIndices) {
    Affinization H(ground_ring(), 2);
    EXPECT_THROW(H.z(3), std::out_of_range);
    EXPECT_THROW(H.s(2), std::out_of_range);
    EXPECT_THROW(H.slot(0, H.algebra().unit()), std::out_of_range);
}

TEST(Multiply, Examples) {
    Affinization H(ground_ring(), 2);
    EXPECT_EQ(H.multiply(H.s(1), H.s(1)), H.one());
    oracle::Gen gen(1);
    Affinization Hz(zig2(), 2);
    for (int k = 0; k < 20; ++k) {
        AffElement x = random_vector(gen, Hz);
        EXPECT_EQ(Hz.multiply(x, Hz.one()), x);
        EXPECT_EQ(Hz.multiply(Hz.one(), x), x);
    }
    const SymAlg& Z = Hz.algebra();
    AffElement e11 = Hz.from_tensor(Hz.tensor_of({Z.basis(Z.e(1)), Z.basis(Z.e(1))}));
    AElem c = Z.basis(Z.cyc(1)) + Z.basis(Z.cyc(2));
    AffElement lhs = Hz.multiply(Hz.multiply(Hz.s(1), Hz.z(1)) - Hz.multiply(Hz.z(2), Hz.s(1)), e11);
    AffElement rhs = Hz.multiply(Hz.slot(1, c) + Hz.slot(2, c), e11);
    EXPECT_EQ(lhs, rhs);
}

TEST(Multiply, MismatchedRankIsRejected) {
    Affinization H2(ground_ring(), 2), H3(ground_ring(), 3);
    EXPECT_THROW(H2.multiply(H3.z(1), H2.one()), std::invalid_argument);
}

TEST(Multiply, IsAssociativeAndHomogeneous) {
    oracle::Gen gen(2);
    for (const auto& A : {dual_numbers(), zig2()}) {
        for (int n = 1; n <= 3; ++n) {
            Affinization H(A, n);
            for (int trial = 0; trial < 40; ++trial) {
                AffElement x = H.key(random_key(gen, H, 1)), y = H.key(random_key(gen, H, 1)),
                           z = H.key(random_key(gen, H, 1));
                AffElement xy = H.multiply(x, y);
                EXPECT_EQ(H.multiply(xy, z), H.multiply(x, H.multiply(y, z)));
                if (!xy.empty()) {
                    EXPECT_EQ(H.degree(xy), *H.degree(x) + *H.degree(y));
                }
            }
        }
    }
}

TEST(AffBasis, EnumeratedDimensionMatchesSeriesOracle) {
    for (const auto& A : grid_algebras()) {
        for (int n = 1; n <= 3; ++n) {
            Affinization H(A, n);
            const int D = 6;
            const int d = H.z_weight();
            std::vector<std::int64_t> num{1};
            for (int k = 0; k < n; ++k) num = oracle::poly_mul(num, A.graded_dim(), D);
            auto expected = oracle::series_by_division(num, std::vector<int>(n, d), D);
            for (auto& c : expected) c *= oracle::factorial(n);
            EXPECT_EQ(H.formula_dimension(D).coeffs(), expected) << A.name() << " n=" << n;
            EXPECT_EQ(H.enumerated_dimension(D).coeffs(), expected) << A.name() << " n=" << n;
        }
    }
}

TEST(AffBasis, OtherOrderingsSpanTheSamePieces) {
    // w·f·a and a·w·f products over all keys of a degree are independent and span the piece.
    for (const auto& A : {dual_numbers(), zig2()}) {
        Affinization H(A, 2);
        for (int k = 0; k <= 2; ++k) {
            auto keys = H.basis_in_degree(k);
            std::vector<AffElement> wfa, awf;
            for (const auto& key : keys) {
                AffElement f = H.zmono(key.t), a = H.from_tensor(TensorElem(key.a)), w = H.perm(key.w);
                wfa.push_back(H.multiply(w, H.multiply(f, a)));
                awf.push_back(H.multiply(a, H.multiply(w, f)));
            }
            EXPECT_EQ(rank_of(wfa), keys.size());
            EXPECT_EQ(rank_of(awf), keys.size());
            for (const auto& x : wfa)
                for (const auto& [kk, c] : x) EXPECT_EQ(H.degree(kk), k);
        }
    }
}

TEST(Relations, AffineRelationsHoldAsOperatorsOnV) {
    oracle::Gen gen(3);
    for (const auto& A : grid_algebras()) {
        for (int n = 1; n <= 3; ++n) {
            Affinization H(A, n);
            auto op = [&](const AffElement& g, const AffElement& v) { return H.multiply(g, v); };
            for (int trial = 0; trial < 30; ++trial) {
                AffElement v = random_vector(gen, H);
                int r = gen.uniform(1, n);
                AffElement a = H.slot(r, A.basis(gen.uniform(0, A.dim() - 1)));
                int i = gen.uniform(1, n);
                // (AZ): tensors commute with z_i.
                EXPECT_EQ(op(a, op(H.z(i), v)), op(H.z(i), op(a, v)));
                if (n < 2) continue;
                int j = gen.uniform(1, n - 1);
                Permutation sj = Permutation::simple(n, j);
                // (AS): s_j a = (s_j·a) s_j.
                AffElement moved = H.slot(sj(r), A.basis(a.begin()->first.a[r - 1]));
                EXPECT_EQ(op(H.s(j), op(a, v)), op(moved, op(H.s(j), v)));
                // (SZ): s_j z_i − z_{s_j i} s_j = (δ_ij − δ_{i,j+1}) Δ_{j,j+1}.
                AffElement lhs = op(H.s(j), op(H.z(i), v)) - op(H.z(sj(i)), op(H.s(j), v));
                AffElement delta = H.from_tensor(H.delta_tensor(j, j + 1));
                int sign = (i == j) - (i == j + 1);
                EXPECT_EQ(lhs, op(delta, v).scaled(sign));
                // Coxeter relations.
                EXPECT_EQ(op(H.s(j), op(H.s(j), v)), v);
                for (int k = 1; k < n; ++k) {
                    if (std::abs(k - j) == 1) {
                        EXPECT_EQ(op(H.s(j), op(H.s(k), op(H.s(j), v))), op(H.s(k), op(H.s(j), op(H.s(k), v))));
                    } else if (k != j) {
                        EXPECT_EQ(op(H.s(j), op(H.s(k), v)), op(H.s(k), op(H.s(j), v)));
                    }
                }
            }
        }
    }
}

TEST(Relations, ZigzagPresentationHoldsOnV) {
    for (int n = 1; n <= 2; ++n) {
        Graph g = Graph::path(2);
        Affinization H(zigzag_algebra(g), n);
        std::vector<AffElement> vecs;
        for (int k = 0; k <= 2; ++k)
            for (const auto& key : H.basis_in_degree(k)) vecs.push_back(H.key(key));
        if (vecs.size() > 40) vecs.resize(40);
        auto report = check_relations_on(
            zig_relations(g, n), vecs,
            [&](const ZigGen& x, const AffElement& v) { return H.multiply(zig_generator(H, x), v); },
            [](const AffElement& a, const AffElement& b, Scalar c) {
                AffElement r = a;
                r.add(b, c);
                return r;
            },
            [](const AffElement& a, const AffElement& b) { return a == b; }, AffElement());
        EXPECT_GT(report.checked, 0u);
        EXPECT_EQ(report.failed, 0u) << report.first_failure;
    }
}

TEST(Center, SymmetricSumIsCentralAndZ1IsNot) {
    Affinization H(ground_ring(), 2);
    EXPECT_TRUE(H.is_central(H.z(1) + H.z(2)));
    EXPECT_FALSE(H.is_central(H.z(1)));
    EXPECT_TRUE(H.is_central(H.multiply(H.z(1), H.z(2))));
}

TEST(Center, ZigzagDegreeCountsMatchSymmetricSquare) {
    // Oracle: per slot, k[z] ⊗ Z(A) has dimensions 1, 3, 3, ... in degrees 0, 2, 4.
    // The S_2-invariants of its tensor square in degrees 0, 2, 4 are 1, 3, 3 + 6.
    Affinization H(zig2(), 2);
    std::map<int, int> counts;
    for (const auto& c : H.center_space(4)) ++counts[c.degree];
    EXPECT_EQ(counts[0], 1);
    EXPECT_EQ(counts[1], 0);
    EXPECT_EQ(counts[2], 3);
    EXPECT_EQ(counts[3], 0);
    EXPECT_EQ(counts[4], 9);
}

TEST(Center, MatchesKernelOfCommutatorsDegreeByDegree) {
    for (const auto& A : {ground_ring(), zig2()}) {
        Affinization H(A, 2);
        auto space = H.center_space(4);
        for (int k = 0; k <= 4; ++k) {
            std::vector<AffElement> members;
            for (const auto& c : space)
                if (c.degree == k) members.push_back(c.element);
            EXPECT_EQ(members.size(), center_dimension_by_kernel(H, k)) << A.name() << " degree " << k;
            EXPECT_EQ(rank_of(members), members.size());
            for (const auto& x : members) {
                EXPECT_TRUE(H.is_central(x));
                for (int j = 1; j < H.n(); ++j) {
                    // Fixed by conjugation with s_j.
                    EXPECT_EQ(H.multiply(H.s(j), H.multiply(x, H.s(j))), x);
                }
            }
        }
    }
    Affinization H(ground_ring(), 2);
    std::map<int, int> counts;
    for (const auto& c : H.center_space(4)) ++counts[c.degree];
    for (int k = 0; k <= 4; ++k) EXPECT_EQ(counts[k], k / 2 + 1);
}

TEST(NuHat, Examples) {
    Affinization H(zig2(), 2);
    const SymAlg& Z = H.algebra();
    EXPECT_EQ(H.nu_hat(H.multiply(H.z(1), H.s(1))), H.multiply(H.s(1), H.z(1)));
    EXPECT_EQ(H.nu_hat(H.slot(1, Z.basis(Z.arrow(1, 2)))), H.slot(1, Z.basis(Z.arrow(2, 1))));
    Affinization Hk(ground_ring(), 2);
    EXPECT_EQ(Hk.nu_hat(Hk.multiply(Hk.z(1), Hk.s(1))), Hk.multiply(Hk.s(1), Hk.z(1)));
}

TEST(NuHat, IsAntiMultiplicative) {
    oracle::Gen gen(4);
    for (int n = 1; n <= 3; ++n) {
        Affinization H(zig2(), n);
        for (int trial = 0; trial < 30; ++trial) {
            AffElement x = random_vector(gen, H), y = random_vector(gen, H);
            EXPECT_EQ(H.nu_hat(H.multiply(x, y)), H.multiply(H.nu_hat(y), H.nu_hat(x)));
            EXPECT_EQ(H.nu_hat(H.nu_hat(x)), x);
        }
    }
}

TEST(NuHat, RejectsAlgebraWithoutAntiautomorphism) {
    std::vector<std::vector<AElem>> mult{{AElem(0)}};
    SymAlg custom = SymAlg::from_data("custom", {"1"}, {0}, mult, AElem(0), {1});
    Affinization H(custom, 2);
    EXPECT_THROW(H.nu_hat(H.z(1)), std::logic_error);
}

TEST(JucysMurphy, FirstIsZeroAndSecondIsMinusTransposition) {
    Affinization H(ground_ring(), 3);
    EXPECT_TRUE(H.jucys_murphy(1).empty());
    Affinization H2(ground_ring(), 2);
    EXPECT_EQ(H2.jucys_murphy(2), H2.s(1).scaled(-1));
}

TEST(JucysMurphy, CommuteAndCentralizeTensors) {
    for (const auto& A : {ground_ring(), dual_numbers(), zig2()}) {
        for (int n = 2; n <= 4; ++n) {
            if (n == 4 && A.dim() > 2) continue;
            Affinization H(A, n);
            for (int r = 1; r <= n; ++r) {
                AffElement lr = H.jucys_murphy(r);
                for (int t = 1; t <= n; ++t) {
                    AffElement lt = H.jucys_murphy(t);
                    EXPECT_EQ(H.multiply(lr, lt), H.multiply(lt, lr));
                    for (int b = 0; b < A.dim(); ++b) {
                        AffElement a = H.slot(t, A.basis(b));
                        EXPECT_EQ(H.multiply(lr, a), H.multiply(a, lr)) << A.name();
                    }
                }
                for (int j = 1; j < n; ++j) {
                    if (j != r && j + 1 != r) {
                        EXPECT_EQ(H.multiply(H.s(j), lr), H.multiply(lr, H.s(j)));
                    }
                }
            }
        }
    }
}

TEST(BetaC, SendsZOneToC) {
    Affinization H(zig2(), 2);
    AffElement c = H.default_c();
    EXPECT_EQ(H.beta_c(H.z(1), c), c);
    EXPECT_TRUE(H.beta_c(H.z(1) - c, c).empty());
    AffElement rel = H.multiply(H.s(1), H.z(1)) - H.multiply(H.z(2), H.s(1)) - H.from_tensor(H.delta_tensor(1, 2));
    EXPECT_TRUE(H.beta_c(rel, c).empty());
}

TEST(BetaC, DefaultParameterIsSlotSumOfWeightedCycles) {
    Affinization H(zig2(), 2);
    const SymAlg& Z = H.algebra();
    AElem m;
    for (int i : Z.graph().vertices()) m.add(Z.cyc(i), 2 + static_cast<int>(Z.graph().neighbors(i).size()));
    EXPECT_EQ(H.default_c(), H.slot(1, m) + H.slot(2, m));
}

TEST(BetaC, IsMultiplicativeOnGeneratorPairs) {
    for (const auto& A : {ground_ring(), dual_numbers(), zig2()}) {
        for (int n = 1; n <= 3; ++n) {
            Affinization H(A, n);
            AffElement c = H.default_c();
            auto gens = H.generators();
            for (const auto& g : gens)
                for (const auto& h : gens)
                    EXPECT_EQ(H.beta_c(H.multiply(g, h), c), H.multiply(H.beta_c(g, c), H.beta_c(h, c)));
        }
    }
}

TEST(BetaC, RejectsInvalidParameters) {
    Affinization H(zig2(), 2);
    const SymAlg& Z = H.algebra();
    EXPECT_THROW(H.beta_c(H.z(1), H.slot(1, Z.basis(Z.cyc(1)))), std::invalid_argument);
    EXPECT_THROW(H.beta_c(H.z(1), H.one()), std::invalid_argument);
    EXPECT_THROW(H.beta_c(H.z(1), H.z(1)), std::invalid_argument);
}

TEST(Cyclotomic, LevelOneIsTheWreathProduct) {
    for (const auto& A : grid_algebras()) {
        for (int n = 1; n <= 3; ++n) {
            Affinization H(A, n);
            CyclotomicQuotient Q(H, CyclotomicQuotient::default_params(H, 1));
            std::int64_t expected = oracle::factorial(n);
            for (int k = 0; k < n; ++k) expected *= A.dim();
            auto dim = Q.certified_dimension();
            ASSERT_TRUE(dim.has_value());
            EXPECT_EQ(static_cast<std::int64_t>(*dim), expected) << A.name() << " n=" << n;
        }
    }
}

TEST(Cyclotomic, GroundRingHasLevelPowerTimesFactorial) {
    for (int n = 1; n <= 3; ++n)
        for (int l = 1; l <= 3; ++l) {
            Affinization H(ground_ring(), n);
            CyclotomicQuotient Q(H, CyclotomicQuotient::default_params(H, l));
            auto dim = Q.certified_dimension();
            ASSERT_TRUE(dim.has_value());
            std::int64_t expected = oracle::factorial(n);
            for (int k = 0; k < n; ++k) expected *= l;
            EXPECT_EQ(static_cast<std::int64_t>(*dim), expected);
        }
}

TEST(Cyclotomic, DualNumbersLevelTwoEvidenceRuns) {
    Affinization H(dual_numbers(), 2);
    CyclotomicQuotient Q(H, CyclotomicQuotient::default_params(H, 2));
    C3Evidence ev = Q.c3_evidence(50, 9);
    EXPECT_TRUE(ev.terminated);
    EXPECT_EQ(ev.spanning_size, 32u);
    EXPECT_EQ(ev.associativity_trials, 50u);
    EXPECT_GT(ev.relation_checks, 0u);
}

TEST(Cyclotomic, ReductionLandsInSpanningSet) {
    Affinization H(ground_ring(), 2);
    CyclotomicQuotient Q(H, CyclotomicQuotient::default_params(H, 2));
    AffElement z1sq = H.multiply(H.z(1), H.z(1));
    for (const auto& [k, c] : Q.reduce(z1sq)) EXPECT_TRUE(Q.in_span(k));
    // z_1 (z_1 − 1) = 0 when c^(1) = 0 and c^(2) = Σ m(Δ(1)) = 2 for A = k, n = 2.
    AffElement c2 = H.default_c();
    EXPECT_TRUE(Q.reduce(H.multiply(H.z(1), H.z(1) - c2)).empty());
}
