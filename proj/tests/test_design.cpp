#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"

using nwg::Design;

TEST(Galois, FieldAxiomsExhaustive) {
    for (unsigned q : {2U, 3U, 4U, 5U, 7U, 8U, 9U, 11U, 13U, 16U}) {
        const nwg::GaloisField f(q);
        for (unsigned a = 0; a < q; ++a) {
            EXPECT_EQ(f.add(a, 0), a);
            EXPECT_EQ(f.mul(a, 1), a);
            unsigned inverses = 0;
            for (unsigned b = 0; b < q; ++b) {
                EXPECT_EQ(f.add(a, b), f.add(b, a));
                EXPECT_EQ(f.mul(a, b), f.mul(b, a));
                if (f.mul(a, b) == 1) ++inverses;
                for (unsigned c = 0; c < q; ++c) {
                    EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    EXPECT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                }
            }
            EXPECT_EQ(inverses, a == 0 ? 0U : 1U) << "q=" << q << " a=" << a;
        }
    }
}

TEST(Galois, RejectsNonPrimePowers) {
    EXPECT_THROW(nwg::GaloisField(6), nwg::ConfigError);
    EXPECT_THROW(nwg::GaloisField(1), nwg::ConfigError);
    EXPECT_THROW(nwg::GaloisField(32), nwg::ConfigError);
}

TEST(PolynomialDesign, BinaryLinear) {
    const auto des = nwg::build_polynomial_design(2, 1);
    EXPECT_EQ(des.n, 4U);
    EXPECT_EQ(des.ell, 2U);
    EXPECT_EQ(des.d, 1U);
    const std::vector<std::vector<std::size_t>> want{{0, 2}, {1, 3}, {0, 3}, {1, 2}};
    EXPECT_EQ(des.sets, want);
}

TEST(PolynomialDesign, TernaryLinearSizes) {
    const auto des = nwg::build_polynomial_design(3, 1);
    EXPECT_EQ(des.n, 9U);
    EXPECT_EQ(des.m(), 9U);
    EXPECT_EQ(des.ell, 3U);
    for (const auto& s : des.sets) EXPECT_EQ(s.size(), 3U);
}

TEST(PolynomialDesign, PrimeFieldsMatchModularOracle) {
    for (unsigned q : {2U, 3U, 5U, 7U})
        for (unsigned deg = 1; deg < q && deg <= 2; ++deg) EXPECT_EQ(nwg::build_polynomial_design(q, deg).sets, oracle::prime_design(q, deg)) << q << "," << deg;
}

TEST(PolynomialDesign, VerifiesForAllSmallParameters) {
    for (unsigned q : {2U, 3U, 4U, 5U, 8U, 9U}) {
        for (unsigned deg = 1; deg <= 2 && deg < q; ++deg) {
            const auto des = nwg::build_polynomial_design(q, deg);
            const auto rep = nwg::verify_design(des);
            EXPECT_TRUE(rep.ok) << q << "," << deg;
            std::size_t want_m = 1;
            for (unsigned i = 0; i <= deg; ++i) want_m *= q;
            EXPECT_EQ(des.m(), want_m);
            std::set<std::vector<std::size_t>> distinct(des.sets.begin(), des.sets.end());
            EXPECT_EQ(distinct.size(), des.m());
            std::size_t max_meet = 0;
            for (std::size_t i = 0; i < des.m(); ++i)
                for (std::size_t j = i + 1; j < des.m(); ++j) {
                    std::size_t meet = 0;
                    for (auto p : des.sets[i]) meet += std::count(des.sets[j].begin(), des.sets[j].end(), p);
                    max_meet = std::max(max_meet, meet);
                }
            EXPECT_LE(max_meet, deg);
        }
    }
}

TEST(PolynomialDesign, RejectsBadParameters) {
    EXPECT_THROW(nwg::build_polynomial_design(6, 1), nwg::ConfigError);
    EXPECT_THROW(nwg::build_polynomial_design(3, 0), nwg::ConfigError);
    EXPECT_THROW(nwg::build_polynomial_design(3, 3), nwg::ConfigError);
}

TEST(VerifyDesign, DuplicateSetIsIntersectionViolation) {
    const Design des{4, 2, 1, {{0, 1}, {0, 1}}};
    const auto rep = nwg::verify_design(des);
    ASSERT_FALSE(rep.ok);
    ASSERT_EQ(rep.violations.size(), 1U);
    const auto& v = rep.violations[0];
    EXPECT_EQ(v.kind, nwg::DesignViolation::Kind::intersection);
    EXPECT_EQ(v.i, 0U);
    EXPECT_EQ(v.j, 1U);
    EXPECT_EQ(v.value, 2U);
}

TEST(VerifyDesign, WrongCardinality) {
    const Design des{4, 2, 1, {{0, 2}, {0, 1, 2}}};
    const auto rep = nwg::verify_design(des);
    ASSERT_FALSE(rep.ok);
    bool found = false;
    for (const auto& v : rep.violations)
        if (v.kind == nwg::DesignViolation::Kind::size && v.i == 1) found = true;
    EXPECT_TRUE(found);
}

TEST(VerifyDesign, RangeAndOrder) {
    const Design out_of_range{4, 2, 1, {{0, 4}}};
    EXPECT_FALSE(nwg::verify_design(out_of_range).ok);
    const Design unsorted{4, 2, 1, {{2, 0}}};
    EXPECT_FALSE(nwg::verify_design(unsorted).ok);
}

TEST(ExtendGreedy, SeedZeroAddsTwoThree) {
    const auto base = nwg::build_polynomial_design(2, 1);
    const auto ext = nwg::extend_greedy(base, 5, 0);
    ASSERT_EQ(ext.m(), 5U);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(ext.sets[i], base.sets[i]);
    EXPECT_EQ(ext.sets[4], (std::vector<std::size_t>{2, 3}));
    EXPECT_TRUE(nwg::verify_design(ext).ok);
}

TEST(ExtendGreedy, SameSizeIsNoOp) {
    const auto base = nwg::build_polynomial_design(3, 1);
    for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) EXPECT_EQ(nwg::extend_greedy(base, base.m(), seed), base);
}

TEST(ExtendGreedy, InfeasibleWhenCandidatesRunOut) {
    const Design five{4, 2, 1, {{0, 2}, {1, 3}, {0, 3}, {1, 2}, {2, 3}}};
    EXPECT_THROW(nwg::extend_greedy(five, 7, 0), nwg::InfeasibleError);
}

TEST(ExtendGreedy, ShrinkingIsConfigError) {
    EXPECT_THROW(nwg::extend_greedy(nwg::build_polynomial_design(3, 1), 4, 0), nwg::ConfigError);
}

TEST(ExtendGreedy, DeterministicAndValid) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Design empty{12, 4, 2, {}};
        const auto a = nwg::extend_greedy(empty, 13, seed);
        const auto b = nwg::extend_greedy(empty, 13, seed);
        EXPECT_EQ(a, b);
        EXPECT_TRUE(nwg::verify_design(a).ok);
        EXPECT_EQ(a.m(), 13U);
    }
}

TEST(ExtendGreedy, SampledPathForLargeCandidateSpace) {
    const Design empty{40, 8, 3, {}};
    const auto des = nwg::extend_greedy(empty, 20, 5);
    EXPECT_TRUE(nwg::verify_design(des).ok);
    EXPECT_EQ(des, nwg::extend_greedy(empty, 20, 5));
}
