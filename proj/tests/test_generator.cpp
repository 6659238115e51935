#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"

using nwg::BitString;

TEST(EvaluateG, InstanceAExamples) {
    const auto inst = fixtures::inst_a();
    EXPECT_EQ(nwg::evaluate_g(inst, BitString::parse("0000")).to_string(), "00000");
    EXPECT_EQ(nwg::evaluate_g(inst, BitString::parse("0011")).to_string(), "11111");
    for (const auto& x : fixtures::all_inputs(4)) {
        const auto s = x.to_string();
        const std::string want{s[2], s[3], s[3], s[2], s[3]};
        EXPECT_EQ(nwg::evaluate_g(inst, x).to_string(), want);
    }
    EXPECT_THROW(nwg::evaluate_g(inst, BitString(5)), std::invalid_argument);
}

TEST(EvaluateG, MatchesTextOracleOnRandomInstances) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const auto inst = fixtures::random_instance(10, 4, 2, seed, 1, seed % 2 ? nwg::HardBit::parity : nwg::HardBit::last_bit, seed >= 2);
        for (const auto& x : fixtures::all_inputs(10)) EXPECT_EQ(nwg::evaluate_g(inst, x).to_string(), oracle::g(inst, x.to_string()));
    }
}

TEST(EvaluateG, DependsOnlyOnCoveredPositions) {
    nwg::Design des{6, 2, 1, {{0, 2}, {1, 3}, {0, 3}}};
    const auto inst = nwg::make_instance(des, nwg::make_permutation(2, nwg::PermutationKind::table, 3), nwg::HardBit::last_bit, 1);
    for (const auto& x : fixtures::all_inputs(6)) {
        auto y = x;
        y.set(4, !x[4]);
        y.set(5, !x[5]);
        EXPECT_EQ(nwg::evaluate_g(inst, x), nwg::evaluate_g(inst, y));
    }
}

TEST(Range, InstanceA) {
    const auto inst = fixtures::inst_a();
    std::vector<std::string> got;
    for (const auto& y : nwg::enumerate_range(inst)) got.push_back(y.to_string());
    EXPECT_EQ(got, (std::vector<std::string>{"00000", "01101", "10010", "11111"}));
    EXPECT_EQ(nwg::find_off_range(inst, nwg::OffRangeMode::lex_min).to_string(), "00001");
}

TEST(Range, ShardedMatchesSerial) {
    const auto inst = fixtures::random_instance(12, 4, 2, 7);
    EXPECT_EQ(nwg::enumerate_range(inst, 1), nwg::enumerate_range(inst, 5));
    EXPECT_EQ(nwg::find_off_range(inst, nwg::OffRangeMode::lex_min, 0, 1), nwg::find_off_range(inst, nwg::OffRangeMode::lex_min, 0, 3));
}

TEST(OffRange, SingletonRangeGivesLastBitOne) {
    const nwg::detail::RangeIndex index({BitString(5)}, 5);
    EXPECT_EQ(index.lex_min_gap()->to_string(), "00001");
}

TEST(OffRange, SeededRandomIsCertifiedByIndependentEnumeration) {
    auto inst = fixtures::inst_a();
    const auto b = nwg::find_off_range(inst, nwg::OffRangeMode::seeded_random, 3);
    EXPECT_EQ(b, nwg::find_off_range(inst, nwg::OffRangeMode::seeded_random, 3));
    for (std::uint64_t x = 0; x < 16; ++x) EXPECT_NE(oracle::g(inst, oracle::input_text(x, 4)), b.to_string());
}

TEST(OffRange, LexMinIsSmallestMissingStringByOracle) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const auto inst = fixtures::random_instance(6, 2, 1, seed);
        std::set<std::string> range;
        for (std::uint64_t x = 0; x < 64; ++x) range.insert(oracle::g(inst, oracle::input_text(x, 6)));
        std::string want;
        for (std::uint64_t r = 0;; ++r) {
            want = nwg::lex_unrank(r, 7).to_string();
            if (!range.count(want)) break;
        }
        EXPECT_EQ(inst.off_range().to_string(), want);
    }
}

TEST(OffRange, BitsetAndSortedIndexAgree) {
    // The same set of lex ranks at width 10 (bitset) and width 30 (sorted).
    std::vector<std::uint64_t> ranks;
    for (std::uint64_t r = 0; r < 100; ++r)
        if (r != 57) ranks.push_back(r);
    for (std::uint64_t r = 200; r < 1000; r += 7) ranks.push_back(r);
    for (std::size_t m : {10U, 30U}) {
        std::vector<BitString> range;
        for (auto r : ranks) range.push_back(nwg::lex_unrank(r, m));
        const nwg::detail::RangeIndex index(range, m);
        EXPECT_EQ(nwg::lex_rank(*index.lex_min_gap()), 57U) << m;
        for (std::uint64_t r = 0; r < 1024; ++r)
            EXPECT_EQ(index.contains(nwg::lex_unrank(r, m)), std::binary_search(ranks.begin(), ranks.end(), r)) << m << " " << r;
    }
}

TEST(OffRange, FullPrefixGapAtEnd) {
    std::vector<BitString> range;
    for (std::uint64_t r = 0; r < 8; ++r) range.push_back(nwg::lex_unrank(r, 3));
    EXPECT_FALSE(nwg::detail::RangeIndex(range, 3).lex_min_gap().has_value());
}

TEST(OffRange, SurjectiveGeneratorIsInfeasible) {
    nwg::Design des{2, 1, 1, {{0}, {1}}};
    const auto inst = nwg::make_instance(des, nwg::make_permutation(1, nwg::PermutationKind::identity), nwg::HardBit::last_bit, 1);
    EXPECT_THROW(nwg::find_off_range(inst, nwg::OffRangeMode::lex_min), nwg::InfeasibleError);
    EXPECT_THROW(nwg::find_off_range(inst, nwg::OffRangeMode::seeded_random, 1), nwg::InfeasibleError);
}

TEST(AssignOffRange, RejectsRangeMembers) {
    auto inst = fixtures::inst_a();
    EXPECT_THROW(nwg::assign_off_range(inst, BitString::parse("01101")), nwg::ValidationError);
    EXPECT_THROW(nwg::assign_off_range(inst, BitString::parse("0110")), nwg::ConfigError);
    nwg::assign_off_range(inst, BitString::parse("10000"));
    EXPECT_EQ(inst.certificate, nwg::Certificate::certified);
}

TEST(Instance, ValidationAndRegime) {
    const auto id2 = nwg::make_permutation(2, nwg::PermutationKind::identity);
    const nwg::Design bad{4, 2, 1, {{0, 1}, {0, 1}}};
    EXPECT_THROW(nwg::make_instance(bad, id2, nwg::HardBit::last_bit, 1), nwg::ValidationError);
    const auto q2 = nwg::build_polynomial_design(2, 1);
    EXPECT_THROW(nwg::make_instance(q2, id2, nwg::HardBit::last_bit, 0), nwg::ConfigError);
    EXPECT_THROW(nwg::make_instance(q2, nwg::make_permutation(3, nwg::PermutationKind::identity), nwg::HardBit::last_bit, 1), nwg::ValidationError);
    // m = n for the plain q=2 design: a warning normally, an error when strict.
    const auto loose = nwg::make_instance(q2, id2, nwg::HardBit::last_bit, 1);
    EXPECT_FALSE(loose.warnings.empty());
    EXPECT_THROW(nwg::make_instance(q2, id2, nwg::HardBit::last_bit, 1, true), nwg::ValidationError);
    EXPECT_NO_THROW(fixtures::inst_a());
    EXPECT_TRUE(nwg::regime_violations(fixtures::inst_a().design).empty());
}

TEST(Instance, MissingOffRangeStringThrows) {
    const auto inst = nwg::make_instance(nwg::build_polynomial_design(2, 1), nwg::make_permutation(2, nwg::PermutationKind::identity), nwg::HardBit::last_bit, 1);
    EXPECT_THROW((void)inst.off_range(), nwg::ConfigError);
}
