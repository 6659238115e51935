#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"

using nwg::BitString;
using nwg::PermutationKind;

namespace {

void expect_bijection(const nwg::Permutation& h) {
    const std::size_t ell = h.ell();
    std::set<std::uint64_t> image;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << ell); ++v) {
        const auto u = h.apply(v);
        ASSERT_LT(u, std::uint64_t{1} << ell);
        image.insert(u);
        EXPECT_EQ(h.invert(u), v);
    }
    EXPECT_EQ(image.size(), std::size_t{1} << ell);
}

}  // namespace

TEST(Permutation, IdentityMapsToItself) {
    const auto h = nwg::make_permutation(2, PermutationKind::identity);
    EXPECT_EQ(h.apply(BitString::parse("10")).to_string(), "10");
    EXPECT_EQ(h.invert(BitString::parse("01")).to_string(), "01");
    expect_bijection(h);
}

TEST(Permutation, TableSeedSevenIsBijection) { expect_bijection(nwg::make_permutation(2, PermutationKind::table, 7)); }

TEST(Permutation, FeistelSeedOneIsBijection) { expect_bijection(nwg::make_permutation(4, PermutationKind::feistel, 1)); }

TEST(Permutation, AllKindsBijectiveUpToTwelveBits) {
    for (std::size_t ell = 1; ell <= 12; ++ell) {
        for (std::uint64_t seed : {0ULL, 3ULL, 12345ULL}) {
            expect_bijection(nwg::make_permutation(ell, PermutationKind::table, seed));
            if (ell % 2 == 0) {
                expect_bijection(nwg::make_permutation(ell, PermutationKind::feistel, seed));
                expect_bijection(nwg::make_permutation(ell, PermutationKind::feistel, seed, 7));
            }
        }
    }
}

TEST(Permutation, WideFeistelInvertsOnSamples) {
    const auto h = nwg::make_permutation(64, PermutationKind::feistel, 9);
    nwg::Engine rng(1);
    for (int t = 0; t < 1000; ++t) {
        const auto v = rng();
        EXPECT_EQ(h.invert(h.apply(v)), v);
    }
}

TEST(Permutation, DeterministicInSeed) {
    const auto a = nwg::make_permutation(10, PermutationKind::table, 42);
    const auto b = nwg::make_permutation(10, PermutationKind::table, 42);
    const auto c = nwg::make_permutation(10, PermutationKind::table, 43);
    EXPECT_EQ(a.table_hex(), b.table_hex());
    EXPECT_NE(a.table_hex(), c.table_hex());
    const auto f1 = nwg::make_permutation(8, PermutationKind::feistel, 42);
    const auto f2 = nwg::make_permutation(8, PermutationKind::feistel, 42);
    for (std::uint64_t v = 0; v < 256; ++v) EXPECT_EQ(f1.apply(v), f2.apply(v));
}

TEST(Permutation, RejectsBadParameters) {
    EXPECT_THROW(nwg::make_permutation(0, PermutationKind::identity), nwg::ConfigError);
    EXPECT_THROW(nwg::make_permutation(65, PermutationKind::identity), nwg::ConfigError);
    EXPECT_THROW(nwg::make_permutation(21, PermutationKind::table), nwg::ConfigError);
    EXPECT_THROW(nwg::make_permutation(5, PermutationKind::feistel), nwg::ConfigError);
    const auto h = nwg::make_permutation(3, PermutationKind::identity);
    EXPECT_THROW(h.apply(BitString(4)), std::invalid_argument);
}

TEST(Permutation, InvertCallsAreCounted) {
    const auto h = nwg::make_permutation(4, PermutationKind::table, 1);
    const auto before = nwg::invert_calls_on_this_thread();
    (void)h.apply(BitString(4));
    EXPECT_EQ(nwg::invert_calls_on_this_thread(), before);
    (void)h.invert(BitString(4));
    (void)h.invert(std::uint64_t{3});
    EXPECT_EQ(nwg::invert_calls_on_this_thread(), before + 2);
}

TEST(HardBit, Examples) {
    const auto id = nwg::make_permutation(2, PermutationKind::identity);
    EXPECT_FALSE(nwg::f_value(id, nwg::HardBit::last_bit, BitString::parse("10")));
    EXPECT_TRUE(nwg::f_value(id, nwg::HardBit::last_bit, BitString::parse("01")));
    EXPECT_FALSE(nwg::f_value(id, nwg::HardBit::parity, BitString::parse("11")));
    EXPECT_TRUE(nwg::f_value(id, nwg::HardBit::parity, BitString::parse("10")));
}

TEST(HardBit, MatchesPreimageSearch) {
    for (std::size_t ell : {2U, 3U, 6U}) {
        for (auto bit : {nwg::HardBit::last_bit, nwg::HardBit::parity}) {
            const auto h = nwg::make_permutation(ell, PermutationKind::table, 7);
            for (std::uint64_t x = 0; x < (std::uint64_t{1} << ell); ++x) {
                const auto u = BitString::from_index(x, ell);
                EXPECT_EQ(nwg::f_value(h, bit, u), oracle::hard_bit(bit, oracle::preimage(h, u.to_string())));
            }
        }
    }
}

TEST(HardBit, BalancedOverPermutations) {
    for (std::size_t ell : {2U, 4U, 8U}) {
        const auto h = nwg::make_permutation(ell, PermutationKind::feistel, 11);
        for (auto bit : {nwg::HardBit::last_bit, nwg::HardBit::parity}) {
            std::uint64_t ones = 0;
            for (std::uint64_t x = 0; x < (std::uint64_t{1} << ell); ++x) ones += nwg::f_value(h, bit, BitString::from_index(x, ell));
            EXPECT_EQ(ones, std::uint64_t{1} << (ell - 1));
        }
    }
}

TEST(HardBit, ParseNames) {
    EXPECT_EQ(nwg::parse_hard_bit("last-bit"), nwg::HardBit::last_bit);
    EXPECT_EQ(nwg::parse_hard_bit("parity"), nwg::HardBit::parity);
    EXPECT_THROW(nwg::parse_hard_bit("msb"), nwg::ConfigError);
    EXPECT_EQ(nwg::parse_permutation_kind("feistel"), PermutationKind::feistel);
    EXPECT_THROW(nwg::parse_permutation_kind("aes"), nwg::ConfigError);
}
