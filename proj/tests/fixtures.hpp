#ifndef NWGAME_TESTS_FIXTURES_HPP
#define NWGAME_TESTS_FIXTURES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "nwgame/nwgame.hpp"

namespace fixtures {

/// n=4, m=5, ell=2, sets {0,2},{1,3},{0,3},{1,2},{2,3}, identity h,
/// last-bit B, b = 00001, c = 1. Here g(x) = (x2, x3, x3, x2, x3).
inline nwg::Instance inst_a(std::size_t c = 1) {
    nwg::Design des{4, 2, 1, {{0, 2}, {1, 3}, {0, 3}, {1, 2}, {2, 3}}};
    auto inst = nwg::make_instance(des, nwg::make_permutation(2, nwg::PermutationKind::identity), nwg::HardBit::last_bit, c);
    nwg::assign_off_range(inst, nwg::BitString::parse("00001"));
    return inst;
}

/// Greedy design with m = n+1; a single greedy pass can get stuck on tight
/// shapes, so a few derived seeds are tried in turn.
inline nwg::Design greedy_design(std::size_t n, std::size_t ell, std::size_t d, std::uint64_t seed) {
    const nwg::Design empty{n, ell, d, {}};
    for (int attempt = 0;; ++attempt) {
        try {
            return nwg::extend_greedy(empty, n + 1, nwg::derive_seed(seed, attempt == 0 ? "design" : "design/" + std::to_string(attempt)));
        } catch (const nwg::InfeasibleError&) {
            if (attempt == 20) throw;
        }
    }
}

/// Random instance: greedy design on n positions with m = n+1 sets of size
/// ell, a table or feistel permutation, lex-min b.
inline nwg::Instance random_instance(std::size_t n, std::size_t ell, std::size_t d, std::uint64_t seed, std::size_t c = 1,
                                     nwg::HardBit bit = nwg::HardBit::last_bit, bool feistel = false) {
    auto des = greedy_design(n, ell, d, seed);
    auto h = feistel ? nwg::make_permutation(ell, nwg::PermutationKind::feistel, seed) : nwg::make_permutation(ell, nwg::PermutationKind::table, seed);
    auto inst = nwg::make_instance(std::move(des), std::move(h), bit, c);
    inst.b = nwg::find_off_range(inst, nwg::OffRangeMode::lex_min);
    inst.certificate = nwg::Certificate::certified;
    return inst;
}

inline std::vector<nwg::BitString> all_inputs(std::size_t n) {
    std::vector<nwg::BitString> out;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) out.push_back(nwg::BitString::from_index(x, n));
    return out;
}

}  // namespace fixtures

#endif  // NWGAME_TESTS_FIXTURES_HPP
