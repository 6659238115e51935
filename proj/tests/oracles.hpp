#ifndef NWGAME_TESTS_ORACLES_HPP
#define NWGAME_TESTS_ORACLES_HPP

// Test-only reference implementations. They avoid the library's code paths:
// preimages by scanning all of {0,1}^ell with the forward map, restriction
// by direct indexing on text strings, counting by plain loops.

#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "nwgame/nwgame.hpp"

namespace oracle {

/// Preimage of u under h by scanning every v with the forward map.
inline std::string preimage(const nwg::Permutation& h, const std::string& u) {
    const std::size_t ell = u.size();
    std::string found;
    int hits = 0;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << ell); ++v) {
        const auto img = h.apply(nwg::BitString::from_index(v, ell)).to_string();
        if (img == u) {
            found = nwg::BitString::from_index(v, ell).to_string();
            ++hits;
        }
    }
    if (hits != 1) throw std::logic_error("oracle: not a bijection");
    return found;
}

inline bool hard_bit(nwg::HardBit kind, const std::string& v) {
    if (kind == nwg::HardBit::last_bit) return v.back() == '1';
    int ones = 0;
    for (char ch : v) ones += ch == '1';
    return ones % 2 == 1;
}

inline std::string restrict_text(const std::string& x, const std::vector<std::size_t>& set) {
    std::string out;
    for (auto j : set) out.push_back(x.at(j));
    return out;
}

inline bool f(const nwg::Instance& inst, const std::string& u) { return hard_bit(inst.hard_bit, preimage(inst.h, u)); }

/// g(x) by text-level restriction and preimage search.
inline std::string g(const nwg::Instance& inst, const std::string& x) {
    std::string out;
    for (const auto& set : inst.design.sets) out.push_back(f(inst, restrict_text(x, set)) ? '1' : '0');
    return out;
}

/// Polynomial design for prime q with integer arithmetic mod q.
inline std::vector<std::vector<std::size_t>> prime_design(unsigned q, unsigned degree) {
    std::vector<std::vector<std::size_t>> sets;
    std::size_t m = 1;
    for (unsigned i = 0; i <= degree; ++i) m *= q;
    for (std::size_t r = 0; r < m; ++r) {
        std::vector<unsigned> coeff;
        for (std::size_t rest = r, i = 0; i <= degree; ++i, rest /= q) coeff.push_back(static_cast<unsigned>(rest % q));
        std::vector<std::size_t> set;
        for (unsigned x = 0; x < q; ++x) {
            unsigned val = 0, pw = 1;
            for (unsigned c : coeff) {
                val = (val + c * pw) % q;
                pw = pw * x % q;
            }
            set.push_back(static_cast<std::size_t>(q) * x + val);
        }
        sets.push_back(set);
    }
    return sets;
}

/// Solve-mode run written directly from the game rules.
struct Run {
    std::vector<std::size_t> queries;
    bool success = false;
};

inline Run play(const nwg::Instance& inst, const nwg::Strategy& s, const std::string& a) {
    Run run;
    const auto b = inst.off_range().to_string();
    const nwg::StudentContext ctx(inst, s.may_invert());
    const auto abits = nwg::BitString::parse(a);
    std::vector<nwg::BitString> replies;
    for (std::size_t t = 0; t < std::min(s.max_queries(), inst.c); ++t) {
        const auto mv = s.next(ctx, abits, replies);
        if (!mv.is_query() || mv.row >= inst.m()) break;
        const auto v = preimage(inst.h, restrict_text(a, inst.design.sets[mv.row]));
        run.queries.push_back(mv.row);
        replies.push_back(nwg::BitString::parse(v));
        if (hard_bit(inst.hard_bit, v) != (b[mv.row] == '1')) {
            run.success = true;
            break;
        }
    }
    return run;
}

inline std::string input_text(std::uint64_t x, std::size_t n) { return nwg::BitString::from_index(x, n).to_string(); }

inline std::map<std::vector<std::size_t>, std::uint64_t> census(const nwg::Instance& inst, const nwg::Strategy& s) {
    std::map<std::vector<std::size_t>, std::uint64_t> out;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << inst.n()); ++x) {
        const auto run = play(inst, s, input_text(x, inst.n()));
        if (run.success) ++out[run.queries];
    }
    return out;
}

/// D(e) for every e, indexed by the string e, from one pass over all a:
/// each a splits into u (positions of the target row) and e (the rest).
inline std::map<std::string, std::int64_t> scores_by_e(const nwg::Instance& inst, const nwg::Strategy& s, const std::vector<std::size_t>& trace) {
    const auto& target = inst.design.sets[trace.back()];
    std::map<std::string, std::int64_t> out;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << inst.n()); ++x) {
        const auto a = input_text(x, inst.n());
        std::string e;
        for (std::size_t p = 0; p < inst.n(); ++p)
            if (std::find(target.begin(), target.end(), p) == target.end()) e.push_back(a[p]);
        auto& slot = out[e];
        const auto run = play(inst, s, a);
        if (!run.success) continue;
        if (run.queries == trace)
            ++slot;
        else if (run.queries.size() > trace.size() && std::equal(trace.begin(), trace.end(), run.queries.begin()))
            --slot;
    }
    return out;
}

/// 2^ell / (2 (3m)^c) as a reduced pair of machine integers.
inline std::pair<std::uint64_t, std::uint64_t> s_bound(std::size_t ell, std::size_t m, std::size_t c) {
    std::uint64_t num = std::uint64_t{1} << ell;
    std::uint64_t den = 2;
    for (std::size_t i = 0; i < c; ++i) den *= 3 * m;
    const auto gcd = std::gcd(num, den);
    return {num / gcd, den / gcd};
}

}  // namespace oracle

#endif  // NWGAME_TESTS_ORACLES_HPP
