#ifndef NWGAME_GENERATOR_HPP
#define NWGAME_GENERATOR_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nwgame/bits.hpp"
#include "nwgame/crypto.hpp"
#include "nwgame/design.hpp"
#include "nwgame/errors.hpp"
#include "nwgame/parallel.hpp"
#include "nwgame/random.hpp"

namespace nwg {

/// Largest n for which the range of g is enumerated.
inline constexpr std::size_t kMaxRangeWidth = 20;

enum class Certificate { absent, certified, unverified };

inline const char* to_string(Certificate c) {
    switch (c) {
        case Certificate::absent: return "absent";
        case Certificate::certified: return "certified";
        case Certificate::unverified: return "unverified";
    }
    return "unknown";
}

/// Everything a game is played over: the design, h, B, the off-range
/// string b once found, and the query limit c.
struct Instance {
    Design design;
    Permutation h;
    HardBit hard_bit = HardBit::last_bit;
    std::optional<BitString> b;
    Certificate certificate = Certificate::absent;
    std::size_t c = 1;
    bool strict = false;
    std::vector<std::string> warnings;

    std::size_t n() const noexcept { return design.n; }
    std::size_t m() const noexcept { return design.m(); }
    std::size_t ell() const noexcept { return design.ell; }

    const BitString& off_range() const {
        if (!b) throw ConfigError("instance has no off-range string b");
        return *b;
    }
};

/// Problems with the parameter regime m = n+1, ell = round(n^(1/3)),
/// pairwise intersections <= ceil(log2 m). Empty when the instance fits.
inline std::vector<std::string> regime_violations(const Design& des) {
    std::vector<std::string> out;
    if (des.m() != des.n + 1) out.push_back("m = " + std::to_string(des.m()) + " but the regime requires m = n+1 = " + std::to_string(des.n + 1));
    const auto want_ell = static_cast<std::size_t>(std::llround(std::cbrt(static_cast<double>(des.n))));
    if (des.ell != want_ell) out.push_back("ell = " + std::to_string(des.ell) + " but round(n^(1/3)) = " + std::to_string(want_ell));
    std::size_t log_m = 0;
    while ((std::size_t{1} << log_m) < des.m()) ++log_m;
    if (des.d > log_m) out.push_back("d = " + std::to_string(des.d) + " exceeds ceil(log2 m) = " + std::to_string(log_m));
    return out;
}

/// Validates and bundles an instance. b is left absent; see find_off_range
/// and assign_off_range.
inline Instance make_instance(Design design, Permutation h, HardBit hard_bit, std::size_t c, bool strict = false) {
    if (design.ell != h.ell())
        throw ValidationError("design ell " + std::to_string(design.ell) + " differs from permutation width " + std::to_string(h.ell()));
    if (c < 1) throw ConfigError("round limit c must be at least 1");
    if (const auto rep = verify_design(design); !rep.ok) throw ValidationError("design fails verification (" + std::to_string(rep.violations.size()) + " violations)");
    Instance inst;
    inst.design = std::move(design);
    inst.h = std::move(h);
    inst.hard_bit = hard_bit;
    inst.c = c;
    inst.strict = strict;
    for (auto& msg : regime_violations(inst.design)) {
        if (strict) throw ValidationError("strict mode: " + msg);
        inst.warnings.push_back(std::move(msg));
    }
    return inst;
}

/// g(x): bit i is f(x(J_i)).
inline BitString evaluate_g(const Instance& inst, const BitString& x) {
    if (x.size() != inst.n()) throw std::invalid_argument("evaluate_g: input has " + std::to_string(x.size()) + " bits, n = " + std::to_string(inst.n()));
    BitString out(inst.m());
    for (std::size_t i = 0; i < inst.m(); ++i)
        if (f_value(inst.h, inst.hard_bit, restrict(x, inst.design.row(i)))) out.set(i);
    return out;
}

/// Sorted, deduplicated Rng(g) by exhaustive enumeration of {0,1}^n.
inline std::vector<BitString> enumerate_range(const Instance& inst, unsigned jobs = 1) {
    if (inst.n() > kMaxRangeWidth) throw ConfigError("range enumeration needs n <= 20, got n = " + std::to_string(inst.n()));
    const std::uint64_t total = std::uint64_t{1} << inst.n();
    auto parts = map_shards(total, jobs, [&](std::uint64_t begin, std::uint64_t end) {
        std::vector<BitString> out;
        out.reserve(static_cast<std::size_t>(end - begin));
        for (std::uint64_t x = begin; x < end; ++x) out.push_back(evaluate_g(inst, BitString::from_index(x, inst.n())));
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    });
    std::vector<BitString> range;
    for (auto& p : parts) range.insert(range.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
    std::sort(range.begin(), range.end());
    range.erase(std::unique(range.begin(), range.end()), range.end());
    return range;
}

namespace detail {

/// Membership test over Rng(g): a 2^m bitset indexed by lex rank when
/// m <= 24, else binary search in the sorted range.
class RangeIndex {
  public:
    static constexpr std::size_t kBitsetWidth = 24;

    RangeIndex(std::vector<BitString> sorted_range, std::size_t m) : m_(m), range_(std::move(sorted_range)) {
        if (m_ <= kBitsetWidth) {
            bitset_.assign(std::size_t{1} << m_, false);
            for (const auto& y : range_) bitset_[static_cast<std::size_t>(lex_rank(y))] = true;
        }
    }

    bool contains(const BitString& y) const {
        if (m_ <= kBitsetWidth) return bitset_[static_cast<std::size_t>(lex_rank(y))];
        return std::binary_search(range_.begin(), range_.end(), y);
    }

    std::size_t size() const noexcept { return range_.size(); }

    /// Lexicographically smallest m-bit string outside the range.
    std::optional<BitString> lex_min_gap() const {
        if (m_ > 64) {
            // The all-zero string followed by its successors; the range is
            // sorted so the first gap is found by walking it.
            BitString cand(m_);
            for (const auto& y : range_) {
                if (y != cand) return cand;
                cand = successor(cand);
            }
            return cand;
        }
        if (m_ <= kBitsetWidth) {
            for (std::size_t r = 0; r < bitset_.size(); ++r)
                if (!bitset_[r]) return lex_unrank(r, m_);
            return std::nullopt;
        }
        std::uint64_t expect = 0;
        for (const auto& y : range_) {
            if (lex_rank(y) != expect) return lex_unrank(expect, m_);
            ++expect;
        }
        if (m_ < 64 && expect >= (std::uint64_t{1} << m_)) return std::nullopt;
        return lex_unrank(expect, m_);
    }

  private:
    static BitString successor(BitString s) {
        for (std::size_t t = s.size(); t-- > 0;) {
            if (!s[t]) {
                s.set(t);
                return s;
            }
            s.set(t, false);
        }
        return s;
    }

    std::size_t m_;
    std::vector<BitString> range_;
    std::vector<bool> bitset_;
};

}  // namespace detail

enum class OffRangeMode { lex_min, seeded_random };

inline OffRangeMode parse_off_range_mode(std::string_view s) {
    if (s == "lex-min") return OffRangeMode::lex_min;
    if (s == "seeded-random") return OffRangeMode::seeded_random;
    throw ConfigError("unknown off-range mode '" + std::string(s) + "'");
}

inline const char* to_string(OffRangeMode mode) { return mode == OffRangeMode::lex_min ? "lex-min" : "seeded-random"; }

/// Finds b outside Rng(g), certified by enumerating all of {0,1}^n.
/// seeded-random returns the first off-range string in a seeded sampling order.
inline BitString find_off_range(const Instance& inst, OffRangeMode mode, std::uint64_t seed = 0, unsigned jobs = 1) {
    if (inst.n() > kMaxRangeWidth)
        throw ConfigError("find_off_range needs n <= 20 for certification (n = " + std::to_string(inst.n()) + "); supply b as advice instead");
    const detail::RangeIndex index(enumerate_range(inst, jobs), inst.m());
    if (mode == OffRangeMode::lex_min) {
        auto gap = index.lex_min_gap();
        if (!gap) throw InfeasibleError("g is surjective onto {0,1}^m; no off-range string exists");
        return *gap;
    }
    if (inst.m() < 64 && index.size() >= (std::size_t{1} << inst.m())) throw InfeasibleError("g is surjective onto {0,1}^m; no off-range string exists");
    Engine rng(seed);
    constexpr std::uint64_t kBudget = 1u << 16;
    for (std::uint64_t attempt = 0; attempt < kBudget; ++attempt) {
        BitString cand(inst.m());
        for (std::size_t t = 0; t < inst.m(); t += 64) {
            const std::uint64_t word = rng();
            for (std::size_t b = 0; b < 64 && t + b < inst.m(); ++b)
                if ((word >> b) & 1U) cand.set(t + b);
        }
        if (!index.contains(cand)) return cand;
    }
    throw InfeasibleError("seeded-random search found no off-range string within budget");
}

/// Attaches b. For n <= 20 it is certified exhaustively and rejected if it
/// lies in the range; above that it is accepted only with allow_unverified.
inline void assign_off_range(Instance& inst, const BitString& b, bool allow_unverified = false, unsigned jobs = 1) {
    if (b.size() != inst.m()) throw ConfigError("b has " + std::to_string(b.size()) + " bits, m = " + std::to_string(inst.m()));
    if (inst.n() <= kMaxRangeWidth) {
        const auto range = enumerate_range(inst, jobs);
        if (std::binary_search(range.begin(), range.end(), b)) throw ValidationError("b = " + b.to_string() + " lies in the range of g");
        inst.b = b;
        inst.certificate = Certificate::certified;
        return;
    }
    if (!allow_unverified) throw ConfigError("n > 20: b cannot be certified; pass the unverified override to accept it as advice");
    inst.b = b;
    inst.certificate = Certificate::unverified;
}

}  // namespace nwg

#endif  // NWGAME_GENERATOR_HPP
