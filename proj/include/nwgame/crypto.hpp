#ifndef NWGAME_CRYPTO_HPP
#define NWGAME_CRYPTO_HPP

// Toy permutations h on ell-bit strings, the hard bit B, and f = B o h^-1.
// None of these are one-way; the invert capability is tracked instead.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nwgame/bits.hpp"
#include "nwgame/errors.hpp"
#include "nwgame/random.hpp"

namespace nwg {

enum class PermutationKind { identity, table, feistel };

inline const char* to_string(PermutationKind k) {
    switch (k) {
        case PermutationKind::identity: return "identity";
        case PermutationKind::table: return "table";
        case PermutationKind::feistel: return "feistel";
    }
    return "unknown";
}

inline PermutationKind parse_permutation_kind(std::string_view s) {
    if (s == "identity") return PermutationKind::identity;
    if (s == "table") return PermutationKind::table;
    if (s == "feistel") return PermutationKind::feistel;
    throw ConfigError("unknown permutation kind '" + std::string(s) + "'");
}

namespace detail {
inline std::uint64_t& invert_counter() noexcept {
    thread_local std::uint64_t count = 0;
    return count;
}
}  // namespace detail

/// Number of Permutation::invert calls made so far on the calling thread.
/// Callers audit a code region by differencing two readings.
inline std::uint64_t invert_calls_on_this_thread() noexcept { return detail::invert_counter(); }

class Permutation {
  public:
    static constexpr std::size_t kMaxTableWidth = 20;
    static constexpr unsigned kDefaultRounds = 4;

    Permutation() = default;

    std::size_t ell() const noexcept { return ell_; }
    PermutationKind kind() const noexcept { return kind_; }
    std::uint64_t seed() const noexcept { return seed_; }
    unsigned rounds() const noexcept { return rounds_; }

    std::uint64_t apply(std::uint64_t v) const {
        switch (kind_) {
            case PermutationKind::identity: return v;
            case PermutationKind::table: return forward_[static_cast<std::size_t>(v)];
            case PermutationKind::feistel: return feistel(v, false);
        }
        return v;
    }

    std::uint64_t invert(std::uint64_t u) const {
        ++detail::invert_counter();
        switch (kind_) {
            case PermutationKind::identity: return u;
            case PermutationKind::table: return inverse_[static_cast<std::size_t>(u)];
            case PermutationKind::feistel: return feistel(u, true);
        }
        return u;
    }

    BitString apply(const BitString& v) const {
        check_width(v);
        return BitString::from_index(apply(v.to_index()), ell_);
    }

    BitString invert(const BitString& u) const {
        check_width(u);
        return BitString::from_index(invert(u.to_index()), ell_);
    }

    /// Forward table entries as fixed-width hex, entry v first (table kind only).
    std::string table_hex() const {
        std::string out;
        for (auto y : forward_) out += BitString::from_index(y, ell_).to_hex();
        return out;
    }

    friend Permutation make_permutation(std::size_t ell, PermutationKind kind, std::uint64_t seed, unsigned rounds);

  private:
    void check_width(const BitString& s) const {
        if (s.size() != ell_)
            throw std::invalid_argument("permutation width " + std::to_string(ell_) + " applied to " + std::to_string(s.size()) + "-bit string");
    }

    // Balanced Feistel: low half L (positions 0..h-1), high half R.
    // Round r maps (L, R) to (R, L ^ F_r(R)).
    std::uint64_t feistel(std::uint64_t v, bool backwards) const {
        const std::size_t h = ell_ / 2;
        const std::uint64_t mask = h == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << h) - 1;
        std::uint64_t left = v & mask;
        std::uint64_t right = (v >> h) & mask;
        if (!backwards) {
            for (unsigned r = 0; r < rounds_; ++r) {
                const std::uint64_t next = left ^ (mix64(keys_[r] ^ right) & mask);
                left = right;
                right = next;
            }
        } else {
            for (unsigned r = rounds_; r-- > 0;) {
                const std::uint64_t prev = right ^ (mix64(keys_[r] ^ left) & mask);
                right = left;
                left = prev;
            }
        }
        return left | (right << h);
    }

    std::size_t ell_ = 0;
    PermutationKind kind_ = PermutationKind::identity;
    std::uint64_t seed_ = 0;
    unsigned rounds_ = 0;
    std::vector<std::uint32_t> forward_;
    std::vector<std::uint32_t> inverse_;
    std::vector<std::uint64_t> keys_;
};

/// Deterministic in its arguments. table: seeded uniform shuffle of all
/// 2^ell strings (ell <= 20). feistel: balanced network with seeded round
/// keys (ell even). identity: any ell <= 64.
inline Permutation make_permutation(std::size_t ell, PermutationKind kind, std::uint64_t seed = 0, unsigned rounds = Permutation::kDefaultRounds) {
    if (ell < 1 || ell > 64) throw ConfigError("permutation width must be in [1, 64], got " + std::to_string(ell));
    Permutation h;
    h.ell_ = ell;
    h.kind_ = kind;
    switch (kind) {
        case PermutationKind::identity: break;
        case PermutationKind::table: {
            if (ell > Permutation::kMaxTableWidth) throw ConfigError("table permutation supports ell <= 20, got " + std::to_string(ell));
            h.seed_ = seed;
            const std::size_t size = std::size_t{1} << ell;
            h.forward_.resize(size);
            for (std::size_t v = 0; v < size; ++v) h.forward_[v] = static_cast<std::uint32_t>(v);
            Engine rng(seed);
            shuffle(h.forward_, rng);
            h.inverse_.resize(size);
            for (std::size_t v = 0; v < size; ++v) h.inverse_[h.forward_[v]] = static_cast<std::uint32_t>(v);
            break;
        }
        case PermutationKind::feistel: {
            if (ell % 2 != 0) throw ConfigError("feistel permutation needs even ell, got " + std::to_string(ell));
            if (rounds < 1) throw ConfigError("feistel permutation needs at least one round");
            h.seed_ = seed;
            h.rounds_ = rounds;
            Engine rng(seed);
            h.keys_.resize(rounds);
            for (auto& k : h.keys_) k = rng();
            break;
        }
    }
    return h;
}

enum class HardBit { last_bit, parity };

inline const char* to_string(HardBit b) { return b == HardBit::last_bit ? "last-bit" : "parity"; }

inline HardBit parse_hard_bit(std::string_view s) {
    if (s == "last-bit") return HardBit::last_bit;
    if (s == "parity") return HardBit::parity;
    throw ConfigError("unknown hard bit '" + std::string(s) + "'");
}

/// B(v). last-bit reads position ell-1; parity is the XOR of all bits.
inline bool hard_bit(HardBit kind, const BitString& v) {
    if (v.empty()) throw std::invalid_argument("hard bit of an empty string");
    return kind == HardBit::last_bit ? v[v.size() - 1] : (v.popcount() & 1U) != 0;
}

/// f(u) = B(h^-1(u)).
inline bool f_value(const Permutation& h, HardBit kind, const BitString& u) { return hard_bit(kind, h.invert(u)); }

}  // namespace nwg

#endif  // NWGAME_CRYPTO_HPP
