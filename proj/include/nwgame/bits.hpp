#ifndef NWGAME_BITS_HPP
#define NWGAME_BITS_HPP

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nwgame/errors.hpp"

namespace nwg {

/// A fixed-width string of bits indexed from position 0.
///
/// Text form lists positions in order, so "1011" has bit 0 set and bit 1
/// clear. The integer index of a string (used for enumeration) has bit t of
/// the integer equal to position t. Hex form is that integer in the usual
/// most-significant-digit-first notation, zero padded to ceil(width/4) digits.
/// Ordering is lexicographic on the text form.
class BitString {
  public:
    BitString() = default;
    explicit BitString(std::size_t width) : width_(width), words_((width + 63) / 64, 0) {}

    static BitString from_index(std::uint64_t value, std::size_t width) {
        if (width > 64) throw std::invalid_argument("BitString::from_index: width exceeds 64");
        BitString s(width);
        if (width > 0) s.words_[0] = width == 64 ? value : value & ((std::uint64_t{1} << width) - 1);
        return s;
    }

    static BitString parse(std::string_view text) {
        BitString s(text.size());
        for (std::size_t i = 0; i < text.size(); ++i) {
            if (text[i] == '1')
                s.set(i);
            else if (text[i] != '0')
                throw ConfigError("bit string may contain only '0' and '1': " + std::string(text));
        }
        return s;
    }

    static BitString from_hex(std::string_view hex, std::size_t width) {
        BitString s(width);
        std::size_t pos = 0;
        for (auto it = hex.rbegin(); it != hex.rend(); ++it, pos += 4) {
            const char ch = *it;
            unsigned nibble = 0;
            if (ch >= '0' && ch <= '9')
                nibble = static_cast<unsigned>(ch - '0');
            else if (ch >= 'a' && ch <= 'f')
                nibble = static_cast<unsigned>(ch - 'a' + 10);
            else if (ch >= 'A' && ch <= 'F')
                nibble = static_cast<unsigned>(ch - 'A' + 10);
            else
                throw ConfigError("invalid hex digit in '" + std::string(hex) + "'");
            for (unsigned b = 0; b < 4; ++b) {
                if (!((nibble >> b) & 1U)) continue;
                if (pos + b >= width) throw ConfigError("hex value '" + std::string(hex) + "' wider than " + std::to_string(width) + " bits");
                s.set(pos + b);
            }
        }
        return s;
    }

    std::size_t size() const noexcept { return width_; }
    bool empty() const noexcept { return width_ == 0; }

    bool operator[](std::size_t pos) const noexcept { return (words_[pos >> 6] >> (pos & 63)) & 1U; }

    bool test(std::size_t pos) const {
        if (pos >= width_) throw std::out_of_range("BitString: position " + std::to_string(pos) + " out of range " + std::to_string(width_));
        return (*this)[pos];
    }

    void set(std::size_t pos, bool value = true) {
        if (pos >= width_) throw std::out_of_range("BitString: position " + std::to_string(pos) + " out of range " + std::to_string(width_));
        const std::uint64_t mask = std::uint64_t{1} << (pos & 63);
        if (value)
            words_[pos >> 6] |= mask;
        else
            words_[pos >> 6] &= ~mask;
    }

    std::uint64_t to_index() const {
        if (width_ > 64) throw std::logic_error("BitString::to_index: width exceeds 64");
        return width_ == 0 ? 0 : words_[0];
    }

    std::size_t popcount() const noexcept {
        std::size_t total = 0;
        for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
        return total;
    }

    std::string to_string() const {
        std::string out(width_, '0');
        for (std::size_t i = 0; i < width_; ++i)
            if ((*this)[i]) out[i] = '1';
        return out;
    }

    std::string to_hex() const {
        static constexpr char digits[] = "0123456789abcdef";
        const std::size_t n = width_ == 0 ? 1 : (width_ + 3) / 4;
        std::string out(n, '0');
        for (std::size_t d = 0; d < n; ++d) {
            unsigned nibble = 0;
            for (unsigned b = 0; b < 4; ++b) {
                const std::size_t pos = 4 * d + b;
                if (pos < width_ && (*this)[pos]) nibble |= 1U << b;
            }
            out[n - 1 - d] = digits[nibble];
        }
        return out;
    }

    std::uint64_t hash() const noexcept {
        std::uint64_t h = width_ * 0x9e3779b97f4a7c15ULL;
        for (auto w : words_) h = (h ^ w) * 0x100000001b3ULL + (h >> 29);
        return h;
    }

    friend bool operator==(const BitString& a, const BitString& b) noexcept {
        return a.width_ == b.width_ && a.words_ == b.words_;
    }

    friend std::strong_ordering operator<=>(const BitString& a, const BitString& b) noexcept {
        const std::size_t common = std::min(a.words_.size(), b.words_.size());
        for (std::size_t w = 0; w < common; ++w) {
            std::uint64_t x = a.words_[w], y = b.words_[w];
            // Bits past the shorter width are zero in both, so a difference
            // there can only come from the longer string.
            const std::size_t valid = std::min(a.width_, b.width_);
            if (valid < 64 * (w + 1)) {
                const std::size_t keep = valid - 64 * w;
                const std::uint64_t mask = keep >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << keep) - 1;
                x &= mask;
                y &= mask;
            }
            if (const std::uint64_t diff = x ^ y; diff != 0) {
                const int first = std::countr_zero(diff);
                return ((x >> first) & 1U) ? std::strong_ordering::greater : std::strong_ordering::less;
            }
        }
        return a.width_ <=> b.width_;
    }

  private:
    std::size_t width_ = 0;
    std::vector<std::uint64_t> words_;
};

struct BitStringHash {
    std::size_t operator()(const BitString& s) const noexcept { return static_cast<std::size_t>(s.hash()); }
};

/// x(J): the bits of x at the ascending positions of J, in that order.
inline BitString restrict(const BitString& x, std::span<const std::size_t> positions) {
    BitString out(positions.size());
    for (std::size_t t = 0; t < positions.size(); ++t) {
        if (positions[t] >= x.size())
            throw std::out_of_range("restrict: index " + std::to_string(positions[t]) + " outside string of width " + std::to_string(x.size()));
        if (x[positions[t]]) out.set(t);
    }
    return out;
}

/// The string that comes at `rank` in lexicographic order of width-bit strings.
inline BitString lex_unrank(std::uint64_t rank, std::size_t width) {
    if (width > 64) throw std::invalid_argument("lex_unrank: width exceeds 64");
    BitString s(width);
    for (std::size_t t = 0; t < width; ++t)
        if ((rank >> (width - 1 - t)) & 1U) s.set(t);
    return s;
}

inline std::uint64_t lex_rank(const BitString& s) {
    if (s.size() > 64) throw std::invalid_argument("lex_rank: width exceeds 64");
    std::uint64_t rank = 0;
    for (std::size_t t = 0; t < s.size(); ++t) rank = (rank << 1) | (s[t] ? 1U : 0U);
    return rank;
}

}  // namespace nwg

#endif  // NWGAME_BITS_HPP
