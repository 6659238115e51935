#ifndef NWGAME_GALOIS_HPP
#define NWGAME_GALOIS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nwgame/errors.hpp"

namespace nwg {

/// Returns (p, k) with q = p^k, or (0, 0) when q is not a prime power.
inline std::pair<unsigned, unsigned> prime_power(unsigned q) {
    if (q < 2) return {0, 0};
    unsigned p = 2;
    while (q % p != 0) ++p;
    unsigned k = 0;
    unsigned rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++k;
    }
    if (rest != 1) return {0, 0};
    return {p, k};
}

/// GF(q) for prime powers q <= 16, with element e encoded as the integer whose
/// base-p digits are the coefficients of its polynomial representative
/// (digit j = coefficient of x^j). Extension fields reduce modulo a fixed
/// irreducible polynomial: x^2+x+1 (q=4), x^3+x+1 (q=8), x^2+1 (q=9),
/// x^4+x+1 (q=16).
class GaloisField {
  public:
    static constexpr unsigned kMaxOrder = 16;

    explicit GaloisField(unsigned q) : q_(q) {
        const auto [p, k] = prime_power(q);
        if (p == 0) throw ConfigError("GF(q) needs a prime power q, got " + std::to_string(q));
        if (q > kMaxOrder) throw ConfigError("GF(q) supported for q <= 16, got " + std::to_string(q));
        p_ = p;
        k_ = k;
        add_.assign(q * q, 0);
        mul_.assign(q * q, 0);
        const auto modulus = irreducible(q);
        for (unsigned a = 0; a < q; ++a) {
            for (unsigned b = 0; b < q; ++b) {
                add_[a * q + b] = add_digits(a, b);
                mul_[a * q + b] = mul_poly(a, b, modulus);
            }
        }
    }

    unsigned order() const noexcept { return q_; }
    unsigned characteristic() const noexcept { return p_; }

    unsigned add(unsigned a, unsigned b) const { return add_[a * q_ + b]; }
    unsigned mul(unsigned a, unsigned b) const { return mul_[a * q_ + b]; }

    /// Horner evaluation; coeffs[j] is the coefficient of x^j.
    unsigned evaluate(const std::vector<unsigned>& coeffs, unsigned x) const {
        unsigned acc = 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = add(mul(acc, x), *it);
        return acc;
    }

  private:
    // Coefficients low degree first, including the leading 1.
    static std::vector<unsigned> irreducible(unsigned q) {
        switch (q) {
            case 4: return {1, 1, 1};
            case 8: return {1, 1, 0, 1};
            case 9: return {1, 0, 1};
            case 16: return {1, 1, 0, 0, 1};
            default: return {};
        }
    }

    std::vector<unsigned> digits(unsigned v) const {
        std::vector<unsigned> out(k_, 0);
        for (unsigned j = 0; j < k_; ++j, v /= p_) out[j] = v % p_;
        return out;
    }

    unsigned from_digits(const std::vector<unsigned>& d) const {
        unsigned v = 0;
        for (unsigned j = k_; j-- > 0;) v = v * p_ + d[j];
        return v;
    }

    unsigned add_digits(unsigned a, unsigned b) const {
        auto da = digits(a), db = digits(b);
        for (unsigned j = 0; j < k_; ++j) da[j] = (da[j] + db[j]) % p_;
        return from_digits(da);
    }

    unsigned mul_poly(unsigned a, unsigned b, const std::vector<unsigned>& modulus) const {
        if (k_ == 1) return (a * b) % p_;
        const auto da = digits(a), db = digits(b);
        std::vector<unsigned> prod(2 * k_ - 1, 0);
        for (unsigned i = 0; i < k_; ++i)
            for (unsigned j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
        // Reduce: the modulus is monic of degree k.
        for (unsigned deg = 2 * k_ - 1; deg-- > k_;) {
            const unsigned lead = prod[deg];
            if (lead == 0) continue;
            for (unsigned j = 0; j <= k_; ++j) {
                const unsigned idx = deg - k_ + j;
                prod[idx] = (prod[idx] + p_ * p_ - lead * modulus[j] % p_) % p_;
            }
        }
        prod.resize(k_);
        return from_digits(prod);
    }

    unsigned q_;
    unsigned p_ = 0;
    unsigned k_ = 0;
    std::vector<unsigned> add_;
    std::vector<unsigned> mul_;
};

}  // namespace nwg

#endif  // NWGAME_GALOIS_HPP
