#ifndef NWGAME_DESIGN_HPP
#define NWGAME_DESIGN_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nwgame/bits.hpp"
#include "nwgame/errors.hpp"
#include "nwgame/galois.hpp"
#include "nwgame/random.hpp"

namespace nwg {

/// A set system {J_i} over positions [0, n): every set has `ell` elements
/// and distinct sets share at most `d` positions. Sets are stored ascending.
struct Design {
    std::size_t n = 0;
    std::size_t ell = 0;
    std::size_t d = 0;
    std::vector<std::vector<std::size_t>> sets;

    std::size_t m() const noexcept { return sets.size(); }
    std::span<const std::size_t> row(std::size_t i) const { return sets.at(i); }

    friend bool operator==(const Design&, const Design&) = default;
};

inline std::size_t intersection_size(std::span<const std::size_t> a, std::span<const std::size_t> b) {
    std::size_t count = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib)
            ++ia;
        else if (*ib < *ia)
            ++ib;
        else {
            ++count;
            ++ia;
            ++ib;
        }
    }
    return count;
}

struct DesignViolation {
    enum class Kind { size, range, order, intersection };
    Kind kind;
    std::size_t i;
    std::size_t j;       // second row for intersection violations, else == i
    std::size_t value;   // offending size / index / intersection size

    friend bool operator==(const DesignViolation&, const DesignViolation&) = default;
};

inline const char* to_string(DesignViolation::Kind kind) {
    switch (kind) {
        case DesignViolation::Kind::size: return "size";
        case DesignViolation::Kind::range: return "range";
        case DesignViolation::Kind::order: return "order";
        case DesignViolation::Kind::intersection: return "intersection";
    }
    return "unknown";
}

struct DesignReport {
    bool ok = true;
    std::vector<DesignViolation> violations;
};

/// Checks set sizes, index range, ascending order and pairwise intersections.
inline DesignReport verify_design(const Design& des) {
    DesignReport report;
    auto flag = [&](DesignViolation::Kind k, std::size_t i, std::size_t j, std::size_t v) {
        report.ok = false;
        report.violations.push_back({k, i, j, v});
    };
    for (std::size_t i = 0; i < des.m(); ++i) {
        const auto& s = des.sets[i];
        if (s.size() != des.ell) flag(DesignViolation::Kind::size, i, i, s.size());
        for (std::size_t t = 0; t < s.size(); ++t) {
            if (s[t] >= des.n) flag(DesignViolation::Kind::range, i, i, s[t]);
            if (t > 0 && s[t] <= s[t - 1]) flag(DesignViolation::Kind::order, i, i, s[t]);
        }
    }
    for (std::size_t i = 0; i < des.m(); ++i) {
        for (std::size_t j = i + 1; j < des.m(); ++j) {
            const auto common = intersection_size(des.sets[i], des.sets[j]);
            if (common > des.d) flag(DesignViolation::Kind::intersection, i, j, common);
        }
    }
    return report;
}

/// Polynomial-graph design over GF(q): one set per polynomial p of degree
/// at most `degree`, namely { q*x + p(x) : x in GF(q) }. Polynomial number r
/// has coefficient j (of x^j) equal to base-q digit j of r.
/// Gives n = q^2, ell = q, m = q^(degree+1), d = degree.
inline Design build_polynomial_design(unsigned q, unsigned degree) {
    const GaloisField field(q);
    if (degree < 1 || degree >= q)
        throw ConfigError("polynomial design needs 1 <= degree < q, got degree " + std::to_string(degree) + " for q " + std::to_string(q));
    Design des;
    des.n = static_cast<std::size_t>(q) * q;
    des.ell = q;
    des.d = degree;
    std::size_t m = 1;
    for (unsigned i = 0; i <= degree; ++i) m *= q;
    des.sets.reserve(m);
    std::vector<unsigned> coeffs(degree + 1, 0);
    for (std::size_t r = 0; r < m; ++r) {
        std::size_t rest = r;
        for (auto& c : coeffs) {
            c = static_cast<unsigned>(rest % q);
            rest /= q;
        }
        std::vector<std::size_t> set;
        set.reserve(q);
        for (unsigned x = 0; x < q; ++x) set.push_back(static_cast<std::size_t>(q) * x + field.evaluate(coeffs, x));
        des.sets.push_back(std::move(set));
    }
    return des;
}

namespace detail {

inline bool admissible(const Design& des, std::span<const std::size_t> candidate) {
    return std::all_of(des.sets.begin(), des.sets.end(),
                       [&](const auto& s) { return intersection_size(s, candidate) <= des.d; });
}

inline std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > cap) return cap + 1;
    }
    return r;
}

}  // namespace detail

struct GreedyOptions {
    /// Up to this many candidate sets, all ell-subsets are enumerated and
    /// scanned in seeded random order, so infeasibility is exact.
    std::uint64_t exhaustive_limit = std::uint64_t{1} << 20;
    /// Random draws per appended set when the candidate space is larger.
    std::uint64_t attempt_budget = 100000;
};

/// Appends sets to `base` until it has target_m rows, keeping both design
/// invariants. Deterministic in (base, target_m, seed).
inline Design extend_greedy(const Design& base, std::size_t target_m, std::uint64_t seed, const GreedyOptions& opts = {}) {
    if (target_m < base.m())
        throw ConfigError("extend_greedy: target_m " + std::to_string(target_m) + " below base size " + std::to_string(base.m()));
    if (const auto rep = verify_design(base); !rep.ok) throw ValidationError("extend_greedy: base design is invalid");
    Design des = base;
    if (target_m == base.m()) return des;
    if (des.ell > des.n) throw InfeasibleError("extend_greedy: ell exceeds n");

    Engine rng(seed);
    const auto space = detail::binomial_capped(des.n, des.ell, opts.exhaustive_limit);
    if (space <= opts.exhaustive_limit) {
        std::vector<std::vector<std::size_t>> candidates;
        candidates.reserve(static_cast<std::size_t>(space));
        std::vector<std::size_t> comb(des.ell);
        for (std::size_t t = 0; t < des.ell; ++t) comb[t] = t;
        while (true) {
            candidates.push_back(comb);
            std::size_t t = des.ell;
            while (t > 0 && comb[t - 1] == des.n - des.ell + t - 1) --t;
            if (t == 0) break;
            ++comb[t - 1];
            for (std::size_t u = t; u < des.ell; ++u) comb[u] = comb[u - 1] + 1;
        }
        shuffle(candidates, rng);
        // A candidate rejected once stays rejected, so one pass suffices.
        for (const auto& cand : candidates) {
            if (des.m() == target_m) break;
            if (detail::admissible(des, cand)) des.sets.push_back(cand);
        }
        if (des.m() < target_m)
            throw InfeasibleError("extend_greedy: exhausted all " + std::to_string(space) + " candidate sets at m = " + std::to_string(des.m()) +
                                  ", target " + std::to_string(target_m));
        return des;
    }

    std::vector<std::size_t> pool(des.n);
    while (des.m() < target_m) {
        bool placed = false;
        for (std::uint64_t attempt = 0; attempt < opts.attempt_budget && !placed; ++attempt) {
            for (std::size_t t = 0; t < des.n; ++t) pool[t] = t;
            for (std::size_t t = 0; t < des.ell; ++t) {
                const auto j = t + static_cast<std::size_t>(uniform_below(rng, des.n - t));
                std::swap(pool[t], pool[j]);
            }
            std::vector<std::size_t> cand(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(des.ell));
            std::sort(cand.begin(), cand.end());
            if (detail::admissible(des, cand)) {
                des.sets.push_back(std::move(cand));
                placed = true;
            }
        }
        if (!placed)
            throw InfeasibleError("extend_greedy: no admissible set within " + std::to_string(opts.attempt_budget) + " attempts at m = " +
                                  std::to_string(des.m()));
    }
    return des;
}

}  // namespace nwg

#endif  // NWGAME_DESIGN_HPP
