#ifndef NWGAME_STRATEGIES_HPP
#define NWGAME_STRATEGIES_HPP

// Built-in students. All are immutable after construction.

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nwgame/game.hpp"
#include "nwgame/random.hpp"

namespace nwg {

/// Queries the same row `queries` times, then finishes with `output`.
class ConstantStrategy final : public Strategy {
  public:
    ConstantStrategy(std::size_t row, std::size_t queries = 1, std::int64_t output = 0) : row_(row), queries_(queries), output_(output) {}
    std::string name() const override { return "constant"; }
    std::size_t max_queries() const override { return queries_; }
    Move next(const StudentContext&, const BitString&, std::span<const BitString> replies) const override {
        return replies.size() < queries_ ? Move::query(row_) : Move::finish(output_);
    }
    nlohmann::json describe() const override { return {{"kind", "constant"}, {"row", row_}, {"queries", queries_}, {"output", output_}}; }

  private:
    std::size_t row_;
    std::size_t queries_;
    std::int64_t output_;
};

/// Never queries; defined everywhere in witness mode, fails everywhere in solve mode.
class ZeroQueryStrategy final : public Strategy {
  public:
    explicit ZeroQueryStrategy(std::int64_t output = 0) : output_(output) {}
    std::string name() const override { return "zero-query"; }
    std::size_t max_queries() const override { return 0; }
    Move next(const StudentContext&, const BitString&, std::span<const BitString>) const override { return Move::finish(output_); }
    nlohmann::json describe() const override { return {{"kind", "zero-query"}, {"output", output_}}; }

  private:
    std::int64_t output_;
};

/// Query t is row (start + t) mod m.
class RoundRobinStrategy final : public Strategy {
  public:
    RoundRobinStrategy(std::size_t start, std::size_t queries, std::int64_t output = 0) : start_(start), queries_(queries), output_(output) {}
    std::string name() const override { return "round-robin"; }
    std::size_t max_queries() const override { return queries_; }
    Move next(const StudentContext& ctx, const BitString&, std::span<const BitString> replies) const override {
        if (replies.size() >= queries_) return Move::finish(output_);
        return Move::query((start_ + replies.size()) % ctx.m());
    }
    nlohmann::json describe() const override { return {{"kind", "round-robin"}, {"start", start_}, {"queries", queries_}, {"output", output_}}; }

  private:
    std::size_t start_;
    std::size_t queries_;
    std::int64_t output_;
};

/// Rows drawn from a hash of (seed, a, replies so far). The output is a
/// hash of the full history, so different inputs give different values.
class SeededRandomStrategy final : public Strategy {
  public:
    SeededRandomStrategy(std::uint64_t seed, std::size_t queries) : seed_(seed), queries_(queries) {}
    std::string name() const override { return "seeded-random"; }
    std::size_t max_queries() const override { return queries_; }
    Move next(const StudentContext& ctx, const BitString& a, std::span<const BitString> replies) const override {
        std::uint64_t h = mix64(seed_ ^ a.hash());
        for (const auto& v : replies) h = mix64(h ^ v.hash());
        if (replies.size() >= queries_) return Move::finish(static_cast<std::int64_t>(h & 0xffff));
        return Move::query(static_cast<std::size_t>(mix64(h + replies.size()) % ctx.m()));
    }
    nlohmann::json describe() const override { return {{"kind", "seeded-random"}, {"seed", seed_}, {"queries", queries_}}; }

  private:
    std::uint64_t seed_;
    std::size_t queries_;
};

/// Least row i with g(a)_i != b_i, i.e. a student that can invert h.
/// One query; it always succeeds when b is off-range.
class OmniscientStrategy final : public Strategy {
  public:
    explicit OmniscientStrategy(std::int64_t output = 0) : output_(output) {}
    std::string name() const override { return "omniscient"; }
    std::size_t max_queries() const override { return 1; }
    bool may_invert() const override { return true; }
    Move next(const StudentContext& ctx, const BitString& a, std::span<const BitString> replies) const override {
        if (!replies.empty()) return Move::finish(output_);
        if (auto row = first_disagreement(ctx, a)) return Move::query(*row);
        return Move::finish(output_);
    }
    nlohmann::json describe() const override { return {{"kind", "omniscient"}, {"output", output_}}; }

    static std::optional<std::size_t> first_disagreement(const StudentContext& ctx, const BitString& a) {
        const auto& b = ctx.b();
        for (std::size_t i = 0; i < ctx.m(); ++i)
            if (ctx.hard_bit(ctx.invert(restrict(a, ctx.design().row(i)))) != b[i]) return i;
        return std::nullopt;
    }

  private:
    std::int64_t output_;
};

/// An input together with the replies received so far.
struct History {
    BitString a;
    std::vector<BitString> replies;
    auto operator<=>(const History&) const = default;
    bool operator==(const History&) const = default;
};

/// Explicit move table keyed by history. Missing entries finish with the
/// default output.
class TableStrategy final : public Strategy {
  public:
    using Table = std::map<History, std::size_t>;

    TableStrategy(std::size_t max_queries, Table table, std::int64_t default_output = 0, nlohmann::json provenance = nullptr)
        : max_queries_(max_queries), table_(std::move(table)), default_output_(default_output), provenance_(std::move(provenance)) {}

    std::string name() const override { return "table"; }
    std::size_t max_queries() const override { return max_queries_; }
    Move next(const StudentContext&, const BitString& a, std::span<const BitString> replies) const override {
        const History key{a, std::vector<BitString>(replies.begin(), replies.end())};
        if (auto it = table_.find(key); it != table_.end()) return Move::query(it->second);
        return Move::finish(default_output_);
    }
    nlohmann::json describe() const override {
        if (!provenance_.is_null()) return provenance_;
        return {{"kind", "table"}, {"max_queries", max_queries_}, {"entries", table_.size()}};
    }

    const Table& table() const noexcept { return table_; }
    std::int64_t default_output() const noexcept { return default_output_; }

  private:
    std::size_t max_queries_;
    Table table_;
    std::int64_t default_output_;
    nlohmann::json provenance_;
};

namespace detail {

/// Walks each input's (unique) reachable history, asking `choose` for the
/// row at step t, and records the choices. Stops a path at the first
/// disagreeing reply since nothing after it is reachable.
template <typename Choose>
TableStrategy::Table build_table(const Instance& inst, std::size_t queries, Choose&& choose) {
    require_exhaustive(inst, "table construction");
    const auto& b = inst.off_range();
    TableStrategy::Table table;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << inst.n()); ++x) {
        const auto a = BitString::from_index(x, inst.n());
        std::vector<BitString> replies;
        for (std::size_t t = 0; t < queries; ++t) {
            const std::size_t row = choose(a, t);
            table.emplace(History{a, replies}, row);
            BitString v = inst.h.invert(restrict(a, inst.design.row(row)));
            const bool hit = hard_bit(inst.hard_bit, v) != b[row];
            replies.push_back(std::move(v));
            if (hit) break;
        }
    }
    return table;
}

inline std::size_t least_disagreement(const Instance& inst, const BitString& a) {
    const auto& b = inst.off_range();
    for (std::size_t i = 0; i < inst.m(); ++i)
        if (f_value(inst.h, inst.hard_bit, restrict(a, inst.design.row(i))) != b[i]) return i;
    return 0;
}

}  // namespace detail

/// Adversarial table: uniformly random rows along every reachable history.
inline std::shared_ptr<TableStrategy> make_random_table(const Instance& inst, std::size_t queries, std::uint64_t seed) {
    auto table = detail::build_table(inst, queries, [&](const BitString& a, std::size_t t) {
        Engine rng(mix64(seed ^ mix64(a.hash() + t)));
        return static_cast<std::size_t>(uniform_below(rng, inst.m()));
    });
    return std::make_shared<TableStrategy>(queries, std::move(table), 0,
                                           nlohmann::json{{"kind", "random-table"}, {"queries", queries}, {"seed", seed}});
}

/// Table that mixes random rows with the correct one and always asks the
/// correct row at its last step, so it succeeds on every input. The
/// correct rows are baked in at construction; the table itself never inverts.
inline std::shared_ptr<TableStrategy> make_near_omniscient_table(const Instance& inst, std::size_t queries, std::uint64_t seed) {
    if (queries < 1) throw ConfigError("near-omniscient table needs at least one query");
    auto table = detail::build_table(inst, queries, [&](const BitString& a, std::size_t t) {
        if (t + 1 == queries) return detail::least_disagreement(inst, a);
        Engine rng(mix64(seed ^ mix64(a.hash() + t)));
        if (uniform_below(rng, 2) == 0) return detail::least_disagreement(inst, a);
        return static_cast<std::size_t>(uniform_below(rng, inst.m()));
    });
    return std::make_shared<TableStrategy>(queries, std::move(table), 0,
                                           nlohmann::json{{"kind", "near-omniscient"}, {"queries", queries}, {"seed", seed}});
}

}  // namespace nwg

#endif  // NWGAME_STRATEGIES_HPP
