#ifndef NWGAME_GAME_HPP
#define NWGAME_GAME_HPP

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "nwgame/bits.hpp"
#include "nwgame/errors.hpp"
#include "nwgame/generator.hpp"
#include "nwgame/parallel.hpp"
#include "nwgame/random.hpp"
#include "nwgame/rational.hpp"

namespace nwg {

/// A student's final output in witness mode: an integer or a tuple of values.
struct Value {
    std::variant<std::int64_t, std::vector<Value>> data{std::int64_t{0}};

    Value() = default;
    Value(std::int64_t v) : data(v) {}  // NOLINT(google-explicit-constructor)
    explicit Value(std::vector<Value> items) : data(std::move(items)) {}

    bool is_tuple() const noexcept { return std::holds_alternative<std::vector<Value>>(data); }
    std::int64_t scalar() const { return std::get<std::int64_t>(data); }
    const std::vector<Value>& items() const { return std::get<std::vector<Value>>(data); }

    nlohmann::json to_json() const {
        if (!is_tuple()) return scalar();
        auto arr = nlohmann::json::array();
        for (const auto& v : items()) arr.push_back(v.to_json());
        return arr;
    }
};

inline bool operator==(const Value& a, const Value& b) {
    if (a.is_tuple() != b.is_tuple()) return false;
    if (!a.is_tuple()) return a.scalar() == b.scalar();
    return a.items() == b.items();
}

/// One student move: ask the Teacher about row `row`, or stop.
/// In solve mode stopping means giving up; in witness mode it ends the
/// computation with `output`.
struct Move {
    enum class Kind { query, finish };
    Kind kind = Kind::finish;
    std::size_t row = 0;
    Value output;

    static Move query(std::size_t row) { return {Kind::query, row, {}}; }
    static Move finish(Value out = {}) { return {Kind::finish, 0, std::move(out)}; }
    bool is_query() const noexcept { return kind == Kind::query; }
};

/// What a student is allowed to see: the public instance data, the
/// forward direction of h, B, and the common advice string. Preimages are
/// available only to students holding the invert capability.
class StudentContext {
  public:
    StudentContext(const Instance& inst, bool may_invert, std::string_view advice = {})
        : inst_(&inst), may_invert_(may_invert), advice_(advice), counter_(&own_count_) {}

    /// A context for a sub-student: same view, its own capability, and a
    /// shared invert counter.
    StudentContext(const StudentContext& parent, bool may_invert)
        : inst_(parent.inst_), may_invert_(may_invert), advice_(parent.advice_), counter_(parent.counter_) {}

    StudentContext(const StudentContext&) = delete;
    StudentContext& operator=(const StudentContext&) = delete;

    const Design& design() const noexcept { return inst_->design; }
    const BitString& b() const { return inst_->off_range(); }
    std::size_t c() const noexcept { return inst_->c; }
    std::size_t n() const noexcept { return inst_->n(); }
    std::size_t m() const noexcept { return inst_->m(); }
    std::string_view advice() const noexcept { return advice_; }

    BitString forward(const BitString& v) const { return inst_->h.apply(v); }
    bool hard_bit(const BitString& v) const { return nwg::hard_bit(inst_->hard_bit, v); }

    BitString invert(const BitString& u) const {
        if (!may_invert_) throw CapabilityError("student without the invert capability asked for a preimage");
        ++*counter_;
        return inst_->h.invert(u);
    }

    std::uint64_t invert_calls() const noexcept { return *counter_; }

  private:
    const Instance* inst_;
    bool may_invert_;
    std::string_view advice_;
    mutable std::uint64_t own_count_ = 0;
    std::uint64_t* counter_;
};

/// A student S_1, S_2(x, y^1), ...: the move after seeing input `a` and
/// the Teacher's replies so far. Must be a deterministic function of
/// (a, replies) and must be safe to call concurrently.
class Strategy {
  public:
    virtual ~Strategy() = default;
    virtual std::string name() const = 0;
    virtual std::size_t max_queries() const = 0;
    virtual bool may_invert() const { return false; }
    virtual Move next(const StudentContext& ctx, const BitString& a, std::span<const BitString> replies) const = 0;
    virtual nlohmann::json describe() const { return {{"name", name()}, {"max_queries", max_queries()}}; }
};

using StrategyPtr = std::shared_ptr<const Strategy>;

enum class Violation { none, row_out_of_range, budget_exceeded, capability };

inline const char* to_string(Violation v) {
    switch (v) {
        case Violation::none: return "none";
        case Violation::row_out_of_range: return "row-out-of-range";
        case Violation::budget_exceeded: return "budget-exceeded";
        case Violation::capability: return "capability";
    }
    return "unknown";
}

enum class GameMode { solve, witness };

struct Transcript {
    GameMode mode = GameMode::solve;
    BitString a;
    std::vector<std::size_t> queries;
    std::vector<BitString> replies;
    bool success = false;   // solve mode: found i with g(a)_i != b_i
    bool defined = false;   // witness mode: no reply contradicted b
    std::optional<Value> output;
    Violation violation = Violation::none;

    /// The query sequence of a successful solve-mode run; empty otherwise.
    std::vector<std::size_t> trace() const { return success ? queries : std::vector<std::size_t>{}; }
};

namespace detail {

inline Move next_move(const Strategy& s, const StudentContext& ctx, const BitString& a, std::span<const BitString> replies, Violation& violation) {
    try {
        return s.next(ctx, a, replies);
    } catch (const CapabilityError&) {
        violation = Violation::capability;
        return Move::finish();
    }
}

}  // namespace detail

/// Solve mode. The Teacher answers row i with the unique v such that
/// h(v) = a(J_i); the run succeeds at the first reply with B(v) != b_i.
/// Giving up, exhausting the strategy's budget, or breaking protocol
/// (bad row, more than c queries) is a failure.
inline Transcript play(const Instance& inst, const Strategy& s, const BitString& a, std::string_view advice = {}) {
    if (a.size() != inst.n()) throw std::invalid_argument("play: input has " + std::to_string(a.size()) + " bits, n = " + std::to_string(inst.n()));
    const BitString& b = inst.off_range();
    Transcript tr;
    tr.mode = GameMode::solve;
    tr.a = a;
    const StudentContext ctx(inst, s.may_invert(), advice);
    while (tr.queries.size() < s.max_queries()) {
        const Move mv = detail::next_move(s, ctx, a, tr.replies, tr.violation);
        if (!mv.is_query()) break;
        if (mv.row >= inst.m()) {
            tr.violation = Violation::row_out_of_range;
            break;
        }
        if (tr.queries.size() == inst.c) {
            tr.violation = Violation::budget_exceeded;
            break;
        }
        BitString v = inst.h.invert(restrict(a, inst.design.row(mv.row)));
        const bool disagrees = hard_bit(inst.hard_bit, v) != b[mv.row];
        tr.queries.push_back(mv.row);
        tr.replies.push_back(std::move(v));
        if (disagrees) {
            tr.success = true;
            break;
        }
    }
    return tr;
}

/// Witness mode: the same interaction as a partial function of a. A reply
/// v to row i with B(v) != b_i aborts the run (undefined). After its
/// budget the strategy must finish; asking again is a budget violation.
inline Transcript evaluate_partial(const Instance& inst, const Strategy& s, const BitString& a, std::string_view advice = {}) {
    if (a.size() != inst.n()) throw std::invalid_argument("evaluate_partial: input has " + std::to_string(a.size()) + " bits, n = " + std::to_string(inst.n()));
    const BitString& b = inst.off_range();
    Transcript tr;
    tr.mode = GameMode::witness;
    tr.a = a;
    const StudentContext ctx(inst, s.may_invert(), advice);
    while (true) {
        Move mv = detail::next_move(s, ctx, a, tr.replies, tr.violation);
        if (tr.violation != Violation::none) return tr;
        if (!mv.is_query()) {
            tr.defined = true;
            tr.output = std::move(mv.output);
            return tr;
        }
        if (mv.row >= inst.m()) {
            tr.violation = Violation::row_out_of_range;
            return tr;
        }
        if (tr.queries.size() == s.max_queries()) {
            tr.violation = Violation::budget_exceeded;
            return tr;
        }
        BitString v = inst.h.invert(restrict(a, inst.design.row(mv.row)));
        const bool aborts = hard_bit(inst.hard_bit, v) != b[mv.row];
        tr.queries.push_back(mv.row);
        tr.replies.push_back(std::move(v));
        if (aborts) return tr;
    }
}

inline std::optional<Value> partial_value(const Instance& inst, const Strategy& s, const BitString& a, std::string_view advice = {}) {
    auto tr = evaluate_partial(inst, s, a, advice);
    return tr.defined ? std::move(tr.output) : std::nullopt;
}

/// Largest n for which inputs are enumerated exhaustively by the game and
/// analysis operations.
inline constexpr std::size_t kMaxExhaustiveWidth = 14;

struct SamplingOverride {
    std::uint64_t samples = 4096;
    std::uint64_t seed = 0;
};

/// The complement of W (inputs on which the student fails). Exact for
/// n <= 14; otherwise a seeded Monte-Carlo estimate when sampling is given.
struct FailureSet {
    bool exact = true;
    std::uint64_t universe = 0;       // 2^n (exact) or number of samples
    std::uint64_t failures = 0;
    std::uint64_t successes = 0;      // |W|, or successes among samples
    std::vector<std::uint64_t> members;   // exact only: ascending input indices
    Rational failure_fraction() const { return universe == 0 ? Rational(0) : Rational(BigInt(failures), BigInt(universe)); }
};

inline FailureSet failure_set(const Instance& inst, const Strategy& s, unsigned jobs = 1, std::optional<SamplingOverride> sampling = std::nullopt) {
    FailureSet out;
    if (inst.n() <= kMaxExhaustiveWidth) {
        const std::uint64_t total = std::uint64_t{1} << inst.n();
        auto parts = map_shards(total, jobs, [&](std::uint64_t begin, std::uint64_t end) {
            std::vector<std::uint64_t> fails;
            for (std::uint64_t x = begin; x < end; ++x)
                if (!play(inst, s, BitString::from_index(x, inst.n())).success) fails.push_back(x);
            return fails;
        });
        out.universe = total;
        for (auto& p : parts) out.members.insert(out.members.end(), p.begin(), p.end());
        out.failures = out.members.size();
        out.successes = total - out.failures;
        return out;
    }
    if (!sampling) throw ConfigError("failure_set: n = " + std::to_string(inst.n()) + " exceeds the exhaustive limit 14; a sampling override is required");
    out.exact = false;
    out.universe = sampling->samples;
    Engine rng(sampling->seed);
    for (std::uint64_t t = 0; t < sampling->samples; ++t) {
        BitString a(inst.n());
        for (std::size_t pos = 0; pos < inst.n(); pos += 64) {
            const std::uint64_t word = rng();
            for (std::size_t bit = 0; bit < 64 && pos + bit < inst.n(); ++bit)
                if ((word >> bit) & 1U) a.set(pos + bit);
        }
        if (play(inst, s, a).success)
            ++out.successes;
        else
            ++out.failures;
    }
    return out;
}

inline void require_exhaustive(const Instance& inst, const char* what) {
    if (inst.n() > kMaxExhaustiveWidth)
        throw ConfigError(std::string(what) + ": n = " + std::to_string(inst.n()) + " exceeds the exhaustive limit 14");
    if (!inst.b) throw ConfigError(std::string(what) + ": instance has no off-range string b");
}

}  // namespace nwg

#endif  // NWGAME_GAME_HPP
