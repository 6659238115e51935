#ifndef NWGAME_ANALYSIS_HPP
#define NWGAME_ANALYSIS_HPP

// The trace-based reduction from a successful student to a predictor for f:
// trace census, choice of the partial assignment e, witness tables Y_i,
// the predictor C and its exact advantage.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nwgame/bits.hpp"
#include "nwgame/game.hpp"
#include "nwgame/parallel.hpp"
#include "nwgame/rational.hpp"

namespace nwg {

using Trace = std::vector<std::size_t>;

inline bool is_proper_extension(const Trace& trace, const Trace& prefix) {
    return trace.size() > prefix.size() && std::equal(prefix.begin(), prefix.end(), trace.begin());
}

/// 2|W| / (3m)^k: the share of W that some trace of length k must reach.
inline Rational claim1_bound(std::uint64_t w_size, std::size_t m, std::size_t k) {
    return Rational(BigInt(2) * w_size, pow_int(3 * m, k));
}

/// s_c = 2^ell / (2 (3m)^c), the failure count below which the reduction
/// yields advantage at least 1 / (2 (3m)^c).
inline Rational s_bound(std::size_t ell, std::size_t m, std::size_t c) {
    if (c < 1) throw ConfigError("s_bound needs c >= 1");
    return Rational(pow_int(2, ell), BigInt(2) * pow_int(3 * m, c));
}

/// 1 / (2 (3m)^c).
inline Rational reduction_target(std::size_t m, std::size_t c) { return Rational(BigInt(1), BigInt(2) * pow_int(3 * m, c)); }

struct TraceCensus {
    struct Best {
        Trace trace;
        std::uint64_t count = 0;
        bool bound_ok = false;
    };

    std::map<Trace, std::uint64_t> counts;
    std::uint64_t universe = 0;
    std::uint64_t w_size = 0;
    std::optional<Best> best;

    bool no_trace() const noexcept { return counts.empty(); }

    std::uint64_t exact(const Trace& t) const {
        auto it = counts.find(t);
        return it == counts.end() ? 0 : it->second;
    }

    std::uint64_t proper_extensions(const Trace& t) const {
        std::uint64_t total = 0;
        for (const auto& [trace, count] : counts)
            if (is_proper_extension(trace, t)) total += count;
        return total;
    }
};

/// Picks the trace the reduction works with. Among traces meeting the
/// 2|W|/(3m)^k bound, the longest one wins (then larger count, then
/// lexicographically smaller). Every proper extension of a longest such
/// trace misses the bound, which caps the mass of those extensions at
/// |W|/(3m)^k and is what makes the partial-assignment step work.
inline std::optional<TraceCensus::Best> select_trace(const std::map<Trace, std::uint64_t>& counts, std::uint64_t w_size, std::size_t m) {
    std::optional<TraceCensus::Best> best;
    for (const auto& [trace, count] : counts) {
        const bool ok = Rational(count) >= claim1_bound(w_size, m, trace.size());
        if (!ok) continue;
        if (!best || trace.size() > best->trace.size() || (trace.size() == best->trace.size() && count > best->count))
            best = TraceCensus::Best{trace, count, true};
    }
    if (best || counts.empty()) return best;
    // Unreachable when the pigeonhole argument holds; report the densest trace.
    for (const auto& [trace, count] : counts) {
        const Rational ratio = Rational(count) / claim1_bound(w_size, m, trace.size());
        if (!best || ratio > Rational(best->count) / claim1_bound(w_size, m, best->trace.size())) best = TraceCensus::Best{trace, count, false};
    }
    return best;
}

/// Exact trace counts over all of {0,1}^n (n <= 14).
inline TraceCensus trace_census(const Instance& inst, const Strategy& s, unsigned jobs = 1) {
    require_exhaustive(inst, "trace_census");
    const std::uint64_t total = std::uint64_t{1} << inst.n();
    auto parts = map_shards(total, jobs, [&](std::uint64_t begin, std::uint64_t end) {
        std::map<Trace, std::uint64_t> local;
        for (std::uint64_t x = begin; x < end; ++x) {
            const auto tr = play(inst, s, BitString::from_index(x, inst.n()));
            if (tr.success) ++local[tr.queries];
        }
        return local;
    });
    TraceCensus census;
    census.universe = total;
    for (const auto& part : parts)
        for (const auto& [trace, count] : part) census.counts[trace] += count;
    for (const auto& [trace, count] : census.counts) census.w_size += count;
    census.best = select_trace(census.counts, census.w_size, inst.m());
    return census;
}

/// Positions outside J_row, ascending: where e goes.
inline std::vector<std::size_t> free_positions(const Design& des, std::size_t row) {
    std::vector<std::size_t> out;
    const auto set = des.row(row);
    std::size_t t = 0;
    for (std::size_t pos = 0; pos < des.n; ++pos) {
        if (t < set.size() && set[t] == pos)
            ++t;
        else
            out.push_back(pos);
    }
    return out;
}

/// a(u, e): u fills J_row in ascending order, e fills the remaining positions.
inline BitString embed(const Design& des, std::size_t row, const BitString& u, const BitString& e) {
    const auto set = des.row(row);
    if (u.size() != set.size() || e.size() != des.n - set.size()) throw std::invalid_argument("embed: u/e widths do not match the design");
    BitString a(des.n);
    for (std::size_t t = 0; t < set.size(); ++t)
        if (u[t]) a.set(set[t]);
    const auto rest = free_positions(des, row);
    for (std::size_t t = 0; t < rest.size(); ++t)
        if (e[t]) a.set(rest[t]);
    return a;
}

/// The fixed assignment e to the positions outside J_{i_k} and its score
/// D(e) = #{u : trace of a(u,e) is the chosen trace}
///      - #{u : trace of a(u,e) properly extends it}.
struct PartialAssignment {
    Trace trace;
    std::size_t target_row = 0;
    BitString e;
    std::int64_t score = 0;
    std::uint64_t exact = 0;
    std::uint64_t proper = 0;
    std::int64_t total_score = 0;     // sum of D(e) over all e
    std::uint64_t assignments = 0;    // 2^(n - ell)
};

/// Maximizes D(e) over all assignments; ties go to the lexicographically
/// smallest e.
inline PartialAssignment best_partial_assignment(const Instance& inst, const Strategy& s, const Trace& trace, unsigned jobs = 1) {
    require_exhaustive(inst, "best_partial_assignment");
    if (trace.empty()) throw ConfigError("best_partial_assignment: trace must be nonempty");
    const std::size_t target = trace.back();
    if (target >= inst.m()) throw ConfigError("best_partial_assignment: trace row out of range");
    const std::size_t ell = inst.ell();
    const std::size_t rest = inst.n() - ell;
    const std::uint64_t assignments = std::uint64_t{1} << rest;

    struct Partial {
        std::optional<PartialAssignment> best;
        std::int64_t total = 0;
    };
    auto parts = map_shards(assignments, jobs, [&](std::uint64_t begin, std::uint64_t end) {
        Partial part;
        for (std::uint64_t ei = begin; ei < end; ++ei) {
            const auto e = BitString::from_index(ei, rest);
            std::uint64_t exact = 0, proper = 0;
            for (std::uint64_t ui = 0; ui < (std::uint64_t{1} << ell); ++ui) {
                const auto tr = play(inst, s, embed(inst.design, target, BitString::from_index(ui, ell), e));
                if (!tr.success) continue;
                if (tr.queries == trace)
                    ++exact;
                else if (is_proper_extension(tr.queries, trace))
                    ++proper;
            }
            const auto score = static_cast<std::int64_t>(exact) - static_cast<std::int64_t>(proper);
            part.total += score;
            if (!part.best || score > part.best->score || (score == part.best->score && e < part.best->e))
                part.best = PartialAssignment{trace, target, e, score, exact, proper, 0, 0};
        }
        return part;
    });
    PartialAssignment out;
    bool have = false;
    std::int64_t total = 0;
    for (const auto& part : parts) {
        total += part.total;
        if (!part.best) continue;
        if (!have || part.best->score > out.score || (part.best->score == out.score && part.best->e < out.e)) {
            out = *part.best;
            have = true;
        }
    }
    out.total_score = total;
    out.assignments = assignments;
    return out;
}

/// Y_i for every row i != i_k: each completion z_w of J_i consistent with
/// e (the free bits are those of J_i inside J_{i_k}) mapped to h^-1(z_w).
struct WitnessTables {
    std::size_t target_row = 0;
    std::map<std::size_t, std::map<BitString, BitString>> rows;

    std::size_t entries() const {
        std::size_t total = 0;
        for (const auto& [row, table] : rows) total += table.size();
        return total;
    }
};

inline WitnessTables build_witness_tables(const Instance& inst, const Trace& trace, const BitString& e) {
    if (trace.empty()) throw ConfigError("build_witness_tables: trace must be nonempty");
    const auto& des = inst.design;
    WitnessTables out;
    out.target_row = trace.back();
    const auto target_set = des.row(out.target_row);
    for (std::size_t i = 0; i < des.m(); ++i) {
        if (i == out.target_row) continue;
        // Indices t into J_{i_k} whose position also lies in J_i.
        std::vector<std::size_t> shared;
        const auto set = des.row(i);
        for (std::size_t t = 0; t < target_set.size(); ++t)
            if (std::binary_search(set.begin(), set.end(), target_set[t])) shared.push_back(t);
        auto& table = out.rows[i];
        for (std::uint64_t w = 0; w < (std::uint64_t{1} << shared.size()); ++w) {
            BitString u(des.ell);
            for (std::size_t s = 0; s < shared.size(); ++s)
                if ((w >> s) & 1U) u.set(shared[s]);
            const auto z = restrict(embed(des, out.target_row, u, e), set);
            table.emplace(z, inst.h.invert(z));
        }
    }
    return out;
}

struct PredictorDiagnostics {
    std::uint64_t runs = 0;
    std::uint64_t lookups = 0;
    std::uint64_t missing_entries = 0;
    std::uint64_t forward_check_failures = 0;
    std::uint64_t invert_calls = 0;   // made by the predictor itself, excluding the student's own

    bool clean() const noexcept { return missing_entries == 0 && forward_check_failures == 0 && invert_calls == 0; }

    PredictorDiagnostics& operator+=(const PredictorDiagnostics& o) {
        runs += o.runs;
        lookups += o.lookups;
        missing_entries += o.missing_entries;
        forward_check_failures += o.forward_check_failures;
        invert_calls += o.invert_calls;
        return *this;
    }
};

/// The predictor C for f. On input u it runs the student on a(u,e),
/// answering queries from the witness tables. It outputs 1 - b_{i_k} when
/// the run follows the trace up to its last query, and b0 otherwise.
class Predictor {
  public:
    Predictor(StrategyPtr student, Trace trace, BitString e, bool b0, WitnessTables tables, std::string advice = {})
        : student_(std::move(student)), trace_(std::move(trace)), e_(std::move(e)), b0_(b0), tables_(std::move(tables)), advice_(std::move(advice)) {}

    const Trace& trace() const noexcept { return trace_; }
    const BitString& e() const noexcept { return e_; }
    bool b0() const noexcept { return b0_; }
    const WitnessTables& tables() const noexcept { return tables_; }
    const Strategy& student() const noexcept { return *student_; }

    bool run(const Instance& inst, const BitString& u, PredictorDiagnostics& diag) const {
        const std::uint64_t before = invert_calls_on_this_thread();
        const StudentContext ctx(inst, student_->may_invert(), advice_);
        const bool out = simulate(inst, u, ctx, diag);
        diag.invert_calls += invert_calls_on_this_thread() - before - ctx.invert_calls();
        ++diag.runs;
        return out;
    }

  private:
    bool simulate(const Instance& inst, const BitString& u, const StudentContext& ctx, PredictorDiagnostics& diag) const {
        const auto& des = inst.design;
        const auto& b = inst.off_range();
        const std::size_t k = trace_.size();
        const auto a = embed(des, tables_.target_row, u, e_);
        std::vector<BitString> replies;
        for (std::size_t j = 0; j < k; ++j) {
            Move mv;
            try {
                mv = student_->next(ctx, a, replies);
            } catch (const CapabilityError&) {
                return b0_;
            }
            if (!mv.is_query() || mv.row != trace_[j]) return b0_;
            if (j + 1 == k) return !b[trace_[j]];
            const auto row = trace_[j];
            const auto z = restrict(a, des.row(row));
            ++diag.lookups;
            const auto table = tables_.rows.find(row);
            if (table == tables_.rows.end()) {
                ++diag.missing_entries;
                return b0_;
            }
            const auto hit = table->second.find(z);
            if (hit == table->second.end()) {
                ++diag.missing_entries;
                return b0_;
            }
            if (inst.h.apply(hit->second) != z) {
                ++diag.forward_check_failures;
                return b0_;
            }
            // A disagreeing reply ends the real game here, off the trace.
            if (hard_bit(inst.hard_bit, hit->second) != b[row]) return b0_;
            replies.push_back(hit->second);
        }
        return b0_;
    }

    StrategyPtr student_;
    Trace trace_;
    BitString e_;
    bool b0_;
    WitnessTables tables_;
    std::string advice_;
};

/// b0 is the majority of f over the u whose trace of a(u,e) neither equals
/// nor extends the chosen trace (ties and the empty set give 0).
inline Predictor build_predictor(const Instance& inst, StrategyPtr s, const Trace& trace, const BitString& e, WitnessTables tables) {
    require_exhaustive(inst, "build_predictor");
    if (trace.empty() || tables.target_row != trace.back()) throw ConfigError("build_predictor: tables do not match the trace");
    std::uint64_t ones = 0, zeros = 0;
    for (std::uint64_t ui = 0; ui < (std::uint64_t{1} << inst.ell()); ++ui) {
        const auto u = BitString::from_index(ui, inst.ell());
        const auto tr = play(inst, *s, embed(inst.design, trace.back(), u, e));
        if (tr.success && (tr.queries == trace || is_proper_extension(tr.queries, trace))) continue;
        if (f_value(inst.h, inst.hard_bit, u))
            ++ones;
        else
            ++zeros;
    }
    return Predictor(std::move(s), trace, e, ones > zeros, std::move(tables));
}

struct Advantage {
    Rational value;              // Pr_u[C(u) = f(u)] - 1/2
    std::uint64_t agreements = 0;
    std::uint64_t total = 0;
    PredictorDiagnostics diagnostics;
};

inline constexpr std::size_t kMaxPredictorWidth = 16;

/// Exact advantage of the predictor over all 2^ell inputs.
inline Advantage measure_advantage(const Instance& inst, const Predictor& p, unsigned jobs = 1) {
    if (inst.ell() > kMaxPredictorWidth) throw ConfigError("measure_advantage needs ell <= 16");
    const std::uint64_t total = std::uint64_t{1} << inst.ell();
    struct Part {
        std::uint64_t agree = 0;
        PredictorDiagnostics diag;
    };
    auto parts = map_shards(total, jobs, [&](std::uint64_t begin, std::uint64_t end) {
        Part part;
        for (std::uint64_t ui = begin; ui < end; ++ui) {
            const auto u = BitString::from_index(ui, inst.ell());
            const bool guess = p.run(inst, u, part.diag);
            if (guess == f_value(inst.h, inst.hard_bit, u)) ++part.agree;
        }
        return part;
    });
    Advantage out;
    out.total = total;
    for (const auto& part : parts) {
        out.agreements += part.agree;
        out.diagnostics += part.diag;
    }
    out.value = Rational(BigInt(out.agreements), BigInt(total)) - Rational(1, 2);
    return out;
}

/// The full pipeline: census, assignment, tables, predictor, advantage.
struct Reduction {
    TraceCensus census;
    std::uint64_t failures = 0;
    Rational s_c;
    Rational target;
    bool hypothesis_holds = false;   // failures < s_c
    std::optional<PartialAssignment> assignment;
    std::optional<Predictor> predictor;
    std::optional<Advantage> advantage;
    bool meets_target = false;
};

inline Reduction run_reduction(const Instance& inst, const StrategyPtr& s, unsigned jobs = 1) {
    Reduction red;
    red.census = trace_census(inst, *s, jobs);
    red.failures = red.census.universe - red.census.w_size;
    red.s_c = s_bound(inst.ell(), inst.m(), inst.c);
    red.target = reduction_target(inst.m(), inst.c);
    red.hypothesis_holds = Rational(red.failures) < red.s_c;
    if (!red.census.best) return red;
    const auto& trace = red.census.best->trace;
    red.assignment = best_partial_assignment(inst, *s, trace, jobs);
    auto tables = build_witness_tables(inst, trace, red.assignment->e);
    red.predictor = build_predictor(inst, s, trace, red.assignment->e, std::move(tables));
    red.advantage = measure_advantage(inst, *red.predictor, jobs);
    red.meets_target = red.advantage->value >= red.target;
    return red;
}

}  // namespace nwg

#endif  // NWGAME_ANALYSIS_HPP
