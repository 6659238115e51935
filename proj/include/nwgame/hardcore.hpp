#ifndef NWGAME_HARDCORE_HPP
#define NWGAME_HARDCORE_HPP

#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "nwgame/analysis.hpp"
#include "nwgame/game.hpp"

namespace nwg {

/// alpha_1, alpha_2, ...: witness-mode students where alpha_k asks at most
/// k queries, plus the advice string w that all of them may read.
struct StudentFamily {
    std::vector<StrategyPtr> members;
    std::string advice;

    void validate() const {
        std::size_t prev = 0;
        for (std::size_t i = 0; i < members.size(); ++i) {
            const auto q = members[i]->max_queries();
            if (q > i + 1)
                throw ConfigError("family member " + std::to_string(i + 1) + " (" + members[i]->name() + ") declares " + std::to_string(q) +
                                  " queries; at most " + std::to_string(i + 1) + " allowed");
            if (q < prev) throw ConfigError("family query budgets must be nondecreasing (member " + std::to_string(i + 1) + ")");
            prev = q;
        }
    }
};

/// Runs its stages one after another on the same input. Each stage sees
/// only its own replies; a stage that finishes hands over to the next, and
/// the composition finishes with the tuple of all stage outputs.
class ComposedStrategy final : public Strategy {
  public:
    /// Row index emitted when a stage overruns its own budget; it is out of
    /// range for every instance, so the driver records a protocol violation.
    static constexpr std::size_t kOverrunRow = std::numeric_limits<std::size_t>::max();

    explicit ComposedStrategy(std::vector<StrategyPtr> stages) : stages_(std::move(stages)) {}

    std::string name() const override { return "composed"; }

    /// k(k+1)/2 for k stages.
    std::size_t max_queries() const override { return stages_.size() * (stages_.size() + 1) / 2; }

    bool may_invert() const override {
        for (const auto& s : stages_)
            if (s->may_invert()) return true;
        return false;
    }

    Move next(const StudentContext& ctx, const BitString& a, std::span<const BitString> replies) const override {
        std::vector<Value> outputs;
        std::size_t cursor = 0;
        for (const auto& stage : stages_) {
            const StudentContext stage_ctx(ctx, stage->may_invert());
            std::vector<BitString> local;
            while (true) {
                Move mv = stage->next(stage_ctx, a, local);
                if (!mv.is_query()) {
                    outputs.push_back(std::move(mv.output));
                    break;
                }
                if (local.size() == stage->max_queries()) return Move::query(kOverrunRow);
                if (cursor == replies.size()) return mv;
                local.push_back(replies[cursor++]);
            }
        }
        return Move::finish(Value(std::move(outputs)));
    }

    nlohmann::json describe() const override {
        auto stages = nlohmann::json::array();
        for (const auto& s : stages_) stages.push_back(s->describe());
        return {{"kind", "composed"}, {"stages", stages}};
    }

    const std::vector<StrategyPtr>& stages() const noexcept { return stages_; }

  private:
    std::vector<StrategyPtr> stages_;
};

/// Sequential composition of the first k family members.
inline std::shared_ptr<ComposedStrategy> compose(const StudentFamily& family, std::size_t k) {
    if (k < 1 || k > family.members.size())
        throw ConfigError("compose: k = " + std::to_string(k) + " but the family has " + std::to_string(family.members.size()) + " members");
    return std::make_shared<ComposedStrategy>(std::vector<StrategyPtr>(family.members.begin(), family.members.begin() + static_cast<std::ptrdiff_t>(k)));
}

/// Inputs on which a witness-mode strategy is defined, ascending by index.
inline std::vector<std::uint64_t> definedness_set(const Instance& inst, const Strategy& s, std::string_view advice = {}, unsigned jobs = 1) {
    require_exhaustive(inst, "definedness_set");
    auto parts = map_shards(std::uint64_t{1} << inst.n(), jobs, [&](std::uint64_t begin, std::uint64_t end) {
        std::vector<std::uint64_t> out;
        for (std::uint64_t x = begin; x < end; ++x)
            if (evaluate_partial(inst, s, BitString::from_index(x, inst.n()), advice).defined) out.push_back(x);
        return out;
    });
    std::vector<std::uint64_t> all;
    for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
    return all;
}

struct HardcoreReport {
    std::size_t k = 0;
    std::vector<std::uint64_t> members;   // H^k as ascending input indices
    Rational s_bound;                     // s_{k^2}
    bool meets_bound = false;             // |H^k| >= s_{k^2}; informational only

    std::size_t size() const noexcept { return members.size(); }
    const char* verdict() const noexcept { return meets_bound ? "at-or-above-bound" : "below-bound"; }
};

/// H^k: the inputs on which the composition of alpha_1..alpha_k is defined.
inline HardcoreReport extract_hardcore(const Instance& inst, const StudentFamily& family, std::size_t k, unsigned jobs = 1) {
    family.validate();
    const auto composed = compose(family, k);
    HardcoreReport rep;
    rep.k = k;
    rep.members = definedness_set(inst, *composed, family.advice, jobs);
    rep.s_bound = s_bound(inst.ell(), inst.m(), k * k);
    rep.meets_bound = Rational(rep.members.size()) >= rep.s_bound;
    return rep;
}

/// |H^k| against s_{k^2} for k = 1..k_max.
inline std::vector<HardcoreReport> hardcore_sweep(const Instance& inst, const StudentFamily& family, std::size_t k_max, unsigned jobs = 1) {
    std::vector<HardcoreReport> out;
    for (std::size_t k = 1; k <= k_max; ++k) out.push_back(extract_hardcore(inst, family, k, jobs));
    return out;
}

}  // namespace nwg

#endif  // NWGAME_HARDCORE_HPP
