#ifndef NWGAME_SERIALIZE_HPP
#define NWGAME_SERIALIZE_HPP

// JSON forms of every artifact: designs, permutations, instances,
// transcripts, failure sets, census reports, predictor advice, hard-core
// reports, and strategy specifications.

#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "nwgame/analysis.hpp"
#include "nwgame/design.hpp"
#include "nwgame/errors.hpp"
#include "nwgame/game.hpp"
#include "nwgame/generator.hpp"
#include "nwgame/hardcore.hpp"
#include "nwgame/rational.hpp"
#include "nwgame/strategies.hpp"

namespace nwg {

using json = nlohmann::json;

namespace detail {

inline json big_to_json(const BigInt& v) {
    if (v >= BigInt(std::numeric_limits<std::int64_t>::min()) && v <= BigInt(std::numeric_limits<std::int64_t>::max()))
        return static_cast<std::int64_t>(v);
    return v.str();
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key) || j.at(key).is_null()) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("field '") + key + "': " + e.what());
    }
}

template <typename T>
T require(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("field '") + key + "': " + e.what());
    }
}

}  // namespace detail

/// {num, den}; values beyond 64 bits are written as decimal strings.
inline json rational_to_json(const Rational& r) {
    return {{"num", detail::big_to_json(boost::multiprecision::numerator(r))}, {"den", detail::big_to_json(boost::multiprecision::denominator(r))}};
}

inline json indices_to_hex(const std::vector<std::uint64_t>& xs, std::size_t width) {
    auto arr = json::array();
    for (auto x : xs) arr.push_back(BitString::from_index(x, width).to_hex());
    return arr;
}

// ---- design ---------------------------------------------------------------

inline json design_to_json(const Design& des) {
    return {{"n", des.n}, {"m", des.m()}, {"ell", des.ell}, {"d", des.d}, {"sets", des.sets}};
}

inline Design design_from_json(const json& j) {
    Design des;
    des.n = detail::require<std::size_t>(j, "n");
    des.ell = detail::require<std::size_t>(j, "ell");
    des.d = detail::require<std::size_t>(j, "d");
    des.sets = detail::require<std::vector<std::vector<std::size_t>>>(j, "sets");
    if (j.contains("m") && j.at("m").get<std::size_t>() != des.sets.size())
        throw ConfigError("design field m = " + j.at("m").dump() + " disagrees with " + std::to_string(des.sets.size()) + " listed sets");
    return des;
}

inline json design_report_to_json(const DesignReport& rep) {
    auto v = json::array();
    for (const auto& x : rep.violations) v.push_back({{"kind", to_string(x.kind)}, {"i", x.i}, {"j", x.j}, {"value", x.value}});
    return {{"ok", rep.ok}, {"violations", v}};
}

// ---- permutation ------------------------------------------------------------

inline json permutation_to_json(const Permutation& h, bool with_table = false) {
    json j = {{"ell", h.ell()}, {"kind", to_string(h.kind())}, {"seed", h.seed()}};
    if (h.kind() == PermutationKind::feistel) j["rounds"] = h.rounds();
    if (with_table && h.kind() == PermutationKind::table) j["table_hex"] = h.table_hex();
    return j;
}

inline Permutation permutation_from_json(const json& j) {
    const auto kind = parse_permutation_kind(detail::require<std::string>(j, "kind"));
    auto h = make_permutation(detail::require<std::size_t>(j, "ell"), kind, detail::get_or<std::uint64_t>(j, "seed", 0),
                              detail::get_or<unsigned>(j, "rounds", Permutation::kDefaultRounds));
    if (j.contains("table_hex") && h.kind() == PermutationKind::table && j.at("table_hex").get<std::string>() != h.table_hex())
        throw ValidationError("permutation table_hex does not match the table regenerated from its seed");
    return h;
}

// ---- instance ---------------------------------------------------------------

inline json instance_to_json(const Instance& inst) {
    json j = {{"design", design_to_json(inst.design)},
              {"permutation", permutation_to_json(inst.h)},
              {"hard_bit", to_string(inst.hard_bit)},
              {"c", inst.c},
              {"strict", inst.strict},
              {"certificate", to_string(inst.certificate)},
              {"warnings", inst.warnings}};
    if (inst.b) {
        j["b"] = inst.b->to_hex();
        j["b_bits"] = inst.b->to_string();
    } else {
        j["b"] = nullptr;
    }
    return j;
}

/// Rebuilds and revalidates an instance. b is recertified when n <= 20;
/// larger instances keep it only if the file marks it unverified.
inline Instance instance_from_json(const json& j, unsigned jobs = 1) {
    auto inst = make_instance(design_from_json(detail::require<json>(j, "design")), permutation_from_json(detail::require<json>(j, "permutation")),
                              parse_hard_bit(detail::get_or<std::string>(j, "hard_bit", "last-bit")), detail::get_or<std::size_t>(j, "c", 1),
                              detail::get_or<bool>(j, "strict", false));
    if (j.contains("b") && !j.at("b").is_null()) {
        const auto b = j.contains("b_bits") ? BitString::parse(j.at("b_bits").get<std::string>())
                                            : BitString::from_hex(j.at("b").get<std::string>(), inst.m());
        if (b.to_hex() != j.at("b").get<std::string>()) throw ConfigError("instance fields b and b_bits disagree");
        const bool unverified = detail::get_or<std::string>(j, "certificate", "") == "unverified";
        assign_off_range(inst, b, unverified, jobs);
    }
    return inst;
}

// ---- game -------------------------------------------------------------------

inline json transcript_to_json(const Transcript& tr) {
    auto replies = json::array();
    for (const auto& v : tr.replies) replies.push_back(v.to_string());
    json j = {{"mode", tr.mode == GameMode::solve ? "solve" : "witness"},
              {"a", tr.a.to_string()},
              {"queries", tr.queries},
              {"replies", replies},
              {"success", tr.success},
              {"defined", tr.defined},
              {"output", tr.output ? tr.output->to_json() : json(nullptr)},
              {"violation", to_string(tr.violation)}};
    return j;
}

inline json failure_set_to_json(const FailureSet& fs, std::size_t n) {
    json j = {{"exact", fs.exact}, {"universe", fs.universe}, {"failures", fs.failures}, {"W_size", fs.successes},
              {"failure_fraction", rational_to_json(fs.failure_fraction())}};
    if (fs.exact) j["members"] = indices_to_hex(fs.members, n);
    if (!fs.exact) j["label"] = "monte-carlo estimate";
    return j;
}

// ---- analysis ---------------------------------------------------------------

inline json census_to_json(const TraceCensus& c, std::size_t m) {
    auto traces = json::array();
    for (const auto& [t, count] : c.counts) traces.push_back({{"trace", t}, {"count", count}});
    json j = {{"W_size", c.w_size}, {"universe", c.universe}, {"traces", traces}, {"no_trace", c.no_trace()}};
    if (c.best) {
        j["best"] = {{"trace", c.best->trace},
                     {"count", c.best->count},
                     {"bound", rational_to_json(claim1_bound(c.w_size, m, c.best->trace.size()))},
                     {"bound_ok", c.best->bound_ok}};
    } else {
        j["best"] = nullptr;
    }
    return j;
}

inline json assignment_to_json(const PartialAssignment& pa, std::size_t ell, std::size_t m) {
    return {{"trace", pa.trace},
            {"target_row", pa.target_row},
            {"e", pa.e.to_string()},
            {"D", pa.score},
            {"exact", pa.exact},
            {"proper", pa.proper},
            {"sum_D", pa.total_score},
            {"assignments", pa.assignments},
            {"averaging_ok", BigInt(pa.score) * pa.assignments >= BigInt(pa.total_score)},
            {"D_fraction", rational_to_json(Rational(BigInt(pa.score), pow_int(2, ell)))},
            {"claim2_reference", rational_to_json(Rational(BigInt(1), pow_int(3 * m, pa.trace.size())))}};
}

inline json predictor_to_json(const Predictor& p) {
    json y = json::object();
    for (const auto& [row, table] : p.tables().rows) {
        json entries = json::object();
        for (const auto& [z, v] : table) entries[z.to_string()] = v.to_string();
        y[std::to_string(row)] = entries;
    }
    return {{"trace", p.trace()}, {"e", p.e().to_string()}, {"b0", p.b0() ? 1 : 0}, {"Y", y}, {"Y_entries", p.tables().entries()}};
}

inline json diagnostics_to_json(const PredictorDiagnostics& d) {
    return {{"runs", d.runs},
            {"lookups", d.lookups},
            {"missing_entries", d.missing_entries},
            {"forward_check_failures", d.forward_check_failures},
            {"invert_calls", d.invert_calls}};
}

inline json advantage_to_json(const Advantage& adv) {
    return {{"advantage", rational_to_json(adv.value)},
            {"agreements", adv.agreements},
            {"total", adv.total},
            {"diagnostics", diagnostics_to_json(adv.diagnostics)}};
}

inline json reduction_to_json(const Reduction& red, const Instance& inst) {
    json j = {{"census", census_to_json(red.census, inst.m())},
              {"failures", red.failures},
              {"s_c", rational_to_json(red.s_c)},
              {"hypothesis_holds", red.hypothesis_holds},
              {"target", rational_to_json(red.target)}};
    if (red.assignment) j["assignment"] = assignment_to_json(*red.assignment, inst.ell(), inst.m());
    if (red.predictor) j["predictor"] = predictor_to_json(*red.predictor);
    if (red.advantage) j["advantage"] = advantage_to_json(*red.advantage);
    j["meets_target"] = red.meets_target;
    return j;
}

inline constexpr std::size_t kMaxListedMembers = 4096;

inline json hardcore_to_json(const HardcoreReport& rep, std::size_t n) {
    json j = {{"k", rep.k}, {"size", rep.size()}, {"s_bound", rational_to_json(rep.s_bound)}, {"verdict", rep.verdict()}};
    if (rep.size() <= kMaxListedMembers) j["members"] = indices_to_hex(rep.members, n);
    return j;
}

// ---- strategies ---------------------------------------------------------------

/// Parses "kind" or "kind:key=value,key=value" (or a JSON object) into a
/// strategy spec object.
inline json parse_strategy_spec(std::string_view text) {
    if (!text.empty() && text.front() == '{') {
        try {
            return json::parse(text);
        } catch (const json::exception& e) {
            throw ConfigError(std::string("strategy spec: ") + e.what());
        }
    }
    json spec;
    const auto colon = text.find(':');
    spec["kind"] = std::string(text.substr(0, colon));
    if (colon == std::string_view::npos) return spec;
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const auto item = rest.substr(0, comma);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) throw ConfigError("strategy option '" + std::string(item) + "' is not key=value");
        const std::string key(item.substr(0, eq));
        const std::string value(item.substr(eq + 1));
        try {
            spec[key] = std::stoll(value);
        } catch (const std::exception&) {
            throw ConfigError("strategy option '" + key + "' needs an integer, got '" + value + "'");
        }
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    return spec;
}

/// Builds a strategy from its spec. Seeds that are not given come from
/// `fallback_seed`.
inline StrategyPtr make_strategy(const json& spec, const Instance& inst, std::uint64_t fallback_seed = 0) {
    using detail::get_or;
    const auto kind = detail::require<std::string>(spec, "kind");
    const auto queries = get_or<std::size_t>(spec, "queries", 1);
    const auto output = get_or<std::int64_t>(spec, "output", 0);
    const auto seed = get_or<std::uint64_t>(spec, "seed", fallback_seed);
    if (kind == "constant") {
        const auto row = get_or<std::size_t>(spec, "row", 0);
        if (row >= inst.m()) throw ConfigError("constant strategy row " + std::to_string(row) + " out of range");
        return std::make_shared<ConstantStrategy>(row, queries, output);
    }
    if (kind == "zero-query") return std::make_shared<ZeroQueryStrategy>(output);
    if (kind == "round-robin") return std::make_shared<RoundRobinStrategy>(get_or<std::size_t>(spec, "start", 0), queries, output);
    if (kind == "seeded-random") return std::make_shared<SeededRandomStrategy>(seed, queries);
    if (kind == "omniscient") return std::make_shared<OmniscientStrategy>(output);
    if (kind == "random-table") return make_random_table(inst, queries, seed);
    if (kind == "near-omniscient") return make_near_omniscient_table(inst, queries, seed);
    if (kind == "table") {
        TableStrategy::Table table;
        for (const auto& e : detail::require<json>(spec, "entries")) {
            History h{BitString::parse(detail::require<std::string>(e, "a")), {}};
            for (const auto& r : detail::get_or<std::vector<std::string>>(e, "replies", {})) h.replies.push_back(BitString::parse(r));
            table.emplace(std::move(h), detail::require<std::size_t>(e, "row"));
        }
        return std::make_shared<TableStrategy>(detail::require<std::size_t>(spec, "max_queries"), std::move(table),
                                               get_or<std::int64_t>(spec, "default_output", 0));
    }
    throw ConfigError("unknown strategy '" + kind + "'");
}

/// The spec with every defaulted field filled in, so reports are self-describing.
inline json resolve_strategy_spec(const json& spec, const Instance& inst, std::uint64_t fallback_seed = 0) {
    auto s = make_strategy(spec, inst, fallback_seed);
    if (spec.value("kind", "") == "table") return spec;
    return s->describe();
}

}  // namespace nwg

#endif  // NWGAME_SERIALIZE_HPP
