#ifndef NWGAME_EXPERIMENT_HPP
#define NWGAME_EXPERIMENT_HPP

// Config-driven experiment runner. A config fully determines its report:
// unspecified seeds are derived from the master seed by labeled hashing,
// and neither the worker count nor the output path reaches the report.

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nwgame/serialize.hpp"

namespace nwg {

inline constexpr const char* kReportSchema = "nwgame-report/1";

struct RunOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<bool> strict;
    unsigned jobs = 1;
};

struct ExperimentResult {
    json report;
    std::optional<std::string> sweep_csv;
    std::vector<std::string> warnings;
};

/// Builds the design described by a config "design" object; fills in any
/// derived seed so the returned spec is fully resolved.
inline Design design_from_spec(json& spec, std::uint64_t master) {
    const auto kind = detail::get_or<std::string>(spec, "kind", "polynomial");
    Design des;
    if (kind == "polynomial") {
        des = build_polynomial_design(detail::require<unsigned>(spec, "q"), detail::require<unsigned>(spec, "degree"));
    } else if (kind == "explicit") {
        des = design_from_json(spec);
        if (const auto rep = verify_design(des); !rep.ok)
            throw ValidationError("explicit design fails verification: " + design_report_to_json(rep).dump());
    } else if (kind == "greedy") {
        des.n = detail::require<std::size_t>(spec, "n");
        des.ell = detail::require<std::size_t>(spec, "ell");
        des.d = detail::require<std::size_t>(spec, "d");
        if (!spec.contains("extend_to")) spec["extend_to"] = detail::require<std::size_t>(spec, "m");
    } else {
        throw ConfigError("unknown design kind '" + kind + "'");
    }
    if (spec.contains("extend_to")) {
        if (!spec.contains("extend_seed")) spec["extend_seed"] = derive_seed(master, "design");
        des = extend_greedy(des, spec.at("extend_to").get<std::size_t>(), spec.at("extend_seed").get<std::uint64_t>());
    }
    spec["kind"] = kind;
    return des;
}

/// Builds and certifies the instance; `spec` is resolved in place.
inline Instance instance_from_spec(json& spec, std::uint64_t master, bool strict, unsigned jobs) {
    if (!spec.is_object()) throw ConfigError("config field 'instance' must be an object");
    json& dspec = spec["design"];
    if (!dspec.is_object()) throw ConfigError("instance.design must be an object");
    auto des = design_from_spec(dspec, master);

    json& pspec = spec["permutation"];
    if (pspec.is_null()) pspec = json{{"kind", "identity"}};
    pspec["ell"] = des.ell;
    const auto pkind = parse_permutation_kind(detail::get_or<std::string>(pspec, "kind", "identity"));
    if (pkind != PermutationKind::identity && !pspec.contains("seed")) pspec["seed"] = derive_seed(master, "permutation");
    if (pkind == PermutationKind::feistel && !pspec.contains("rounds")) pspec["rounds"] = Permutation::kDefaultRounds;
    auto h = permutation_from_json(pspec);

    spec["hard_bit"] = detail::get_or<std::string>(spec, "hard_bit", "last-bit");
    spec["c"] = detail::get_or<std::size_t>(spec, "c", 1);
    spec["strict"] = strict;
    auto inst = make_instance(std::move(des), std::move(h), parse_hard_bit(spec["hard_bit"].get<std::string>()), spec["c"].get<std::size_t>(), strict);

    json& bspec = spec["b"];
    if (bspec.is_null()) bspec = json{{"mode", "lex-min"}};
    const auto mode = detail::get_or<std::string>(bspec, "mode", "lex-min");
    if (mode == "given") {
        assign_off_range(inst, BitString::parse(detail::require<std::string>(bspec, "bits")), detail::get_or<bool>(bspec, "allow_unverified", false), jobs);
    } else {
        const auto m = parse_off_range_mode(mode);
        if (m == OffRangeMode::seeded_random && !bspec.contains("seed")) bspec["seed"] = derive_seed(master, "off-range");
        const auto b = find_off_range(inst, m, detail::get_or<std::uint64_t>(bspec, "seed", 0), jobs);
        inst.b = b;
        inst.certificate = Certificate::certified;
    }
    return inst;
}

inline std::string sweep_csv(const std::vector<HardcoreReport>& rows) {
    std::ostringstream out;
    out << "k,size,s_bound,verdict\n";
    for (const auto& r : rows) out << r.k << ',' << r.size() << ',' << to_string(r.s_bound) << ',' << r.verdict() << '\n';
    return out.str();
}

/// Runs design -> instance -> game -> analysis -> hardcore as requested by
/// the config's "analyses" list (census, claim2, reduce, failureset,
/// hardcore, sweep).
inline ExperimentResult run_experiment(const json& config, const RunOverrides& ov = {}) {
    if (!config.is_object()) throw ConfigError("config must be a JSON object");
    json cfg = config;
    const std::uint64_t master = ov.seed ? *ov.seed : detail::get_or<std::uint64_t>(cfg, "seed", 0);
    cfg["seed"] = master;
    const bool strict = ov.strict ? *ov.strict : detail::get_or<bool>(cfg["instance"], "strict", false);
    cfg.erase("output");

    ExperimentResult result;
    auto inst = instance_from_spec(cfg["instance"], master, strict, ov.jobs);
    result.warnings = inst.warnings;

    json& roster = cfg["strategies"];
    if (roster.is_null()) roster = json::array();
    if (!roster.is_array()) throw ConfigError("config field 'strategies' must be an array");
    std::vector<StrategyPtr> strategies;
    for (std::size_t i = 0; i < roster.size(); ++i) {
        json& spec = roster[i];
        if (spec.is_string()) spec = parse_strategy_spec(spec.get<std::string>());
        const auto seed = derive_seed(master, "strategy/" + std::to_string(i));
        strategies.push_back(make_strategy(spec, inst, seed));
        spec = resolve_strategy_spec(spec, inst, seed);
    }

    const auto analyses = detail::get_or<std::vector<std::string>>(cfg, "analyses", {"census"});
    cfg["analyses"] = analyses;
    auto wants = [&](const char* name) { return std::find(analyses.begin(), analyses.end(), name) != analyses.end(); };
    for (const auto& a : analyses)
        if (a != "census" && a != "claim2" && a != "reduce" && a != "failureset" && a != "hardcore" && a != "sweep")
            throw ConfigError("unknown analysis '" + a + "'");

    json report;
    report["schema"] = kReportSchema;
    report["instance"] = instance_to_json(inst);
    auto per_strategy = json::array();
    for (std::size_t i = 0; i < strategies.size(); ++i) {
        const auto& s = strategies[i];
        json entry = {{"index", i}, {"strategy", roster[i]}};
        if (wants("failureset")) entry["failure_set"] = failure_set_to_json(failure_set(inst, *s, ov.jobs), inst.n());
        if (wants("reduce")) {
            const auto red = run_reduction(inst, s, ov.jobs);
            entry["reduction"] = reduction_to_json(red, inst);
        } else if (wants("census") || wants("claim2")) {
            const auto census = trace_census(inst, *s, ov.jobs);
            if (wants("census")) entry["census"] = census_to_json(census, inst.m());
            if (wants("claim2") && census.best)
                entry["claim2"] = assignment_to_json(best_partial_assignment(inst, *s, census.best->trace, ov.jobs), inst.ell(), inst.m());
        }
        if (wants("census") && wants("reduce")) entry["census"] = entry["reduction"]["census"];
        if (wants("claim2") && wants("reduce") && entry["reduction"].contains("assignment")) entry["claim2"] = entry["reduction"]["assignment"];
        per_strategy.push_back(std::move(entry));
    }
    report["strategies"] = per_strategy;

    if (wants("hardcore") || wants("sweep")) {
        json& hspec = cfg["hardcore"];
        if (hspec.is_null()) hspec = json::object();
        StudentFamily family{strategies, detail::get_or<std::string>(hspec, "advice", "")};
        hspec["advice"] = family.advice;
        if (wants("hardcore")) {
            const auto k = detail::get_or<std::size_t>(hspec, "k", strategies.size());
            hspec["k"] = k;
            report["hardcore"] = hardcore_to_json(extract_hardcore(inst, family, k, ov.jobs), inst.n());
        }
        if (wants("sweep")) {
            const auto k_max = detail::get_or<std::size_t>(hspec, "k_max", strategies.size());
            hspec["k_max"] = k_max;
            const auto rows = hardcore_sweep(inst, family, k_max, ov.jobs);
            auto arr = json::array();
            for (const auto& r : rows) arr.push_back(hardcore_to_json(r, inst.n()));
            report["sweep"] = arr;
            result.sweep_csv = sweep_csv(rows);
        }
    }
    report["config"] = cfg;
    result.report = std::move(report);
    return result;
}

}  // namespace nwg

#endif  // NWGAME_EXPERIMENT_HPP
