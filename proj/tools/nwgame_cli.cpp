// nwgame: command-line front end for designs, instances, games, the
// reduction pipeline and hard-core extraction.
//
// Exit codes: 0 success, 1 internal error, 2 config error,
// 3 validation failure, 4 infeasible search.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nwgame/nwgame.hpp"

namespace {

enum ExitCode : int { kOk = 0, kInternal = 1, kConfig = 2, kValidation = 3, kInfeasible = 4 };

struct Globals {
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    bool strict = false;
    std::string out;
};

nwg::json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw nwg::ConfigError("cannot open '" + path + "'");
    try {
        return nwg::json::parse(in);
    } catch (const nwg::json::exception& e) {
        throw nwg::ConfigError("'" + path + "': " + e.what());
    }
}

void emit(const Globals& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(g.out, std::ios::binary);
    if (!out) throw nwg::ConfigError("cannot write '" + g.out + "'");
    out << text;
}

void emit(const Globals& g, const nwg::json& j) { emit(g, j.dump(2) + "\n"); }

nwg::Instance load_instance(const std::string& path, const Globals& g) {
    auto inst = nwg::instance_from_json(read_json(path), g.jobs);
    if (g.strict) {
        for (const auto& msg : nwg::regime_violations(inst.design)) throw nwg::ValidationError("strict mode: " + msg);
        inst.strict = true;
    }
    for (const auto& w : inst.warnings) std::cerr << "warning: " << w << "\n";
    return inst;
}

std::vector<nwg::StrategyPtr> load_strategies(const std::vector<std::string>& specs, const nwg::Instance& inst, const Globals& g) {
    std::vector<nwg::StrategyPtr> out;
    for (std::size_t i = 0; i < specs.size(); ++i)
        out.push_back(nwg::make_strategy(nwg::parse_strategy_spec(specs[i]), inst, nwg::derive_seed(g.seed, "strategy/" + std::to_string(i))));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Student-Teacher game workbench over Nisan-Wigderson generators"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--seed", g.seed, "Master seed; stage seeds are derived from it");
    app.add_option("--jobs", g.jobs, "Worker threads for exhaustive scans (does not change results)")->check(CLI::Range(1u, 256u));
    app.add_flag("--strict", g.strict, "Reject instances outside the m=n+1, ell=n^(1/3), d<=log m regime");
    app.add_option("--out", g.out, "Write the result here instead of stdout");

    std::function<void()> action;

    // design -------------------------------------------------------------
    auto* design = app.add_subcommand("design", "Build or verify set systems")->require_subcommand(1);
    unsigned q = 2, degree = 1;
    std::optional<std::size_t> extend_to;
    std::optional<std::uint64_t> extend_seed;
    auto* dbuild = design->add_subcommand("build", "Polynomial design over GF(q), optionally extended greedily");
    dbuild->add_option("--q", q, "Field order (prime power <= 16)")->required();
    dbuild->add_option("--degree", degree, "Maximum polynomial degree (1 <= degree < q)")->required();
    dbuild->add_option("--extend-to", extend_to, "Append sets greedily until m reaches this");
    dbuild->add_option("--extend-seed", extend_seed, "Seed for the greedy extension");
    dbuild->callback([&] {
        action = [&] {
            nwg::json spec = {{"kind", "polynomial"}, {"q", q}, {"degree", degree}};
            if (extend_to) spec["extend_to"] = *extend_to;
            if (extend_seed) spec["extend_seed"] = *extend_seed;
            emit(g, nwg::design_to_json(nwg::design_from_spec(spec, g.seed)));
        };
    });
    std::string design_path;
    auto* dverify = design->add_subcommand("verify", "Check size and intersection invariants");
    dverify->add_option("design", design_path, "Design JSON file")->required();
    dverify->callback([&] {
        action = [&] {
            const auto rep = nwg::verify_design(nwg::design_from_json(read_json(design_path)));
            emit(g, nwg::design_report_to_json(rep));
            if (!rep.ok) throw nwg::ValidationError("design verification failed");
        };
    });

    // instance -----------------------------------------------------------
    auto* instance = app.add_subcommand("instance", "Create or check instances")->require_subcommand(1);
    std::string perm_kind = "identity", hard_bit = "last-bit", b_mode = "lex-min";
    std::optional<std::uint64_t> perm_seed, b_seed;
    unsigned rounds = nwg::Permutation::kDefaultRounds;
    std::size_t c = 1;
    bool allow_unverified = false;
    auto* imake = instance->add_subcommand("make", "Bundle design, permutation, hard bit, b and c");
    imake->add_option("--design", design_path, "Design JSON file (otherwise --q/--degree)");
    imake->add_option("--q", q, "Field order for a polynomial design");
    imake->add_option("--degree", degree, "Polynomial degree");
    imake->add_option("--extend-to", extend_to, "Extend the design greedily to this many sets");
    imake->add_option("--extend-seed", extend_seed, "Seed for the greedy extension");
    imake->add_option("--perm", perm_kind, "identity | table | feistel");
    imake->add_option("--perm-seed", perm_seed, "Permutation seed");
    imake->add_option("--rounds", rounds, "Feistel rounds");
    imake->add_option("--hard-bit", hard_bit, "last-bit | parity");
    imake->add_option("--c", c, "Round limit");
    imake->add_option("--b", b_mode, "lex-min | seeded-random | an explicit m-bit string");
    imake->add_option("--b-seed", b_seed, "Seed for seeded-random b");
    imake->add_flag("--allow-unverified", allow_unverified, "Accept an explicit b without certification when n > 20");
    imake->callback([&] {
        action = [&] {
            nwg::json spec;
            if (!design_path.empty()) {
                spec["design"] = read_json(design_path);
                spec["design"]["kind"] = "explicit";
            } else {
                spec["design"] = {{"kind", "polynomial"}, {"q", q}, {"degree", degree}};
            }
            if (extend_to) spec["design"]["extend_to"] = *extend_to;
            if (extend_seed) spec["design"]["extend_seed"] = *extend_seed;
            spec["permutation"] = {{"kind", perm_kind}, {"rounds", rounds}};
            if (perm_seed) spec["permutation"]["seed"] = *perm_seed;
            spec["hard_bit"] = hard_bit;
            spec["c"] = c;
            if (b_mode == "lex-min" || b_mode == "seeded-random") {
                spec["b"] = {{"mode", b_mode}};
                if (b_seed) spec["b"]["seed"] = *b_seed;
            } else {
                spec["b"] = {{"mode", "given"}, {"bits", b_mode}, {"allow_unverified", allow_unverified}};
            }
            const auto inst = nwg::instance_from_spec(spec, g.seed, g.strict, g.jobs);
            for (const auto& w : inst.warnings) std::cerr << "warning: " << w << "\n";
            emit(g, nwg::instance_to_json(inst));
        };
    });
    std::string instance_path;
    auto* icheck = instance->add_subcommand("check", "Revalidate an instance file and recertify b");
    icheck->add_option("instance", instance_path, "Instance JSON file")->required();
    icheck->callback([&] {
        action = [&] {
            const auto inst = load_instance(instance_path, g);
            nwg::json out = {{"ok", true}, {"certificate", nwg::to_string(inst.certificate)}, {"warnings", inst.warnings},
                             {"range_checked", inst.n() <= nwg::kMaxRangeWidth}};
            emit(g, out);
        };
    });

    // game -----------------------------------------------------------------
    auto* game = app.add_subcommand("game", "Play the game")->require_subcommand(1);
    std::vector<std::string> strategy_specs;
    std::string input_bits, mode = "solve", advice;
    std::optional<std::uint64_t> samples;
    auto* gplay = game->add_subcommand("play", "One run on one input");
    gplay->add_option("instance", instance_path, "Instance JSON file")->required();
    gplay->add_option("--strategy", strategy_specs, "Strategy, e.g. omniscient or constant:row=0,queries=1")->required();
    gplay->add_option("--a", input_bits, "Input as an n-bit string")->required();
    gplay->add_option("--mode", mode, "solve | witness")->check(CLI::IsMember({"solve", "witness"}));
    gplay->add_option("--advice", advice, "Common advice string visible to the student");
    gplay->callback([&] {
        action = [&] {
            const auto inst = load_instance(instance_path, g);
            const auto s = load_strategies(strategy_specs, inst, g).at(0);
            const auto a = nwg::BitString::parse(input_bits);
            const auto tr = mode == "solve" ? nwg::play(inst, *s, a, advice) : nwg::evaluate_partial(inst, *s, a, advice);
            emit(g, nwg::transcript_to_json(tr));
        };
    });
    auto* gfail = game->add_subcommand("failureset", "All inputs on which the student fails");
    gfail->add_option("instance", instance_path, "Instance JSON file")->required();
    gfail->add_option("--strategy", strategy_specs, "Strategy spec")->required();
    gfail->add_option("--samples", samples, "Monte-Carlo sample count when n > 14");
    gfail->callback([&] {
        action = [&] {
            const auto inst = load_instance(instance_path, g);
            const auto s = load_strategies(strategy_specs, inst, g).at(0);
            std::optional<nwg::SamplingOverride> sampling;
            if (samples) sampling = nwg::SamplingOverride{*samples, nwg::derive_seed(g.seed, "failureset")};
            emit(g, nwg::failure_set_to_json(nwg::failure_set(inst, *s, g.jobs, sampling), inst.n()));
        };
    });

    // analyze --------------------------------------------------------------
    auto* analyze = app.add_subcommand("analyze", "Reduction pipeline stages")->require_subcommand(1);
    for (const char* stage : {"census", "claim2", "reduce", "advantage"}) {
        auto* sub = analyze->add_subcommand(stage, std::string("Run the ") + stage + " stage");
        sub->add_option("instance", instance_path, "Instance JSON file")->required();
        sub->add_option("--strategy", strategy_specs, "Strategy spec")->required();
        const std::string name = stage;
        sub->callback([&, name] {
            action = [&, name] {
                const auto inst = load_instance(instance_path, g);
                const auto s = load_strategies(strategy_specs, inst, g).at(0);
                if (name == "census") {
                    emit(g, nwg::census_to_json(nwg::trace_census(inst, *s, g.jobs), inst.m()));
                } else if (name == "claim2") {
                    const auto census = nwg::trace_census(inst, *s, g.jobs);
                    if (!census.best) throw nwg::InfeasibleError("the student never succeeds; no trace to fix");
                    emit(g, nwg::assignment_to_json(nwg::best_partial_assignment(inst, *s, census.best->trace, g.jobs), inst.ell(), inst.m()));
                } else {
                    const auto red = nwg::run_reduction(inst, s, g.jobs);
                    if (name == "reduce") {
                        emit(g, nwg::reduction_to_json(red, inst));
                    } else {
                        if (!red.advantage) throw nwg::InfeasibleError("the student never succeeds; no predictor to measure");
                        nwg::json out = nwg::rational_to_json(red.advantage->value);
                        out["target"] = nwg::rational_to_json(red.target);
                        out["meets_target"] = red.meets_target;
                        emit(g, out);
                    }
                }
            };
        });
    }

    // hardcore ------------------------------------------------------------
    auto* hardcore = app.add_subcommand("hardcore", "Compose students and extract H^k")->require_subcommand(1);
    std::size_t k = 1;
    auto* hextract = hardcore->add_subcommand("extract", "H^k for the first k family members");
    hextract->add_option("instance", instance_path, "Instance JSON file")->required();
    hextract->add_option("--strategy", strategy_specs, "Family member (repeat, in order)")->required();
    hextract->add_option("--k", k, "Number of composed members");
    hextract->add_option("--advice", advice, "Common advice string w");
    hextract->callback([&] {
        action = [&] {
            const auto inst = load_instance(instance_path, g);
            const nwg::StudentFamily family{load_strategies(strategy_specs, inst, g), advice};
            emit(g, nwg::hardcore_to_json(nwg::extract_hardcore(inst, family, k, g.jobs), inst.n()));
        };
    });
    auto* hsweep = hardcore->add_subcommand("sweep", "|H^k| against s_{k^2} for k = 1..k_max, as CSV");
    hsweep->add_option("instance", instance_path, "Instance JSON file")->required();
    hsweep->add_option("--strategy", strategy_specs, "Family member (repeat, in order)")->required();
    hsweep->add_option("--k-max", k, "Largest k");
    hsweep->add_option("--advice", advice, "Common advice string w");
    hsweep->callback([&] {
        action = [&] {
            const auto inst = load_instance(instance_path, g);
            const nwg::StudentFamily family{load_strategies(strategy_specs, inst, g), advice};
            emit(g, nwg::sweep_csv(nwg::hardcore_sweep(inst, family, k, g.jobs)));
        };
    });

    // run ------------------------------------------------------------------
    std::string config_path;
    auto* run = app.add_subcommand("run", "Run a full experiment from a JSON config");
    run->add_option("config", config_path, "Experiment config")->required();
    run->callback([&] {
        action = [&] {
            nwg::RunOverrides ov;
            ov.jobs = g.jobs;
            if (app.count("--seed") > 0) ov.seed = g.seed;
            if (g.strict) ov.strict = true;
            const auto cfg = read_json(config_path);
            std::string out_path = g.out;
            if (out_path.empty() && cfg.contains("output") && cfg.at("output").is_string()) out_path = cfg.at("output").get<std::string>();
            const auto result = nwg::run_experiment(cfg, ov);
            for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
            Globals target = g;
            target.out = out_path;
            emit(target, result.report);
            if (result.sweep_csv) {
                Globals csv = g;
                csv.out = out_path.empty() ? std::string{} : out_path + ".sweep.csv";
                if (!csv.out.empty()) emit(csv, *result.sweep_csv);
            }
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfig;
    }

    try {
        if (action) action();
        return kOk;
    } catch (const nwg::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const nwg::ValidationError& e) {
        std::cerr << "validation failure: " << e.what() << "\n";
        return kValidation;
    } catch (const nwg::InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInternal;
    }
}
