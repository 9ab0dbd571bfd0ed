#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nmc/serialize.hpp"

namespace nmc {

// Config-driven experiment: build (or load) a code, evaluate tampering
// families against it, optionally run an attack, emit a report.
struct ExperimentConfig {
    struct Code {
        std::string kind;  // "table" | "mc"
        CodeParams params;
        bool strict = false;     // mc only: reject builds violating [t, 3t]
        std::string load_path;   // when set, load instead of building
    } code;

    struct Family {
        std::string kind = "identity";
        int n = 0;
        uint64_t count = 1;
        uint64_t seed = 0;
        std::vector<TamperSpec> explicit_specs;  // used when non-empty
    } family;

    struct Eval {
        bool enabled = true;
        bool exact = true;
        double epsilon = 0.05;
        double gamma = 0.0;
        double eta = 1e-6;
        uint64_t r = 0;        // heavy-set parameter; 0 = max(2, floor(eps^2 t))
        bool all_messages = true;
        uint64_t message_sample = 0;
        uint64_t samples = 0;  // per-cell override; 0 = sample_size_plan
        uint64_t seed = 0;     // 0 = derived from code/family seeds
        bool witnesses = false;  // exact mode: also report Def-2.4 witness errors
    } eval;

    struct Attack {
        std::string kind;  // "swap" | "subset" | "barrier"
        uint64_t budget = 1ull << 22;      // swap
        std::vector<int> positions;        // subset
        double delta = 0.0, alpha = 0.0;   // subset
        int barrier_n = 0, barrier_k = 0;  // barrier
        int barrier_seeds = 1;
    };
    std::optional<Attack> attack;

    struct Output {
        std::string path;
        std::string format = "json";  // "json" | "csv"
        bool timing = false;  // wall clock is off by default so that fixed
                              // config + seeds give byte-identical reports
    } output;

    static ExperimentConfig from_json(const ojson& j);
    ojson to_json() const;
};

struct RunReport {
    ojson json;
    int build_retries = 0;

    std::string csv() const;  // flat per-(f, s) cell rows
};

// Builds the configured code, retrying rejected Monte Carlo builds up to 16
// times with derived seeds. Throws BuildError when every attempt fails.
std::shared_ptr<CodingScheme> build_configured_code(const ExperimentConfig::Code& c,
                                                    int* retries_out = nullptr);

RunReport run_experiment(const ExperimentConfig& config);

// Renders an existing JSON report as CSV (the `report` subcommand).
std::string report_json_to_csv(const ojson& report);

}  // namespace nmc
