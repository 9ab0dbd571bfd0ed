// Experiment CLI: plan parameters, build codes, evaluate tampering
// families, run attacks, and render reports.
//
// Exit codes: 0 ok, 2 validation failure, 3 build failure after retries,
// 4 I/O failure.

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "nmc/errors.hpp"
#include "nmc/experiment.hpp"
#include "nmc/planner.hpp"

namespace {

int run(int argc, char** argv) {
    CLI::App app{"non-malleable code experiments"};
    app.require_subcommand(1);

    // plan
    auto* plan = app.add_subcommand("plan", "Theorem-3.1 parameter planner");
    int plan_n = 0;
    double family_log = 0, eps = 0.1, eta = 1e-6, delta = 0;
    nmc::PlannerConstants consts;
    plan->add_option("--n", plan_n, "block length")->required();
    plan->add_option("--family-log-size", family_log, "log2 |F|")->required();
    plan->add_option("--eps", eps, "target error");
    plan->add_option("--eta", eta, "construction failure probability");
    plan->add_option("--delta", delta, "relative distance");
    plan->add_option("--ct", consts.c_t, "constant in t0");
    plan->add_option("--ck", consts.c_k, "constant in k0");

    // shared config/seed/out options for the remaining subcommands
    std::string config_path, out_path, mode_override;
    uint64_t seed_override = 0;
    bool have_seed = false;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "experiment config JSON")->required();
        cmd->add_option("--out", out_path, "output path (overrides config)");
        cmd->add_option("--mode", mode_override, "eval mode override: exact|sampled");
        cmd->add_option_function<uint64_t>(
            "--seed", [&](uint64_t v) { seed_override = v; have_seed = true; },
            "code seed override");
    };

    auto* build = app.add_subcommand("build", "build a code and write it out");
    add_common(build);
    auto* eval = app.add_subcommand("eval", "evaluate a tampering family");
    add_common(eval);
    auto* attack = app.add_subcommand("attack", "run the configured attack");
    add_common(attack);

    auto* report = app.add_subcommand("report", "render a JSON report as CSV");
    std::string report_in, report_out;
    report->add_option("--in", report_in, "report JSON path")->required();
    report->add_option("--out", report_out, "CSV output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    if (plan->parsed()) {
        nmc::PlannedParams p = nmc::plan_parameters(plan_n, family_log, eps, eta, delta, consts);
        std::printf("n                %d\n", plan_n);
        std::printf("log2 |F|         %.6g\n", family_log);
        std::printf("eps              %.6g\n", eps);
        std::printf("eta              %.6g\n", eta);
        std::printf("delta            %.6g\n", delta);
        std::printf("t0               %llu\n", static_cast<unsigned long long>(p.t0));
        std::printf("k0               %d\n", p.k0);
        std::printf("rate k0/n        %.6g\n", static_cast<double>(p.k0) / plan_n);
        return 0;
    }

    if (report->parsed()) {
        nmc::ojson j = nmc::read_json_file(report_in);
        std::string csv = nmc::report_json_to_csv(j);
        if (report_out.empty()) {
            std::fwrite(csv.data(), 1, csv.size(), stdout);
        } else {
            nmc::write_file_atomic(report_out, csv);
        }
        return 0;
    }

    nmc::ExperimentConfig config =
        nmc::ExperimentConfig::from_json(nmc::read_json_file(config_path));
    if (have_seed) config.code.params.seed = seed_override;
    if (!out_path.empty()) config.output.path = out_path;
    if (!mode_override.empty()) {
        if (mode_override != "exact" && mode_override != "sampled") {
            throw nmc::ValidationError("--mode must be exact or sampled");
        }
        config.eval.exact = mode_override == "exact";
    }

    if (build->parsed()) {
        int retries = 0;
        auto code = nmc::build_configured_code(config.code, &retries);
        std::string path = config.output.path.empty() ? "code.json" : config.output.path;
        nmc::write_file_atomic(path, nmc::code_to_json(*code).dump(2) + "\n");
        std::fprintf(stderr, "built %s code (n=%d, k=%d, retries=%d) -> %s\n",
                     config.code.kind.c_str(), code->block_bits(), code->message_bits(), retries,
                     path.c_str());
        return 0;
    }

    if (eval->parsed() || attack->parsed()) {
        if (eval->parsed() && !config.eval.enabled) {
            throw nmc::ValidationError("eval subcommand needs a 'family' config section");
        }
        if (attack->parsed()) {
            config.eval.enabled = false;
            if (!config.attack) {
                throw nmc::ValidationError("attack subcommand needs an 'attack' config section");
            }
        }
        nmc::RunReport rep = nmc::run_experiment(config);
        if (config.output.path.empty()) {
            std::string bytes = config.output.format == "csv" ? rep.csv()
                                                              : rep.json.dump(2) + "\n";
            std::fwrite(bytes.data(), 1, bytes.size(), stdout);
        } else {
            std::fprintf(stderr, "report written to %s\n", config.output.path.c_str());
        }
        return 0;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const nmc::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const nmc::BuildError& e) {
        std::fprintf(stderr, "build error: %s\n", e.what());
        return 3;
    } catch (const nmc::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
