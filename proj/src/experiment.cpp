#include "nmc/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <set>

#include "nmc/errors.hpp"
#include "nmc/harness.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nmc {

namespace {

constexpr int kMcBuildRetryCap = 16;

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const ojson& j) {
    ExperimentConfig c;
    try {
        const ojson& jc = j.at("code");
        c.code.kind = jc.value("kind", "");
        if (jc.contains("path")) {
            c.code.load_path = jc.at("path").get<std::string>();
        } else {
            c.code.params = code_params_from_json(jc);
        }
        c.code.strict = jc.value("strict", false);

        if (j.contains("family")) {
            const ojson& jf = j.at("family");
            if (jf.contains("specs")) {
                for (const auto& js : jf.at("specs")) {
                    c.family.explicit_specs.push_back(tamper_from_json(js));
                }
                c.family.kind = "explicit";
                c.family.count = c.family.explicit_specs.size();
            } else {
                c.family.kind = jf.value("kind", "identity");
                c.family.n = jf.value("n", 0);
                c.family.count = jf.value("count", 1ull);
                c.family.seed = jf.value("seed", 0ull);
            }
        } else {
            c.eval.enabled = false;
        }

        if (j.contains("eval")) {
            const ojson& je = j.at("eval");
            std::string mode = je.value("mode", "exact");
            if (mode != "exact" && mode != "sampled") {
                throw ValidationError("eval.mode must be 'exact' or 'sampled'");
            }
            c.eval.exact = mode == "exact";
            c.eval.epsilon = je.value("epsilon", 0.05);
            c.eval.gamma = je.value("gamma", 0.0);
            c.eval.eta = je.value("eta", 1e-6);
            c.eval.r = je.value("r", 0ull);
            c.eval.samples = je.value("samples", 0ull);
            c.eval.seed = je.value("seed", 0ull);
            c.eval.witnesses = je.value("witnesses", false);
            if (!(c.eval.epsilon > 0.0 && c.eval.epsilon < 1.0)) {
                throw ValidationError("eval.epsilon must be in (0, 1)");
            }
            if (!(c.eval.gamma >= 0.0 && c.eval.gamma < c.eval.epsilon)) {
                throw ValidationError("eval.gamma must be in [0, epsilon)");
            }
            if (!(c.eval.eta > 0.0 && c.eval.eta <= 1.0)) {
                throw ValidationError("eval.eta must be in (0, 1]");
            }
            if (je.contains("messages")) {
                const ojson& jm = je.at("messages");
                if (jm.is_string() && jm.get<std::string>() == "all") {
                    c.eval.all_messages = true;
                } else if (jm.is_object() && jm.contains("sample")) {
                    c.eval.all_messages = false;
                    c.eval.message_sample = jm.at("sample").get<uint64_t>();
                } else {
                    throw ValidationError("eval.messages must be \"all\" or {\"sample\": count}");
                }
            }
        }

        if (j.contains("attack") && !j.at("attack").is_null()) {
            const ojson& ja = j.at("attack");
            Attack a;
            a.kind = ja.at("kind").get<std::string>();
            a.budget = ja.value("budget", 1ull << 22);
            if (ja.contains("positions")) a.positions = ja.at("positions").get<std::vector<int>>();
            a.delta = ja.value("delta", 0.0);
            a.alpha = ja.value("alpha", 0.0);
            a.barrier_n = ja.value("n", 0);
            a.barrier_k = ja.value("k", 0);
            a.barrier_seeds = ja.value("seeds", 1);
            if (a.kind != "swap" && a.kind != "subset" && a.kind != "barrier") {
                throw ValidationError("attack.kind must be swap, subset, or barrier");
            }
            c.attack = std::move(a);
        }

        if (j.contains("output")) {
            const ojson& jo = j.at("output");
            c.output.path = jo.value("path", "");
            c.output.format = jo.value("format", "json");
            c.output.timing = jo.value("timing", false);
            if (c.output.format != "json" && c.output.format != "csv") {
                throw ValidationError("output.format must be json or csv");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("bad experiment config: ") + e.what());
    }
    return c;
}

ojson ExperimentConfig::to_json() const {
    ojson j;
    ojson jc = code.load_path.empty() ? code_params_to_json(code.params) : ojson{};
    jc["kind"] = code.kind;
    if (!code.load_path.empty()) jc["path"] = code.load_path;
    jc["strict"] = code.strict;
    j["code"] = std::move(jc);

    ojson jf;
    if (!family.explicit_specs.empty()) {
        ojson specs = ojson::array();
        for (const auto& f : family.explicit_specs) specs.push_back(tamper_to_json(f));
        jf["specs"] = std::move(specs);
    } else {
        jf["kind"] = family.kind;
        jf["n"] = family.n;
        jf["count"] = family.count;
        jf["seed"] = family.seed;
    }
    j["family"] = std::move(jf);

    j["eval"] = ojson{{"mode", eval.exact ? "exact" : "sampled"},
                      {"epsilon", eval.epsilon},
                      {"gamma", eval.gamma},
                      {"eta", eval.eta},
                      {"r", eval.r},
                      {"messages", eval.all_messages
                                       ? ojson("all")
                                       : ojson{{"sample", eval.message_sample}}},
                      {"samples", eval.samples},
                      {"seed", eval.seed},
                      {"witnesses", eval.witnesses}};
    if (attack) {
        ojson ja{{"kind", attack->kind}};
        if (attack->kind == "swap") ja["budget"] = attack->budget;
        if (attack->kind == "subset") {
            ja["positions"] = attack->positions;
            ja["delta"] = attack->delta;
            ja["alpha"] = attack->alpha;
        }
        if (attack->kind == "barrier") {
            ja["n"] = attack->barrier_n;
            ja["k"] = attack->barrier_k;
            ja["seeds"] = attack->barrier_seeds;
        }
        j["attack"] = std::move(ja);
    }
    // the output block is deliberately not echoed: reports stay byte-identical
    // no matter where they are written
    return j;
}

std::shared_ptr<CodingScheme> build_configured_code(const ExperimentConfig::Code& c,
                                                    int* retries_out) {
    if (retries_out) *retries_out = 0;
    if (!c.load_path.empty()) {
        return code_from_json(read_json_file(c.load_path)).code;
    }
    if (c.kind == "table") {
        RngStream rng(c.params.seed);
        return std::make_shared<TableCode>(TableCode::build(c.params, rng));
    }
    if (c.kind == "mc") {
        for (int attempt = 0; attempt < kMcBuildRetryCap; ++attempt) {
            uint64_t seed =
                attempt == 0 ? c.params.seed : RngStream::mix(c.params.seed, attempt);
            RngStream rng(seed);
            try {
                auto code = std::make_shared<MonteCarloCode>(MonteCarloCode::build(
                    c.params, rng,
                    c.strict ? MonteCarloCode::Validation::strict
                             : MonteCarloCode::Validation::fast));
                return code;
            } catch (const BuildError&) {
                if (retries_out) ++*retries_out;
            }
        }
        throw BuildError("mc build rejected " + std::to_string(kMcBuildRetryCap) +
                         " times; parameters are likely off (Lemma-4.3 failures should be rare)");
    }
    throw ValidationError("code.kind must be 'table' or 'mc'");
}

RunReport run_experiment(const ExperimentConfig& config) {
    auto t_start = std::chrono::steady_clock::now();

    RunReport report;
    std::shared_ptr<CodingScheme> code = build_configured_code(config.code, &report.build_retries);

    ojson out;
    out["format_version"] = kFormatVersion;
    out["config"] = config.to_json();
    out["build"] = ojson{{"kind", config.code.kind},
                         {"n", code->block_bits()},
                         {"k", code->message_bits()},
                         {"retries", report.build_retries}};

    // tampering family
    std::vector<TamperSpec> family;
    if (!config.family.explicit_specs.empty()) {
        family = config.family.explicit_specs;
    } else if (config.eval.enabled) {
        int fn = config.family.n ? config.family.n : code->block_bits();
        if (fn != code->block_bits()) {
            throw ValidationError("family width does not match code block length");
        }
        RngStream rng(config.family.seed);
        family = sample_family(config.family.kind, fn, config.family.count, rng);
    }

    if (config.eval.enabled && !family.empty()) {
        const auto& ev = config.eval;
        uint64_t eval_seed = ev.seed ? ev.seed
                                     : RngStream::mix(config.code.params.seed,
                                                      config.family.seed ^ 0x5eedull);

        // message list
        std::vector<uint64_t> messages;
        if (ev.all_messages) {
            if (code->message_bits() > 20) {
                throw ValidationError("eval over all messages requires k <= 20");
            }
            messages.resize(code->message_count());
            for (uint64_t s = 0; s < messages.size(); ++s) messages[s] = s;
        } else {
            if (ev.message_sample < 2) {
                throw ValidationError("eval.messages.sample must be >= 2");
            }
            if (ev.message_sample > code->message_count()) {
                throw ValidationError("eval.messages.sample exceeds 2^k");
            }
            RngStream mrng(RngStream::mix(eval_seed, 0xa11ull));
            std::set<uint64_t> seen;
            while (seen.size() < ev.message_sample) {
                seen.insert(mrng.bits(code->message_bits()));
            }
            messages.assign(seen.begin(), seen.end());
        }

        uint64_t t = config.code.params.t;
        uint64_t r = ev.r ? ev.r : default_heavy_r(ev.epsilon, t ? t : 2);
        uint64_t cell_samples = 0;
        if (!ev.exact) {
            cell_samples = ev.samples ? ev.samples
                                      : sample_size_plan(r + 2, ev.epsilon, ev.gamma, ev.eta);
        }

        // evaluation grid; cells are independent, so fan out. Exceptions may
        // not cross the parallel region, so the first one is parked and
        // rethrown afterwards.
        size_t nf = family.size(), nm = messages.size();
        std::vector<OutcomeDist> cells(nf * nm);
        std::exception_ptr grid_error = nullptr;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) collapse(2)
#endif
        for (int64_t fi = 0; fi < static_cast<int64_t>(nf); ++fi) {
            for (int64_t mi = 0; mi < static_cast<int64_t>(nm); ++mi) {
                try {
                    const TamperSpec& f = family[static_cast<size_t>(fi)];
                    uint64_t s = messages[static_cast<size_t>(mi)];
                    size_t idx = static_cast<size_t>(fi) * nm + static_cast<size_t>(mi);
                    if (ev.exact) {
                        cells[idx] = tamper_dist_strong_exact(*code, f, s);
                    } else {
                        RngStream cell_rng(
                            RngStream::mix(eval_seed, static_cast<uint64_t>(idx) + 1));
                        cells[idx] =
                            tamper_dist_strong_sampled(*code, f, s, cell_samples, cell_rng);
                    }
                } catch (...) {
#ifdef _OPENMP
#pragma omp critical(nmc_grid_error)
#endif
                    if (!grid_error) grid_error = std::current_exception();
                }
            }
        }
        if (grid_error) std::rethrow_exception(grid_error);

        ojson jmsgs = ojson::array();
        for (uint64_t s : messages) jmsgs.push_back(u64_to_hex(s));
        out["eval"] = ojson{{"mode", ev.exact ? "exact" : "sampled"},
                            {"r", r},
                            {"samples_per_cell", cell_samples},
                            {"seed", eval_seed},
                            {"messages", std::move(jmsgs)}};

        ojson jfs = ojson::array();
        double max_strong = 0.0, sum_strong = 0.0;
        double max_witness_best = 0.0;
        for (size_t fi = 0; fi < nf; ++fi) {
            const TamperSpec& f = family[fi];
            double strong = 0.0;
            for (size_t i = 0; i < nm; ++i) {
                for (size_t j = i + 1; j < nm; ++j) {
                    strong = std::max(strong, stat_dist(cells[fi * nm + i], cells[fi * nm + j]));
                }
            }
            max_strong = std::max(max_strong, strong);
            sum_strong += strong;

            ojson jf{{"f_id", fi},
                     {"spec", tamper_to_json(f, f.n() <= 16)},
                     {"strong_error", strong}};
            ojson per_msg = ojson::object();
            for (size_t mi = 0; mi < nm; ++mi) {
                per_msg[u64_to_hex(messages[mi])] = outcome_dist_to_json(cells[fi * nm + mi]);
            }
            jf["per_message"] = std::move(per_msg);
            if (ev.exact && ev.witnesses) {
                NmWitnessErrors we = nm_error_witnesses_exact(*code, f, messages, r);
                jf["witness_errors"] = ojson{{"canonical", we.canonical},
                                             {"point_bot", we.point_bot},
                                             {"point_same", we.point_same},
                                             {"remark_sampler", we.remark_sampler},
                                             {"best", we.best()}};
                max_witness_best = std::max(max_witness_best, we.best());
            }
            jfs.push_back(std::move(jf));
        }
        out["fs"] = std::move(jfs);
        ojson agg{{"max_strong_error", max_strong},
                  {"mean_strong_error", sum_strong / static_cast<double>(nf)}};
        if (ev.exact && ev.witnesses) agg["max_witness_best_error"] = max_witness_best;
        out["aggregate"] = std::move(agg);
    }

    if (config.attack) {
        const auto& a = *config.attack;
        if (a.kind == "swap") {
            out["attack"] = ojson{{"kind", "swap"},
                                  {"result", swap_result_to_json(swap_attack(*code, a.budget))}};
        } else if (a.kind == "subset") {
            out["attack"] =
                ojson{{"kind", "subset"},
                      {"result", subset_outcome_to_json(
                                     subset_attack(*code, a.positions, a.delta, a.alpha))}};
        } else if (a.kind == "barrier") {
            ojson runs = ojson::array();
            for (int i = 0; i < a.barrier_seeds; ++i) {
                RngStream rng(RngStream::mix(config.code.params.seed, 0xbeefull + i));
                runs.push_back(
                    barrier_report_to_json(uniform_barrier_experiment(a.barrier_n, a.barrier_k, rng)));
            }
            out["attack"] = ojson{{"kind", "barrier"}, {"runs", std::move(runs)}};
        }
    }

    if (config.output.timing) {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t_start)
                      .count();
        out["timing_ms"] = ms;
    }

    report.json = std::move(out);

    if (!config.output.path.empty()) {
        std::string bytes = config.output.format == "csv" ? report.csv()
                                                          : report.json.dump(2) + "\n";
        write_file_atomic(config.output.path, bytes);
    }
    return report;
}

std::string report_json_to_csv(const ojson& report) {
    std::string csv = "family_kind,f_id,message_hex,outcome,probability,radius\n";
    if (!report.contains("fs")) return csv;
    for (const auto& jf : report.at("fs")) {
        std::string kind = jf.at("spec").at("kind").get<std::string>();
        uint64_t f_id = jf.at("f_id").get<uint64_t>();
        for (const auto& [msg, jd] : jf.at("per_message").items()) {
            double radius = jd.value("radius", 0.0);
            for (const auto& [outcome, prob] : jd.at("mass").items()) {
                csv += kind + "," + std::to_string(f_id) + "," + msg + "," + outcome + "," +
                       format_g17(prob.get<double>()) + "," + format_g17(radius) + "\n";
            }
        }
    }
    return csv;
}

std::string RunReport::csv() const { return report_json_to_csv(json); }

}  // namespace nmc
