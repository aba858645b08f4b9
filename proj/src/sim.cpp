#include "lrcd/sim.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>

#include "lrcd/metrics.hpp"
#include "lrcd/parallel.hpp"
#include "lrcd/rng.hpp"
#include "lrcd/select.hpp"

namespace lrcd {

namespace {

GenConfig scenario_config(const SimConfig& config, std::uint64_t replicate_seed) {
    if (config.scenario == "table1") {
        return scenario_table1(config.p11, config.beta0, replicate_seed);
    }
    if (config.scenario == "table2") {
        return scenario_table2(config.p11, config.beta0, replicate_seed);
    }
    if (config.scenario == "table3") {
        return scenario_table3(config.p11, config.k_true, replicate_seed);
    }
    throw ConfigError("unknown scenario '" + config.scenario + "'");
}

void run_replicate(const SimConfig& config, int index, ReplicateOutcome& out) {
    out.index = index;
    const std::uint64_t replicate_seed = SplitMix64::derive(config.seed,
                                                            static_cast<std::uint64_t>(index));
    SyntheticNetwork sample = generate(scenario_config(config, replicate_seed));
    // "Without logistic models" = intercept-only design; the mixture weight
    // then reduces to a fitted constant.
    const CovariateMatrix x_local =
        config.with_logistic ? sample.x
                             : CovariateMatrix::intercept_only(sample.net.node_count());

    if (config.dump_networks && !config.out_dir.empty()) {
        namespace fs = std::filesystem;
        char sub[32];
        std::snprintf(sub, sizeof(sub), "replicate_%04d", index);
        const fs::path dir = fs::path(config.out_dir) / sub;
        fs::create_directories(dir);
        const auto ids = default_node_ids(sample.net.node_count());
        save_network((dir / "edges.txt").string(), sample.net, ids);
        save_covariates((dir / "covariates.csv").string(), sample.x, ids, {"x1"});
        save_labels((dir / "labels_true.csv").string(), sample.c_true, ids);
    }

    if (config.scenario == "table3") {
        EmOptions options;
        options.restarts = config.restarts;
        options.seed = SplitMix64::derive(replicate_seed, 777);
        try {
            SelectionReport report = select_k(sample.net, x_local, config.kmin, config.kmax,
                                              config.variants.at(0), options);
            out.chosen_k_bic = report.chosen_k_bic;
            out.chosen_k_icl = report.chosen_k_icl;
        } catch (const Error& err) {
            out.failed = true;
            out.error = err.what();
        }
        return;
    }

    out.cells.resize(config.variants.size());
    for (std::size_t v = 0; v < config.variants.size(); ++v) {
        EmOptions options;
        options.restarts = config.restarts;
        options.seed = SplitMix64::derive(replicate_seed, v + 1);
        try {
            FitResult fit_result = fit(sample.net, x_local, sample.c_true.k(),
                                       config.variants[v], options);
            out.cells[v].ari = adjusted_rand_index(fit_result.c_hat, sample.c_true);
        } catch (const Error& err) {
            out.cells[v].failed = true;
            out.cells[v].error = err.what();
        }
    }
}

}  // namespace

JsonValue RunReport::to_json() const {
    JsonValue root = JsonValue::object();
    root.set("command", config.command_echo);
    root.set("scenario", config.scenario);

    JsonValue params = JsonValue::object();
    params.set("p11", config.p11);
    if (config.scenario == "table3") {
        params.set("k_true", config.k_true);
        params.set("kmin", config.kmin);
        params.set("kmax", config.kmax);
    } else {
        params.set("beta0", config.beta0);
    }
    params.set("replicates", config.replicates);
    params.set("with_logistic", config.with_logistic);
    params.set("seed", static_cast<std::int64_t>(config.seed));
    params.set("restarts", config.restarts);
    JsonValue vnames = JsonValue::array();
    for (Variant v : config.variants) vnames.push(variant_name(v));
    params.set("variants", std::move(vnames));
    root.set("parameters", std::move(params));

    JsonValue reps = JsonValue::array();
    for (const auto& rep : replicates) {
        JsonValue r = JsonValue::object();
        r.set("index", rep.index);
        if (config.scenario == "table3") {
            if (rep.failed) {
                r.set("error", rep.error);
            } else {
                r.set("chosen_k_bic", rep.chosen_k_bic);
                r.set("chosen_k_icl", rep.chosen_k_icl);
            }
        } else {
            JsonValue results = JsonValue::object();
            for (std::size_t v = 0; v < config.variants.size(); ++v) {
                JsonValue cell = JsonValue::object();
                if (rep.cells[v].failed) {
                    cell.set("error", rep.cells[v].error);
                } else {
                    cell.set("ari", rep.cells[v].ari);
                }
                results.set(variant_name(config.variants[v]), std::move(cell));
            }
            r.set("results", std::move(results));
        }
        reps.push(std::move(r));
    }
    root.set("replicates", std::move(reps));

    JsonValue agg = JsonValue::object();
    if (config.scenario == "table3") {
        JsonValue bic_hist = JsonValue::object();
        JsonValue icl_hist = JsonValue::object();
        for (int k = config.kmin; k <= config.kmax; ++k) {
            bic_hist.set(std::to_string(k), k_histogram_bic[k - config.kmin]);
            icl_hist.set(std::to_string(k), k_histogram_icl[k - config.kmin]);
        }
        agg.set("bic_histogram", std::move(bic_hist));
        agg.set("icl_histogram", std::move(icl_hist));
        agg.set("fraction_correct_bic", fraction_correct_bic);
        agg.set("fraction_correct_icl", fraction_correct_icl);
        agg.set("failures", failures);
    } else {
        for (std::size_t v = 0; v < aggregates.size(); ++v) {
            JsonValue cell = JsonValue::object();
            cell.set("mean_ari_x100", aggregates[v].mean_ari_x100);
            cell.set("sd_ari_x100", aggregates[v].sd_ari_x100);
            cell.set("failures", aggregates[v].failures);
            agg.set(variant_name(aggregates[v].variant), std::move(cell));
        }
    }
    root.set("aggregates", std::move(agg));

    JsonValue outputs = JsonValue::array();
    for (const auto& p : output_paths) outputs.push(p);
    root.set("outputs", std::move(outputs));
    return root;
}

std::string RunReport::replicate_csv() const {
    std::string out;
    if (config.scenario == "table3") {
        out = "replicate,chosen_k_bic,chosen_k_icl\n";
        for (const auto& rep : replicates) {
            if (rep.failed) continue;
            out += std::to_string(rep.index) + "," + std::to_string(rep.chosen_k_bic) + "," +
                   std::to_string(rep.chosen_k_icl) + "\n";
        }
        return out;
    }
    out = "replicate,variant,ari\n";
    for (const auto& rep : replicates) {
        for (std::size_t v = 0; v < config.variants.size(); ++v) {
            if (rep.cells[v].failed) continue;
            out += std::to_string(rep.index) + "," + variant_name(config.variants[v]) + "," +
                   format_double_17(rep.cells[v].ari) + "\n";
        }
    }
    return out;
}

RunReport run_simulation(const SimConfig& config) {
    if (config.replicates < 1) throw ConfigError("replicates must be >= 1");
    if (config.variants.empty()) throw ConfigError("at least one variant is required");
    if (config.scenario == "table3" && (config.kmin < 1 || config.kmax < config.kmin)) {
        throw ConfigError("need 1 <= kmin <= kmax");
    }
    scenario_config(config, 0);  // validate scenario parameters up front

    const auto start = std::chrono::steady_clock::now();

    RunReport report;
    report.config = config;
    report.replicates.resize(config.replicates);
    parallel_for(config.replicates, config.threads,
                 [&](int i) { run_replicate(config, i, report.replicates[i]); });

    if (config.scenario == "table3") {
        const int bins = config.kmax - config.kmin + 1;
        report.k_histogram_bic.assign(bins, 0);
        report.k_histogram_icl.assign(bins, 0);
        int ok = 0, hit_bic = 0, hit_icl = 0;
        for (const auto& rep : report.replicates) {
            if (rep.failed) {
                ++report.failures;
                continue;
            }
            ++ok;
            ++report.k_histogram_bic[rep.chosen_k_bic - config.kmin];
            ++report.k_histogram_icl[rep.chosen_k_icl - config.kmin];
            if (rep.chosen_k_bic == config.k_true) ++hit_bic;
            if (rep.chosen_k_icl == config.k_true) ++hit_icl;
        }
        const double denom = ok > 0 ? static_cast<double>(ok)
                                    : std::numeric_limits<double>::quiet_NaN();
        report.fraction_correct_bic = hit_bic / denom;
        report.fraction_correct_icl = hit_icl / denom;
    } else {
        for (std::size_t v = 0; v < config.variants.size(); ++v) {
            VariantAggregate agg;
            agg.variant = config.variants[v];
            double sum = 0.0;
            int ok = 0;
            for (const auto& rep : report.replicates) {
                if (rep.cells[v].failed) {
                    ++agg.failures;
                } else {
                    sum += rep.cells[v].ari;
                    ++ok;
                }
            }
            if (ok > 0) {
                const double mean = sum / ok;
                double ss = 0.0;
                for (const auto& rep : report.replicates) {
                    if (!rep.cells[v].failed) {
                        ss += (rep.cells[v].ari - mean) * (rep.cells[v].ari - mean);
                    }
                }
                agg.mean_ari_x100 = 100.0 * mean;
                agg.sd_ari_x100 = 100.0 * (ok > 1 ? std::sqrt(ss / (ok - 1)) : 0.0);
            } else {
                agg.mean_ari_x100 = std::numeric_limits<double>::quiet_NaN();
                agg.sd_ari_x100 = std::numeric_limits<double>::quiet_NaN();
            }
            report.failures += agg.failures;
            report.aggregates.push_back(agg);
        }
    }

    if (!config.out_dir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(config.out_dir);
        const fs::path dir(config.out_dir);
        const std::string csv_name = config.scenario == "table3" ? "selection.csv" : "ari.csv";
        report.output_paths.push_back((dir / "report.json").string());
        report.output_paths.push_back((dir / csv_name).string());
        write_text_file((dir / csv_name).string(), report.replicate_csv());
        write_text_file((dir / "report.json").string(), report.to_json().dump());
    }

    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace lrcd
