// Command-line front end: simulate / fit / select / metrics / generate.
#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "lrcd/em.hpp"
#include "lrcd/io.hpp"
#include "lrcd/metrics.hpp"
#include "lrcd/select.hpp"
#include "lrcd/sim.hpp"
#include "lrcd/synth.hpp"

namespace {

constexpr int kExitIngest = 2;
constexpr int kExitFit = 3;

std::vector<lrcd::Variant> parse_variants(const std::vector<std::string>& names) {
    std::vector<lrcd::Variant> out;
    for (const auto& name : names) {
        auto v = lrcd::variant_from_name(name);
        if (!v) throw lrcd::ConfigError("unknown variant '" + name + "'");
        out.push_back(*v);
    }
    return out;
}

std::string echo_command(int argc, char** argv) {
    std::string cmd;
    for (int i = 0; i < argc; ++i) {
        if (i) cmd += ' ';
        cmd += argv[i];
    }
    return cmd;
}

// Two-sided normal tail for the Wald z statistics.
double wald_p_value(double z) { return std::erfc(std::abs(z) / std::sqrt(2.0)); }

lrcd::JsonValue fit_report_json(const lrcd::FitResult& fit, const lrcd::CovariateMatrix& x,
                                const std::vector<std::string>& covariate_names) {
    using lrcd::JsonValue;
    JsonValue beta = JsonValue::array();
    const auto se = lrcd::wald_standard_errors(x, fit.params.beta);
    for (std::size_t j = 0; j < fit.params.beta.size(); ++j) {
        JsonValue coef = JsonValue::object();
        coef.set("name", j == 0 ? std::string("(intercept)")
                                : (j - 1 < covariate_names.size() ? covariate_names[j - 1]
                                                                  : "x" + std::to_string(j)));
        coef.set("estimate", fit.params.beta[j]);
        coef.set("wald_se", se[j]);
        const double z = se[j] > 0.0 ? fit.params.beta[j] / se[j] : 0.0;
        coef.set("wald_z", z);
        coef.set("wald_p", wald_p_value(z));
        beta.push(std::move(coef));
    }

    JsonValue root = JsonValue::object();
    root.set("variant", lrcd::variant_name(fit.params.variant));
    root.set("k", fit.params.k);
    root.set("final_pseudo_log_likelihood", fit.final_pll);
    root.set("outer_iterations", fit.outer_iterations);
    root.set("outer_stable", fit.outer_stable);
    root.set("winning_restart", fit.restart_index);
    root.set("coefficients", std::move(beta));

    JsonValue pi = JsonValue::array();
    for (double v : fit.params.pi) pi.push(v);
    root.set("pi", std::move(pi));

    JsonValue rates = JsonValue::array();
    for (int l = 0; l <= fit.params.k; ++l) {
        JsonValue row = JsonValue::array();
        for (int j = 0; j < fit.params.rate_cols(); ++j) row.push(fit.params.rate_at(l, j));
        rates.push(std::move(row));
    }
    root.set(fit.params.variant == lrcd::Variant::multinomial ? "theta" : "lambda",
             std::move(rates));

    JsonValue warnings = JsonValue::array();
    for (const auto& w : fit.warnings) warnings.push(w);
    root.set("warnings", std::move(warnings));
    return root;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Community detection with an irrelevant background group: "
                 "pseudo-likelihood EM fitters with a logistic relevance model"};
    app.require_subcommand(1);

    // ---- simulate ----
    auto* simulate = app.add_subcommand("simulate", "Run a synthetic-network study");
    lrcd::SimConfig sim_config;
    std::vector<std::string> variant_names{"poisson", "multinomial", "robust"};
    bool logistic_flag = true;
    simulate->add_option("--scenario", sim_config.scenario, "table1|table2|table3")
        ->required()
        ->check(CLI::IsMember({"table1", "table2", "table3"}));
    simulate->add_option("--p11", sim_config.p11, "within-community link probability");
    simulate->add_option("--beta0", sim_config.beta0, "logistic intercept (tables 1-2)");
    simulate->add_option("--k-true", sim_config.k_true, "true community count (table3)");
    simulate->add_option("--replicates", sim_config.replicates, "replicate count");
    simulate->add_option("--variant", variant_names, "fitters to run")
        ->delimiter(',');
    simulate->add_flag("--logistic,!--no-logistic", logistic_flag,
                       "use covariates (default) or an intercept-only design");
    simulate->add_option("--seed", sim_config.seed, "master seed");
    simulate->add_option("--restarts", sim_config.restarts, "random restarts per fit");
    simulate->add_option("--threads", sim_config.threads, "worker threads (0 = hardware)");
    simulate->add_option("--kmin", sim_config.kmin, "scan start (table3)");
    simulate->add_option("--kmax", sim_config.kmax, "scan end (table3)");
    simulate->add_option("--out", sim_config.out_dir, "output directory")->required();
    simulate->add_flag("--dump-networks", sim_config.dump_networks,
                       "also write each replicate's network files");

    // ---- fit ----
    auto* fit_cmd = app.add_subcommand("fit", "Fit one network from files");
    std::string edges_path, covariates_path, out_path, variant_name = "robust";
    int fit_k = 2;
    int fit_restarts = 10;
    std::uint64_t fit_seed = 0;
    fit_cmd->add_option("--edges", edges_path, "edge list file")->required();
    fit_cmd->add_option("--covariates", covariates_path, "covariate CSV")->required();
    fit_cmd->add_option("--k", fit_k, "community count")->required();
    fit_cmd->add_option("--variant", variant_name, "poisson|multinomial|robust");
    fit_cmd->add_option("--restarts", fit_restarts, "random restarts");
    fit_cmd->add_option("--seed", fit_seed, "seed");
    fit_cmd->add_option("--out", out_path, "report JSON path")->required();

    // ---- select ----
    auto* select_cmd = app.add_subcommand("select", "Scan K and pick by BIC/ICL");
    std::string sel_edges, sel_covariates, sel_out, sel_variant = "robust";
    std::string criterion = "both";
    int kmin = 1, kmax = 8, sel_restarts = 10;
    std::uint64_t sel_seed = 0;
    select_cmd->add_option("--edges", sel_edges)->required();
    select_cmd->add_option("--covariates", sel_covariates)->required();
    select_cmd->add_option("--kmin", kmin);
    select_cmd->add_option("--kmax", kmax);
    select_cmd->add_option("--variant", sel_variant);
    select_cmd->add_option("--criterion", criterion)
        ->check(CLI::IsMember({"bic", "icl", "both"}));
    select_cmd->add_option("--restarts", sel_restarts);
    select_cmd->add_option("--seed", sel_seed);
    select_cmd->add_option("--out", sel_out, "optional report JSON path");

    // ---- metrics ----
    auto* metrics_cmd = app.add_subcommand("metrics", "Partition-agreement metrics");
    auto* ari_cmd = metrics_cmd->add_subcommand("ari", "adjusted Rand index of two label files");
    std::string labels_a, labels_b;
    ari_cmd->add_option("--a", labels_a)->required();
    ari_cmd->add_option("--b", labels_b)->required();
    metrics_cmd->require_subcommand(1);

    // ---- generate ----
    auto* generate_cmd =
        app.add_subcommand("generate", "Write one synthetic network to files");
    std::string gen_scenario = "table1", gen_out;
    double gen_p11 = 0.25, gen_beta0 = 0.0;
    int gen_k_true = 2;
    std::uint64_t gen_seed = 0;
    generate_cmd->add_option("--scenario", gen_scenario)
        ->check(CLI::IsMember({"table1", "table2", "table3"}));
    generate_cmd->add_option("--p11", gen_p11);
    generate_cmd->add_option("--beta0", gen_beta0);
    generate_cmd->add_option("--k-true", gen_k_true);
    generate_cmd->add_option("--seed", gen_seed);
    generate_cmd->add_option("--out", gen_out, "output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*simulate) {
            sim_config.variants = parse_variants(variant_names);
            sim_config.with_logistic = logistic_flag;
            sim_config.command_echo = echo_command(argc, argv);
            const lrcd::RunReport report = lrcd::run_simulation(sim_config);
            std::printf("scenario=%s replicates=%d elapsed=%.1fs\n",
                        report.config.scenario.c_str(), report.config.replicates,
                        report.elapsed_seconds);
            if (report.config.scenario == "table3") {
                std::printf("fraction correct: BIC=%.3f ICL=%.3f (failures: %d)\n",
                            report.fraction_correct_bic, report.fraction_correct_icl,
                            report.failures);
            } else {
                for (const auto& agg : report.aggregates) {
                    std::printf("%-12s mean ARI x100 = %6.2f (sd %.2f, failures %d)\n",
                                lrcd::variant_name(agg.variant), agg.mean_ari_x100,
                                agg.sd_ari_x100, agg.failures);
                }
            }
            for (const auto& p : report.output_paths) std::printf("wrote %s\n", p.c_str());
            return 0;
        }
        if (*fit_cmd) {
            auto variant = lrcd::variant_from_name(variant_name);
            if (!variant) throw lrcd::ConfigError("unknown variant '" + variant_name + "'");
            const lrcd::LoadedNetwork loaded = lrcd::load_network(edges_path);
            const lrcd::LoadedCovariates cov = lrcd::load_covariates(covariates_path, loaded.ids);
            lrcd::EmOptions options;
            options.restarts = fit_restarts;
            options.seed = fit_seed;
            const lrcd::FitResult result =
                lrcd::fit(loaded.net, cov.x, fit_k, *variant, options);
            lrcd::write_text_file(out_path,
                                  fit_report_json(result, cov.x, cov.names).dump());
            const std::string labels_path = out_path + ".labels.csv";
            lrcd::save_labels(labels_path, result.c_hat, loaded.ids);
            std::printf("pll=%.6f restart=%d outer=%d\nwrote %s\nwrote %s\n",
                        result.final_pll, result.restart_index, result.outer_iterations,
                        out_path.c_str(), labels_path.c_str());
            return 0;
        }
        if (*select_cmd) {
            auto variant = lrcd::variant_from_name(sel_variant);
            if (!variant) throw lrcd::ConfigError("unknown variant '" + sel_variant + "'");
            const lrcd::LoadedNetwork loaded = lrcd::load_network(sel_edges);
            const lrcd::LoadedCovariates cov = lrcd::load_covariates(sel_covariates, loaded.ids);
            lrcd::EmOptions options;
            options.restarts = sel_restarts;
            options.seed = sel_seed;
            const lrcd::SelectionReport report =
                lrcd::select_k(loaded.net, cov.x, kmin, kmax, *variant, options);
            std::printf("%4s %16s %16s %16s\n", "K", "joint-loglik", "BIC", "ICL");
            for (const auto& rec : report.records) {
                if (rec.failed) {
                    std::printf("%4d failed: %s\n", rec.k, rec.error.c_str());
                } else {
                    std::printf("%4d %16.4f %16.4f %16.4f\n", rec.k, rec.joint_loglik, rec.bic,
                                rec.icl);
                }
            }
            if (criterion != "icl") std::printf("chosen K (BIC): %d\n", report.chosen_k_bic);
            if (criterion != "bic") std::printf("chosen K (ICL): %d\n", report.chosen_k_icl);
            if (!sel_out.empty()) {
                lrcd::JsonValue root = lrcd::JsonValue::object();
                root.set("criterion", criterion);
                lrcd::JsonValue recs = lrcd::JsonValue::array();
                for (const auto& rec : report.records) {
                    lrcd::JsonValue r = lrcd::JsonValue::object();
                    r.set("k", rec.k);
                    if (rec.failed) {
                        r.set("error", rec.error);
                    } else {
                        r.set("joint_loglik", rec.joint_loglik);
                        r.set("bic", rec.bic);
                        r.set("icl", rec.icl);
                    }
                    recs.push(std::move(r));
                }
                root.set("records", std::move(recs));
                root.set("chosen_k_bic", report.chosen_k_bic);
                root.set("chosen_k_icl", report.chosen_k_icl);
                lrcd::write_text_file(sel_out, root.dump());
                std::printf("wrote %s\n", sel_out.c_str());
            }
            return 0;
        }
        if (*ari_cmd) {
            const auto [a, b] = lrcd::load_label_pair(labels_a, labels_b);
            std::printf("%s\n", lrcd::format_double_17(lrcd::adjusted_rand_index(a, b)).c_str());
            return 0;
        }
        if (*generate_cmd) {
            lrcd::GenConfig config;
            if (gen_scenario == "table1") {
                config = lrcd::scenario_table1(gen_p11, gen_beta0, gen_seed);
            } else if (gen_scenario == "table2") {
                config = lrcd::scenario_table2(gen_p11, gen_beta0, gen_seed);
            } else {
                config = lrcd::scenario_table3(gen_p11, gen_k_true, gen_seed);
            }
            const lrcd::SyntheticNetwork sample = lrcd::generate(config);
            namespace fs = std::filesystem;
            fs::create_directories(gen_out);
            const auto ids = lrcd::default_node_ids(sample.net.node_count());
            lrcd::save_network((fs::path(gen_out) / "edges.txt").string(), sample.net, ids);
            lrcd::save_covariates((fs::path(gen_out) / "covariates.csv").string(), sample.x,
                                  ids, {"x1"});
            lrcd::save_labels((fs::path(gen_out) / "labels_true.csv").string(), sample.c_true,
                              ids);
            std::printf("wrote %s/{edges.txt,covariates.csv,labels_true.csv}\n",
                        gen_out.c_str());
            return 0;
        }
    } catch (const lrcd::IngestError& err) {
        std::fprintf(stderr, "ingest error: %s\n", err.what());
        return kExitIngest;
    } catch (const lrcd::JoinError& err) {
        std::fprintf(stderr, "join error: %s\n", err.what());
        return kExitIngest;
    } catch (const lrcd::ConfigError& err) {
        std::fprintf(stderr, "config error: %s\n", err.what());
        return kExitIngest;
    } catch (const lrcd::Error& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return kExitFit;
    }
    return 0;
}
