#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lrcd/em.hpp"
#include "lrcd/io.hpp"
#include "lrcd/synth.hpp"

namespace lrcd {

struct SimConfig {
    std::string scenario = "table1";  // table1 | table2 | table3
    double p11 = 0.25;
    double beta0 = 0.0;   // tables 1-2
    int k_true = 2;       // table3: 2 or 5
    int replicates = 100;
    std::vector<Variant> variants{Variant::robust};
    bool with_logistic = true;
    std::uint64_t seed = 0;
    int restarts = 10;
    int threads = 0;  // 0 = hardware concurrency
    int kmin = 1;
    int kmax = 8;     // table3 scan range
    std::string out_dir;        // empty = no files written
    bool dump_networks = false;
    std::string command_echo;
};

struct VariantCell {
    double ari = 0.0;
    bool failed = false;
    std::string error;
};

struct ReplicateOutcome {
    int index = 0;
    std::vector<VariantCell> cells;  // aligned with SimConfig::variants (tables 1-2)
    int chosen_k_bic = 0;            // table3
    int chosen_k_icl = 0;
    bool failed = false;
    std::string error;
};

struct VariantAggregate {
    Variant variant = Variant::robust;
    double mean_ari_x100 = 0.0;  // NaN when every replicate failed
    double sd_ari_x100 = 0.0;
    int failures = 0;
};

struct RunReport {
    SimConfig config;
    std::vector<ReplicateOutcome> replicates;
    std::vector<VariantAggregate> aggregates;  // tables 1-2
    // table3 histograms over kmin..kmax (index 0 = kmin) and hit fractions.
    std::vector<int> k_histogram_bic;
    std::vector<int> k_histogram_icl;
    double fraction_correct_bic = 0.0;
    double fraction_correct_icl = 0.0;
    int failures = 0;
    std::vector<std::string> output_paths;
    // Wall-clock time; reported on the console only. The JSON report must be
    // byte-identical for identical (seed, flags), so timings stay out of it.
    double elapsed_seconds = 0.0;

    JsonValue to_json() const;
    std::string replicate_csv() const;  // per-replicate ARI (tables 1-2) or chosen K rows
};

// Generate replicates from the scenario, fit each requested variant, score it
// against the planted labels, and aggregate. Replicates run on a bounded
// worker pool; per-replicate RNG streams are derived from (seed, index), so
// the report does not depend on thread count. Writes report.json and the CSV
// into out_dir when set.
RunReport run_simulation(const SimConfig& config);

}  // namespace lrcd
