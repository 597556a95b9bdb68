// Command pipelines shared by the CLI and the test suites: each command
// builds the relevant structures for one polynomial and emits a Report
// whose checks drive the exit code. Everything here is deterministic for
// a fixed (input, config, version); sampling uses a fixed seed.
#pragma once

#include <string>

#include "lgring/frobenius.hpp"
#include "lgring/report.hpp"

namespace lgring {

struct RunConfig {
    std::string poly_text;
    int n = 0;
    int max_weight = 0;  // 0 = auto: n for n <= 4, else 2
    long cell_budget = 100000000L;
    int threads = 0;     // 0 = hardware concurrency
    int chain_samples = 50;
    unsigned seed = 20240901;
    ModelConfig model_a;  // default model
    ModelConfig model_b;  // comparison target (compare command)

    int effective_weight_cap() const;
    int effective_threads() const;
};

Report run_hilbert(const RunConfig& cfg);
Report run_koszul(const RunConfig& cfg);
Report run_cohomology(const RunConfig& cfg);
Report run_frobenius(const RunConfig& cfg);
Report run_compare(const RunConfig& cfg);
Report run_verify(const RunConfig& cfg);

// Dispatch by command name; throws std::invalid_argument on unknown names.
Report run_command(const std::string& command, const RunConfig& cfg);

// Batch manifest: JSON array of entries, each with "poly", "n", optional
// "command" (default verify) and the per-entry config fields. Entries are
// processed independently and aggregated in manifest order.
Report run_batch(const OrderedJson& manifest, const RunConfig& base);

}  // namespace lgring
