#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qsm/protocol.hpp"

namespace qsm {

// Batch experiment description as assembled from the command line. Exactly
// one of epsilon/gamma must be supplied; d defaults to the smallest prime
// greater than (kappa-1)n. Client inputs are generated as x_i = i mod kappa.
struct ExperimentSpec {
    enum class Format { jsonl, csv, both };

    std::int64_t n = 0;
    std::int64_t kappa = 0;
    std::optional<std::int64_t> d;
    std::optional<double> epsilon;
    std::optional<double> gamma;
    std::int64_t trials = 100;
    Backend backend = Backend::statevector;
    std::uint64_t seed = 1;
    std::string out_prefix = "experiment";
    Format format = Format::both;

    static std::int64_t default_dimension(std::int64_t n, std::int64_t kappa);
    static Format format_from_name(const std::string& name); // config_error on unknown

    // Resolved protocol config (seed field left as the master seed).
    ProtocolConfig resolve() const;
};

struct TrialRecord {
    std::int64_t trial_index = 0;
    std::int64_t elapsed_ns = 0;
    ProtocolTranscript transcript;
};

struct ExperimentResult {
    ProtocolConfig config;
    std::vector<std::int64_t> inputs;
    std::int64_t true_sum = 0;
    std::vector<TrialRecord> records;

    double mean_estimate = 0.0;
    double exact_match_rate = 0.0; // fraction of trials with z == sum y_i
    std::vector<std::vector<std::int64_t>> client_histograms; // [client][outcome]
    std::vector<double> client_uniformity_pvalues;
    double mean_trial_ns = 0.0; // console-only; never written to report files

    std::string trials_path;  // empty when not written
    std::string summary_path; // empty when not written
};

// One JSONL line: the transcript fields plus trial_index and elapsed_ns.
std::string render_trial_record(const TrialRecord& record);

// Deterministic comma-separated summary table (no timing fields).
std::string render_summary_csv(const ExperimentResult& result);

// Runs `trials` protocol instances across a worker pool (per-trial RNG
// streams derived from the master seed by trial index; results assembled in
// trial order), writes the report files per `format`, and logs aggregate
// wall-clock to `log`.
ExperimentResult run_experiment(const ExperimentSpec& spec, std::ostream& log);

// Per-stream seed used for trial `index`; exposed so replaying one trial of
// a report is possible without rerunning the whole experiment.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

} // namespace qsm
