#include "qsm/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "qsm/arith.hpp"
#include "qsm/errors.hpp"
#include "qsm/stats.hpp"

namespace qsm {

namespace {

std::string format_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int worker_count(std::int64_t jobs) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const auto cap = static_cast<unsigned>(std::min<std::int64_t>(jobs, 8));
    return static_cast<int>(std::min(hw, cap > 0 ? cap : 1));
}

} // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    // Same mixing as Rng::derive, surfaced so a single trial is replayable.
    std::uint64_t x = master + 0x9E3779B97F4A7C15ull * (index + 1);
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::int64_t ExperimentSpec::default_dimension(std::int64_t n, std::int64_t kappa) {
    std::int64_t candidate = (kappa - 1) * n + 1;
    if (candidate < 2) candidate = 2;
    while (!is_prime(candidate)) ++candidate;
    return candidate;
}

ExperimentSpec::Format ExperimentSpec::format_from_name(const std::string& name) {
    if (name == "jsonl") return Format::jsonl;
    if (name == "csv") return Format::csv;
    if (name == "both") return Format::both;
    throw config_error("unknown format '" + name + "' (jsonl|csv|both)");
}

ProtocolConfig ExperimentSpec::resolve() const {
    if (epsilon.has_value() == gamma.has_value())
        throw config_error("supply exactly one of --epsilon and --gamma");
    if (trials < 1) throw config_error("trials must be >= 1");

    ProtocolConfig config;
    config.n = n;
    config.kappa = kappa;
    config.d = d.value_or(default_dimension(n, kappa));
    config.randomizer = epsilon ? RandomizerConfig::from_epsilon(kappa, *epsilon)
                                : RandomizerConfig::from_gamma(kappa, *gamma);
    config.backend = backend;
    config.seed = seed;
    config.validate();
    return config;
}

std::string render_trial_record(const TrialRecord& record) {
    nlohmann::json j = nlohmann::json::parse(record.transcript.to_json());
    j["trial_index"] = record.trial_index;
    j["elapsed_ns"] = record.elapsed_ns;
    return j.dump();
}

std::string render_summary_csv(const ExperimentResult& result) {
    std::string out = "section,key,subkey,value\n";
    auto row = [&out](const std::string& a, const std::string& b, const std::string& c,
                      const std::string& v) { out += a + "," + b + "," + c + "," + v + "\n"; };

    row("config", "n", "", std::to_string(result.config.n));
    row("config", "kappa", "", std::to_string(result.config.kappa));
    row("config", "d", "", std::to_string(result.config.d));
    row("config", "gamma", "", format_double(result.config.randomizer.gamma));
    row("config", "backend", "", backend_name(result.config.backend));
    row("config", "seed", "", std::to_string(result.config.seed));
    row("config", "trials", "", std::to_string(result.records.size()));
    row("aggregate", "true_sum", "", std::to_string(result.true_sum));
    row("aggregate", "mean_estimate", "", format_double(result.mean_estimate));
    row("aggregate", "exact_match_rate", "", format_double(result.exact_match_rate));
    for (std::size_t c = 0; c < result.client_histograms.size(); ++c) {
        const std::string client = "client_" + std::to_string(c + 1);
        for (std::size_t v = 0; v < result.client_histograms[c].size(); ++v)
            row("histogram", client, "outcome_" + std::to_string(v),
                std::to_string(result.client_histograms[c][v]));
    }
    for (std::size_t c = 0; c < result.client_uniformity_pvalues.size(); ++c)
        row("uniformity", "client_" + std::to_string(c + 1), "chi_square_pvalue",
            format_double(result.client_uniformity_pvalues[c]));
    return out;
}

ExperimentResult run_experiment(const ExperimentSpec& spec, std::ostream& log) {
    ExperimentResult result;
    result.config = spec.resolve();

    result.inputs.resize(result.config.n);
    for (std::int64_t i = 0; i < result.config.n; ++i) {
        result.inputs[i] = i % result.config.kappa;
        result.true_sum += result.inputs[i];
    }

    result.records.resize(spec.trials);
    std::atomic<std::int64_t> next{0};
    const int workers = worker_count(spec.trials);
    auto work = [&] {
        for (;;) {
            const std::int64_t t = next.fetch_add(1);
            if (t >= spec.trials) return;
            ProtocolConfig config = result.config;
            config.seed = derive_seed(spec.seed, static_cast<std::uint64_t>(t));
            const auto start = std::chrono::steady_clock::now();
            ProtocolTranscript transcript = run_protocol(config, result.inputs);
            const auto stop = std::chrono::steady_clock::now();
            result.records[t] = TrialRecord{
                t, std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count(),
                std::move(transcript)};
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& th : pool) th.join();

    // Aggregate in trial order.
    result.client_histograms.assign(result.config.n,
                                    std::vector<std::int64_t>(result.config.d, 0));
    double estimate_sum = 0.0;
    std::int64_t matches = 0;
    double ns_sum = 0.0;
    for (const TrialRecord& rec : result.records) {
        estimate_sum += rec.transcript.estimate;
        std::int64_t y_sum = 0;
        for (std::int64_t c = 0; c < result.config.n; ++c) {
            const ClientRecord& cr = rec.transcript.clients[c];
            y_sum += cr.y;
            result.client_histograms[c][cr.z] += 1;
        }
        if (rec.transcript.z == y_sum) ++matches;
        ns_sum += static_cast<double>(rec.elapsed_ns);
    }
    result.mean_estimate = estimate_sum / static_cast<double>(spec.trials);
    result.exact_match_rate = static_cast<double>(matches) / static_cast<double>(spec.trials);
    result.mean_trial_ns = ns_sum / static_cast<double>(spec.trials);
    for (std::int64_t c = 0; c < result.config.n; ++c)
        result.client_uniformity_pvalues.push_back(
            chi_square_uniform_pvalue(result.client_histograms[c]));

    if (spec.format == ExperimentSpec::Format::jsonl || spec.format == ExperimentSpec::Format::both) {
        result.trials_path = spec.out_prefix + ".trials.jsonl";
        std::ofstream out(result.trials_path, std::ios::binary | std::ios::trunc);
        if (!out) throw config_error("cannot write " + result.trials_path);
        for (const TrialRecord& rec : result.records) out << render_trial_record(rec) << "\n";
    }
    if (spec.format == ExperimentSpec::Format::csv || spec.format == ExperimentSpec::Format::both) {
        result.summary_path = spec.out_prefix + ".summary.csv";
        std::ofstream out(result.summary_path, std::ios::binary | std::ios::trunc);
        if (!out) throw config_error("cannot write " + result.summary_path);
        out << render_summary_csv(result);
    }

    // Wall-clock stays on the console so report bytes are seed-deterministic.
    log << "ran " << spec.trials << " trials on " << workers << " workers, mean "
        << format_double(result.mean_trial_ns / 1e6) << " ms/trial\n";
    log << "mean estimate " << format_double(result.mean_estimate) << " (true sum "
        << result.true_sum << "), exact-match rate " << format_double(result.exact_match_rate)
        << "\n";
    return result;
}

} // namespace qsm
