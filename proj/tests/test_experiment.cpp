#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "qsm/errors.hpp"
#include "qsm/experiment.hpp"
#include "qsm/stats.hpp"

using namespace qsm;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ExperimentSpec base_spec(const std::string& tag) {
    ExperimentSpec spec;
    spec.n = 3;
    spec.kappa = 2;
    spec.gamma = 0.5;
    spec.trials = 25;
    spec.backend = Backend::analytic;
    spec.seed = 99;
    spec.out_prefix = (fs::temp_directory_path() / ("qsm_test_" + tag)).string();
    return spec;
}

} // namespace

TEST_CASE("default dimension is the smallest prime above (kappa-1)n") {
    CHECK(ExperimentSpec::default_dimension(3, 2) == 5);   // > 3
    CHECK(ExperimentSpec::default_dimension(100, 10) == 907); // > 900
    CHECK(ExperimentSpec::default_dimension(2, 2) == 3);
}

TEST_CASE("spec validation: exactly one of epsilon/gamma") {
    ExperimentSpec spec = base_spec("eg");
    spec.epsilon = 1.0; // both set now
    CHECK_THROWS_AS(spec.resolve(), config_error);
    spec.gamma.reset();
    CHECK_NOTHROW(spec.resolve());
    spec.epsilon.reset();
    CHECK_THROWS_AS(spec.resolve(), config_error);
}

TEST_CASE("noiseless experiment matches the exact sum in every record") {
    ExperimentSpec spec = base_spec("noiseless");
    spec.gamma = 0.0;
    spec.trials = 100;
    std::ostringstream log;
    const ExperimentResult result = run_experiment(spec, log);
    CHECK(result.exact_match_rate == doctest::Approx(1.0));
    for (const TrialRecord& rec : result.records)
        CHECK(rec.transcript.estimate == doctest::Approx(static_cast<double>(result.true_sum)));
    CHECK(result.mean_estimate == doctest::Approx(static_cast<double>(result.true_sum)));
}

TEST_CASE("reports are byte-identical given the seed (elapsed_ns masked)") {
    ExperimentSpec s1 = base_spec("det1");
    ExperimentSpec s2 = base_spec("det2");
    std::ostringstream log;
    const ExperimentResult r1 = run_experiment(s1, log);
    const ExperimentResult r2 = run_experiment(s2, log);

    CHECK(!r1.summary_path.empty());
    CHECK(slurp(r1.summary_path) == slurp(r2.summary_path));

    const std::regex elapsed("\"elapsed_ns\":[0-9]+");
    const std::string t1 = std::regex_replace(slurp(r1.trials_path), elapsed, "E");
    const std::string t2 = std::regex_replace(slurp(r2.trials_path), elapsed, "E");
    CHECK(!t1.empty());
    CHECK(t1 == t2);

    // A different seed produces different protocol bytes.
    ExperimentSpec s3 = base_spec("det3");
    s3.seed = 100;
    const ExperimentResult r3 = run_experiment(s3, log);
    CHECK(std::regex_replace(slurp(r3.trials_path), elapsed, "E") != t1);
}

TEST_CASE("format selects which files are written") {
    ExperimentSpec spec = base_spec("fmt");
    spec.format = ExperimentSpec::Format::jsonl;
    std::ostringstream log;
    ExperimentResult r = run_experiment(spec, log);
    CHECK(!r.trials_path.empty());
    CHECK(r.summary_path.empty());

    spec.format = ExperimentSpec::Format::csv;
    r = run_experiment(spec, log);
    CHECK(r.trials_path.empty());
    CHECK(!r.summary_path.empty());

    CHECK_THROWS_AS(ExperimentSpec::format_from_name("xml"), config_error);
}

TEST_CASE("summary table carries config, aggregates, histograms and p-values") {
    ExperimentSpec spec = base_spec("summary");
    std::ostringstream log;
    const ExperimentResult r = run_experiment(spec, log);
    const std::string csv = slurp(r.summary_path);
    CHECK(csv.find("section,key,subkey,value\n") == 0);
    CHECK(csv.find("config,n,,3") != std::string::npos);
    CHECK(csv.find("aggregate,exact_match_rate,,") != std::string::npos);
    CHECK(csv.find("histogram,client_1,outcome_0,") != std::string::npos);
    CHECK(csv.find("uniformity,client_3,chi_square_pvalue,") != std::string::npos);
    CHECK(csv.find("elapsed") == std::string::npos); // timing never lands in reports

    // Histogram totals equal the trial count.
    std::int64_t total = 0;
    for (std::int64_t c : r.client_histograms[0]) total += c;
    CHECK(total == spec.trials);
}

TEST_CASE("every record line round-trips through the transcript parser") {
    ExperimentSpec spec = base_spec("roundtrip");
    spec.trials = 10;
    std::ostringstream log;
    const ExperimentResult r = run_experiment(spec, log);
    std::ifstream in(r.trials_path);
    std::string line;
    int lines = 0;
    while (std::getline(in, line)) {
        const ProtocolTranscript t = ProtocolTranscript::from_json(line);
        CHECK(t.n == 3);
        CHECK(t.seed == derive_seed(spec.seed, static_cast<std::uint64_t>(lines)));
        ++lines;
    }
    CHECK(lines == 10);
}
