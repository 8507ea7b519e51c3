#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qsm/errors.hpp"
#include "qsm/experiment.hpp"
#include "qsm/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitVerifyFailure = 2;

int cmd_run(const qsm::ExperimentSpec& spec) {
    const qsm::ExperimentResult result = qsm::run_experiment(spec, std::cout);
    if (!result.trials_path.empty()) std::cout << "wrote " << result.trials_path << "\n";
    if (!result.summary_path.empty()) std::cout << "wrote " << result.summary_path << "\n";
    return kExitOk;
}

int cmd_verify() {
    const auto results = qsm::run_acceptance_suite(std::cout);
    if (qsm::all_passed(results)) {
        std::cout << "all " << results.size() << " criteria passed\n";
        return kExitOk;
    }
    std::cout << "verification failed\n";
    return kExitVerifyFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Qudit shuffle-model differential-privacy protocol simulator"};
    app.require_subcommand(1);

    qsm::ExperimentSpec spec;
    std::optional<std::int64_t> d;
    std::optional<double> epsilon, gamma;
    std::string backend = "statevector";
    std::string format = "both";

    CLI::App* run = app.add_subcommand("run", "run protocol trials and emit reports");
    run->add_option("--n", spec.n, "client count")->required();
    run->add_option("--kappa", spec.kappa, "randomized-response alphabet size")->required();
    run->add_option("--d", d, "prime qudit dimension (default: smallest prime > (kappa-1)n)");
    run->add_option("--epsilon", epsilon, "local privacy budget (sets gamma)");
    run->add_option("--gamma", gamma, "flip probability in [0,1]");
    run->add_option("--trials", spec.trials, "number of protocol runs");
    run->add_option("--backend", backend, "statevector|tableau|analytic");
    run->add_option("--seed", spec.seed, "master seed; reports are byte-deterministic given it");
    run->add_option("--out", spec.out_prefix, "output path prefix");
    run->add_option("--format", format, "jsonl|csv|both");

    CLI::App* verify = app.add_subcommand("verify", "run the acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitConfigError;
    }

    try {
        if (verify->parsed()) return cmd_verify();
        spec.d = d;
        spec.epsilon = epsilon;
        spec.gamma = gamma;
        spec.backend = qsm::backend_from_name(backend);
        spec.format = qsm::ExperimentSpec::format_from_name(format);
        return cmd_run(spec);
    } catch (const qsm::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const qsm::unsupported_error& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
}
