#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "qsm/rng.hpp"

namespace qsm {

// kappa-ary randomized response: keep the input with probability 1-gamma,
// otherwise report a uniform value in {0,...,kappa-1}.
struct RandomizerConfig {
    std::int64_t kappa = 2;
    double gamma = 0.0;
    std::optional<double> epsilon; // source of gamma when provided

    static RandomizerConfig from_epsilon(std::int64_t kappa, double epsilon);
    static RandomizerConfig from_gamma(std::int64_t kappa, double gamma);
};

// gamma = kappa / (kappa - 1 + e^epsilon); the epsilon-DP flip probability.
double gamma_from_epsilon(std::int64_t kappa, double epsilon);

// One randomized-response draw. Consumes the RNG in a fixed order: the
// Bernoulli(gamma) branch first, then (only on the noise branch) one uniform
// draw over {0,...,kappa-1}.
std::int64_t randomize(std::int64_t x, const RandomizerConfig& config, Rng& rng);

// De-biased sum estimate (1/(1-gamma)) (sum_z - gamma (kappa-1) n / 2).
double debias(std::int64_t sum_z, std::int64_t n, std::int64_t kappa, double gamma);

struct PrivacyBudget {
    double epsilon = 0.0;
    double delta = 0.0;
    std::int64_t invocations = 1;
};

// Sequential composition: t invocations of an (eps, delta)-DP mechanism are
// (t eps, t delta)-DP.
std::pair<double, double> compose(const PrivacyBudget& budget);

} // namespace qsm
