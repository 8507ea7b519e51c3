#include "qsm/dp.hpp"

#include <cmath>
#include <stdexcept>

namespace qsm {

double gamma_from_epsilon(std::int64_t kappa, double epsilon) {
    if (kappa < 2) throw std::domain_error("gamma_from_epsilon: kappa must be >= 2");
    if (!(epsilon >= 0.0)) throw std::domain_error("gamma_from_epsilon: epsilon must be >= 0");
    return static_cast<double>(kappa) / (static_cast<double>(kappa) - 1.0 + std::exp(epsilon));
}

RandomizerConfig RandomizerConfig::from_epsilon(std::int64_t kappa, double epsilon) {
    RandomizerConfig c;
    c.kappa = kappa;
    c.gamma = gamma_from_epsilon(kappa, epsilon);
    c.epsilon = epsilon;
    return c;
}

RandomizerConfig RandomizerConfig::from_gamma(std::int64_t kappa, double gamma) {
    if (kappa < 2) throw std::domain_error("RandomizerConfig: kappa must be >= 2");
    if (!(gamma >= 0.0 && gamma <= 1.0))
        throw std::domain_error("RandomizerConfig: gamma must lie in [0, 1]");
    RandomizerConfig c;
    c.kappa = kappa;
    c.gamma = gamma;
    return c;
}

std::int64_t randomize(std::int64_t x, const RandomizerConfig& config, Rng& rng) {
    if (x < 0 || x >= config.kappa) throw std::domain_error("randomize: input out of range");
    const bool noise = rng.bernoulli(config.gamma);
    if (!noise) return x;
    return static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(config.kappa)));
}

double debias(std::int64_t sum_z, std::int64_t n, std::int64_t kappa, double gamma) {
    if (gamma == 1.0) throw std::domain_error("debias: estimator undefined at gamma = 1");
    const double bias = gamma * static_cast<double>(kappa - 1) * static_cast<double>(n) / 2.0;
    return (static_cast<double>(sum_z) - bias) / (1.0 - gamma);
}

std::pair<double, double> compose(const PrivacyBudget& budget) {
    if (budget.invocations < 1) throw std::domain_error("compose: invocations must be >= 1");
    const auto t = static_cast<double>(budget.invocations);
    return {t * budget.epsilon, t * budget.delta};
}

} // namespace qsm
