#include "qsm/stats.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

namespace qsm {

double chi_squared_sf(double x, double dof) {
    if (dof <= 0.0) throw std::domain_error("chi_squared_sf: dof must be positive");
    if (x <= 0.0) return 1.0;
    const boost::math::chi_squared dist(dof);
    return boost::math::cdf(boost::math::complement(dist, x));
}

double chi_square_uniform_pvalue(const std::vector<std::int64_t>& counts) {
    if (counts.size() < 2) throw std::domain_error("chi_square_uniform_pvalue: need >= 2 cells");
    double total = 0.0;
    for (std::int64_t c : counts) total += static_cast<double>(c);
    if (total <= 0.0) throw std::domain_error("chi_square_uniform_pvalue: empty sample");
    const double expected = total / static_cast<double>(counts.size());
    double stat = 0.0;
    for (std::int64_t c : counts) {
        const double diff = static_cast<double>(c) - expected;
        stat += diff * diff / expected;
    }
    return chi_squared_sf(stat, static_cast<double>(counts.size() - 1));
}

double chi_square_two_sample_pvalue(const std::vector<std::int64_t>& a,
                                    const std::vector<std::int64_t>& b) {
    if (a.size() != b.size()) throw std::domain_error("chi_square_two_sample: cell count mismatch");
    double na = 0.0, nb = 0.0;
    for (std::int64_t c : a) na += static_cast<double>(c);
    for (std::int64_t c : b) nb += static_cast<double>(c);
    if (na <= 0.0 || nb <= 0.0) throw std::domain_error("chi_square_two_sample: empty sample");

    double stat = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double pooled = static_cast<double>(a[i] + b[i]);
        if (pooled == 0.0) continue;
        ++used;
        const double ea = na * pooled / (na + nb);
        const double eb = nb * pooled / (na + nb);
        const double da = static_cast<double>(a[i]) - ea;
        const double db = static_cast<double>(b[i]) - eb;
        stat += da * da / ea + db * db / eb;
    }
    if (used < 2) throw std::domain_error("chi_square_two_sample: fewer than 2 occupied cells");
    return chi_squared_sf(stat, static_cast<double>(used - 1));
}

double total_variation(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
    if (a.size() != b.size()) throw std::domain_error("total_variation: cell count mismatch");
    double na = 0.0, nb = 0.0;
    for (std::int64_t c : a) na += static_cast<double>(c);
    for (std::int64_t c : b) nb += static_cast<double>(c);
    if (na <= 0.0 || nb <= 0.0) throw std::domain_error("total_variation: empty sample");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += std::abs(static_cast<double>(a[i]) / na - static_cast<double>(b[i]) / nb);
    return 0.5 * acc;
}

double mean(const std::vector<double>& xs) {
    if (xs.empty()) throw std::domain_error("mean: empty sample");
    double acc = 0.0;
    for (double x : xs) acc += x;
    return acc / static_cast<double>(xs.size());
}

double sample_stddev(const std::vector<double>& xs) {
    if (xs.size() < 2) throw std::domain_error("sample_stddev: need >= 2 values");
    const double m = mean(xs);
    double acc = 0.0;
    for (double x : xs) acc += (x - m) * (x - m);
    return std::sqrt(acc / static_cast<double>(xs.size() - 1));
}

} // namespace qsm
