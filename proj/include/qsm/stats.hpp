#pragma once

#include <cstdint>
#include <vector>

namespace qsm {

// P(X > x) for X ~ chi-squared with `dof` degrees of freedom.
double chi_squared_sf(double x, double dof);

// Goodness-of-fit p-value of observed counts against the uniform law.
double chi_square_uniform_pvalue(const std::vector<std::int64_t>& counts);

// Two-sample chi-square p-value over a shared cell layout. Cells empty in
// both samples are skipped (dof adjusts accordingly).
double chi_square_two_sample_pvalue(const std::vector<std::int64_t>& a,
                                    const std::vector<std::int64_t>& b);

// Total variation distance between the empirical distributions of two count
// vectors over the same cells.
double total_variation(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b);

double mean(const std::vector<double>& xs);
double sample_stddev(const std::vector<double>& xs);

} // namespace qsm
