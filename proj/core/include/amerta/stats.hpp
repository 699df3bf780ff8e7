#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace amerta {

struct WilcoxonResult {
    double r_plus = 0.0;
    double r_minus = 0.0;
    std::size_t pairs_used = 0; // non-zero differences
    double p_value = 1.0;       // two-sided
    bool significant = false;   // p_value <= alpha
    bool exact = false;         // exact null distribution rather than normal approximation
    bool inconclusive = false;  // every difference was zero
};

/// Signed-rank test on paired differences. Zero differences are dropped and
/// tied magnitudes share their average rank. Up to 25 pairs the p-value comes
/// from the exact null distribution, beyond that from the tie-corrected normal
/// approximation with continuity correction.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> differences, double alpha = 0.05);

/// Convenience overload on two paired samples (differences a[i] - b[i]).
WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b,
                                    double alpha = 0.05);

struct FriedmanResult {
    std::vector<double> mean_ranks; // per algorithm, rank 1 = best
    double statistic = 0.0;         // chi-square form, k - 1 degrees of freedom
};

/// `results[block][algorithm]`. Ranks are taken within each block, ties averaged.
/// Throws std::invalid_argument with fewer than 2 algorithms or 2 blocks.
FriedmanResult friedman_ranks(const std::vector<std::vector<double>>& results,
                              bool lower_is_better = true);

/// 1-based ranks of `values` in ascending order, ties averaged.
std::vector<double> average_ranks(std::span<const double> values);

} // namespace amerta
