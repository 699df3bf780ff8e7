#include "amerta/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace amerta {

std::vector<double> average_ranks(std::span<const double> values) {
    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size(), 0.0);
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j + 1 < idx.size() && values[idx[j + 1]] == values[idx[i]]) ++j;
        const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

namespace {

// Two-sided exact p-value. Ranks may be halves, so work on doubled ranks.
double exact_p_value(const std::vector<double>& ranks, double r_plus) {
    std::vector<int> doubled;
    doubled.reserve(ranks.size());
    int total = 0;
    for (double r : ranks) {
        doubled.push_back(static_cast<int>(std::lround(2.0 * r)));
        total += doubled.back();
    }
    // counts[s] = number of sign assignments with doubled W+ == s
    std::vector<double> counts(static_cast<std::size_t>(total) + 1, 0.0);
    counts[0] = 1.0;
    int reach = 0;
    for (int d : doubled) {
        for (int s = reach; s >= 0; --s) {
            counts[static_cast<std::size_t>(s + d)] += counts[static_cast<std::size_t>(s)];
        }
        reach += d;
    }
    const double all = std::ldexp(1.0, static_cast<int>(ranks.size()));
    const int w = static_cast<int>(std::lround(2.0 * r_plus));
    double lower = 0.0;
    double upper = 0.0;
    for (int s = 0; s <= total; ++s) {
        if (s <= w) lower += counts[static_cast<std::size_t>(s)];
        if (s >= w) upper += counts[static_cast<std::size_t>(s)];
    }
    return std::min(1.0, 2.0 * std::min(lower, upper) / all);
}

} // namespace

WilcoxonResult wilcoxon_signed_rank(std::span<const double> differences, double alpha) {
    std::vector<double> nonzero;
    for (double d : differences) {
        if (d != 0.0) nonzero.push_back(d);
    }
    WilcoxonResult res;
    res.pairs_used = nonzero.size();
    if (nonzero.empty()) {
        res.inconclusive = true;
        return res;
    }
    std::vector<double> magnitude(nonzero.size());
    std::transform(nonzero.begin(), nonzero.end(), magnitude.begin(),
                   [](double d) { return std::abs(d); });
    const std::vector<double> ranks = average_ranks(magnitude);
    for (std::size_t i = 0; i < nonzero.size(); ++i) {
        (nonzero[i] > 0.0 ? res.r_plus : res.r_minus) += ranks[i];
    }

    const auto m = static_cast<double>(nonzero.size());
    if (nonzero.size() <= 25) {
        res.exact = true;
        res.p_value = exact_p_value(ranks, res.r_plus);
    } else {
        std::vector<double> sorted = magnitude;
        std::sort(sorted.begin(), sorted.end());
        double tie_term = 0.0;
        for (std::size_t i = 0; i < sorted.size();) {
            std::size_t j = i;
            while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
            const auto t = static_cast<double>(j - i);
            tie_term += t * t * t - t;
            i = j;
        }
        const double mean = m * (m + 1.0) / 4.0;
        const double var = m * (m + 1.0) * (2.0 * m + 1.0) / 24.0 - tie_term / 48.0;
        if (var <= 0.0) {
            res.p_value = 1.0;
        } else {
            const double z = std::max(0.0, std::abs(res.r_plus - mean) - 0.5) / std::sqrt(var);
            res.p_value = std::erfc(z / std::sqrt(2.0));
        }
    }
    res.significant = res.p_value <= alpha;
    return res;
}

WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b,
                                    double alpha) {
    if (a.size() != b.size()) throw std::invalid_argument("wilcoxon: samples must be paired");
    std::vector<double> diff(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
    return wilcoxon_signed_rank(diff, alpha);
}

FriedmanResult friedman_ranks(const std::vector<std::vector<double>>& results,
                              bool lower_is_better) {
    if (results.size() < 2) throw std::invalid_argument("friedman: need at least two blocks");
    const std::size_t k = results.front().size();
    if (k < 2) throw std::invalid_argument("friedman: need at least two algorithms");

    FriedmanResult res;
    res.mean_ranks.assign(k, 0.0);
    for (const auto& block : results) {
        if (block.size() != k) throw std::invalid_argument("friedman: ragged result matrix");
        std::vector<double> values = block;
        if (!lower_is_better) {
            for (double& v : values) v = -v;
        }
        const auto ranks = average_ranks(values);
        for (std::size_t j = 0; j < k; ++j) res.mean_ranks[j] += ranks[j];
    }
    const auto n = static_cast<double>(results.size());
    const auto kd = static_cast<double>(k);
    double sum_sq = 0.0;
    for (double& r : res.mean_ranks) {
        r /= n;
        sum_sq += r * r;
    }
    res.statistic = 12.0 * n / (kd * (kd + 1.0)) * sum_sq - 3.0 * n * (kd + 1.0);
    return res;
}

} // namespace amerta
