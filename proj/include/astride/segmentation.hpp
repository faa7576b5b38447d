#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "astride/dataset.hpp"
#include "astride/errors.hpp"

namespace astride {

// Shortest segment the adaptive segmentation will emit. Uniform segmentation
// has no such floor (w = n is legal there).
inline constexpr std::size_t kMinAdaptiveSegmentLength = 2;

/// Segment boundaries shared by every signal of a dataset: w-1 interior
/// change indices plus the derived raw and normalized segment lengths.
struct SegmentationModel {
    std::size_t n = 0;
    std::vector<std::size_t> breakpoints;        // strictly increasing, in (0, n)
    std::vector<std::size_t> lengths;            // w entries, sum = n
    std::vector<std::size_t> normalized_lengths; // round(length / min length), >= 1

    std::size_t word_length() const { return lengths.size(); }
    std::size_t segment_start(std::size_t k) const { return k == 0 ? 0 : breakpoints[k - 1]; }
    std::size_t segment_end(std::size_t k) const {
        return k + 1 == lengths.size() ? n : breakpoints[k];
    }
};

namespace detail {

inline std::vector<std::size_t> lengths_from_breakpoints(std::size_t n,
                                                         const std::vector<std::size_t>& bps) {
    std::vector<std::size_t> lengths;
    lengths.reserve(bps.size() + 1);
    std::size_t prev = 0;
    for (std::size_t b : bps) {
        lengths.push_back(b - prev);
        prev = b;
    }
    lengths.push_back(n - prev);
    return lengths;
}

// Each length divided by the minimum length, rounded half-up, floored at 1.
inline std::vector<std::size_t> normalize_lengths(const std::vector<std::size_t>& lengths) {
    std::size_t min_len = lengths.front();
    for (std::size_t l : lengths) min_len = std::min(min_len, l);
    std::vector<std::size_t> out;
    out.reserve(lengths.size());
    for (std::size_t l : lengths) {
        const double ratio = static_cast<double>(l) / static_cast<double>(min_len);
        const auto rounded = static_cast<std::size_t>(std::floor(ratio + 0.5));
        out.push_back(std::max<std::size_t>(1, rounded));
    }
    return out;
}

inline SegmentationModel make_model(std::size_t n, std::vector<std::size_t> breakpoints) {
    SegmentationModel model;
    model.n = n;
    model.breakpoints = std::move(breakpoints);
    model.lengths = lengths_from_breakpoints(n, model.breakpoints);
    model.normalized_lengths = normalize_lengths(model.lengths);
    return model;
}

// Per-signal prefix sums of values and squared values, so any segment's
// squared deviation from its mean is an O(N) query.
struct PrefixMoments {
    std::vector<std::vector<double>> sum;   // [N][n+1]
    std::vector<std::vector<double>> sumsq; // [N][n+1]

    explicit PrefixMoments(const Dataset& data) {
        sum.resize(data.size());
        sumsq.resize(data.size());
        for (std::size_t i = 0; i < data.size(); ++i) {
            const auto& s = data.signals[i];
            sum[i].assign(s.size() + 1, 0.0);
            sumsq[i].assign(s.size() + 1, 0.0);
            for (std::size_t t = 0; t < s.size(); ++t) {
                sum[i][t + 1] = sum[i][t] + s[t];
                sumsq[i][t + 1] = sumsq[i][t] + s[t] * s[t];
            }
        }
    }

    // Sum over signals of the squared deviation from each signal's mean
    // on [start, end).
    double cost(std::size_t start, std::size_t end) const {
        const double len = static_cast<double>(end - start);
        double total = 0.0;
        for (std::size_t i = 0; i < sum.size(); ++i) {
            const double s = sum[i][end] - sum[i][start];
            const double q = sumsq[i][end] - sumsq[i][start];
            total += q - s * s / len;
        }
        return std::max(0.0, total);
    }
};

} // namespace detail

/// Uniform segmentation: breakpoint k is floor(k*n/w). Segment lengths
/// differ by at most one.
inline SegmentationModel fit_uniform(std::size_t n, std::size_t w) {
    if (w == 0)
        throw InvalidParameter("fit_uniform: word length must be at least 1");
    if (w > n)
        throw InvalidParameter("fit_uniform: word length " + std::to_string(w) +
                               " exceeds signal length " + std::to_string(n));
    std::vector<std::size_t> bps;
    bps.reserve(w - 1);
    for (std::size_t k = 1; k < w; ++k) bps.push_back(k * n / w);
    return detail::make_model(n, std::move(bps));
}

/// Total squared deviation from per-segment means over [start, end),
/// summed across all signals of the dataset.
inline double segment_cost(const Dataset& data, std::size_t start, std::size_t end) {
    if (start >= end)
        throw InvalidParameter("segment_cost: empty segment");
    if (end > data.length())
        throw InvalidParameter("segment_cost: segment end beyond signal length");
    const detail::PrefixMoments moments(data);
    return moments.cost(start, end);
}

/// Optimal change-in-mean segmentation of the stacked dataset into w
/// segments, solved exactly by dynamic programming over suffixes. Equal-cost
/// segmentations resolve to the lexicographically smallest breakpoint tuple.
inline SegmentationModel fit_adaptive(const Dataset& data, std::size_t w) {
    const std::size_t n = data.length();
    const std::size_t min_len = kMinAdaptiveSegmentLength;
    if (data.size() == 0)
        throw InvalidParameter("fit_adaptive: empty dataset");
    if (w == 0)
        throw InvalidParameter("fit_adaptive: word length must be at least 1");
    if (w > n / min_len)
        throw InvalidParameter("fit_adaptive: word length " + std::to_string(w) +
                               " infeasible for signal length " + std::to_string(n) +
                               " with minimum segment length " + std::to_string(min_len));
    data.validate();

    const detail::PrefixMoments moments(data);
    constexpr double kInf = std::numeric_limits<double>::infinity();

    // best[j][s]: minimal cost of splitting [s, n) into j segments, each of
    // length >= min_len. split[j][s]: end of the first such segment. Scanning
    // split candidates in ascending order with a strict '<' keeps the smallest
    // minimizer, so the reconstructed tuple is lexicographically smallest.
    std::vector<std::vector<double>> best(w + 1, std::vector<double>(n + 1, kInf));
    std::vector<std::vector<std::size_t>> split(w + 1, std::vector<std::size_t>(n + 1, 0));
    for (std::size_t s = 0; s + min_len <= n; ++s) best[1][s] = moments.cost(s, n);
    for (std::size_t j = 2; j <= w; ++j) {
        const std::size_t need = j * min_len;
        for (std::size_t s = 0; s + need <= n; ++s) {
            double acc = kInf;
            std::size_t arg = 0;
            const std::size_t t_max = n - (j - 1) * min_len;
            for (std::size_t t = s + min_len; t <= t_max; ++t) {
                const double candidate = moments.cost(s, t) + best[j - 1][t];
                if (candidate < acc) {
                    acc = candidate;
                    arg = t;
                }
            }
            best[j][s] = acc;
            split[j][s] = arg;
        }
    }

    std::vector<std::size_t> bps;
    bps.reserve(w - 1);
    std::size_t s = 0;
    for (std::size_t j = w; j > 1; --j) {
        s = split[j][s];
        bps.push_back(s);
    }
    return detail::make_model(n, std::move(bps));
}

/// Objective value of a segmentation on a dataset: the sum of segment costs.
inline double segmentation_objective(const Dataset& data, const SegmentationModel& model) {
    const detail::PrefixMoments moments(data);
    double total = 0.0;
    for (std::size_t k = 0; k < model.word_length(); ++k)
        total += moments.cost(model.segment_start(k), model.segment_end(k));
    return total;
}

} // namespace astride
