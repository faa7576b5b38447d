#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "astride/errors.hpp"
#include "astride/math.hpp"
#include "astride/segmentation.hpp"

namespace astride {

using Symbol = std::uint16_t;
using SymbolicSequence = std::vector<Symbol>;

/// Ordered bin boundaries plus one representative value per symbol: the
/// shared symbol dictionary.
struct QuantizationModel {
    std::size_t alphabet = 0;
    std::vector<double> boundaries;      // A-1 sorted cut points
    std::vector<double> representatives; // A values, one per symbol
};

/// Symbol for a value: the bin index with boundary[a-1] <= value < boundary[a]
/// (implicit -inf/+inf outer boundaries). A value equal to a boundary goes to
/// the upper bin.
inline Symbol assign(double value, const QuantizationModel& model) {
    const auto& b = model.boundaries;
    const auto it = std::upper_bound(b.begin(), b.end(), value);
    return static_cast<Symbol>(it - b.begin());
}

/// Mean of the samples inside each segment, in segment order.
inline std::vector<double> segment_means(std::span<const double> signal,
                                         const SegmentationModel& seg) {
    if (signal.size() != seg.n)
        throw ShapeError("segment_means: signal length " + std::to_string(signal.size()) +
                         " does not match segmentation length " + std::to_string(seg.n));
    std::vector<double> means;
    means.reserve(seg.word_length());
    for (std::size_t k = 0; k < seg.word_length(); ++k) {
        const auto start = seg.segment_start(k);
        const auto end = seg.segment_end(k);
        means.push_back(mean(signal.subspan(start, end - start)));
    }
    return means;
}

/// Equiprobable bins from the empirical k/A quantiles of the training values;
/// each representative is the mean of the training values that fall in its
/// bin. Empty bins (possible with ties) fall back to the bin's boundary
/// midpoint.
inline QuantizationModel fit_quantile_bins(std::span<const double> values, std::size_t alphabet) {
    if (alphabet < 2)
        throw InvalidParameter("fit_quantile_bins: alphabet size must be at least 2");
    if (values.empty())
        throw InvalidParameter("fit_quantile_bins: no training values");

    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());

    QuantizationModel model;
    model.alphabet = alphabet;
    model.boundaries.reserve(alphabet - 1);
    for (std::size_t k = 1; k < alphabet; ++k)
        model.boundaries.push_back(
            quantile_sorted(sorted, static_cast<double>(k) / static_cast<double>(alphabet)));

    std::vector<double> sums(alphabet, 0.0);
    std::vector<std::size_t> counts(alphabet, 0);
    for (double v : values) {
        const Symbol a = assign(v, model);
        sums[a] += v;
        ++counts[a];
    }
    model.representatives.resize(alphabet);
    for (std::size_t a = 0; a < alphabet; ++a) {
        if (counts[a] > 0) {
            model.representatives[a] = sums[a] / static_cast<double>(counts[a]);
        } else {
            // Midpoint of the bin, with the infinite outer edges clamped to
            // the nearest finite boundary.
            const double lo = a == 0 ? model.boundaries.front() : model.boundaries[a - 1];
            const double hi = a == alphabet - 1 ? model.boundaries.back() : model.boundaries[a];
            model.representatives[a] = (lo + hi) / 2.0;
        }
    }
    return model;
}

/// Fixed bins under a standard Gaussian assumption: boundaries at the k/A
/// normal quantiles, representatives at the equiprobable-bin medians.
inline QuantizationModel gaussian_bins(std::size_t alphabet) {
    if (alphabet < 2)
        throw InvalidParameter("gaussian_bins: alphabet size must be at least 2");
    QuantizationModel model;
    model.alphabet = alphabet;
    model.boundaries.reserve(alphabet - 1);
    for (std::size_t k = 1; k < alphabet; ++k)
        model.boundaries.push_back(
            inverse_normal_cdf(static_cast<double>(k) / static_cast<double>(alphabet)));
    model.representatives.reserve(alphabet);
    for (std::size_t a = 0; a < alphabet; ++a)
        model.representatives.push_back(
            inverse_normal_cdf((static_cast<double>(a) + 0.5) / static_cast<double>(alphabet)));
    return model;
}

/// Gaussian bins for per-segment regression slopes, scaled to the slope
/// variance 0.03 / segment_length.
inline QuantizationModel fit_1dsax_slope_bins(std::size_t alphabet_slope,
                                              std::size_t segment_length) {
    if (segment_length < 1)
        throw InvalidParameter("fit_1dsax_slope_bins: segment length must be at least 1");
    QuantizationModel model = gaussian_bins(alphabet_slope);
    const double scale = std::sqrt(0.03 / static_cast<double>(segment_length));
    for (double& b : model.boundaries) b *= scale;
    for (double& r : model.representatives) r *= scale;
    return model;
}

/// Multiple Coefficient Binning: one quantile model per coefficient position,
/// fitted column-wise over the dataset's coefficient rows.
inline std::vector<QuantizationModel> fit_mcb(const std::vector<std::vector<double>>& rows,
                                              std::size_t alphabet) {
    if (rows.empty())
        throw InvalidParameter("fit_mcb: no coefficient rows");
    const std::size_t width = rows.front().size();
    for (const auto& r : rows)
        if (r.size() != width)
            throw ShapeError("fit_mcb: coefficient rows have differing widths");

    std::vector<QuantizationModel> models;
    models.reserve(width);
    std::vector<double> column(rows.size());
    for (std::size_t j = 0; j < width; ++j) {
        for (std::size_t i = 0; i < rows.size(); ++i) column[i] = rows[i][j];
        models.push_back(fit_quantile_bins(column, alphabet));
    }
    return models;
}

} // namespace astride
