#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "astride/dataset.hpp"
#include "astride/distance.hpp"
#include "astride/errors.hpp"
#include "astride/parallel.hpp"
#include "astride/quantization.hpp"
#include "astride/reconstruction.hpp"
#include "astride/segmentation.hpp"

namespace astride {

enum class Method { sax, sax1d, sfa, astride, fastride };

inline std::string_view to_string(Method m) {
    switch (m) {
    case Method::sax: return "sax";
    case Method::sax1d: return "sax1d";
    case Method::sfa: return "sfa";
    case Method::astride: return "astride";
    case Method::fastride: return "fastride";
    }
    return "?";
}

inline Method method_from_string(std::string_view name) {
    if (name == "sax") return Method::sax;
    if (name == "sax1d" || name == "1d-sax") return Method::sax1d;
    if (name == "sfa") return Method::sfa;
    if (name == "astride") return Method::astride;
    if (name == "fastride") return Method::fastride;
    throw InvalidParameter("unknown method '" + std::string(name) + "'");
}

/// Requested symbolization: method, word length w, alphabet size A. For
/// sax1d the alphabet factors as A = A_mean * A_slope; when the factors are
/// not given explicitly, a perfect-square A splits evenly.
struct SymbolizerSpec {
    Method method = Method::sax;
    std::size_t word_length = 0;
    std::size_t alphabet = 0;
    std::size_t alphabet_mean = 0;  // sax1d only
    std::size_t alphabet_slope = 0; // sax1d only

    void normalize() {
        if (word_length < 1)
            throw InvalidParameter("spec: word length must be at least 1");
        if (method == Method::sax1d) {
            if (alphabet_mean == 0 && alphabet_slope == 0) {
                const auto root = static_cast<std::size_t>(std::lround(std::sqrt(
                    static_cast<double>(alphabet))));
                if (root * root != alphabet)
                    throw InvalidParameter(
                        "spec: sax1d needs explicit mean/slope alphabets when A is not a "
                        "perfect square");
                alphabet_mean = alphabet_slope = root;
            }
            if (alphabet_mean < 2 || alphabet_slope < 2)
                throw InvalidParameter("spec: sax1d mean and slope alphabets must be at least 2");
            if (alphabet != 0 && alphabet != alphabet_mean * alphabet_slope)
                throw InvalidParameter("spec: sax1d alphabet must equal A_mean * A_slope");
            alphabet = alphabet_mean * alphabet_slope;
        }
        if (alphabet < 2)
            throw InvalidParameter("spec: alphabet size must be at least 2");
    }
};

/// Mean and ordinary-least-squares slope of one segment. A single-sample
/// segment has slope 0.
struct SegmentLine {
    double mean = 0.0;
    double slope = 0.0;
};

inline SegmentLine slope_and_mean(std::span<const double> signal, std::size_t start,
                                  std::size_t end) {
    if (start >= end || end > signal.size())
        throw InvalidParameter("slope_and_mean: empty or out-of-range segment");
    const std::size_t len = end - start;
    SegmentLine line;
    line.mean = mean(signal.subspan(start, len));
    if (len == 1) return line;
    // OLS over local timestamps 0..len-1: slope = cov(t, y) / var(t).
    const double t_mean = (static_cast<double>(len) - 1.0) / 2.0;
    double cov = 0.0;
    double var_t = 0.0;
    for (std::size_t t = 0; t < len; ++t) {
        const double dt = static_cast<double>(t) - t_mean;
        cov += dt * (signal[start + t] - line.mean);
        var_t += dt * dt;
    }
    line.slope = cov / var_t;
    return line;
}

/// The w lowest-frequency DFT coefficients, interleaved as
/// (Re c0, Im c0, Re c1, Im c1, ...) and truncated to w values.
inline std::vector<double> sfa_coefficients(std::span<const double> signal, std::size_t w) {
    const std::size_t n = signal.size();
    if (w > n)
        throw InvalidParameter("sfa_coefficients: word length " + std::to_string(w) +
                               " exceeds signal length " + std::to_string(n));
    std::vector<double> out;
    out.reserve(w);
    const std::size_t coeff_count = (w + 1) / 2;
    for (std::size_t m = 0; m < coeff_count; ++m) {
        std::complex<double> c{0.0, 0.0};
        for (std::size_t t = 0; t < n; ++t) {
            const double angle =
                -2.0 * std::numbers::pi * static_cast<double>(m) * static_cast<double>(t) /
                static_cast<double>(n);
            c += signal[t] * std::complex<double>(std::cos(angle), std::sin(angle));
        }
        out.push_back(c.real());
        if (out.size() < w) out.push_back(c.imag());
    }
    return out;
}

/// Hash of the training data, kept with the fitted model to diagnose
/// train/test model mixups.
struct DatasetFingerprint {
    std::size_t count = 0;
    std::size_t length = 0;
    std::uint64_t hash = 0;
};

namespace detail {

inline DatasetFingerprint fingerprint(const Dataset& data) {
    DatasetFingerprint fp;
    fp.count = data.size();
    fp.length = data.length();
    std::uint64_t h = 14695981039346656037ULL; // FNV-1a
    for (const auto& signal : data.signals) {
        for (double v : signal) {
            std::uint64_t bits;
            std::memcpy(&bits, &v, sizeof(bits));
            for (int byte = 0; byte < 8; ++byte) {
                h ^= (bits >> (8 * byte)) & 0xffu;
                h *= 1099511628211ULL;
            }
        }
    }
    fp.hash = h;
    return fp;
}

} // namespace detail

/// A fitted symbolizer: the segmentation and quantization models a method
/// needs, reusable for transforming any dataset of the fitted length.
struct FittedSymbolizer {
    SymbolizerSpec spec;
    std::size_t n = 0;
    std::optional<SegmentationModel> segmentation; // absent for SFA
    std::vector<QuantizationModel> quantizers;     // 1; sax1d: [mean, slope]; SFA: w MCB models
    DatasetFingerprint fingerprint;

    const QuantizationModel& primary_quantizer() const { return quantizers.front(); }
    const QuantizationModel& mean_quantizer() const { return quantizers[0]; }
    const QuantizationModel& slope_quantizer() const { return quantizers[1]; }

    SymbolicSequence transform_one(std::span<const double> signal) const {
        if (signal.size() != n)
            throw ShapeError("transform: signal length " + std::to_string(signal.size()) +
                             " does not match fitted length " + std::to_string(n));
        SymbolicSequence seq;
        seq.reserve(spec.word_length);
        switch (spec.method) {
        case Method::sax:
        case Method::astride:
        case Method::fastride: {
            for (double m : segment_means(signal, *segmentation))
                seq.push_back(assign(m, primary_quantizer()));
            break;
        }
        case Method::sax1d: {
            const auto a_slope = static_cast<Symbol>(spec.alphabet_slope);
            for (std::size_t k = 0; k < segmentation->word_length(); ++k) {
                const SegmentLine line = slope_and_mean(signal, segmentation->segment_start(k),
                                                        segmentation->segment_end(k));
                const Symbol mean_sym = assign(line.mean, mean_quantizer());
                const Symbol slope_sym = assign(line.slope, slope_quantizer());
                seq.push_back(static_cast<Symbol>(mean_sym * a_slope + slope_sym));
            }
            break;
        }
        case Method::sfa: {
            const std::vector<double> coeffs = sfa_coefficients(signal, spec.word_length);
            for (std::size_t k = 0; k < coeffs.size(); ++k)
                seq.push_back(assign(coeffs[k], quantizers[k]));
            break;
        }
        }
        return seq;
    }

    std::vector<SymbolicSequence> transform(const Dataset& data) const {
        if (data.length() != n)
            throw ShapeError("transform: dataset signal length " + std::to_string(data.length()) +
                             " does not match fitted length " + std::to_string(n));
        std::vector<SymbolicSequence> out(data.size());
        detail::parallel_for(data.size(), [&](std::size_t i) {
            out[i] = transform_one(data.signals[i]);
        }, 16);
        return out;
    }

    std::vector<double> inverse_transform(const SymbolicSequence& seq) const {
        switch (spec.method) {
        case Method::sax:
        case Method::astride:
        case Method::fastride:
            return reconstruct_piecewise(seq, *segmentation, primary_quantizer());
        case Method::sax1d:
            return reconstruct_sax1d(seq, *segmentation, mean_quantizer(), slope_quantizer());
        case Method::sfa:
            return reconstruct_sfa(seq, quantizers, n);
        }
        throw InvalidParameter("inverse_transform: unknown method");
    }

    /// D-GED operation costs from this model's bin representatives.
    CostModel cost_model() const {
        if (spec.method == Method::sax1d || spec.method == Method::sfa)
            throw InvalidParameter("cost_model: D-GED costs are defined for mean-per-segment "
                                   "methods only");
        return CostModel::from_representatives(primary_quantizer().representatives);
    }

    /// Normalized segment lengths used to replicate sequences before D-GED.
    /// Empty for uniform segmentations, where replication is skipped.
    std::span<const std::size_t> replication_lengths() const {
        if (spec.method == Method::astride) return segmentation->normalized_lengths;
        return {};
    }
};

/// Fits a symbolizer on a (normalized) training dataset.
inline FittedSymbolizer fit(SymbolizerSpec spec, const Dataset& train) {
    spec.normalize();
    if (train.size() == 0)
        throw InvalidParameter("fit: empty training dataset");
    train.validate();
    const std::size_t n = train.length();

    FittedSymbolizer model;
    model.spec = spec;
    model.n = n;
    model.fingerprint = detail::fingerprint(train);

    switch (spec.method) {
    case Method::sax: {
        model.segmentation = fit_uniform(n, spec.word_length);
        model.quantizers.push_back(gaussian_bins(spec.alphabet));
        break;
    }
    case Method::sax1d: {
        model.segmentation = fit_uniform(n, spec.word_length);
        model.quantizers.push_back(gaussian_bins(spec.alphabet_mean));
        const std::size_t seg_len = std::max<std::size_t>(1, n / spec.word_length);
        model.quantizers.push_back(fit_1dsax_slope_bins(spec.alphabet_slope, seg_len));
        break;
    }
    case Method::astride:
    case Method::fastride: {
        model.segmentation = spec.method == Method::astride
                                 ? fit_adaptive(train, spec.word_length)
                                 : fit_uniform(n, spec.word_length);
        std::vector<double> all_means;
        all_means.reserve(train.size() * spec.word_length);
        for (const auto& signal : train.signals)
            for (double m : segment_means(signal, *model.segmentation)) all_means.push_back(m);
        model.quantizers.push_back(fit_quantile_bins(all_means, spec.alphabet));
        break;
    }
    case Method::sfa: {
        std::vector<std::vector<double>> rows(train.size());
        detail::parallel_for(train.size(), [&](std::size_t i) {
            rows[i] = sfa_coefficients(train.signals[i], spec.word_length);
        }, 8);
        model.quantizers = fit_mcb(rows, spec.alphabet);
        break;
    }
    }
    return model;
}

} // namespace astride
