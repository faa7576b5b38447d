#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "astride/errors.hpp"
#include "astride/quantization.hpp"
#include "astride/segmentation.hpp"

namespace astride {

/// Piecewise constant reconstruction: segment k is held at the representative
/// of its symbol, replicated over the segment's raw length.
inline std::vector<double> reconstruct_piecewise(const SymbolicSequence& seq,
                                                 const SegmentationModel& seg,
                                                 const QuantizationModel& quant) {
    if (seq.size() != seg.word_length())
        throw ShapeError("reconstruct_piecewise: sequence length " + std::to_string(seq.size()) +
                         " does not match word length " + std::to_string(seg.word_length()));
    std::vector<double> out(seg.n);
    for (std::size_t k = 0; k < seq.size(); ++k) {
        const double value = quant.representatives[seq[k]];
        for (std::size_t t = seg.segment_start(k); t < seg.segment_end(k); ++t) out[t] = value;
    }
    return out;
}

/// Line-per-segment reconstruction for combined mean/slope symbols. Each
/// segment is the line through (segment midpoint, mean representative) with
/// the slope representative, so the segment mean is preserved.
inline std::vector<double> reconstruct_sax1d(const SymbolicSequence& seq,
                                             const SegmentationModel& seg,
                                             const QuantizationModel& mean_quant,
                                             const QuantizationModel& slope_quant) {
    if (seq.size() != seg.word_length())
        throw ShapeError("reconstruct_sax1d: sequence length does not match word length");
    const std::size_t a_slope = slope_quant.alphabet;
    std::vector<double> out(seg.n);
    for (std::size_t k = 0; k < seq.size(); ++k) {
        const Symbol mean_sym = static_cast<Symbol>(seq[k] / a_slope);
        const Symbol slope_sym = static_cast<Symbol>(seq[k] % a_slope);
        const double m = mean_quant.representatives[mean_sym];
        const double s = slope_quant.representatives[slope_sym];
        const std::size_t start = seg.segment_start(k);
        const std::size_t len = seg.segment_end(k) - start;
        const double mid = (static_cast<double>(len) - 1.0) / 2.0;
        for (std::size_t t = 0; t < len; ++t)
            out[start + t] = m + s * (static_cast<double>(t) - mid);
    }
    return out;
}

/// Fourier reconstruction: each retained coefficient is replaced by its bin
/// representative, all other frequencies are zeroed, and the inverse DFT
/// (normalized by n) with hermitian mirroring produces a real signal.
inline std::vector<double> reconstruct_sfa(const SymbolicSequence& seq,
                                           const std::vector<QuantizationModel>& mcb,
                                           std::size_t n) {
    if (seq.size() != mcb.size())
        throw ShapeError("reconstruct_sfa: sequence length " + std::to_string(seq.size()) +
                         " does not match coefficient count " + std::to_string(mcb.size()));

    // Interleaved layout: value 2m is Re c_m, value 2m+1 is Im c_m.
    const std::size_t coeff_count = (seq.size() + 1) / 2;
    std::vector<std::complex<double>> coeffs(coeff_count, {0.0, 0.0});
    for (std::size_t k = 0; k < seq.size(); ++k) {
        const double value = mcb[k].representatives[seq[k]];
        auto& c = coeffs[k / 2];
        if (k % 2 == 0)
            c.real(value);
        else
            c.imag(value);
    }

    std::vector<double> out(n, 0.0);
    for (std::size_t m = 0; m < coeff_count && m < n; ++m) {
        const double re = coeffs[m].real();
        const double im = coeffs[m].imag();
        const bool self_mirror = (m == 0) || (2 * m == n);
        for (std::size_t t = 0; t < n; ++t) {
            const double angle =
                2.0 * std::numbers::pi * static_cast<double>(m) * static_cast<double>(t) /
                static_cast<double>(n);
            // A self-mirrored frequency must be real; otherwise the mirror
            // conjugate doubles the real part of c_m * e^{i angle}.
            if (self_mirror)
                out[t] += re * std::cos(angle);
            else
                out[t] += 2.0 * (re * std::cos(angle) - im * std::sin(angle));
        }
    }
    for (double& v : out) v /= static_cast<double>(n);
    return out;
}

/// Cuts both signals to floor(n/w)*w samples, the length used when comparing
/// originals with reconstructions.
inline std::pair<std::vector<double>, std::vector<double>>
truncate_pair(std::span<const double> original, std::span<const double> recon, std::size_t w) {
    if (original.size() != recon.size())
        throw ShapeError("truncate_pair: signal lengths differ");
    if (w == 0)
        throw InvalidParameter("truncate_pair: word length must be at least 1");
    const std::size_t cut = original.size() / w * w;
    return {std::vector<double>(original.begin(), original.begin() + cut),
            std::vector<double>(recon.begin(), recon.begin() + cut)};
}

} // namespace astride
