#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "astride/errors.hpp"
#include "astride/quantization.hpp"
#include "astride/segmentation.hpp"

namespace astride {

inline double euclidean(std::span<const double> s, std::span<const double> t) {
    if (s.size() != t.size())
        throw ShapeError("euclidean: lengths " + std::to_string(s.size()) + " and " +
                         std::to_string(t.size()) + " differ");
    double acc = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double d = s[i] - t[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

/// Unconstrained dynamic time warping with squared local cost and the
/// symmetric match/insert/delete step pattern; returns the square root of the
/// accumulated cost, so dtw(s, s) = 0 and equal-length flat alignments reduce
/// to the Euclidean distance.
inline double dtw(std::span<const double> s, std::span<const double> t) {
    if (s.empty() || t.empty())
        throw InvalidParameter("dtw: inputs must be non-empty");
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> prev(t.size() + 1, kInf);
    std::vector<double> curr(t.size() + 1, kInf);
    prev[0] = 0.0;
    for (std::size_t i = 1; i <= s.size(); ++i) {
        curr[0] = kInf;
        for (std::size_t j = 1; j <= t.size(); ++j) {
            const double d = s[i - 1] - t[j - 1];
            curr[j] = d * d + std::min({prev[j - 1], prev[j], curr[j - 1]});
        }
        std::swap(prev, curr);
    }
    return std::sqrt(prev[t.size()]);
}

/// MINDIST look-up table: cell(i,j) is zero for adjacent or equal symbols and
/// otherwise the gap between the far Gaussian bin boundaries.
struct LookupTable {
    std::size_t alphabet = 0;
    std::vector<double> cells; // A x A, row-major

    double at(Symbol i, Symbol j) const { return cells[i * alphabet + j]; }
};

inline LookupTable build_lookup_table(std::size_t alphabet) {
    const QuantizationModel bins = gaussian_bins(alphabet);
    LookupTable table;
    table.alphabet = alphabet;
    table.cells.assign(alphabet * alphabet, 0.0);
    for (std::size_t i = 0; i < alphabet; ++i) {
        for (std::size_t j = 0; j < alphabet; ++j) {
            const std::size_t hi = std::max(i, j);
            const std::size_t lo = std::min(i, j);
            if (hi - lo <= 1) continue;
            table.cells[i * alphabet + j] = bins.boundaries[hi - 1] - bins.boundaries[lo];
        }
    }
    return table;
}

/// MINDIST between two equal-length symbolic sequences; lower bounds the
/// Euclidean distance between the original z-normalized signals of length n.
inline double mindist(const SymbolicSequence& s, const SymbolicSequence& t,
                      const LookupTable& table, std::size_t n) {
    if (s.size() != t.size())
        throw ShapeError("mindist: symbolic sequences must be of equal length");
    if (s.empty() || n < s.size())
        throw InvalidParameter("mindist: original length must be at least the word length");
    double acc = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double d = table.at(s[i], t[i]);
        acc += d * d;
    }
    return std::sqrt(static_cast<double>(n) / static_cast<double>(s.size())) * std::sqrt(acc);
}

/// Operation costs for the general edit distance. Substitution costs are the
/// gaps between bin representatives; insertion and deletion cost the maximum
/// substitution cost, so substitutions are favored.
struct CostModel {
    std::size_t alphabet = 0;
    std::vector<double> substitution; // A x A, row-major, symmetric, zero diagonal
    double indel = 0.0;

    double sub(Symbol a, Symbol b) const { return substitution[a * alphabet + b]; }

    static CostModel unit(std::size_t alphabet) {
        CostModel costs;
        costs.alphabet = alphabet;
        costs.substitution.assign(alphabet * alphabet, 1.0);
        for (std::size_t a = 0; a < alphabet; ++a) costs.substitution[a * alphabet + a] = 0.0;
        costs.indel = 1.0;
        return costs;
    }

    static CostModel from_representatives(std::span<const double> mu) {
        CostModel costs;
        costs.alphabet = mu.size();
        costs.substitution.assign(mu.size() * mu.size(), 0.0);
        for (std::size_t a = 0; a < mu.size(); ++a) {
            for (std::size_t b = 0; b < mu.size(); ++b) {
                const double c = std::abs(mu[a] - mu[b]);
                costs.substitution[a * mu.size() + b] = c;
                costs.indel = std::max(costs.indel, c);
            }
        }
        return costs;
    }
};

/// General edit distance: minimal total cost of insertions, deletions, and
/// substitutions transforming s1 into s2, by the standard prefix-table DP.
inline double general_edit_distance(std::span<const Symbol> s1, std::span<const Symbol> s2,
                                    const CostModel& costs) {
    for (Symbol a : s1)
        if (a >= costs.alphabet)
            throw InvalidParameter("general_edit_distance: symbol id outside cost matrix");
    for (Symbol a : s2)
        if (a >= costs.alphabet)
            throw InvalidParameter("general_edit_distance: symbol id outside cost matrix");

    std::vector<double> prev(s2.size() + 1, 0.0);
    std::vector<double> curr(s2.size() + 1, 0.0);
    for (std::size_t j = 1; j <= s2.size(); ++j) prev[j] = prev[j - 1] + costs.indel;
    for (std::size_t i = 1; i <= s1.size(); ++i) {
        curr[0] = prev[0] + costs.indel;
        for (std::size_t j = 1; j <= s2.size(); ++j) {
            const double substituted = prev[j - 1] + costs.sub(s1[i - 1], s2[j - 1]);
            const double deleted = prev[j] + costs.indel;
            const double inserted = curr[j - 1] + costs.indel;
            curr[j] = std::min({substituted, deleted, inserted});
        }
        std::swap(prev, curr);
    }
    return prev[s2.size()];
}

/// Repeats symbol k of the sequence normalized_lengths[k] times, preserving
/// order. Output length is the sum of the normalized lengths.
inline SymbolicSequence replicate(const SymbolicSequence& seq,
                                  std::span<const std::size_t> normalized_lengths) {
    if (seq.size() != normalized_lengths.size())
        throw ShapeError("replicate: sequence and length list sizes differ");
    std::size_t total = 0;
    for (std::size_t l : normalized_lengths) {
        if (l == 0)
            throw InvalidParameter("replicate: normalized lengths must be at least 1");
        total += l;
    }
    SymbolicSequence out;
    out.reserve(total);
    for (std::size_t k = 0; k < seq.size(); ++k)
        out.insert(out.end(), normalized_lengths[k], seq[k]);
    return out;
}

/// D-GED: general edit distance between the replicated sequences. An empty
/// replication span skips replication (the uniform-segmentation case, where
/// segment lengths carry no extra information).
inline double d_ged(const SymbolicSequence& a, const SymbolicSequence& b, const CostModel& costs,
                    std::span<const std::size_t> replication = {}) {
    if (replication.empty())
        return general_edit_distance(a, b, costs);
    return general_edit_distance(replicate(a, replication), replicate(b, replication), costs);
}

} // namespace astride
