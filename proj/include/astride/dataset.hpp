#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "astride/errors.hpp"
#include "astride/math.hpp"
#include "astride/parallel.hpp"

namespace astride {

using Signal = std::vector<double>;

/// A set of N equal-length signals with optional class labels.
/// Labels are opaque strings compared by equality.
struct Dataset {
    std::vector<Signal> signals;
    std::vector<std::string> labels; // empty, or one label per signal

    std::size_t size() const { return signals.size(); }
    std::size_t length() const { return signals.empty() ? 0 : signals.front().size(); }
    bool has_labels() const { return !labels.empty(); }

    void validate() const {
        const std::size_t n = length();
        for (const auto& s : signals)
            if (s.size() != n)
                throw ShapeError("dataset: signals have differing lengths");
        if (has_labels() && labels.size() != signals.size())
            throw ShapeError("dataset: label count does not match signal count");
    }
};

namespace detail {

inline char detect_separator(std::string_view line) {
    // UCR files ship tab- or comma-separated; decide from the first line.
    if (line.find('\t') != std::string_view::npos) return '\t';
    return ',';
}

inline void split_fields(std::string_view line, char sep, std::vector<std::string_view>& out) {
    out.clear();
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    return s;
}

} // namespace detail

/// Reads a UCR-style text file: one record per line, class label first, then
/// the n sample values, tab- or comma-separated (auto-detected from the first
/// line). Trailing whitespace and blank trailing lines are tolerated.
inline Dataset load_ucr(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw FormatError("load_ucr: cannot open '" + path.string() + "'");

    Dataset data;
    std::string line;
    std::vector<std::string_view> fields;
    char sep = 0;
    std::size_t expected_fields = 0;
    std::size_t line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view body = detail::trim(line);
        if (body.empty()) continue; // blank (usually trailing) lines
        if (sep == 0) sep = detail::detect_separator(body);
        detail::split_fields(body, sep, fields);

        if (fields.size() < 2)
            throw FormatError("load_ucr: line " + std::to_string(line_no) +
                              " has no sample values");
        if (expected_fields == 0) {
            expected_fields = fields.size();
        } else if (fields.size() != expected_fields) {
            throw FormatError("load_ucr: line " + std::to_string(line_no) + " has " +
                              std::to_string(fields.size() - 1) + " values, expected " +
                              std::to_string(expected_fields - 1));
        }

        data.labels.emplace_back(detail::trim(fields[0]));
        Signal signal;
        signal.reserve(fields.size() - 1);
        for (std::size_t col = 1; col < fields.size(); ++col) {
            const std::string_view f = detail::trim(fields[col]);
            double value = 0.0;
            const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), value);
            if (ec != std::errc{} || ptr != f.data() + f.size())
                throw FormatError("load_ucr: line " + std::to_string(line_no) + ", column " +
                                  std::to_string(col + 1) + ": cannot parse '" +
                                  std::string(f) + "' as a number");
            signal.push_back(value);
        }
        data.signals.push_back(std::move(signal));
    }

    if (data.signals.empty())
        throw FormatError("load_ucr: '" + path.string() + "' contains no records");
    data.validate();
    return data;
}

/// Writes a dataset back in the UCR text layout with round-trip precision.
inline void save_ucr(const Dataset& data, const std::filesystem::path& path, char sep = '\t') {
    std::ofstream out(path);
    if (!out)
        throw FormatError("save_ucr: cannot open '" + path.string() + "' for writing");
    char buf[40];
    for (std::size_t i = 0; i < data.size(); ++i) {
        out << (data.has_labels() ? data.labels[i] : std::string("0"));
        for (double v : data.signals[i]) {
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            out << sep << buf;
        }
        out << '\n';
    }
}

/// Centers a signal to mean 0 and scales it to unit (population) standard
/// deviation. Constant signals map to all-zeros.
inline Signal znormalize(std::span<const double> signal) {
    const double m = mean(signal);
    const double sd = std::sqrt(variance(signal));
    Signal out(signal.size());
    if (sd < std::numeric_limits<double>::min()) {
        return out; // zero variance: the natural fixed point
    }
    for (std::size_t i = 0; i < signal.size(); ++i) out[i] = (signal[i] - m) / sd;
    return out;
}

/// Z-normalizes every signal independently.
inline Dataset znormalize(const Dataset& data) {
    Dataset out;
    out.labels = data.labels;
    out.signals.resize(data.size());
    detail::parallel_for(data.size(), [&](std::size_t i) {
        out.signals[i] = znormalize(data.signals[i]);
    }, 64);
    return out;
}

} // namespace astride
