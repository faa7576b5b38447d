#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "astride/errors.hpp"
#include "astride/symbolizer.hpp"

namespace astride {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Model JSON
// ---------------------------------------------------------------------------

inline json to_json(const SegmentationModel& seg) {
    return json{{"n", seg.n},
                {"w", seg.word_length()},
                {"breakpoints", seg.breakpoints},
                {"lengths", seg.lengths},
                {"normalized_lengths", seg.normalized_lengths}};
}

inline SegmentationModel segmentation_from_json(const json& j) {
    SegmentationModel seg;
    seg.n = j.at("n").get<std::size_t>();
    seg.breakpoints = j.at("breakpoints").get<std::vector<std::size_t>>();
    seg.lengths = j.at("lengths").get<std::vector<std::size_t>>();
    seg.normalized_lengths = j.at("normalized_lengths").get<std::vector<std::size_t>>();
    if (j.at("w").get<std::size_t>() != seg.word_length())
        throw FormatError("segmentation json: w does not match lengths");
    return seg;
}

inline json to_json(const QuantizationModel& quant) {
    return json{{"A", quant.alphabet},
                {"boundaries", quant.boundaries},
                {"representatives", quant.representatives}};
}

inline QuantizationModel quantization_from_json(const json& j) {
    QuantizationModel quant;
    quant.alphabet = j.at("A").get<std::size_t>();
    quant.boundaries = j.at("boundaries").get<std::vector<double>>();
    quant.representatives = j.at("representatives").get<std::vector<double>>();
    return quant;
}

inline json to_json(const FittedSymbolizer& model) {
    json j{{"method", std::string(to_string(model.spec.method))},
           {"w", model.spec.word_length},
           {"A", model.spec.alphabet},
           {"n", model.n},
           {"fingerprint",
            {{"count", model.fingerprint.count},
             {"length", model.fingerprint.length},
             {"hash", [&] {
                  char buf[20];
                  std::snprintf(buf, sizeof(buf), "%016llx",
                                static_cast<unsigned long long>(model.fingerprint.hash));
                  return std::string(buf);
              }()}}}};
    if (model.spec.method == Method::sax1d) {
        j["A_mean"] = model.spec.alphabet_mean;
        j["A_slope"] = model.spec.alphabet_slope;
    }
    if (model.segmentation) j["segmentation"] = to_json(*model.segmentation);
    json quants = json::array();
    for (const auto& q : model.quantizers) quants.push_back(to_json(q));
    j["quantizers"] = std::move(quants);
    return j;
}

inline FittedSymbolizer symbolizer_from_json(const json& j) {
    FittedSymbolizer model;
    model.spec.method = method_from_string(j.at("method").get<std::string>());
    model.spec.word_length = j.at("w").get<std::size_t>();
    model.spec.alphabet = j.at("A").get<std::size_t>();
    if (j.contains("A_mean")) model.spec.alphabet_mean = j.at("A_mean").get<std::size_t>();
    if (j.contains("A_slope")) model.spec.alphabet_slope = j.at("A_slope").get<std::size_t>();
    model.n = j.at("n").get<std::size_t>();
    if (j.contains("segmentation"))
        model.segmentation = segmentation_from_json(j.at("segmentation"));
    for (const auto& q : j.at("quantizers")) model.quantizers.push_back(quantization_from_json(q));
    const auto& fp = j.at("fingerprint");
    model.fingerprint.count = fp.at("count").get<std::size_t>();
    model.fingerprint.length = fp.at("length").get<std::size_t>();
    model.fingerprint.hash = std::stoull(fp.at("hash").get<std::string>(), nullptr, 16);
    return model;
}

inline void save_symbolizer(const FittedSymbolizer& model, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw FormatError("save_symbolizer: cannot open '" + path.string() + "'");
    out << to_json(model).dump(2) << '\n';
}

inline FittedSymbolizer load_symbolizer(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("load_symbolizer: cannot open '" + path.string() + "'");
    json j;
    in >> j;
    return symbolizer_from_json(j);
}

// ---------------------------------------------------------------------------
// Symbolic corpora: JSON and a packed layout of ceil(log2 A)-bit codes
// ---------------------------------------------------------------------------

struct SymbolicCorpus {
    std::size_t alphabet = 0;
    std::size_t word_length = 0;
    std::vector<SymbolicSequence> sequences;
};

inline unsigned bits_per_symbol(std::size_t alphabet) {
    if (alphabet < 2 || alphabet > 256)
        throw InvalidParameter("bits_per_symbol: alphabet size must be in [2, 256]");
    unsigned bits = 1;
    while ((std::size_t{1} << bits) < alphabet) ++bits;
    return bits;
}

/// Packs symbol codes MSB-first into bytes, ceil(log2 A) bits per symbol.
inline std::vector<std::uint8_t> pack_symbols(std::span<const Symbol> symbols,
                                              std::size_t alphabet) {
    const unsigned bits = bits_per_symbol(alphabet);
    std::vector<std::uint8_t> out((symbols.size() * bits + 7) / 8, 0);
    std::size_t bit_pos = 0;
    for (Symbol s : symbols) {
        if (s >= alphabet) throw InvalidParameter("pack_symbols: symbol id out of range");
        for (unsigned b = bits; b-- > 0;) {
            if ((s >> b) & 1u) out[bit_pos / 8] |= static_cast<std::uint8_t>(0x80u >> (bit_pos % 8));
            ++bit_pos;
        }
    }
    return out;
}

inline SymbolicSequence unpack_symbols(std::span<const std::uint8_t> bytes, std::size_t count,
                                       std::size_t alphabet) {
    const unsigned bits = bits_per_symbol(alphabet);
    if (bytes.size() < (count * bits + 7) / 8)
        throw FormatError("unpack_symbols: byte buffer too short");
    SymbolicSequence out;
    out.reserve(count);
    std::size_t bit_pos = 0;
    for (std::size_t i = 0; i < count; ++i) {
        Symbol s = 0;
        for (unsigned b = 0; b < bits; ++b) {
            s = static_cast<Symbol>(s << 1);
            if (bytes[bit_pos / 8] & (0x80u >> (bit_pos % 8))) s = static_cast<Symbol>(s | 1u);
            ++bit_pos;
        }
        out.push_back(s);
    }
    return out;
}

inline void save_corpus_json(const SymbolicCorpus& corpus, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw FormatError("save_corpus_json: cannot open '" + path.string() + "'");
    json j{{"A", corpus.alphabet}, {"w", corpus.word_length}, {"sequences", corpus.sequences}};
    out << j.dump() << '\n';
}

inline SymbolicCorpus load_corpus_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("load_corpus_json: cannot open '" + path.string() + "'");
    json j;
    in >> j;
    SymbolicCorpus corpus;
    corpus.alphabet = j.at("A").get<std::size_t>();
    corpus.word_length = j.at("w").get<std::size_t>();
    corpus.sequences = j.at("sequences").get<std::vector<SymbolicSequence>>();
    return corpus;
}

inline void save_corpus_packed(const SymbolicCorpus& corpus, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("save_corpus_packed: cannot open '" + path.string() + "'");
    const char magic[4] = {'A', 'S', 'T', 'C'};
    out.write(magic, 4);
    const auto write_u64 = [&](std::uint64_t v) {
        std::uint8_t bytes[8];
        for (int i = 0; i < 8; ++i) bytes[i] = static_cast<std::uint8_t>(v >> (8 * i));
        out.write(reinterpret_cast<const char*>(bytes), 8);
    };
    write_u64(corpus.alphabet);
    write_u64(corpus.word_length);
    write_u64(corpus.sequences.size());
    SymbolicSequence flat;
    flat.reserve(corpus.sequences.size() * corpus.word_length);
    for (const auto& seq : corpus.sequences) {
        if (seq.size() != corpus.word_length)
            throw ShapeError("save_corpus_packed: sequence length does not match word length");
        flat.insert(flat.end(), seq.begin(), seq.end());
    }
    const auto packed = pack_symbols(flat, corpus.alphabet);
    out.write(reinterpret_cast<const char*>(packed.data()),
              static_cast<std::streamsize>(packed.size()));
}

inline SymbolicCorpus load_corpus_packed(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("load_corpus_packed: cannot open '" + path.string() + "'");
    char magic[4];
    in.read(magic, 4);
    if (in.gcount() != 4 || magic[0] != 'A' || magic[1] != 'S' || magic[2] != 'T' ||
        magic[3] != 'C')
        throw FormatError("load_corpus_packed: bad magic in '" + path.string() + "'");
    const auto read_u64 = [&] {
        std::uint8_t bytes[8];
        in.read(reinterpret_cast<char*>(bytes), 8);
        if (in.gcount() != 8) throw FormatError("load_corpus_packed: truncated header");
        std::uint64_t v = 0;
        for (int i = 7; i >= 0; --i) v = (v << 8) | bytes[i];
        return v;
    };
    SymbolicCorpus corpus;
    corpus.alphabet = static_cast<std::size_t>(read_u64());
    corpus.word_length = static_cast<std::size_t>(read_u64());
    const auto count = static_cast<std::size_t>(read_u64());
    std::vector<std::uint8_t> packed((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
    const SymbolicSequence flat =
        unpack_symbols(packed, count * corpus.word_length, corpus.alphabet);
    corpus.sequences.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        corpus.sequences.emplace_back(flat.begin() + i * corpus.word_length,
                                      flat.begin() + (i + 1) * corpus.word_length);
    return corpus;
}

// ---------------------------------------------------------------------------
// Text output helpers
// ---------------------------------------------------------------------------

/// Renders a symbolic sequence the way sequences are usually written: one
/// base-A digit per symbol for A <= 10 (e.g. "1230"), comma-separated ids
/// otherwise.
inline std::string symbols_to_string(const SymbolicSequence& seq, std::size_t alphabet) {
    std::string out;
    if (alphabet <= 10) {
        out.reserve(seq.size());
        for (Symbol s : seq) out.push_back(static_cast<char>('0' + s));
    } else {
        for (std::size_t i = 0; i < seq.size(); ++i) {
            if (i > 0) out.push_back(',');
            out += std::to_string(seq[i]);
        }
    }
    return out;
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// One row per signal, comma-separated, round-trip precision.
inline void write_matrix_csv(std::ostream& out, const std::vector<std::vector<double>>& rows) {
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) out << ',';
            out << format_double(row[i]);
        }
        out << '\n';
    }
}

inline std::vector<std::vector<double>> read_matrix_csv(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) row.push_back(std::stod(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace astride
