#include "qcorpus/counting.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>

#include "qcorpus/errors.hpp"

namespace qcorpus {

namespace {

// Structural UTF-8 check; returns the byte offset of the first bad sequence,
// or -1 when clean.
std::ptrdiff_t find_invalid_utf8(std::string_view text) {
    const auto* p = reinterpret_cast<const unsigned char*>(text.data());
    const std::size_t n = text.size();
    std::size_t i = 0;
    while (i < n) {
        const unsigned char b = p[i];
        std::size_t len;
        if (b < 0x80) {
            len = 1;
        } else if ((b & 0xE0) == 0xC0) {
            len = 2;
            if (b < 0xC2) return static_cast<std::ptrdiff_t>(i); // overlong
        } else if ((b & 0xF0) == 0xE0) {
            len = 3;
        } else if ((b & 0xF8) == 0xF0) {
            len = 4;
            if (b > 0xF4) return static_cast<std::ptrdiff_t>(i); // beyond U+10FFFF
        } else {
            return static_cast<std::ptrdiff_t>(i);
        }
        if (i + len > n) return static_cast<std::ptrdiff_t>(i);
        for (std::size_t k = 1; k < len; ++k)
            if ((p[i + k] & 0xC0) != 0x80) return static_cast<std::ptrdiff_t>(i);
        i += len;
    }
    return -1;
}

bool is_word_byte(unsigned char b) {
    return std::isalnum(b) != 0 || b >= 0x80; // non-ASCII sequences stay inside tokens
}

} // namespace

TokenStream tokenize(std::string_view text, std::string source) {
    if (const std::ptrdiff_t bad = find_invalid_utf8(text); bad >= 0)
        throw InputError("invalid UTF-8 in document \"" + source + "\" at byte offset " +
                         std::to_string(bad));

    TokenStream stream;
    stream.source = std::move(source);
    std::string current;
    for (const char ch : text) {
        const auto b = static_cast<unsigned char>(ch);
        if (is_word_byte(b)) {
            current.push_back(static_cast<char>(std::tolower(b)));
        } else if (!current.empty()) {
            stream.tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) stream.tokens.push_back(std::move(current));
    return stream;
}

std::size_t count_exact(const TokenStream& s, std::string_view first, std::string_view second) {
    const auto& t = s.tokens;
    std::size_t count = 0;
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
        if (t[i] == first && t[i + 1] == second) ++count;
    return count;
}

std::size_t count_collocate(const TokenStream& s, std::string_view target,
                            std::string_view collocate, int window) {
    if (window < 1) throw InputError("collocate window must be >= 1");
    const auto& t = s.tokens;
    const auto n = static_cast<std::ptrdiff_t>(t.size());
    const auto w = static_cast<std::ptrdiff_t>(window);
    std::size_t count = 0;
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        if (t[static_cast<std::size_t>(i)] != target) continue;
        const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - w);
        const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n - 1, i + w);
        for (std::ptrdiff_t j = lo; j <= hi; ++j)
            if (j != i && t[static_cast<std::size_t>(j)] == collocate) ++count;
    }
    return count;
}

std::size_t count_collocate_ordered(const TokenStream& s, std::string_view target,
                                    std::string_view collocate, int window) {
    if (window < 1) throw InputError("collocate window must be >= 1");
    const auto& t = s.tokens;
    const auto n = static_cast<std::ptrdiff_t>(t.size());
    const auto w = static_cast<std::ptrdiff_t>(window);
    std::size_t count = 0;
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        if (t[static_cast<std::size_t>(i)] != target) continue;
        const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n - 1, i + w);
        for (std::ptrdiff_t j = i + 1; j <= hi; ++j)
            if (t[static_cast<std::size_t>(j)] == collocate) ++count;
    }
    return count;
}

std::size_t count_exact_omp(const TokenStream& s, std::string_view first,
                            std::string_view second) {
    const auto& t = s.tokens;
    const auto n = static_cast<std::int64_t>(t.size());
    std::int64_t count = 0;
#pragma omp parallel for reduction(+ : count) schedule(static)
    for (std::int64_t i = 0; i < n - 1; ++i)
        if (t[static_cast<std::size_t>(i)] == first && t[static_cast<std::size_t>(i + 1)] == second)
            ++count;
    return static_cast<std::size_t>(count);
}

std::size_t count_collocate_omp(const TokenStream& s, std::string_view target,
                                std::string_view collocate, int window) {
    if (window < 1) throw InputError("collocate window must be >= 1");
    const auto& t = s.tokens;
    const auto n = static_cast<std::int64_t>(t.size());
    const auto w = static_cast<std::int64_t>(window);
    std::int64_t count = 0;
#pragma omp parallel for reduction(+ : count) schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        if (t[static_cast<std::size_t>(i)] != target) continue;
        const std::int64_t lo = std::max<std::int64_t>(0, i - w);
        const std::int64_t hi = std::min<std::int64_t>(n - 1, i + w);
        for (std::int64_t j = lo; j <= hi; ++j)
            if (j != i && t[static_cast<std::size_t>(j)] == collocate) ++count;
    }
    return static_cast<std::size_t>(count);
}

std::size_t count_collocate_ordered_omp(const TokenStream& s, std::string_view target,
                                        std::string_view collocate, int window) {
    if (window < 1) throw InputError("collocate window must be >= 1");
    const auto& t = s.tokens;
    const auto n = static_cast<std::int64_t>(t.size());
    const auto w = static_cast<std::int64_t>(window);
    std::int64_t count = 0;
#pragma omp parallel for reduction(+ : count) schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        if (t[static_cast<std::size_t>(i)] != target) continue;
        const std::int64_t hi = std::min<std::int64_t>(n - 1, i + w);
        for (std::int64_t j = i + 1; j <= hi; ++j)
            if (t[static_cast<std::size_t>(j)] == collocate) ++count;
    }
    return static_cast<std::size_t>(count);
}

namespace {

std::size_t stream_count(const TokenStream& doc, const WordPair& pair, Mode mode, int window) {
    switch (mode) {
    case Mode::ExactString: return count_exact(doc, pair.first, pair.second);
    case Mode::Collocates: return count_collocate(doc, pair.first, pair.second, window);
    case Mode::Direct: break;
    }
    throw InputError("counting requires mode ExactString or Collocates");
}

} // namespace

std::uint64_t corpus_count(std::span<const TokenStream> docs, const WordPair& pair, Mode mode,
                           int window) {
    std::uint64_t total = 0;
    for (const TokenStream& doc : docs) total += stream_count(doc, pair, mode, window);
    return total;
}

std::uint64_t corpus_count_omp(std::span<const TokenStream> docs, const WordPair& pair,
                               Mode mode, int window) {
    if (mode == Mode::Direct) throw InputError("counting requires mode ExactString or Collocates");
    const auto n = static_cast<std::int64_t>(docs.size());
    std::int64_t total = 0;
#pragma omp parallel for reduction(+ : total) schedule(dynamic)
    for (std::int64_t d = 0; d < n; ++d)
        total += static_cast<std::int64_t>(
            stream_count(docs[static_cast<std::size_t>(d)], pair, mode, window));
    return static_cast<std::uint64_t>(total);
}

std::array<std::uint64_t, 4> count_setting(std::span<const TokenStream> docs,
                                           const CountQuery& query, bool parallel) {
    std::array<std::uint64_t, 4> counts{};
    for (std::size_t k = 0; k < 4; ++k)
        counts[k] = parallel ? corpus_count_omp(docs, query.pairs[k], query.mode, query.window)
                             : corpus_count(docs, query.pairs[k], query.mode, query.window);
    return counts;
}

ExperimentSuite build_suite(std::span<const TokenStream> docs, const QuerySet& queries,
                            std::string name, bool parallel) {
    if (queries.window < 1) throw InputError("collocate window must be >= 1");

    ExperimentSuite suite;
    suite.name = std::move(name);
    suite.mode = queries.mode;
    suite.window = queries.mode == Mode::Collocates ? std::optional<int>(queries.window)
                                                    : std::nullopt;
    for (Setting s : kSettings) {
        const CountQuery query = queries.query(s);
        const std::array<std::uint64_t, 4> counts = count_setting(docs, query, parallel);

        std::array<double, 4> probs{};
        try {
            probs = probabilities_from_counts(counts);
        } catch (const InputError&) {
            throw InputError("empty coincidence operation in setting " +
                             std::string(setting_key(s)));
        }

        CoincidenceTable& table = suite.table(s);
        table.setting = s;
        for (std::size_t k = 0; k < 4; ++k) {
            table.cells[k].label = query.pairs[k].first + " " + query.pairs[k].second;
            table.cells[k].count = counts[k];
            table.cells[k].probability = probs[k];
            table.cells[k].sign = query.pairs[k].sign;
        }
        validate_table(table);
    }
    return suite;
}

} // namespace qcorpus
