#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qcorpus/chsh.hpp"

namespace qcorpus {

// Lowercased word tokens of one document. Windows never cross documents.
struct TokenStream {
    std::vector<std::string> tokens;
    std::string source;
};

// One search pair with its +1/-1 outcome value.
struct WordPair {
    std::string first;
    std::string second;
    int sign = 1;
};

// The four pairs of one setting plus counting parameters.
struct CountQuery {
    std::array<WordPair, 4> pairs{};
    Mode mode = Mode::ExactString;
    int window = 9;
};

// All four settings sharing one mode and window.
struct QuerySet {
    std::array<std::array<WordPair, 4>, 4> pairs{}; // indexed by Setting
    Mode mode = Mode::ExactString;
    int window = 9;

    CountQuery query(Setting s) const { return {pairs[setting_index(s)], mode, window}; }
};

// Case-folded word tokens split on whitespace and punctuation (hyphens
// split). Multi-byte UTF-8 sequences count as word characters. Throws
// InputError naming `source` on invalid UTF-8.
TokenStream tokenize(std::string_view text, std::string source);

// --- serial reference kernels -------------------------------------------

// Positions i with token[i] == first and token[i+1] == second; overlaps allowed.
std::size_t count_exact(const TokenStream& s, std::string_view first, std::string_view second);

// (target-position, collocate-position) pairs with 1 <= |distance| <= window;
// both orders count, and a token never pairs with itself.
std::size_t count_collocate(const TokenStream& s, std::string_view target,
                            std::string_view collocate, int window);

// Restriction to pairs with the target strictly before the collocate; at
// window 1 this reduces to count_exact.
std::size_t count_collocate_ordered(const TokenStream& s, std::string_view target,
                                    std::string_view collocate, int window);

// --- OpenMP kernels -------------------------------------------------------
// Same contracts as the serial kernels; integer reductions keep the results
// bit-identical regardless of scheduling.

std::size_t count_exact_omp(const TokenStream& s, std::string_view first,
                            std::string_view second);
std::size_t count_collocate_omp(const TokenStream& s, std::string_view target,
                                std::string_view collocate, int window);
std::size_t count_collocate_ordered_omp(const TokenStream& s, std::string_view target,
                                        std::string_view collocate, int window);

// --- corpus-level counting -------------------------------------------------

// Total count of one pair over a document set; parallel variant distributes
// documents over threads and merges by addition.
std::uint64_t corpus_count(std::span<const TokenStream> docs, const WordPair& pair, Mode mode,
                           int window);
std::uint64_t corpus_count_omp(std::span<const TokenStream> docs, const WordPair& pair,
                               Mode mode, int window);

// Counts for the four pairs of one setting.
std::array<std::uint64_t, 4> count_setting(std::span<const TokenStream> docs,
                                           const CountQuery& query, bool parallel = true);

// Full pipeline: counts -> relative frequencies -> one table per setting.
// Throws InputError naming the setting when all four of its counts are zero.
ExperimentSuite build_suite(std::span<const TokenStream> docs, const QuerySet& queries,
                            std::string name, bool parallel = true);

} // namespace qcorpus
