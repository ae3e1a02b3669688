#pragma once

#include <stdexcept>

namespace qcorpus {

// Malformed or unusable input: files, corpora, queries, out-of-contract
// arguments supplied by the user. The CLI maps this to exit code 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A solver cannot produce a family for the given target (e.g. the structured
// ansatz does not apply). The CLI maps this to exit code 1.
struct SolveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qcorpus
