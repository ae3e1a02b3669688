#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "qcorpus/setting.hpp"

namespace qcorpus {

// How the underlying frequencies were obtained. Direct marks suites whose
// probabilities were entered as-is, with no counting provenance.
enum class Mode { ExactString, Collocates, Direct };

std::string_view mode_key(Mode m);
Mode parse_mode(std::string_view key);

// One outcome of a coincidence operation: e.g. the cell "horse growls" with
// its appearance count and/or relative frequency, and its +1/-1 value in the
// correlation sum.
struct OutcomeCell {
    std::string label;
    std::optional<std::uint64_t> count;
    double probability = 0.0;
    int sign = 1;
};

// The four outcomes of one setting, in fixed column order
// (first*first, first*second, second*first, second*second).
struct CoincidenceTable {
    Setting setting = Setting::AB;
    std::array<OutcomeCell, 4> cells{};
};

struct ExperimentSuite {
    std::string name;
    Mode mode = Mode::Direct;
    std::optional<int> window; // collocate window metadata, echoed through files
    std::array<CoincidenceTable, 4> tables{}; // indexed by Setting

    CoincidenceTable& table(Setting s) { return tables[setting_index(s)]; }
    const CoincidenceTable& table(Setting s) const { return tables[setting_index(s)]; }
};

enum class Classification { Satisfied, ViolatedWithinTsirelson, ExceedsTsirelson };

std::string_view classification_key(Classification c);

// One side's outcome distribution across the other side's two settings.
// Deviation 0 means the no-signaling condition holds for that side; nonzero
// deviations are what allow |S| past 2*sqrt(2) in count-derived data.
struct SideMarginal {
    double p_first = 0.0;  // P(first exemplar) in the first partner setting
    double p_second = 0.0; // ... in the second partner setting
    double deviation = 0.0;
};

struct MarginalDiagnostic {
    SideMarginal a;  // A over B / B'
    SideMarginal ap; // A' over B / B'
    SideMarginal b;  // B over A / A'
    SideMarginal bp; // B' over A / A'
};

struct ChshReport {
    std::array<double, 4> expectations{}; // indexed by Setting
    double statistic = 0.0;               // E(A'B') + E(A'B) + E(AB') - E(AB)
    Classification classification = Classification::Satisfied;
    MarginalDiagnostic marginals;

    double expectation(Setting s) const { return expectations[setting_index(s)]; }
};

// 2*sqrt(2), computed rather than hard-coded.
double tsirelson_bound();

// |S| <= 2 satisfied, 2 < |S| <= 2*sqrt(2) within the quantum bound (ties
// inclusive), beyond that exceeds it.
Classification classify_statistic(double s);

// p_i = count_i / total. Throws InputError("empty coincidence operation")
// when every count is zero.
std::array<double, 4> probabilities_from_counts(const std::array<std::uint64_t, 4>& counts);

// E = sum sign * probability over the four cells.
double expectation(const CoincidenceTable& table);

MarginalDiagnostic marginal_diagnostic(const ExperimentSuite& suite);

// Throws InputError when a table is invalid: probabilities outside [0,1],
// sum off 1 by more than `sum_tol`, or signs not two +1 / two -1.
void validate_table(const CoincidenceTable& table, double sum_tol = 1e-9);

ChshReport chsh_statistic(const ExperimentSuite& suite, double sum_tol = 1e-9);

} // namespace qcorpus
