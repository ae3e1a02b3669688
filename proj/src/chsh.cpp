#include "qcorpus/chsh.hpp"

#include <cmath>
#include <string>

#include "qcorpus/errors.hpp"

namespace qcorpus {

std::string_view mode_key(Mode m) {
    switch (m) {
    case Mode::ExactString: return "ExactString";
    case Mode::Collocates: return "Collocates";
    case Mode::Direct: return "Direct";
    }
    return "Direct";
}

Mode parse_mode(std::string_view key) {
    if (key == "ExactString") return Mode::ExactString;
    if (key == "Collocates") return Mode::Collocates;
    if (key == "Direct") return Mode::Direct;
    throw InputError("unknown mode \"" + std::string(key) +
                     "\" (expected ExactString, Collocates or Direct)");
}

std::string_view classification_key(Classification c) {
    switch (c) {
    case Classification::Satisfied: return "Satisfied";
    case Classification::ViolatedWithinTsirelson: return "ViolatedWithinTsirelson";
    case Classification::ExceedsTsirelson: return "ExceedsTsirelson";
    }
    return "Satisfied";
}

double tsirelson_bound() { return 2.0 * std::sqrt(2.0); }

Classification classify_statistic(double s) {
    const double abs_s = std::abs(s);
    if (abs_s <= 2.0) return Classification::Satisfied;
    if (abs_s <= tsirelson_bound()) return Classification::ViolatedWithinTsirelson;
    return Classification::ExceedsTsirelson;
}

std::array<double, 4> probabilities_from_counts(const std::array<std::uint64_t, 4>& counts) {
    std::uint64_t total = 0;
    for (std::uint64_t c : counts) total += c;
    if (total == 0) throw InputError("empty coincidence operation");

    std::array<double, 4> probs{};
    for (std::size_t k = 0; k < 4; ++k)
        probs[k] = static_cast<double>(counts[k]) / static_cast<double>(total);
    return probs;
}

double expectation(const CoincidenceTable& table) {
    double e = 0.0;
    for (const OutcomeCell& cell : table.cells) e += cell.sign * cell.probability;
    return e;
}

void validate_table(const CoincidenceTable& table, double sum_tol) {
    int plus = 0;
    double sum = 0.0;
    for (const OutcomeCell& cell : table.cells) {
        if (!std::isfinite(cell.probability) || cell.probability < 0.0 || cell.probability > 1.0)
            throw InputError("table " + std::string(setting_key(table.setting)) + ", cell \"" +
                             cell.label + "\": probability outside [0,1]");
        if (cell.sign != 1 && cell.sign != -1)
            throw InputError("table " + std::string(setting_key(table.setting)) + ", cell \"" +
                             cell.label + "\": sign must be +1 or -1");
        if (cell.sign == 1) ++plus;
        sum += cell.probability;
    }
    if (plus != 2)
        throw InputError("table " + std::string(setting_key(table.setting)) +
                         ": expected exactly two +1 and two -1 outcomes");
    if (std::abs(sum - 1.0) > sum_tol)
        throw InputError("table " + std::string(setting_key(table.setting)) +
                         ": probabilities sum to " + std::to_string(sum));
}

namespace {

// P(first exemplar of the given side) marginalized over the partner's outcomes.
double side_marginal(const CoincidenceTable& table, bool first_side) {
    const auto& c = table.cells;
    return first_side ? c[0].probability + c[1].probability  // rows of the 2x2 layout
                      : c[0].probability + c[2].probability; // columns
}

SideMarginal side_diagnostic(const ExperimentSuite& suite, Setting s1, Setting s2,
                             bool first_side) {
    SideMarginal m;
    m.p_first = side_marginal(suite.table(s1), first_side);
    m.p_second = side_marginal(suite.table(s2), first_side);
    m.deviation = std::abs(m.p_first - m.p_second);
    return m;
}

} // namespace

MarginalDiagnostic marginal_diagnostic(const ExperimentSuite& suite) {
    MarginalDiagnostic d;
    d.a = side_diagnostic(suite, Setting::AB, Setting::ABp, true);
    d.ap = side_diagnostic(suite, Setting::ApB, Setting::ApBp, true);
    d.b = side_diagnostic(suite, Setting::AB, Setting::ApB, false);
    d.bp = side_diagnostic(suite, Setting::ABp, Setting::ApBp, false);
    return d;
}

ChshReport chsh_statistic(const ExperimentSuite& suite, double sum_tol) {
    for (Setting s : kSettings) {
        if (suite.table(s).setting != s)
            throw InputError("suite table for " + std::string(setting_key(s)) +
                             " carries the wrong setting tag");
        validate_table(suite.table(s), sum_tol);
    }

    ChshReport report;
    for (Setting s : kSettings)
        report.expectations[setting_index(s)] = expectation(suite.table(s));

    report.statistic = report.expectation(Setting::ApBp) + report.expectation(Setting::ApB) +
                       report.expectation(Setting::ABp) - report.expectation(Setting::AB);
    report.classification = classify_statistic(report.statistic);
    report.marginals = marginal_diagnostic(suite);
    return report;
}

} // namespace qcorpus
